//! Quantitative measures: masked gradient discrepancies, PSNR (global and
//! kernel-local), SLIC superpixels and the cluster discrepancy ratio.

mod cdr;
mod gradient;
mod psnr;
mod report;
mod slic;

pub use cdr::{cdr, cdr_detail, cdr_from_maps, CdrBreakdown, ChannelCdr};
pub use gradient::{consistency_score, edge_fidelity, s_diff};
pub use psnr::{local_region, mse, psnr, KernelSpec, Psnr, Region};
pub use report::{score_pair, MetricsReport, ScoreParams};
pub use slic::{slic, ClusterMap, SlicParams};
