use alloc::vec::Vec;

use super::cdr::cdr;
use super::gradient::{consistency_score, edge_fidelity};
use super::psnr::{local_region, psnr, KernelSpec, Psnr, Region};
use super::slic::SlicParams;
use crate::imaging::{check_dims, rgb_to_lab, CannyParams, RgbImage};
use crate::scribble::{region_mask, Scribble};
use crate::Result;

/// Everything needed to reproduce a [`MetricsReport`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreParams {
    pub kernel: KernelSpec,
    pub canny: CannyParams,
    pub slic: SlicParams,
    /// Chebyshev radius of the region mask around the scribble.
    pub region_radius: usize,
    /// Seed used to synthesize the scribble, when one was synthesized.
    pub seed: Option<u64>,
}

impl Default for ScoreParams {
    fn default() -> Self {
        Self {
            kernel: KernelSpec::default(),
            canny: CannyParams::default(),
            slic: SlicParams::default(),
            region_radius: 3,
            seed: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub psnr_global: Psnr,
    pub psnr_local: Option<Psnr>,
    pub cdr: Option<f64>,
    pub edge_fidelity: Option<f64>,
    pub consistency: Option<f64>,
    pub kernel: KernelSpec,
    /// Names of metrics that were not computed for lack of inputs.
    pub skipped: Vec<&'static str>,
    pub params: ScoreParams,
}

/// Scores a prediction against its ground truth. Metrics whose inputs are
/// missing (`scribble` for local/edge metrics, `init` for consistency, an odd
/// kernel for CDR) are listed in [`MetricsReport::skipped`].
pub fn score_pair(
    pred: &RgbImage,
    gt: &RgbImage,
    init: Option<&RgbImage>,
    scribble: Option<&Scribble>,
    params: &ScoreParams,
) -> Result<MetricsReport> {
    check_dims(pred.dims(), gt.dims())?;
    if let Some(init) = init {
        check_dims(init.dims(), gt.dims())?;
    }
    if let Some(s) = scribble {
        check_dims(s.mask.dims(), gt.dims())?;
    }
    let mut skipped = Vec::new();
    let psnr_global = psnr(pred, gt, Region::Full)?;
    let psnr_local = match (params.kernel, scribble) {
        (KernelSpec::Full, _) => Some(psnr_global),
        (kernel, Some(s)) => Some(psnr(pred, gt, Region::Mask(&local_region(&s.skeleton, kernel)))?),
        (_, None) => {
            skipped.push("psnr_local");
            None
        }
    };

    let pred_lab = rgb_to_lab(pred);
    let gt_lab = rgb_to_lab(gt);
    let cdr = match params.kernel {
        KernelSpec::Full => {
            skipped.push("cdr");
            None
        }
        kernel => Some(cdr(&gt_lab, &pred_lab, kernel, &params.canny, &params.slic)?),
    };

    let region = scribble.map(|s| region_mask(s, params.region_radius));
    let edge_fidelity = match &region {
        Some(m) => Some(edge_fidelity(&pred_lab, &gt_lab, m)?),
        None => {
            skipped.push("edge_fidelity");
            None
        }
    };
    let consistency = match (&region, init) {
        (Some(m), Some(init)) => Some(consistency_score(&pred_lab, &rgb_to_lab(init), m)?),
        _ => {
            skipped.push("consistency");
            None
        }
    };

    Ok(MetricsReport {
        psnr_global,
        psnr_local,
        cdr,
        edge_fidelity,
        consistency,
        kernel: params.kernel,
        skipped,
        params: *params,
    })
}
