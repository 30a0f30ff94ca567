//! Cluster discrepancy ratio.
//!
//! For every ground-truth edge pixel `i`, `Omega(i)` collects the shifts `j`
//! inside the `K x K` window whose target `i + j` lies in a different
//! ground-truth superpixel. The pixel scores the fraction of those shifts that
//! also land in a different superpixel of the prediction. A channel's ratio is
//! the mean over edge pixels with nonempty `Omega(i)`; the final ratio averages
//! the `a` and `b` channels. 1 means every ground-truth cluster boundary near
//! an edge survives in the prediction.

use alloc::vec::Vec;

use super::psnr::KernelSpec;
use super::slic::{slic, ClusterMap, SlicParams};
use crate::imaging::{canny, check_dims, BinaryMask, CannyParams, LabImage, Plane};
use crate::{Error, Result};

/// Ratio for one chroma channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelCdr {
    pub score: f64,
    pub edge_pixels: usize,
    /// Edge pixels with nonempty `Omega(i)`.
    pub included: usize,
    /// Per-pixel terms of the included edge pixels, in raster order.
    pub terms: Vec<((usize, usize), f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CdrBreakdown {
    pub score: f64,
    /// `a` then `b`; `None` where the channel has no usable edge pixel.
    pub channels: [Option<ChannelCdr>; 2],
}

/// Ratio from precomputed cluster maps and edge set. `None` when no edge
/// pixel has a differing ground-truth neighbor within the window.
pub fn cdr_from_maps(
    gt: &ClusterMap,
    pred: &ClusterMap,
    edges: &BinaryMask,
    kernel: KernelSpec,
) -> Result<Option<ChannelCdr>> {
    check_dims(gt.dims(), pred.dims())?;
    check_dims(gt.dims(), edges.dims())?;
    let half = kernel.half().ok_or(Error::KernelFullUnsupported)? as isize;
    let (w, h) = gt.dims();
    let gl = gt.labels();
    let pl = pred.labels();

    let mut terms = Vec::new();
    let mut sum = 0.0;
    let mut edge_pixels = 0;
    for (x, y) in edges.points() {
        edge_pixels += 1;
        let i = y * w + x;
        let (g0, p0) = (gl[i], pl[i]);
        let ys = (y as isize - half).max(0) as usize..=((y as isize + half) as usize).min(h - 1);
        let xs = (x as isize - half).max(0) as usize..=((x as isize + half) as usize).min(w - 1);
        let (mut omega, mut merged) = (0u32, 0u32);
        for ny in ys {
            let row = ny * w;
            for nx in xs.clone() {
                let j = row + nx;
                if gl[j] != g0 {
                    omega += 1;
                    merged += u32::from(pl[j] == p0);
                }
            }
        }
        if omega > 0 {
            let term = 1.0 - f64::from(merged) / f64::from(omega);
            sum += term;
            terms.push(((x, y), term));
        }
    }
    if terms.is_empty() {
        return Ok(None);
    }
    Ok(Some(ChannelCdr {
        score: sum / terms.len() as f64,
        edge_pixels,
        included: terms.len(),
        terms,
    }))
}

// A channel with no variation carries no color boundary: one cluster.
fn clusters(p: &Plane, params: &SlicParams) -> Result<ClusterMap> {
    if p.is_constant() {
        Ok(ClusterMap::uniform(p.width(), p.height()))
    } else {
        slic(p, params)
    }
}

pub fn cdr_detail(
    gt: &LabImage,
    pred: &LabImage,
    kernel: KernelSpec,
    edge_params: &CannyParams,
    slic_params: &SlicParams,
) -> Result<CdrBreakdown> {
    check_dims(gt.dims(), pred.dims())?;
    if kernel == KernelSpec::Full {
        return Err(Error::KernelFullUnsupported);
    }
    edge_params.validate()?;
    slic_params.validate()?;
    let mut channels = [None, None];
    for (slot, (g, p)) in channels.iter_mut().zip(gt.chroma().into_iter().zip(pred.chroma())) {
        let edges = match canny(g, edge_params) {
            Ok(e) => e,
            Err(Error::DegenerateInput) => continue,
            Err(e) => return Err(e),
        };
        if edges.is_empty() {
            continue;
        }
        let cg = clusters(g, slic_params)?;
        let cp = clusters(p, slic_params)?;
        *slot = cdr_from_maps(&cg, &cp, &edges, kernel)?;
    }
    let scores: Vec<f64> = channels.iter().flatten().map(|c| c.score).collect();
    if scores.is_empty() {
        return Err(Error::NoEdges);
    }
    Ok(CdrBreakdown {
        score: scores.iter().sum::<f64>() / scores.len() as f64,
        channels,
    })
}

/// Cluster discrepancy ratio in `[0, 1]`; higher preserves boundaries better.
pub fn cdr(
    gt: &LabImage,
    pred: &LabImage,
    kernel: KernelSpec,
    edge_params: &CannyParams,
    slic_params: &SlicParams,
) -> Result<f64> {
    cdr_detail(gt, pred, kernel, edge_params, slic_params).map(|b| b.score)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_region(w: usize, h: usize, split: usize) -> LabImage {
        let a = Plane::from_fn(w, h, |x, _| if x < split { 35.0 } else { -25.0 });
        let b = Plane::from_fn(w, h, |x, _| if x < split { -15.0 } else { 30.0 });
        LabImage::new(Plane::filled(w, h, 50.0), a, b).unwrap()
    }

    #[test]
    fn identical_is_one() {
        let gt = two_region(32, 32, 13);
        let v = cdr(&gt, &gt, KernelSpec::Size(7), &CannyParams::IMAGENET, &SlicParams::default()).unwrap();
        assert_eq!(v, 1.0);
    }

    #[test]
    fn flat_prediction_is_zero() {
        let gt = two_region(32, 32, 13);
        let flat = LabImage::new(
            Plane::filled(32, 32, 50.0),
            Plane::filled(32, 32, 4.0),
            Plane::filled(32, 32, -2.0),
        )
        .unwrap();
        let v = cdr(&gt, &flat, KernelSpec::Size(7), &CannyParams::IMAGENET, &SlicParams::default()).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn errors() {
        let gt = two_region(16, 16, 8);
        let p = (CannyParams::IMAGENET, SlicParams::default());
        assert_eq!(cdr(&gt, &gt, KernelSpec::Full, &p.0, &p.1), Err(Error::KernelFullUnsupported));
        let gray = LabImage::new(
            Plane::filled(16, 16, 50.0),
            Plane::filled(16, 16, 0.0),
            Plane::filled(16, 16, 0.0),
        )
        .unwrap();
        assert_eq!(cdr(&gray, &gt, KernelSpec::Size(7), &p.0, &p.1), Err(Error::NoEdges));
    }

    #[test]
    fn hand_computed_terms() {
        // 5x5, gt split between columns 1 and 2; prediction split between 2 and 3
        let gt = ClusterMap::from_labels(5, 5, &[0, 0, 1, 1, 1].repeat(5)).unwrap();
        let pred = ClusterMap::from_labels(5, 5, &[0, 0, 0, 1, 1].repeat(5)).unwrap();
        let edges = BinaryMask::from_points(5, 5, [(1, 2)]);
        let c = cdr_from_maps(&gt, &pred, &edges, KernelSpec::Size(3)).unwrap().unwrap();
        // Omega: column 2, rows 1..=3 -> 3 shifts, all in pred cluster 0 like (1, 2)
        assert_eq!(c.score, 0.0);
        let c = cdr_from_maps(&gt, &pred, &edges, KernelSpec::Size(5)).unwrap().unwrap();
        // Omega: columns 2..=3, rows 0..=4 -> 10 shifts; 5 of them (column 3) still differ
        assert_eq!(c.score, 0.5);
        let inner = BinaryMask::from_points(5, 5, [(0, 2)]);
        assert!(cdr_from_maps(&gt, &pred, &inner, KernelSpec::Size(3)).unwrap().is_none());
    }
}
