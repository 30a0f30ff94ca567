//! Sobel-based discrepancies on the chroma planes.

use crate::imaging::{check_dims, sobel_magnitude, LabImage, Plane};
use crate::scribble::RegionMask;
use crate::{Error, Result};

/// `S(pred) - S(base)` for the `a` and `b` planes.
pub fn s_diff(pred: &LabImage, base: &LabImage) -> Result<(Plane, Plane)> {
    check_dims(pred.dims(), base.dims())?;
    let [pa, pb] = pred.chroma();
    let [ba, bb] = base.chroma();
    Ok((diff(pa, ba)?, diff(pb, bb)?))
}

fn diff(p: &Plane, q: &Plane) -> Result<Plane> {
    let sp = sobel_magnitude(p)?;
    let sq = sobel_magnitude(q)?;
    Ok(Plane::from_raw(
        p.width(),
        p.height(),
        sp.values().iter().zip(sq.values()).map(|(a, b)| a - b).collect(),
    ))
}

// Mean of squared Sobel-magnitude differences over the pixels where
// `region.mask == inside`, pooled over both chroma planes.
fn masked_gradient_mse(x: &LabImage, y: &LabImage, region: &RegionMask, inside: bool) -> Result<f64> {
    check_dims(x.dims(), y.dims())?;
    check_dims(x.dims(), region.mask.dims())?;
    let bits = region.mask.bits();
    let n = bits.iter().filter(|&&b| b == inside).count();
    if n == 0 {
        return Err(Error::EmptyRegion);
    }
    let mut sum = 0.0;
    for (px, py) in x.chroma().into_iter().zip(y.chroma()) {
        let sx = sobel_magnitude(px)?;
        let sy = sobel_magnitude(py)?;
        for ((&a, &b), &m) in sx.values().iter().zip(sy.values()).zip(bits) {
            if m == inside {
                sum += (a - b) * (a - b);
            }
        }
    }
    Ok(sum / (2 * n) as f64)
}

/// Mean squared chroma-gradient discrepancy against the ground truth inside `m`.
pub fn edge_fidelity(pred: &LabImage, gt: &LabImage, m: &RegionMask) -> Result<f64> {
    masked_gradient_mse(pred, gt, m, true)
}

/// Mean squared chroma-gradient change against the initial colorization
/// outside `m`.
pub fn consistency_score(pred: &LabImage, init: &LabImage, m: &RegionMask) -> Result<f64> {
    masked_gradient_mse(pred, init, m, false)
}
