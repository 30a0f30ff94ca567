//! Diagnostic images.

use std::collections::BTreeMap;

use bleedmeter_core::imaging::{Plane, RgbImage};
use bleedmeter_core::metrics::CdrBreakdown;
use bleedmeter_core::scribble::Scribble;

fn dim(p: [u8; 3]) -> [u8; 3] {
    let luma = (u32::from(p[0]) * 299 + u32::from(p[1]) * 587 + u32::from(p[2]) * 114) / 1000;
    let v = (luma / 2) as u8;
    [v, v, v]
}

/// Stroke in red and its skeleton in yellow over a dimmed copy of `base`.
pub fn scribble_overlay(base: &RgbImage, s: &Scribble) -> RgbImage {
    RgbImage::from_fn(base.width(), base.height(), |x, y| {
        if s.skeleton.get(x, y) {
            [255, 230, 0]
        } else if s.mask.get(x, y) {
            [230, 30, 30]
        } else {
            dim(base.get(x, y))
        }
    })
}

/// Diverging map: red where the gradient grew, blue where it shrank.
pub fn sdiff_heatmap(p: &Plane) -> RgbImage {
    let peak = p.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    RgbImage::from_fn(p.width(), p.height(), |x, y| {
        let v = p.get(x, y);
        let t = if peak > 0.0 { (v.abs() / peak * 255.0).round() as u8 } else { 0 };
        if v > 0.0 {
            [255, 255 - t, 255 - t]
        } else {
            [255 - t, 255 - t, 255]
        }
    })
}

/// Ground-truth edge pixels colored from red (bleeding, term 0) to green (term 1).
pub fn cdr_markers(gt: &RgbImage, b: &CdrBreakdown) -> RgbImage {
    let mut terms: BTreeMap<(usize, usize), (f64, u32)> = BTreeMap::new();
    for ch in b.channels.iter().flatten() {
        for &(p, t) in &ch.terms {
            let e = terms.entry(p).or_default();
            e.0 += t;
            e.1 += 1;
        }
    }
    RgbImage::from_fn(gt.width(), gt.height(), |x, y| match terms.get(&(x, y)) {
        Some(&(sum, n)) => {
            let t = sum / f64::from(n);
            [((1.0 - t) * 255.0).round() as u8, (t * 255.0).round() as u8, 0]
        }
        None => dim(gt.get(x, y)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heatmap_signs() {
        let p = Plane::new(3, 1, vec![2.0, 0.0, -1.0]).unwrap();
        let h = sdiff_heatmap(&p);
        assert_eq!(h.get(0, 0), [255, 0, 0]);
        assert_eq!(h.get(1, 0), [255, 255, 255]);
        assert_eq!(h.get(2, 0), [127, 127, 255]);
    }
}
