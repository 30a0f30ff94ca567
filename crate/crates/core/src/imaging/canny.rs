//! Five-step Canny edge extractor: smoothing, Sobel gradients, non-maximum
//! suppression, double threshold and hysteresis tracking.

use alloc::vec::Vec;

use super::filter::{gaussian_blur, sobel_gradients};
use super::{BinaryMask, Plane};
use crate::{Error, Result};

/// Canny hyper-parameters. Thresholds are fractions of the plane's maximum
/// post-smoothing gradient magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CannyParams {
    pub sigma: f64,
    pub th_high: f64,
    pub th_low: f64,
    /// How much lower the high threshold is for the colorized (initial) image
    /// than for the ground truth during scribble synthesis.
    pub th_gap: f64,
}

impl CannyParams {
    pub const IMAGENET: Self = Self::new(1.2, 0.7, 0.2, 0.4);
    pub const COCO: Self = Self::new(1.2, 0.7, 0.2, 0.4);
    pub const PLACES: Self = Self::new(1.2, 0.7, 0.2, 0.4);
    pub const DANBOORU: Self = Self::new(0.7, 0.8, 0.2, 0.5);
    pub const YUMI: Self = Self::new(1.3, 0.7, 0.2, 0.4);

    pub const fn new(sigma: f64, th_high: f64, th_low: f64, th_gap: f64) -> Self {
        Self {
            sigma,
            th_high,
            th_low,
            th_gap,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidParams("canny sigma must be positive"));
        }
        if !(0.0 < self.th_low && self.th_low < self.th_high && self.th_high <= 1.0) {
            return Err(Error::InvalidParams("canny thresholds need 0 < low < high <= 1"));
        }
        if !(0.0 <= self.th_gap && self.th_gap < self.th_high) {
            return Err(Error::InvalidParams("canny gap needs 0 <= gap < high"));
        }
        if self.th_gap > 0.0 && self.th_high - self.th_gap <= self.th_low {
            return Err(Error::InvalidParams("canny high - gap must stay above low"));
        }
        Ok(())
    }

    /// Parameters for the colorized image: the high threshold lowered by the gap.
    pub fn relaxed(&self) -> Self {
        Self {
            th_high: self.th_high - self.th_gap,
            th_gap: 0.0,
            ..*self
        }
    }
}

impl Default for CannyParams {
    fn default() -> Self {
        Self::IMAGENET
    }
}

// Inputs are rescaled to [0, 1] and snapped to this grid before smoothing so
// that `p` and `a * p + b` (a > 0) take the same floating-point path.
const GRID: f64 = (1u64 << 24) as f64;

fn normalize(p: &Plane) -> Result<Plane> {
    let (lo, hi) = p.range().ok_or(Error::DegenerateInput)?;
    if lo == hi {
        return Err(Error::DegenerateInput);
    }
    let span = hi - lo;
    Ok(p.map(|v| libm::round((v - lo) / span * GRID) / GRID))
}

struct Gradients {
    gx: Plane,
    gy: Plane,
    magnitude: Vec<f64>,
    max: f64,
}

fn gradients(p: &Plane, sigma: f64) -> Result<Gradients> {
    if p.width() < 3 || p.height() < 3 {
        return Err(Error::TooSmall {
            width: p.width(),
            height: p.height(),
        });
    }
    let blurred = gaussian_blur(&normalize(p)?, sigma)?;
    let (gx, gy) = sobel_gradients(&blurred)?;
    let magnitude: Vec<f64> = gx
        .values()
        .iter()
        .zip(gy.values())
        .map(|(&a, &b)| libm::sqrt(a * a + b * b))
        .collect();
    let max = magnitude.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return Err(Error::DegenerateInput);
    }
    Ok(Gradients {
        gx,
        gy,
        magnitude,
        max,
    })
}

/// Gradient magnitude of the range-normalized, smoothed plane that the
/// detector thresholds against.
pub fn canny_magnitude(p: &Plane, sigma: f64) -> Result<Plane> {
    let g = gradients(p, sigma)?;
    Ok(Plane::from_raw(p.width(), p.height(), g.magnitude))
}

/// Binary edge map. A plane without any gradient yields
/// [`Error::DegenerateInput`]; callers treat that as "no edges".
pub fn canny(p: &Plane, params: &CannyParams) -> Result<BinaryMask> {
    params.validate()?;
    let g = gradients(p, params.sigma)?;
    let thinned = non_maximum_suppression(&g, p.width(), p.height());
    Ok(hysteresis(
        &thinned,
        p.width(),
        p.height(),
        params.th_high * g.max,
        params.th_low * g.max,
    ))
}

/// Unit step towards the quantized gradient direction (0/45/90/135 degrees).
fn direction(gx: f64, gy: f64) -> (isize, isize) {
    let mut deg = libm::atan2(gy, gx).to_degrees();
    if deg < 0.0 {
        deg += 180.0;
    }
    if !(22.5..157.5).contains(&deg) {
        (1, 0)
    } else if deg < 67.5 {
        (1, 1)
    } else if deg < 112.5 {
        (0, 1)
    } else {
        (-1, 1)
    }
}

fn non_maximum_suppression(g: &Gradients, w: usize, h: usize) -> Vec<f64> {
    let at = |x: isize, y: isize| {
        let x = x.clamp(0, w as isize - 1) as usize;
        let y = y.clamp(0, h as isize - 1) as usize;
        g.magnitude[y * w + x]
    };
    let mut out = alloc::vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            let m = g.magnitude[i];
            if m == 0.0 {
                continue;
            }
            let (dx, dy) = direction(g.gx.values()[i], g.gy.values()[i]);
            let (xi, yi) = (x as isize, y as isize);
            let ahead = at(xi + dx, yi + dy);
            let behind = at(xi - dx, yi - dy);
            // plateaus of equal magnitude keep only their last pixel along the direction
            if m > ahead && m >= behind {
                out[i] = m;
            }
        }
    }
    out
}

fn hysteresis(thinned: &[f64], w: usize, h: usize, high: f64, low: f64) -> BinaryMask {
    let mut mask = BinaryMask::empty(w, h);
    let mut stack = Vec::new();
    for y in 0..h {
        for x in 0..w {
            let m = thinned[y * w + x];
            if m >= high && m > 0.0 && !mask.get(x, y) {
                mask.set(x, y, true);
                stack.push((x, y));
                while let Some((cx, cy)) = stack.pop() {
                    for ny in cy.saturating_sub(1)..=(cy + 1).min(h - 1) {
                        for nx in cx.saturating_sub(1)..=(cx + 1).min(w - 1) {
                            let v = thinned[ny * w + nx];
                            if v >= low && v > 0.0 && !mask.get(nx, ny) {
                                mask.set(nx, ny, true);
                                stack.push((nx, ny));
                            }
                        }
                    }
                }
            }
        }
    }
    mask
}
