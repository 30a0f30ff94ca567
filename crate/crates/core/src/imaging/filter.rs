//! Separable Gaussian smoothing and the 3x3 Sobel operator.
//!
//! Every convolution pads by replicating the border pixel.

use alloc::vec::Vec;

use super::Plane;
use crate::{Error, Result};

/// Horizontal Sobel kernel, as a convolution kernel (`K[row][col]`).
pub(crate) const SOBEL_X: [[f64; 3]; 3] = [[1.0, 0.0, -1.0], [2.0, 0.0, -2.0], [1.0, 0.0, -1.0]];
/// Vertical Sobel kernel, the transpose of [`SOBEL_X`].
pub(crate) const SOBEL_Y: [[f64; 3]; 3] = [[1.0, 2.0, 1.0], [0.0, 0.0, 0.0], [-1.0, -2.0, -1.0]];

/// Normalized 1-D Gaussian taps of radius `ceil(3 sigma)`.
pub fn gaussian_kernel(sigma: f64) -> Result<Vec<f64>> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParams("gaussian sigma must be positive"));
    }
    let radius = libm::ceil(3.0 * sigma) as isize;
    let denom = 2.0 * sigma * sigma;
    let mut taps: Vec<f64> = (-radius..=radius)
        .map(|i| libm::exp(-((i * i) as f64) / denom))
        .collect();
    let sum: f64 = taps.iter().sum();
    taps.iter_mut().for_each(|t| *t /= sum);
    Ok(taps)
}

pub fn gaussian_blur(p: &Plane, sigma: f64) -> Result<Plane> {
    let taps = gaussian_kernel(sigma)?;
    let rows = convolve_1d(p, &taps, true);
    Ok(convolve_1d(&rows, &taps, false))
}

// Accumulates the weighted deviation from the center sample and clamps to the
// hull of the window, so constants pass through bit-exact and the output never
// leaves the input range.
fn convolve_1d(p: &Plane, taps: &[f64], horizontal: bool) -> Plane {
    let (w, h) = p.dims();
    let r = (taps.len() / 2) as isize;
    let mut out = Vec::with_capacity(w * h);
    for y in 0..h as isize {
        for x in 0..w as isize {
            let center = p.get(x as usize, y as usize);
            let (mut acc, mut lo, mut hi) = (0.0, center, center);
            for (k, &t) in taps.iter().enumerate() {
                let d = k as isize - r;
                let v = if horizontal {
                    p.get_clamped(x + d, y)
                } else {
                    p.get_clamped(x, y + d)
                };
                acc += t * (v - center);
                lo = lo.min(v);
                hi = hi.max(v);
            }
            out.push((center + acc).clamp(lo, hi));
        }
    }
    Plane::from_raw(w, h, out)
}

fn check_filterable(p: &Plane) -> Result<()> {
    if p.width() < 3 || p.height() < 3 {
        return Err(Error::TooSmall {
            width: p.width(),
            height: p.height(),
        });
    }
    Ok(())
}

/// Horizontal and vertical Sobel responses `(Gx * I, Gy * I)`.
pub fn sobel_gradients(p: &Plane) -> Result<(Plane, Plane)> {
    check_filterable(p)?;
    let (w, h) = p.dims();
    let mut gx = Vec::with_capacity(w * h);
    let mut gy = Vec::with_capacity(w * h);
    for y in 0..h as isize {
        for x in 0..w as isize {
            let (mut sx, mut sy) = (0.0, 0.0);
            for (row, (kx, ky)) in SOBEL_X.iter().zip(&SOBEL_Y).enumerate() {
                let dy = row as isize - 1;
                for col in 0..3 {
                    let dx = col as isize - 1;
                    // true convolution: kernel offset (dx, dy) reads I(x - dx, y - dy)
                    let v = p.get_clamped(x - dx, y - dy);
                    sx += kx[col] * v;
                    sy += ky[col] * v;
                }
            }
            gx.push(sx);
            gy.push(sy);
        }
    }
    Ok((Plane::from_raw(w, h, gx), Plane::from_raw(w, h, gy)))
}

/// `sqrt((Gx * I)^2 + (Gy * I)^2)` per pixel.
pub fn sobel_magnitude(p: &Plane) -> Result<Plane> {
    let (gx, gy) = sobel_gradients(p)?;
    let (w, h) = p.dims();
    Ok(Plane::from_raw(
        w,
        h,
        gx.values()
            .iter()
            .zip(gy.values())
            .map(|(&a, &b)| libm::sqrt(a * a + b * b))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step(w: usize, h: usize, k: usize) -> Plane {
        Plane::from_fn(w, h, |x, _| if x < k { 0.0 } else { 1.0 })
    }

    #[test]
    fn kernel_radius_and_normalization() {
        let t = gaussian_kernel(1.0).unwrap();
        assert_eq!(t.len(), 7);
        assert!((t.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        let t = gaussian_kernel(0.7).unwrap();
        assert_eq!(t.len(), 2 * 3 + 1); // ceil(2.1) = 3
        assert!(gaussian_kernel(0.0).is_err());
        assert!(gaussian_kernel(-1.0).is_err());
    }

    #[test]
    fn blur_preserves_constants_exactly() {
        for c in [0.0, -3.25, 17.1, 1e6 + 0.1] {
            let p = Plane::filled(9, 7, c);
            for sigma in [0.3, 1.0, 2.5] {
                assert_eq!(gaussian_blur(&p, sigma).unwrap(), p);
            }
        }
    }

    #[test]
    fn impulse_response_is_kernel_outer_product() {
        // oracle: normalized 2-D weight at the origin, computed directly
        let sigma = 1.0_f64;
        let norm: f64 = (-3..=3).map(|i: i32| (-(i * i) as f64 / 2.0).exp()).sum();
        let center_weight = 1.0 / (norm * norm);
        let p = Plane::from_fn(15, 15, |x, y| if (x, y) == (7, 7) { 1.0 } else { 0.0 });
        let b = gaussian_blur(&p, sigma).unwrap();
        assert!((b.get(7, 7) - center_weight).abs() < 1e-15);
        let off = (-0.5_f64).exp() / (norm * norm);
        assert!((b.get(8, 7) - off).abs() < 1e-15);
        assert!((b.values().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn blur_keeps_step_monotone() {
        let b = gaussian_blur(&step(20, 5, 10), 0.7).unwrap();
        for y in 0..5 {
            for x in 1..20 {
                assert!(b.get(x, y) >= b.get(x - 1, y));
            }
        }
        assert!(b.get(9, 2) > 0.0 && b.get(10, 2) < 1.0);
    }

    #[test]
    fn sobel_constant_is_zero() {
        let m = sobel_magnitude(&Plane::filled(5, 4, 3.5)).unwrap();
        assert!(m.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn sobel_unit_step_hand_values() {
        // Hand convolution: at columns k-1 and k the 3x3 patch straddles the
        // step, giving |(1 + 2 + 1) * (1 - 0)| = 4; elsewhere the patch is flat.
        let k = 6;
        let m = sobel_magnitude(&step(12, 8, k)).unwrap();
        for y in 0..8 {
            for x in 0..12 {
                let expected = if x == k - 1 || x == k { 4.0 } else { 0.0 };
                assert_eq!(m.get(x, y), expected, "({x},{y})");
            }
        }
        let mt = sobel_magnitude(&step(12, 8, k).transpose()).unwrap();
        assert_eq!(mt, m.transpose());
    }

    #[test]
    fn sobel_sign_convention() {
        let (gx, gy) = sobel_gradients(&step(8, 8, 4)).unwrap();
        assert_eq!(gx.get(4, 4), 4.0);
        assert_eq!(gy.get(4, 4), 0.0);
    }

    #[test]
    fn sobel_rejects_tiny_planes() {
        assert!(matches!(
            sobel_magnitude(&Plane::filled(2, 5, 0.0)),
            Err(Error::TooSmall { .. })
        ));
    }
}
