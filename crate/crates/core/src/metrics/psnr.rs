use core::fmt;

use crate::imaging::{check_dims, dilate_chebyshev, BinaryMask, Plane, RgbImage};
use crate::{Error, Result};

/// Side length of the evaluation window, or the whole image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelSpec {
    Size(u32),
    Full,
}

impl KernelSpec {
    pub fn size(k: u32) -> Result<Self> {
        if k % 2 == 1 {
            Ok(Self::Size(k))
        } else {
            Err(Error::InvalidParams("kernel size must be odd"))
        }
    }

    /// `floor(K / 2)`; `None` for [`KernelSpec::Full`].
    pub fn half(&self) -> Option<usize> {
        match *self {
            Self::Size(k) => Some(k as usize / 2),
            Self::Full => None,
        }
    }
}

impl Default for KernelSpec {
    fn default() -> Self {
        Self::Size(7)
    }
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Size(k) => write!(f, "{k}"),
            Self::Full => f.write_str("full"),
        }
    }
}

impl core::str::FromStr for KernelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("full") {
            return Ok(Self::Full);
        }
        let k: u32 = s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParams("kernel must be an odd integer or 'full'"))?;
        Self::size(k)
    }
}

/// Pixels a metric is evaluated over.
#[derive(Debug, Clone, Copy)]
pub enum Region<'a> {
    Full,
    Mask(&'a BinaryMask),
}

impl Region<'_> {
    fn contains(&self, i: usize) -> bool {
        match self {
            Region::Full => true,
            Region::Mask(m) => m.bits()[i],
        }
    }

    fn check(&self, dims: (usize, usize)) -> Result<usize> {
        match self {
            Region::Full => {
                if dims.0 * dims.1 == 0 {
                    return Err(Error::EmptyRegion);
                }
                Ok(dims.0 * dims.1)
            }
            Region::Mask(m) => {
                check_dims(m.dims(), dims)?;
                match m.count() {
                    0 => Err(Error::EmptyRegion),
                    n => Ok(n),
                }
            }
        }
    }
}

/// Mean squared difference over `region`, pooled across all channel pairs.
pub fn mse(x: &[&Plane], y: &[&Plane], region: Region<'_>) -> Result<f64> {
    if x.len() != y.len() || x.is_empty() {
        return Err(Error::InvalidParams("mse needs the same nonzero number of channels"));
    }
    let dims = x[0].dims();
    for p in x.iter().chain(y) {
        check_dims(p.dims(), dims)?;
    }
    let n = region.check(dims)?;
    let mut sum = 0.0;
    for (a, b) in x.iter().zip(y) {
        for (i, (&u, &v)) in a.values().iter().zip(b.values()).enumerate() {
            if region.contains(i) {
                sum += (u - v) * (u - v);
            }
        }
    }
    Ok(sum / (n * x.len()) as f64)
}

/// Peak signal-to-noise ratio; equal inputs have no finite value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Psnr {
    Db(f64),
    Identical,
}

impl Psnr {
    pub fn db(&self) -> Option<f64> {
        match *self {
            Self::Db(v) => Some(v),
            Self::Identical => None,
        }
    }
}

/// `10 log10(255^2 / MSE)` over the 8-bit RGB channels inside `region`.
pub fn psnr(pred: &RgbImage, gt: &RgbImage, region: Region<'_>) -> Result<Psnr> {
    check_dims(pred.dims(), gt.dims())?;
    let n = region.check(gt.dims())?;
    let mut sum: u64 = 0;
    for (i, (p, g)) in pred.data().chunks_exact(3).zip(gt.data().chunks_exact(3)).enumerate() {
        if region.contains(i) {
            for c in 0..3 {
                let d = i64::from(p[c]) - i64::from(g[c]);
                sum += (d * d) as u64;
            }
        }
    }
    if sum == 0 {
        return Ok(Psnr::Identical);
    }
    let mse = sum as f64 / (3 * n) as f64;
    Ok(Psnr::Db(10.0 * libm::log10(255.0 * 255.0 / mse)))
}

/// Union of `K x K` windows centered on the on-pixels of `edges`.
pub fn local_region(edges: &BinaryMask, kernel: KernelSpec) -> BinaryMask {
    match kernel.half() {
        Some(r) => dilate_chebyshev(edges, r),
        None => BinaryMask::full(edges.width(), edges.height()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn lcg(seed: &mut u64) -> u8 {
        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (*seed >> 56) as u8
    }

    #[test]
    fn kernel_parsing() {
        assert_eq!("7".parse::<KernelSpec>().unwrap(), KernelSpec::Size(7));
        assert_eq!("FULL".parse::<KernelSpec>().unwrap(), KernelSpec::Full);
        assert!("8".parse::<KernelSpec>().is_err());
        assert!("x".parse::<KernelSpec>().is_err());
        assert_eq!(KernelSpec::Size(23).half(), Some(11));
    }

    #[test]
    fn mse_identities() {
        let a = Plane::from_fn(5, 4, |x, y| (x * y) as f64);
        assert_eq!(mse(&[&a], &[&a], Region::Full).unwrap(), 0.0);
        let b = a.map(|v| v + 3.0);
        assert_eq!(mse(&[&a, &a], &[&b, &b], Region::Full).unwrap(), 9.0);
        let empty = BinaryMask::empty(5, 4);
        assert_eq!(mse(&[&a], &[&b], Region::Mask(&empty)), Err(Error::EmptyRegion));
        let small = Plane::filled(4, 4, 0.0);
        assert!(matches!(mse(&[&a], &[&small], Region::Full), Err(Error::DimensionMismatch(..))));
    }

    #[test]
    fn mse_matches_double_loop_on_half_region() {
        let mut s = 11;
        let xs: Vec<f64> = (0..64).map(|_| lcg(&mut s) as f64).collect();
        let ys: Vec<f64> = (0..64).map(|_| lcg(&mut s) as f64).collect();
        let x = Plane::new(8, 8, xs.clone()).unwrap();
        let y = Plane::new(8, 8, ys.clone()).unwrap();
        let half = BinaryMask::from_fn(8, 8, |c, _| c < 4);
        let mut sum = 0.0;
        let mut n = 0;
        for row in 0..8 {
            for col in 0..4 {
                let d = xs[row * 8 + col] - ys[row * 8 + col];
                sum += d * d;
                n += 1;
            }
        }
        let got = mse(&[&x], &[&y], Region::Mask(&half)).unwrap();
        assert!((got - sum / n as f64).abs() < 1e-9);
    }

    #[test]
    fn psnr_closed_form() {
        let gt = RgbImage::from_fn(16, 16, |x, y| [(x * 7) as u8, (y * 9) as u8, 100]);
        assert_eq!(psnr(&gt, &gt, Region::Full).unwrap(), Psnr::Identical);
        let pred = RgbImage::from_fn(16, 16, |x, y| [(x * 7) as u8 + 16, (y * 9) as u8 + 16, 116]);
        let v = psnr(&pred, &gt, Region::Full).unwrap().db().unwrap();
        let expected = 10.0 * (255.0f64 * 255.0 / 256.0).log10();
        assert!((v - expected).abs() < 1e-12);
        assert!((v - 24.05).abs() < 0.01);
        let ones = BinaryMask::full(16, 16);
        assert_eq!(psnr(&pred, &gt, Region::Mask(&ones)).unwrap().db().unwrap(), v);
    }

    #[test]
    fn local_region_windows() {
        let one = BinaryMask::from_points(16, 16, [(8, 8)]);
        let r = local_region(&one, KernelSpec::Size(7));
        assert_eq!(r.count(), 49);
        assert!(local_region(&one, KernelSpec::Full).bits().iter().all(|&b| b));
        // diagonal of 5 pixels, K = 3: brute-force union of 3x3 windows
        let pts: Vec<(usize, usize)> = (0..5).map(|i| (4 + i, 4 + i)).collect();
        let diag = BinaryMask::from_points(16, 16, pts.clone());
        let oracle = (0..256)
            .filter(|i| {
                let (x, y) = (i % 16, i / 16);
                pts.iter().any(|&(px, py)| (px as i32 - x).abs() <= 1 && (py as i32 - y).abs() <= 1)
            })
            .count();
        assert_eq!(oracle, 9 + 4 * 5);
        assert_eq!(local_region(&diag, KernelSpec::Size(3)).count(), oracle);
    }
}
