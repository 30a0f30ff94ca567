//! sRGB (D65) <-> CIE Lab.

use alloc::vec::Vec;

use super::{check_dims, Plane};
use crate::{Error, Result};

/// 8-bit sRGB image, row-major RGB triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl RgbImage {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        let expected = width * height * 3;
        if data.len() != expected {
            return Err(Error::BadBuffer {
                width,
                height,
                expected,
                actual: data.len(),
            });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> [u8; 3]) -> Self {
        let mut data = Vec::with_capacity(width * height * 3);
        for y in 0..height {
            for x in 0..width {
                data.extend_from_slice(&f(x, y));
            }
        }
        Self {
            width,
            height,
            data,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> [u8; 3] {
        let i = (y * self.width + x) * 3;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    /// Channel `c` (0 = R, 1 = G, 2 = B) as a real plane in 0..=255.
    pub fn channel(&self, c: usize) -> Plane {
        Plane::from_raw(
            self.width,
            self.height,
            self.data.iter().skip(c).step_by(3).map(|&v| f64::from(v)).collect(),
        )
    }
}

/// CIE Lab planes of one image.
#[derive(Debug, Clone, PartialEq)]
pub struct LabImage {
    l: Plane,
    a: Plane,
    b: Plane,
}

impl LabImage {
    pub fn new(l: Plane, a: Plane, b: Plane) -> Result<Self> {
        check_dims(l.dims(), a.dims())?;
        check_dims(l.dims(), b.dims())?;
        Ok(Self { l, a, b })
    }

    pub fn width(&self) -> usize {
        self.l.width()
    }

    pub fn height(&self) -> usize {
        self.l.height()
    }

    pub fn dims(&self) -> (usize, usize) {
        self.l.dims()
    }

    pub fn l(&self) -> &Plane {
        &self.l
    }

    pub fn a(&self) -> &Plane {
        &self.a
    }

    pub fn b(&self) -> &Plane {
        &self.b
    }

    /// The `a` and `b` planes, in that order.
    pub fn chroma(&self) -> [&Plane; 2] {
        [&self.a, &self.b]
    }
}

// Linear sRGB -> XYZ, D65.
const RGB_TO_XYZ: [[f64; 3]; 3] = [
    [0.412_456_4, 0.357_576_1, 0.180_437_5],
    [0.212_672_9, 0.715_152_2, 0.072_175_0],
    [0.019_333_9, 0.119_192_0, 0.950_304_1],
];

// Reference white = image of linear (1, 1, 1), so sRGB white has a = b = 0 exactly.
const WHITE: [f64; 3] = [
    RGB_TO_XYZ[0][0] + RGB_TO_XYZ[0][1] + RGB_TO_XYZ[0][2],
    RGB_TO_XYZ[1][0] + RGB_TO_XYZ[1][1] + RGB_TO_XYZ[1][2],
    RGB_TO_XYZ[2][0] + RGB_TO_XYZ[2][1] + RGB_TO_XYZ[2][2],
];

const XYZ_TO_RGB: [[f64; 3]; 3] = invert3(RGB_TO_XYZ);

const fn invert3(m: [[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    let c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
    let c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    let det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
    let inv = 1.0 / det;
    [
        [
            c00 * inv,
            (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * inv,
            (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * inv,
        ],
        [
            c01 * inv,
            (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * inv,
            (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * inv,
        ],
        [
            c02 * inv,
            (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * inv,
            (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * inv,
        ],
    ]
}

const EPSILON: f64 = 216.0 / 24389.0; // (6/29)^3
const DELTA: f64 = 6.0 / 29.0;

fn srgb_to_linear(c: u8) -> f64 {
    let c = f64::from(c) / 255.0;
    if c <= 0.040_45 {
        c / 12.92
    } else {
        libm::pow((c + 0.055) / 1.055, 2.4)
    }
}

fn linear_to_srgb(c: f64) -> u8 {
    let c = c.clamp(0.0, 1.0);
    let v = if c <= 0.003_130_8 {
        12.92 * c
    } else {
        1.055 * libm::pow(c, 1.0 / 2.4) - 0.055
    };
    libm::round(v.clamp(0.0, 1.0) * 255.0) as u8
}

fn lab_f(t: f64) -> f64 {
    if t > EPSILON {
        libm::cbrt(t)
    } else {
        t / (3.0 * DELTA * DELTA) + 4.0 / 29.0
    }
}

fn lab_f_inv(t: f64) -> f64 {
    if t > DELTA {
        t * t * t
    } else {
        3.0 * DELTA * DELTA * (t - 4.0 / 29.0)
    }
}

/// Converts one sRGB pixel to `[L, a, b]`.
pub fn rgb_to_lab_pixel(rgb: [u8; 3]) -> [f64; 3] {
    let lin = rgb.map(srgb_to_linear);
    if rgb[0] == rgb[1] && rgb[1] == rgb[2] {
        // Neutral pixels are exactly achromatic.
        return [(116.0 * lab_f(lin[0]) - 16.0).clamp(0.0, 100.0), 0.0, 0.0];
    }
    let xyz: [f64; 3] = core::array::from_fn(|r| {
        RGB_TO_XYZ[r][0] * lin[0] + RGB_TO_XYZ[r][1] * lin[1] + RGB_TO_XYZ[r][2] * lin[2]
    });
    let fx = lab_f(xyz[0] / WHITE[0]);
    let fy = lab_f(xyz[1] / WHITE[1]);
    let fz = lab_f(xyz[2] / WHITE[2]);
    [
        (116.0 * fy - 16.0).clamp(0.0, 100.0),
        500.0 * (fx - fy),
        200.0 * (fy - fz),
    ]
}

/// Converts `[L, a, b]` to sRGB, clamping out-of-gamut colors.
pub fn lab_to_rgb_pixel(lab: [f64; 3]) -> [u8; 3] {
    let fy = (lab[0] + 16.0) / 116.0;
    let fx = fy + lab[1] / 500.0;
    let fz = fy - lab[2] / 200.0;
    let xyz = [
        WHITE[0] * lab_f_inv(fx),
        WHITE[1] * lab_f_inv(fy),
        WHITE[2] * lab_f_inv(fz),
    ];
    core::array::from_fn(|r| {
        linear_to_srgb(
            XYZ_TO_RGB[r][0] * xyz[0] + XYZ_TO_RGB[r][1] * xyz[1] + XYZ_TO_RGB[r][2] * xyz[2],
        )
    })
}

pub fn rgb_to_lab(img: &RgbImage) -> LabImage {
    let n = img.width * img.height;
    let (mut l, mut a, mut b) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for px in img.data.chunks_exact(3) {
        let lab = rgb_to_lab_pixel([px[0], px[1], px[2]]);
        l.push(lab[0]);
        a.push(lab[1]);
        b.push(lab[2]);
    }
    let (w, h) = img.dims();
    LabImage {
        l: Plane::from_raw(w, h, l),
        a: Plane::from_raw(w, h, a),
        b: Plane::from_raw(w, h, b),
    }
}

pub fn lab_to_rgb(img: &LabImage) -> RgbImage {
    let (w, h) = img.dims();
    let mut data = Vec::with_capacity(w * h * 3);
    for ((&l, &a), &b) in img.l.values().iter().zip(img.a.values()).zip(img.b.values()) {
        data.extend_from_slice(&lab_to_rgb_pixel([l, a, b]));
    }
    RgbImage {
        width: w,
        height: h,
        data,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent closed-form reference: textbook sRGB -> XYZ -> Lab with
    // the published D65 white (0.95047, 1.0, 1.08883).
    fn reference_lab(rgb: [u8; 3]) -> [f64; 3] {
        let lin = |c: u8| {
            let c = c as f64 / 255.0;
            if c <= 0.04045 {
                c / 12.92
            } else {
                ((c + 0.055) / 1.055).powf(2.4)
            }
        };
        let (r, g, b) = (lin(rgb[0]), lin(rgb[1]), lin(rgb[2]));
        let x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
        let y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
        let z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
        let f = |t: f64| {
            if t > 0.008856 {
                t.cbrt()
            } else {
                7.787 * t + 16.0 / 116.0
            }
        };
        let (fx, fy, fz) = (f(x / 0.95047), f(y / 1.0), f(z / 1.08883));
        [116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)]
    }

    #[test]
    fn black_is_origin() {
        assert_eq!(rgb_to_lab_pixel([0, 0, 0]), [0.0, 0.0, 0.0]);
        assert_eq!(lab_to_rgb_pixel([0.0, 0.0, 0.0]), [0, 0, 0]);
    }

    #[test]
    fn white_point() {
        let [l, a, b] = rgb_to_lab_pixel([255, 255, 255]);
        assert!((l - 100.0).abs() < 1e-9, "{l}");
        assert!(a.abs() < 0.01 && b.abs() < 0.01, "{a} {b}");
    }

    #[test]
    fn grays_have_zero_chroma() {
        let mut prev = -1.0;
        for v in 0..=255u8 {
            let [l, a, b] = rgb_to_lab_pixel([v, v, v]);
            assert_eq!((a, b), (0.0, 0.0));
            assert!(l > prev);
            prev = l;
        }
    }

    #[test]
    fn mid_gray() {
        let [l, a, b] = rgb_to_lab_pixel([128, 128, 128]);
        let reference = reference_lab([128, 128, 128]);
        assert!((l - 53.59).abs() < 0.01, "{l}");
        assert!((l - reference[0]).abs() < 1e-4);
        assert!(a.abs() < 0.01 && b.abs() < 0.01);
        let back = lab_to_rgb_pixel([53.59, 0.0, 0.0]);
        for c in back {
            assert!((c as i32 - 128).abs() <= 1, "{back:?}");
        }
    }

    #[test]
    fn agrees_with_reference_on_primaries() {
        for rgb in [[255, 0, 0], [0, 255, 0], [0, 0, 255], [12, 200, 77], [3, 3, 3]] {
            let ours = rgb_to_lab_pixel(rgb);
            let reference = reference_lab(rgb);
            for c in 0..3 {
                // the published white and the 0.008856 linear-segment constant differ
                // from the exact ones in the 4th-5th decimal
                assert!((ours[c] - reference[c]).abs() < 0.01, "{rgb:?}: {ours:?} vs {reference:?}");
            }
        }
    }

    #[test]
    fn roundtrip_exhaustive_gray_and_primaries_ramps() {
        for v in 0..=255u8 {
            for rgb in [[v, v, v], [v, 0, 0], [0, v, 0], [0, 0, v], [255, v, 0]] {
                assert_eq!(lab_to_rgb_pixel(rgb_to_lab_pixel(rgb)), rgb);
            }
        }
    }

    #[test]
    fn out_of_gamut_clamps() {
        assert_eq!(lab_to_rgb_pixel([100.0, 0.0, 0.0]), [255, 255, 255]);
        let px = lab_to_rgb_pixel([50.0, 200.0, -200.0]);
        assert_eq!((px[1], px[2]), (0, 255), "{px:?}");
    }
}
