//! PNG decoding/encoding for images and masks.

use std::path::Path;

use anyhow::{Context, Result};
use bleedmeter_core::imaging::{BinaryMask, RgbImage};
use image::imageops::{self, FilterType};

pub const PROTOCOL_SIZE: u32 = 256;

/// Decodes any supported image as 8-bit RGB; alpha is dropped.
pub fn load_rgb(path: &Path) -> Result<RgbImage> {
    let img = image::open(path)
        .with_context(|| format!("cannot decode image {}", path.display()))?
        .to_rgb8();
    let (w, h) = img.dimensions();
    Ok(RgbImage::new(w as usize, h as usize, img.into_raw())?)
}

pub fn save_rgb(img: &RgbImage, path: &Path) -> Result<()> {
    let buf = image::RgbImage::from_raw(img.width() as u32, img.height() as u32, img.data().to_vec())
        .context("rgb buffer size")?;
    buf.save(path)
        .with_context(|| format!("cannot write {}", path.display()))
}

/// Grayscale PNG, 0 = off and 255 = on. Reading treats values above 127 as on.
pub fn load_mask(path: &Path) -> Result<BinaryMask> {
    let img = image::open(path)
        .with_context(|| format!("cannot decode mask {}", path.display()))?
        .to_luma8();
    let (w, h) = img.dimensions();
    Ok(BinaryMask::new(
        w as usize,
        h as usize,
        img.into_raw().into_iter().map(|v| v > 127).collect(),
    )?)
}

pub fn save_mask(mask: &BinaryMask, path: &Path) -> Result<()> {
    let data = mask.bits().iter().map(|&b| if b { 255 } else { 0 }).collect();
    let buf = image::GrayImage::from_raw(mask.width() as u32, mask.height() as u32, data)
        .context("mask buffer size")?;
    buf.save(path)
        .with_context(|| format!("cannot write {}", path.display()))
}

/// Bilinear resampling to the 256x256 evaluation size.
pub fn resize_rgb(img: &RgbImage) -> RgbImage {
    if img.dims() == (PROTOCOL_SIZE as usize, PROTOCOL_SIZE as usize) {
        return img.clone();
    }
    let buf = image::RgbImage::from_raw(img.width() as u32, img.height() as u32, img.data().to_vec())
        .expect("valid rgb buffer");
    let out = imageops::resize(&buf, PROTOCOL_SIZE, PROTOCOL_SIZE, FilterType::Triangle);
    RgbImage::new(PROTOCOL_SIZE as usize, PROTOCOL_SIZE as usize, out.into_raw()).expect("resized buffer")
}

pub fn resize_mask(mask: &BinaryMask) -> BinaryMask {
    if mask.dims() == (PROTOCOL_SIZE as usize, PROTOCOL_SIZE as usize) {
        return mask.clone();
    }
    let data = mask.bits().iter().map(|&b| if b { 255u8 } else { 0 }).collect();
    let buf = image::GrayImage::from_raw(mask.width() as u32, mask.height() as u32, data).expect("mask buffer");
    let out = imageops::resize(&buf, PROTOCOL_SIZE, PROTOCOL_SIZE, FilterType::Nearest);
    BinaryMask::new(
        PROTOCOL_SIZE as usize,
        PROTOCOL_SIZE as usize,
        out.into_raw().into_iter().map(|v| v > 127).collect(),
    )
    .expect("resized mask")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_png_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let m = BinaryMask::from_fn(9, 5, |x, y| (x + y) % 3 == 0);
        let p = dir.path().join("m.png");
        save_mask(&m, &p).unwrap();
        assert_eq!(load_mask(&p).unwrap(), m);
        let raw = image::open(&p).unwrap();
        assert_eq!(raw.color(), image::ColorType::L8);
    }

    #[test]
    fn rgba_alpha_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a.png");
        let rgba = image::RgbaImage::from_fn(4, 3, |x, y| image::Rgba([x as u8 * 10, y as u8 * 20, 7, 13]));
        rgba.save(&p).unwrap();
        let img = load_rgb(&p).unwrap();
        assert_eq!(img.dims(), (4, 3));
        assert_eq!(img.get(2, 1), [20, 20, 7]);
    }

    #[test]
    fn resize_to_protocol_size() {
        let img = RgbImage::from_fn(40, 30, |x, _| [x as u8, 0, 0]);
        assert_eq!(resize_rgb(&img).dims(), (256, 256));
        let m = BinaryMask::from_fn(40, 30, |x, _| x < 20);
        let r = resize_mask(&m);
        assert!(r.get(0, 0) && !r.get(255, 0));
    }
}
