#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bleedmeter_core::imaging::{gaussian_blur, lab_to_rgb, LabImage, Plane, RgbImage};

pub fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_bleedmeter"));
    c.env_remove("BLEEDMETER_PROFILE");
    c
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn bleedmeter")
}

pub fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

pub fn save(img: &RgbImage, path: &Path) {
    image::RgbImage::from_raw(img.width() as u32, img.height() as u32, img.data().to_vec())
        .unwrap()
        .save(path)
        .unwrap();
}

fn to_rgb(l: f64, a: Plane, b: Plane) -> RgbImage {
    let (w, h) = a.dims();
    lab_to_rgb(&LabImage::new(Plane::filled(w, h, l), a, b).unwrap())
}

/// Three vertical chroma bands; the init smears the right boundary with a
/// Gaussian of the given sigma. `shift` varies the band colours.
pub fn band_pair(w: usize, h: usize, shift: f64, sigma: f64) -> (RgbImage, RgbImage) {
    let (x1, x2) = (w * 5 / 16, w * 11 / 16);
    let band = move |x: usize| {
        if x < x1 {
            40.0 + shift
        } else if x < x2 {
            -20.0 - shift
        } else {
            35.0
        }
    };
    let a = Plane::from_fn(w, h, |x, _| band(x));
    let b = a.map(|v| 0.6 * v + 5.0);
    let smear = |p: &Plane| {
        let blurred = gaussian_blur(p, sigma).unwrap();
        Plane::from_fn(w, h, |x, y| if x >= w / 2 { blurred.get(x, y) } else { p.get(x, y) })
    };
    let (a_init, b_init) = (smear(&a), smear(&b));
    (to_rgb(60.0, a, b), to_rgb(60.0, a_init, b_init))
}

pub fn gray(w: usize, h: usize) -> RgbImage {
    RgbImage::from_fn(w, h, |x, _| {
        let v = (x * 255 / w) as u8;
        [v, v, v]
    })
}

/// Writes a gt/init band pair into `dir` and returns their paths.
pub fn write_pair(dir: &Path, tag: &str, shift: f64) -> (PathBuf, PathBuf) {
    let (gt, init) = band_pair(64, 48, shift, 5.0);
    let g = dir.join(format!("{tag}_gt.png"));
    let i = dir.join(format!("{tag}_init.png"));
    save(&gt, &g);
    save(&init, &i);
    (g, i)
}

pub fn json(path: &Path) -> serde_json::Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

pub fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}
