//! Color-bleeding measurement for colorized images.
//!
//! The crate is `no_std` (with `alloc`) and carries the pure numeric core:
//!
//! - [`imaging`]: sRGB/CIE Lab conversion, Gaussian smoothing, Sobel gradient
//!   magnitude, a Canny edge extractor and binary mask morphology.
//! - [`scribble`]: synthesis of pseudo-scribbles that mark chroma edges present
//!   in a ground truth but lost in a colorization.
//! - [`metrics`]: masked gradient discrepancies, kernel-local PSNR, SLIC
//!   superpixels and the cluster discrepancy ratio (CDR).
//!
//! Decoding, file formats and the command line live in the `bleedmeter` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod imaging;
pub mod metrics;
pub mod scribble;

pub use error::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;
