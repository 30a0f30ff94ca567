//! Color conversion and low-level filtering.

mod canny;
mod color;
mod filter;
mod mask;
mod morphology;
mod plane;

pub use canny::{canny, canny_magnitude, CannyParams};
pub use color::{lab_to_rgb, lab_to_rgb_pixel, rgb_to_lab, rgb_to_lab_pixel, LabImage, RgbImage};
pub use filter::{gaussian_blur, gaussian_kernel, sobel_gradients, sobel_magnitude};
pub use mask::BinaryMask;
pub use morphology::{
    dilate_chebyshev, dilate_disk, disk_offsets, label_components, Components,
};
pub use plane::Plane;

use crate::{Error, Result};

pub(crate) fn check_dims(a: (usize, usize), b: (usize, usize)) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(a, b))
    }
}
