//! Pseudo-scribble synthesis.
//!
//! A pseudo-scribble marks one chroma edge that the ground truth has and the
//! colorization lost: Canny runs on the `a`/`b` planes of both images (the
//! colorization with a relaxed high threshold), the colorization's edges are
//! removed from the ground truth's, one surviving 8-connected component is
//! picked at random and thickened into a stroke.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::imaging::{
    canny, check_dims, dilate_chebyshev, dilate_disk, label_components, BinaryMask, CannyParams,
    LabImage,
};
use crate::{Error, Result};

pub const MIN_WIDTH: u32 = 1;
pub const MAX_WIDTH: u32 = 11;

/// A synthesized stroke.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scribble {
    /// The thickened stroke.
    pub mask: BinaryMask,
    /// The 1-pixel edge component the stroke was grown from.
    pub skeleton: BinaryMask,
    pub width: u32,
    /// Label of the chosen component among the components of the edge difference.
    pub source_component_id: u32,
}

impl Scribble {
    /// Wraps an externally drawn stroke. Its own pixels serve as the skeleton.
    pub fn from_mask(mask: BinaryMask, width: u32) -> Result<Self> {
        check_width(width)?;
        if mask.is_empty() {
            return Err(Error::InvalidParams("scribble mask is empty"));
        }
        Ok(Self {
            skeleton: mask.clone(),
            mask,
            width,
            source_component_id: 0,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScribbleParams {
    /// Canny parameters for the ground truth. The colorization uses
    /// [`CannyParams::relaxed`] of these.
    pub canny_gt: CannyParams,
    /// Inclusive stroke width range, within `1..=11`.
    pub width_range: (u32, u32),
    pub min_component_length: usize,
    /// Tolerance for edge drift between the two Canny runs.
    pub init_edge_dilation_radius: usize,
    pub seed: u64,
}

impl Default for ScribbleParams {
    fn default() -> Self {
        Self {
            canny_gt: CannyParams::IMAGENET,
            width_range: (1, 5),
            min_component_length: 5,
            init_edge_dilation_radius: 1,
            seed: 0,
        }
    }
}

impl ScribbleParams {
    pub fn canny_init(&self) -> CannyParams {
        self.canny_gt.relaxed()
    }

    pub fn validate(&self) -> Result<()> {
        self.canny_gt.validate()?;
        let (lo, hi) = self.width_range;
        if lo > hi || lo < MIN_WIDTH || hi > MAX_WIDTH {
            return Err(Error::InvalidParams("width range must be a nonempty subrange of 1..=11"));
        }
        if self.min_component_length == 0 {
            return Err(Error::InvalidParams("min component length must be at least 1"));
        }
        Ok(())
    }
}

/// The evaluation region around a scribble: its Chebyshev dilation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionMask {
    pub mask: BinaryMask,
    pub radius: usize,
}

/// Canny edges of the `a` plane OR those of the `b` plane. A plane without
/// gradient contributes nothing; if both lack gradient the result is
/// [`Error::DegenerateInput`].
pub fn chroma_edges(img: &LabImage, params: &CannyParams) -> Result<BinaryMask> {
    let mut out: Option<BinaryMask> = None;
    for plane in img.chroma() {
        match canny(plane, params) {
            Ok(m) => {
                out = Some(match out {
                    Some(acc) => acc.union(&m)?,
                    None => m,
                })
            }
            Err(Error::DegenerateInput) => {}
            Err(e) => return Err(e),
        }
    }
    out.ok_or(Error::DegenerateInput)
}

/// Ground-truth edges with no colorization edge within `dilation_radius`.
pub fn edge_diff(
    gt_edges: &BinaryMask,
    init_edges: &BinaryMask,
    dilation_radius: usize,
) -> Result<BinaryMask> {
    check_dims(gt_edges.dims(), init_edges.dims())?;
    gt_edges.difference(&dilate_chebyshev(init_edges, dilation_radius))
}

/// Picks one 8-connected component of `diff` with at least `min_length`
/// pixels, uniformly at random. Returns the component and its label.
pub fn select_component(diff: &BinaryMask, min_length: usize, seed: u64) -> Result<(BinaryMask, u32)> {
    select_component_with(diff, min_length, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn select_component_with<R: Rng>(
    diff: &BinaryMask,
    min_length: usize,
    rng: &mut R,
) -> Result<(BinaryMask, u32)> {
    let comps = label_components(diff);
    let eligible: alloc::vec::Vec<u32> = comps
        .sizes()
        .iter()
        .enumerate()
        .filter(|(_, &s)| s >= min_length.max(1))
        .map(|(i, _)| i as u32)
        .collect();
    if eligible.is_empty() {
        return Err(Error::NoBleedingEdge);
    }
    // u64 range keeps the draw identical on 32- and 64-bit targets
    let pick = eligible[rng.gen_range(0..eligible.len() as u64) as usize];
    Ok((comps.mask_of(pick), pick))
}

fn check_width(width: u32) -> Result<()> {
    if (MIN_WIDTH..=MAX_WIDTH).contains(&width) {
        Ok(())
    } else {
        Err(Error::InvalidWidth(width))
    }
}

/// Thickens an edge component with a disk of diameter `width`.
pub fn width_transform(component: &BinaryMask, width: u32) -> Result<Scribble> {
    check_width(width)?;
    if component.is_empty() {
        return Err(Error::InvalidParams("edge component is empty"));
    }
    Ok(Scribble {
        mask: dilate_disk(component, width),
        skeleton: component.clone(),
        width,
        source_component_id: 0,
    })
}

pub fn region_mask(scribble: &Scribble, radius: usize) -> RegionMask {
    RegionMask {
        mask: dilate_chebyshev(&scribble.mask, radius),
        radius,
    }
}

/// Full pipeline. Deterministic for a fixed `params.seed`.
pub fn generate_pseudo_scribble(
    gt: &LabImage,
    init: &LabImage,
    params: &ScribbleParams,
) -> Result<Scribble> {
    check_dims(gt.dims(), init.dims())?;
    params.validate()?;
    let gt_edges = match chroma_edges(gt, &params.canny_gt) {
        Ok(m) => m,
        Err(Error::DegenerateInput) => return Err(Error::NoBleedingEdge),
        Err(e) => return Err(e),
    };
    let init_edges = match chroma_edges(init, &params.canny_init()) {
        Ok(m) => m,
        Err(Error::DegenerateInput) => BinaryMask::empty(init.width(), init.height()),
        Err(e) => return Err(e),
    };
    let diff = edge_diff(&gt_edges, &init_edges, params.init_edge_dilation_radius)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let (component, id) = select_component_with(&diff, params.min_component_length, &mut rng)?;
    let (lo, hi) = params.width_range;
    let width = rng.gen_range(lo..=hi);
    let mut scribble = width_transform(&component, width)?;
    scribble.source_component_id = id;
    Ok(scribble)
}
