//! Binary dilation and connected-component labeling.

use alloc::vec::Vec;

use super::BinaryMask;

/// Dilation by a `(2r+1) x (2r+1)` square, i.e. every pixel within
/// Chebyshev distance `radius` of an on-pixel. Clipped at the borders.
pub fn dilate_chebyshev(mask: &BinaryMask, radius: usize) -> BinaryMask {
    if radius == 0 {
        return mask.clone();
    }
    let (w, h) = mask.dims();
    let rows = sweep(mask.bits(), w, h, radius, true);
    let bits = sweep(&rows, w, h, radius, false);
    BinaryMask::new(w, h, bits).expect("dimensions preserved")
}

// 1-D running-window OR along rows or columns via prefix counts.
fn sweep(bits: &[bool], w: usize, h: usize, r: usize, horizontal: bool) -> Vec<bool> {
    let (len, lines) = if horizontal { (w, h) } else { (h, w) };
    let idx = |line: usize, k: usize| if horizontal { line * w + k } else { k * w + line };
    let mut out = alloc::vec![false; w * h];
    let mut prefix = alloc::vec![0usize; len + 1];
    for line in 0..lines {
        for k in 0..len {
            prefix[k + 1] = prefix[k] + usize::from(bits[idx(line, k)]);
        }
        for k in 0..len {
            let lo = k.saturating_sub(r);
            let hi = (k + r + 1).min(len);
            out[idx(line, k)] = prefix[hi] > prefix[lo];
        }
    }
    out
}

/// Offsets of a digital disk of the given diameter: `dx^2 + dy^2 <= (d/2)^2`.
/// Diameter 1 is the single origin pixel.
pub fn disk_offsets(diameter: u32) -> Vec<(isize, isize)> {
    let r = diameter as f64 / 2.0;
    let r2 = r * r;
    let reach = (diameter / 2) as isize;
    let mut out = Vec::new();
    for dy in -reach..=reach {
        for dx in -reach..=reach {
            if ((dx * dx + dy * dy) as f64) <= r2 {
                out.push((dx, dy));
            }
        }
    }
    out
}

/// Dilation by a disk of the given diameter.
pub fn dilate_disk(mask: &BinaryMask, diameter: u32) -> BinaryMask {
    let offsets = disk_offsets(diameter);
    let (w, h) = mask.dims();
    let mut out = BinaryMask::empty(w, h);
    for (x, y) in mask.points() {
        for &(dx, dy) in &offsets {
            let (nx, ny) = (x as isize + dx, y as isize + dy);
            if nx >= 0 && ny >= 0 && (nx as usize) < w && (ny as usize) < h {
                out.set(nx as usize, ny as usize, true);
            }
        }
    }
    out
}

/// 8-connected components of a mask, numbered in raster order of their first pixel.
#[derive(Debug, Clone)]
pub struct Components {
    width: usize,
    height: usize,
    labels: Vec<u32>,
    sizes: Vec<usize>,
}

const UNLABELED: u32 = u32::MAX;

impl Components {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn label_at(&self, x: usize, y: usize) -> Option<u32> {
        match self.labels[y * self.width + x] {
            UNLABELED => None,
            l => Some(l),
        }
    }

    pub fn mask_of(&self, id: u32) -> BinaryMask {
        BinaryMask::new(
            self.width,
            self.height,
            self.labels.iter().map(|&l| l == id).collect(),
        )
        .expect("dimensions preserved")
    }
}

pub fn label_components(mask: &BinaryMask) -> Components {
    let (w, h) = mask.dims();
    let mut labels = alloc::vec![UNLABELED; w * h];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for start in 0..w * h {
        if !mask.bits()[start] || labels[start] != UNLABELED {
            continue;
        }
        let id = sizes.len() as u32;
        let mut size = 0;
        labels[start] = id;
        stack.push(start);
        while let Some(i) = stack.pop() {
            size += 1;
            let (x, y) = (i % w, i / w);
            for ny in y.saturating_sub(1)..=(y + 1).min(h - 1) {
                for nx in x.saturating_sub(1)..=(x + 1).min(w - 1) {
                    let j = ny * w + nx;
                    if mask.bits()[j] && labels[j] == UNLABELED {
                        labels[j] = id;
                        stack.push(j);
                    }
                }
            }
        }
        sizes.push(size);
    }
    Components {
        width: w,
        height: h,
        labels,
        sizes,
    }
}
