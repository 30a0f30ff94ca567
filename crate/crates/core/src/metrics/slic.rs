//! Single-channel SLIC superpixels.
//!
//! Seeds sit on a regular grid of spacing `S = sqrt(N / k)` and are nudged to
//! the lowest-gradient pixel of their 3x3 neighborhood. Each iteration assigns
//! every pixel to the closest center searched within `2S x 2S` windows using
//! `D^2 = d_value^2 + (d_xy / S)^2 m^2`, then moves centers to the mean of
//! their members. Afterwards every label keeps only its largest 4-connected
//! piece; the other fragments join the neighboring label they share the most
//! border with.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::imaging::{gaussian_blur, Plane};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlicParams {
    pub n_clusters: usize,
    pub compactness: f64,
    /// Pre-smoothing; 0 disables it.
    pub sigma: f64,
    pub max_iterations: usize,
}

impl Default for SlicParams {
    fn default() -> Self {
        Self {
            n_clusters: 250,
            compactness: 10.0,
            sigma: 1.0,
            max_iterations: 10,
        }
    }
}

impl SlicParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_clusters < 2 {
            return Err(Error::InvalidParams("slic needs at least 2 clusters"));
        }
        if !(self.compactness > 0.0 && self.compactness.is_finite()) {
            return Err(Error::InvalidParams("slic compactness must be positive"));
        }
        if !(self.sigma >= 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidParams("slic sigma must be non-negative"));
        }
        Ok(())
    }
}

/// Per-pixel cluster labels `0..n_clusters`, each label used at least once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterMap {
    width: usize,
    height: usize,
    labels: Vec<u32>,
    n_clusters: usize,
}

impl ClusterMap {
    /// Compacts arbitrary labels to `0..n` in order of first appearance.
    pub fn from_labels(width: usize, height: usize, labels: &[u32]) -> Result<Self> {
        if labels.len() != width * height {
            return Err(Error::BadBuffer {
                width,
                height,
                expected: width * height,
                actual: labels.len(),
            });
        }
        let mut remap: alloc::collections::BTreeMap<u32, u32> = Default::default();
        let compact = labels
            .iter()
            .map(|&l| {
                let next = remap.len() as u32;
                *remap.entry(l).or_insert(next)
            })
            .collect();
        Ok(Self {
            width,
            height,
            labels: compact,
            n_clusters: remap.len(),
        })
    }

    /// Everything in one cluster.
    pub fn uniform(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            labels: alloc::vec![0; width * height],
            n_clusters: usize::from(width * height > 0),
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

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn n_clusters(&self) -> usize {
        self.n_clusters
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.labels[y * self.width + x]
    }
}

#[derive(Debug, Clone, Copy)]
struct Center {
    value: f64,
    x: f64,
    y: f64,
}

pub fn slic(channel: &Plane, params: &SlicParams) -> Result<ClusterMap> {
    params.validate()?;
    let (w, h) = channel.dims();
    let n = w * h;
    if params.n_clusters > n {
        return Err(Error::TooManyClusters {
            requested: params.n_clusters,
            pixels: n,
        });
    }
    let img = if params.sigma > 0.0 {
        gaussian_blur(channel, params.sigma)?
    } else {
        channel.clone()
    };
    let step = libm::sqrt(n as f64 / params.n_clusters as f64);
    let mut centers = seed_centers(&img, step);
    let spatial = (params.compactness / step) * (params.compactness / step);

    let mut labels = alloc::vec![u32::MAX; n];
    let mut dist = alloc::vec![f64::INFINITY; n];
    for _ in 0..params.max_iterations.max(1) {
        dist.iter_mut().for_each(|d| *d = f64::INFINITY);
        let mut next = alloc::vec![u32::MAX; n];
        for (k, c) in centers.iter().enumerate() {
            let x0 = libm::floor(c.x - step).max(0.0) as usize;
            let x1 = (libm::ceil(c.x + step) as usize).min(w - 1);
            let y0 = libm::floor(c.y - step).max(0.0) as usize;
            let y1 = (libm::ceil(c.y + step) as usize).min(h - 1);
            for y in y0..=y1 {
                for x in x0..=x1 {
                    let i = y * w + x;
                    let d = distance(c, img.values()[i], x, y, spatial);
                    if d < dist[i] {
                        dist[i] = d;
                        next[i] = k as u32;
                    }
                }
            }
        }
        // pixels no window reached (centers drifted apart) go to the nearest center
        for (i, label) in next.iter_mut().enumerate() {
            if *label == u32::MAX {
                *label = nearest(&centers, img.values()[i], i % w, i / w, spatial);
            }
        }
        let stable = next == labels;
        labels = next;
        if stable {
            break;
        }
        update_centers(&mut centers, &labels, &img);
    }
    let labels = enforce_connectivity(&labels, w, h);
    ClusterMap::from_labels(w, h, &labels)
}

#[inline]
fn distance(c: &Center, v: f64, x: usize, y: usize, spatial: f64) -> f64 {
    let dv = v - c.value;
    let dx = x as f64 - c.x;
    let dy = y as f64 - c.y;
    dv * dv + (dx * dx + dy * dy) * spatial
}

fn nearest(centers: &[Center], v: f64, x: usize, y: usize, spatial: f64) -> u32 {
    let mut best = (f64::INFINITY, 0u32);
    for (k, c) in centers.iter().enumerate() {
        let d = distance(c, v, x, y, spatial);
        if d < best.0 {
            best = (d, k as u32);
        }
    }
    best.1
}

fn seed_centers(img: &Plane, step: f64) -> Vec<Center> {
    let (w, h) = img.dims();
    let nx = (libm::round(w as f64 / step) as usize).clamp(1, w);
    let ny = (libm::round(h as f64 / step) as usize).clamp(1, h);
    let grad = |x: usize, y: usize| {
        let (xi, yi) = (x as isize, y as isize);
        let gx = img.get_clamped(xi + 1, yi) - img.get_clamped(xi - 1, yi);
        let gy = img.get_clamped(xi, yi + 1) - img.get_clamped(xi, yi - 1);
        gx * gx + gy * gy
    };
    let mut centers = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            // continuous grid position; pixel centers sit at integer coordinates
            let fx = (i as f64 + 0.5) * w as f64 / nx as f64 - 0.5;
            let fy = (j as f64 + 0.5) * h as f64 / ny as f64 - 0.5;
            let (cx, cy) = (libm::round(fx) as usize, libm::round(fy) as usize);
            let start = grad(cx, cy);
            let mut best: Option<(f64, usize, usize)> = None;
            for y in cy.saturating_sub(1)..=(cy + 1).min(h - 1) {
                for x in cx.saturating_sub(1)..=(cx + 1).min(w - 1) {
                    let g = grad(x, y);
                    if g < best.map_or(start, |b| b.0) {
                        best = Some((g, x, y));
                    }
                }
            }
            centers.push(match best {
                Some((_, x, y)) => Center {
                    value: img.get(x, y),
                    x: x as f64,
                    y: y as f64,
                },
                None => Center {
                    value: img.get(cx, cy),
                    x: fx,
                    y: fy,
                },
            });
        }
    }
    centers
}

fn update_centers(centers: &mut [Center], labels: &[u32], img: &Plane) {
    let w = img.width();
    let mut acc = alloc::vec![(0.0, 0.0, 0.0, 0usize); centers.len()];
    for (i, &l) in labels.iter().enumerate() {
        let a = &mut acc[l as usize];
        a.0 += img.values()[i];
        a.1 += (i % w) as f64;
        a.2 += (i / w) as f64;
        a.3 += 1;
    }
    for (c, &(v, x, y, count)) in centers.iter_mut().zip(&acc) {
        if count > 0 {
            let n = count as f64;
            *c = Center {
                value: v / n,
                x: x / n,
                y: y / n,
            };
        }
    }
}

fn enforce_connectivity(labels: &[u32], w: usize, h: usize) -> Vec<u32> {
    const NONE: usize = usize::MAX;
    let n = w * h;
    let neighbors = |i: usize| {
        let (x, y) = (i % w, i / w);
        [
            (x > 0).then(|| i - 1),
            (x + 1 < w).then(|| i + 1),
            (y > 0).then(|| i - w),
            (y + 1 < h).then(|| i + w),
        ]
        .into_iter()
        .flatten()
    };

    // 4-connected pieces
    let mut piece = alloc::vec![NONE; n];
    let mut piece_label = Vec::new();
    let mut piece_size = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if piece[start] != NONE {
            continue;
        }
        let id = piece_label.len();
        let l = labels[start];
        piece[start] = id;
        queue.push_back(start);
        let mut size = 0;
        while let Some(i) = queue.pop_front() {
            size += 1;
            for j in neighbors(i) {
                if piece[j] == NONE && labels[j] == l {
                    piece[j] = id;
                    queue.push_back(j);
                }
            }
        }
        piece_label.push(l);
        piece_size.push(size);
    }

    // the largest piece of each label keeps it (first one on ties)
    let mut main: alloc::collections::BTreeMap<u32, usize> = Default::default();
    for (p, (&l, &s)) in piece_label.iter().zip(&piece_size).enumerate() {
        match main.get(&l) {
            Some(&q) if piece_size[q] >= s => {}
            _ => {
                main.insert(l, p);
            }
        }
    }
    let mut settled: Vec<Option<u32>> = piece_label
        .iter()
        .enumerate()
        .map(|(p, l)| (main[l] == p).then_some(*l))
        .collect();

    let mut members: Vec<Vec<usize>> = alloc::vec![Vec::new(); piece_label.len()];
    for (i, &p) in piece.iter().enumerate() {
        if settled[p].is_none() {
            members[p].push(i);
        }
    }
    let mut pending: Vec<usize> = (0..piece_label.len()).filter(|&p| settled[p].is_none()).collect();
    while !pending.is_empty() {
        let mut deferred = Vec::new();
        let before = pending.len();
        for p in pending {
            let mut votes: alloc::collections::BTreeMap<u32, usize> = Default::default();
            for &i in &members[p] {
                for j in neighbors(i) {
                    if let Some(l) = settled[piece[j]] {
                        if piece[j] != p {
                            *votes.entry(l).or_default() += 1;
                        }
                    }
                }
            }
            // most shared border, smallest label on ties
            match votes.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0))) {
                Some((&l, _)) => settled[p] = Some(l),
                None => deferred.push(p),
            }
        }
        if deferred.len() == before {
            // isolated fragments (cannot happen on a connected raster)
            for p in deferred {
                settled[p] = Some(piece_label[p]);
            }
            break;
        }
        pending = deferred;
    }
    piece.iter().map(|&p| settled[p].expect("all pieces settled")).collect()
}
