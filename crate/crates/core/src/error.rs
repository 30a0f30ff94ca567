use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("buffer of length {actual} does not match {width}x{height} (expected {expected})")]
    BadBuffer {
        width: usize,
        height: usize,
        expected: usize,
        actual: usize,
    },
    #[error("image is {width}x{height}; filtering needs at least 3x3")]
    TooSmall { width: usize, height: usize },
    #[error("dimension mismatch: {0:?} vs {1:?}")]
    DimensionMismatch((usize, usize), (usize, usize)),
    #[error("invalid parameter: {0}")]
    InvalidParams(&'static str),
    #[error("input plane has no gradient (constant after smoothing)")]
    DegenerateInput,
    #[error("no bleeding edge found")]
    NoBleedingEdge,
    #[error("scribble width {0} outside 1..=11")]
    InvalidWidth(u32),
    #[error("evaluation region is empty")]
    EmptyRegion,
    #[error("requested {requested} clusters for {pixels} pixels")]
    TooManyClusters { requested: usize, pixels: usize },
    #[error("no ground-truth edges in either chroma channel")]
    NoEdges,
    #[error("kernel Full is not defined for the cluster discrepancy ratio")]
    KernelFullUnsupported,
}
