use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("image dimensions must be non-zero (got {width}x{height})")]
    EmptyImage { width: usize, height: usize },
    #[error("pixel buffer length {actual} does not match {width}x{height}x3")]
    BufferLength { width: usize, height: usize, actual: usize },
    #[error("dimension mismatch: image is {image:?}, mask is {mask:?}")]
    DimensionMismatch { image: (usize, usize), mask: (usize, usize) },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("invalid threshold: {0}")]
    InvalidThreshold(&'static str),
    #[error("degenerate line fit: {0}")]
    DegenerateFit(&'static str),
    #[error("sub-type {subtype} does not belong to category {category}")]
    InvalidRoute { category: &'static str, subtype: &'static str },
    #[error("fixture parameter out of range: {0}")]
    FixtureParam(String),
    #[error("metrics computed on different datasets ({left:?} vs {right:?})")]
    DatasetMismatch { left: Option<String>, right: Option<String> },
}
