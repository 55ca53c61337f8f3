use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("file not found: {}", .0.display())]
    FileNotFound(PathBuf),
    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),
    #[error("corrupt image: {0}")]
    CorruptImage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid image: {0}")]
    InvalidImage(String),
    #[error("threshold {t} out of range for {levels} levels")]
    ThresholdOutOfRange { t: usize, levels: usize },
    #[error("segment [{lo}, {hi}] holds no probability mass")]
    EmptySegment { lo: usize, hi: usize },
    #[error("no admissible threshold: histogram is too concentrated")]
    NoValidThreshold,
    #[error("partial tone maps do not cover [0, {last}] exactly")]
    DomainGap { last: usize },
    #[error("{tiles_x}x{tiles_y} tiles do not fit a {width}x{height} image")]
    TilesLargerThanImage {
        tiles_x: usize,
        tiles_y: usize,
        width: usize,
        height: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
