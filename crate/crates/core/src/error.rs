use std::ops::Range;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("the dictionary is empty")]
    EmptyDictionary,
    /// `index` is 1-based, in dictionary order.
    #[error("pattern {index} is empty")]
    EmptyPattern { index: usize },
    #[error("invalid re-encoding window {window:?} for a string of length {len}")]
    InvalidWindow { window: Range<usize>, len: usize },
    #[error("encoding has length {encoded} but the string has length {len}")]
    EncodingLength { encoded: usize, len: usize },
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
}
