use alloc::string::String;

use crate::{BigCount, MAX_K};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("base k = {0} is outside 2..={MAX_K}")]
    InvalidBase(usize),
    #[error("table for k = {k}, n = {n} exceeds the supported size")]
    TableTooLarge { k: usize, n: usize },
    #[error("value {value} is not a residue mod {k}")]
    ValueOutOfRange { value: usize, k: usize },
    #[error("index {index} is outside 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("variable position {position} is outside 1..={n}")]
    PositionOutOfRange { position: usize, n: usize },
    #[error("cannot identify variable {0} with itself")]
    SamePosition(usize),
    #[error("shape mismatch: (k = {}, n = {}) vs (k = {}, n = {})", .left.0, .left.1, .right.0, .right.1)]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{family}: {reason}")]
    ParameterRange {
        family: &'static str,
        reason: String,
    },
    #[error("refusing to enumerate {required} items (cap is {cap})")]
    Infeasible { required: BigCount, cap: u64 },
}

impl Error {
    pub(crate) fn range(family: &'static str, reason: impl Into<String>) -> Self {
        Error::ParameterRange {
            family,
            reason: reason.into(),
        }
    }
}
