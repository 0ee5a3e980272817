use num_complex::Complex64;
use thiserror::Error;

use crate::classes::ClassKind;
use crate::series::SeriesError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("alpha = {alpha} is outside the admissible range for class {kind}")]
    AlphaOutOfRange { kind: ClassKind, alpha: f64 },
    #[error("non-finite {0}")]
    NonFinite(&'static str),
    #[error("degenerate parameters: h2(x) = bx = {0} is too close to zero")]
    DegenerateH2(f64),
    #[error("functional series must have constant term 1, got {0}")]
    ConstantTerm(Complex64),
    #[error("unknown corollary `{0}`")]
    UnknownCorollary(String),
    #[error("{0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
