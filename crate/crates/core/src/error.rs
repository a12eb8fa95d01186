use thiserror::Error;

use crate::scalar::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed fields: {0} and {1}")]
    MixedFields(Field, Field),
    #[error("window overflow: {0}")]
    WindowOverflow(String),
    #[error("regime violation: {0}")]
    RegimeViolation(String),
    #[error("not conilpotent: {0}")]
    NotConilpotent(String),
    #[error("not graded-finite: {0}")]
    NotGradedFinite(String),
    #[error("not an atom: {0}")]
    NotAnAtom(String),
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("differential does not preserve the ideal: {0}")]
    InconsistentDifferential(String),
    #[error("enumeration too large: {0}")]
    EnumerationTooLarge(String),
    #[error("sign convention mismatch: {0}")]
    ConventionMismatch(String),
    #[error("not cocommutative: {0}")]
    NotCocommutative(String),
    #[error("not commutative: {0}")]
    NotCommutative(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("missing structure: {0}")]
    MissingStructure(String),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
