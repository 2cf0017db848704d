use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes under substitution")]
    VanishingDenominator,
    #[error("odd power of {0}^(1/2) under a non-monomial binding")]
    HalfExponent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<usize>),
    #[error("box ({0}, {1}) lies outside the diagram")]
    BoxOutside(usize, usize),
    #[error("partitions of different sizes: {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("{0} is not obtained from {1} by adding one box")]
    NotAdjacent(String, String),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("linear system has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("enumeration bound exceeded ({0} terms)")]
    BoundExceeded(usize),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
