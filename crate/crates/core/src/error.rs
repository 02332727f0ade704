use thiserror::Error;

/// Rejected `(n, s, k)` parameter triples.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("n must be greater than 1 (got {0})")]
    NTooSmall(i64),
    #[error("n = {0} exceeds the supported maximum of {max}", max = crate::majid::MAX_N)]
    NTooLarge(i64),
    #[error("s must lie in [0, n-1] (got s = {s}, n = {n})")]
    SOutOfRange { s: i64, n: i64 },
    #[error("q = zeta^{k} is not an n-th root of qq^s: k = {k} is not congruent to s = {s} mod n = {n}")]
    ExponentMismatch { k: i64, s: i64, n: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("Gaussian binomial ({m} choose {k}) requires k <= m")]
    BinomialRange { m: usize, k: usize },
    #[error("indecomposable V({i},{e}) is out of range for n = {n}, d = {d}")]
    InvalidClass { i: usize, e: usize, n: usize, d: usize },
    #[error("path p_{i}^{l} is out of range for n = {n}, d = {d}")]
    InvalidPath { i: usize, l: usize, n: usize, d: usize },
    #[error("representation is not nilpotent: T^{power} is nonzero at vertex {vertex}")]
    NotNilpotent { vertex: usize, power: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("field mismatch: expected Q(zeta_{expected}), found Q(zeta_{found})")]
    FieldMismatch { expected: u32, found: u32 },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("index must be positive, got {0}")]
    ZeroIndex(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
