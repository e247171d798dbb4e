use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not a unit: gcd({a}, {modulus}) != 1")]
    NotAUnit { a: i64, modulus: u64 },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("not coprime: gcd({p}, {q}) != 1")]
    NotCoprime { p: u64, q: i64 },
    #[error("hypothesis n >= 2g violated (n = {n}, g = {g})")]
    CircleBundleHypothesis { n: u64, g: u64 },
    #[error("torus knot parameters must be coprime and at least 2 (got {p}, {q})")]
    InvalidTorusKnot { p: u64, q: u64 },
    #[error("not a normalized Alexander polynomial (value at T = 1 is {0})")]
    NotNormalized(i64),
    #[error("not a lens-space knot profile (negative torsion coefficient t_{index} = {value})")]
    NotLensSpaceKnot { index: usize, value: i64 },
    #[error("correspondence not admissible: {0}")]
    InadmissibleCorrespondence(String),
    #[error("invalid correction-term pair: d_+1/2 - 1 must not exceed d_-1/2")]
    InvalidCorrectionPair,
    #[error("matrix is not symmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },
    #[error("matrix shape mismatch: expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("lattice is not negative definite")]
    NotNegativeDefinite,
    #[error("exhaustive search refused: rank {0} exceeds the cap of {max}", max = crate::lattice::MAX_SEARCH_RANK)]
    RankTooLarge(usize),
    #[error("eigenvalue lower bound is inconclusive: {0}")]
    EigenBound(&'static str),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;
