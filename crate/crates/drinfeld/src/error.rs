use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("search space of {size} exceeds the enumeration cap {cap}")]
    CapExceeded { size: u128, cap: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("value does not lie in the required field level")]
    NotInField,
    #[error("{0} is not irreducible")]
    NotIrreducible(String),
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("operation undefined on zero input")]
    ZeroInput,
    #[error("incompatible modulus: {0}")]
    IncompatibleModulus(String),
    #[error("bad reduction: leading coefficient vanishes modulo the prime")]
    BadReduction,
    #[error("theta^{e} does not equal T in the coefficient ring")]
    ThetaPowerMismatch { e: usize },
    #[error("module is not normalized (leading coefficient must be 1)")]
    NotNormalized,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("level n must be at least 1 and at most the truncation")]
    BadLevel,
    #[error("leading coefficient is zero")]
    ZeroLeading,
    #[error("tuple violates the basic J-invariant conditions")]
    BadDeltaTuple,
    #[error("truncation {0} too small to certify the bound")]
    TruncationTooSmall(usize),
    #[error("precision exhausted: valuation not visible below theta^{0}")]
    PrecisionExhausted(usize),
    #[error("wrong length: expected {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("matrix product left the cyclic-algebra image")]
    ClosureFailure,
    #[error("characteristic polynomial has coefficients outside F_q[T]")]
    NotGaloisStable,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("X^r - radicand is reducible")]
    ReducibleRadicand,
    #[error("prime of degree {deg} is not supersingular for rank {r}")]
    NotSupersingular { deg: usize, r: usize },
    #[error("degree audit found {extra} solutions outside the window (coordinate {coordinate:?})")]
    AuditFailed { coordinate: Option<usize>, extra: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
