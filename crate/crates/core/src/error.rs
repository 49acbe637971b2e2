use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("polynomial is not monic: leading coefficient is {0} mod p")]
    NotMonic(u64),
    #[error("polynomial is not invertible: constant term is 0 mod p")]
    NotInvertible,
    #[error("polynomial has degree zero")]
    DegreeZero,
    #[error("matrix is singular over GF(p)")]
    SingularRho,
    #[error("functional is identically zero")]
    ZeroOmega,
    #[error("the group is not a p-group (some rho-orbit avoids the kernel)")]
    NotTorsion,
    #[error("f1 * f2 does not equal f over GF(p)")]
    NotAFactorization,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    BadVector { expected: usize, got: usize },
    #[error("matrix has wrong shape for this spec")]
    BadMatrix,
    #[error("portrait depths or primes differ ({0} vs {1})")]
    DepthMismatch(usize, usize),
    #[error("vertex {0:?} is not a vertex of this portrait")]
    BadVertex(Vec<u32>),
    #[error("digit {digit} out of range for p = {p}")]
    BadDigit { digit: u32, p: u32 },
    #[error("activity vector is malformed: {0}")]
    BadPortrait(String),
    #[error("cannot parse word: {0}")]
    WordSyntax(String),
    #[error("budget exceeded: {reached} elements reached (limit {limit_elements} elements / {limit_bytes} bytes)")]
    BudgetExceeded {
        reached: usize,
        limit_elements: usize,
        limit_bytes: usize,
    },
    #[error("degree m = {0} is too small; this computation needs m >= 2")]
    DegreeTooSmall(usize),
    #[error("insufficient depth: {0}")]
    InsufficientDepth(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("the supplied set of portraits is not a group")]
    NotAGroup,
    #[error("portrait depth {depth} is shallower than the pattern depth {pattern_depth}")]
    TooShallow { depth: usize, pattern_depth: usize },
    #[error("malformed file: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
