use thiserror::Error;

/// Errors raised by the operator calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation degrees differ: {left} vs {right}")]
    CapMismatch { left: usize, right: usize },

    #[error("product would drop nonzero terms above degree {cap} (true degree {degree})")]
    TruncationLoss { cap: usize, degree: usize },

    #[error("sequence is not admissible: {0}")]
    NotAdmissible(String),

    #[error("index {index} exceeds truncation degree {cap}")]
    IndexOutOfCap { index: usize, cap: usize },

    #[error("k = {k} exceeds n = {n}")]
    KExceedsN { n: usize, k: usize },

    #[error("missing parameter: {0}")]
    MissingParameter(&'static str),

    #[error("guard band exceeded: {0}")]
    GuardBandExceeded(String),

    #[error("series is not invertible (zero constant term)")]
    NotInvertible,

    #[error("series cannot be composed: {0}")]
    NotComposable(&'static str),

    #[error("series are built over different psi sequences")]
    PsiMismatch,

    #[error("operator does not lower degree by exactly one: {0}")]
    NotDegreeLowering(String),

    #[error("subdiagonal coefficient b({n},1) vanishes")]
    ZeroSubdiagonal { n: usize },

    #[error("not a delta operator: {0}")]
    NotDeltaOperator(&'static str),

    #[error("requested index or degree {requested} exceeds limit {limit}")]
    CapExceeded { requested: usize, limit: usize },

    #[error("triangular system is singular at index {0}")]
    SingularSystem(usize),

    #[error("basic sequence does not belong to this operator: {0}")]
    BasisMismatch(String),

    #[error("operator is not shift invariant")]
    NotShiftInvariant,

    #[error("residue {j} is not in 0..{m} (or order m < 2)")]
    BadResidue { m: usize, j: usize },

    #[error("sample q = {0} is not in the open interval (0, 1)")]
    BadSample(String),

    #[error("q^{power} = 1; q-integral undefined")]
    RootOfUnity { power: usize },

    #[error("rational function vanishes or is undefined at {0}")]
    ZeroDenominator(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
