use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: expected {expected}, found {found}")]
    DimensionMismatch {
        op: &'static str,
        expected: String,
        found: String,
    },

    #[error("{what} index {index} out of range")]
    IndexOutOfRange { what: &'static str, index: usize },

    #[error("matrix is not Hermitian: max |M - M^dagger| = {deviation:e} exceeds {tolerance:e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error(
        "ill-conditioned rank decision: singular value {singular_value:e} lies within two \
         orders of magnitude of the threshold {threshold:e}"
    )]
    IllConditionedRank { threshold: f64, singular_value: f64 },

    #[error("state vector is not normalized (norm {norm})")]
    Unnormalized { norm: f64 },

    #[error("correlation operator is only defined on a rank-{rank} range")]
    RankDeficient { rank: usize },

    #[error("observable does not commute with the reduced state: ||[A1, rho1]|| = {norm:e}")]
    CommutatorViolation { norm: f64 },

    #[error("input operator is zero")]
    ZeroInput,

    #[error("not a state: {0}")]
    NotState(String),

    #[error("not a maximally-disordered-subsystem state: reduced-state deviation {deviation:e}")]
    NotMds { deviation: f64 },

    #[error("classification is not a binary edge")]
    NotEdge,

    #[error("observable has a degenerate spectrum (gap {gap:e})")]
    DegenerateObservable { gap: f64 },

    #[error("empty state list")]
    EmptyInput,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for failures that indicate a logic or tolerance fault rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistent(_))
    }
}
