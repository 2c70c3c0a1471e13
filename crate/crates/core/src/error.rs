use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size guard exceeded: {what} would have {size} vertices (limit {limit})")]
    SizeExceeded { what: String, size: u128, limit: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),

    #[error("vertex `{0}` has no positive-probability side information (Assumption 1)")]
    UnsupportedSymbol(String),

    #[error("vertex `{0}` is isolated; the edge-indexed instance cannot support it")]
    IsolatedVertex(String),

    #[error("solver budget exhausted; best bracket [{lower}, {upper}]")]
    Timeout { lower: f64, upper: f64 },

    #[error("improper coloring: adjacent vertices `{0}` and `{1}` share a color")]
    ImproperColoring(String, String),

    #[error("representation modes differ (exact vs float)")]
    ModeMismatch,

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("representation target does not match the complement of the m-instance confusion graph: {0}")]
    RepresentationMismatch(String),

    #[error("verification failed for y = {y}: `{x}` and `{x_prime}` decode to different values but their states are not orthogonal")]
    VerificationFailure { y: String, x: String, x_prime: String },

    #[error("structure violation: {0}")]
    StructureViolation(String),

    #[error("solver did not converge: {0}")]
    Convergence(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
