use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller passed arguments outside an operation's contract.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("series reciprocal needs a single pure power of k as leading term, got `{0}`")]
    SingularLeadingTerm(String),

    #[error("jet has {have} entries but derivative k^({need}) is required")]
    MissingDerivative { have: usize, need: usize },

    #[error("jet value k = 0 while the polynomial contains negative powers of k")]
    SingularJet,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("potential `{kind}`: {reason}")]
    InvalidPotential { kind: String, reason: String },

    #[error("k^2 is singular at z = {0}")]
    SingularPoint(String),

    #[error("integration path error: {0}")]
    Path(String),

    #[error("ODE integration failed near z = {z}: {reason}")]
    Integration { z: String, reason: String },

    #[error("asymptotic fit rejected: {0}")]
    FitQuality(String),

    #[error("shooting oracle: {0}")]
    Oracle(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
