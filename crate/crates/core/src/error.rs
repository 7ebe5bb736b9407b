use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("edge {0}-{1} lies inside a declared side")]
    EdgeWithinSide(usize, usize),

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),

    #[error("graph is not regular")]
    NotRegular,

    #[error("{what} too large: {size} exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no simple graph after {0} configuration-model attempts")]
    RejectionLimit(usize),

    #[error("incompatibility graph is disconnected")]
    Disconnected,

    #[error("enumeration budget exceeded: more than {0} clusters")]
    BudgetExceeded(usize),

    #[error("estimated selection mass {mass} at vertex {vertex} exceeds 1; the Kotecký–Preiss condition likely fails")]
    ProbabilityMass { vertex: usize, mass: f64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable code, used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::VertexOutOfRange { .. } => "vertex-out-of-range",
            Error::DuplicateEdge(..) => "duplicate-edge",
            Error::SelfLoop(_) => "self-loop",
            Error::NotBipartite => "not-bipartite",
            Error::EdgeWithinSide(..) => "edge-within-side",
            Error::InvalidBipartition(_) => "invalid-bipartition",
            Error::NotRegular => "not-regular",
            Error::TooLarge { .. } => "cap-exceeded",
            Error::Infeasible(_) => "infeasible",
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::RejectionLimit(_) => "rejection-limit",
            Error::Disconnected => "disconnected",
            Error::BudgetExceeded(_) => "budget-exceeded",
            Error::ProbabilityMass { .. } => "kp-failure",
            Error::Parse { .. } => "parse-error",
            Error::Io(_) => "io-error",
            Error::Json(_) => "json-error",
        }
    }
}
