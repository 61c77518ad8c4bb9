use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex count must be positive")]
    EmptyGraph,

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),

    #[error("operation requires a transitive digraph")]
    NotTransitive,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// A self-check failed. Seeing this means there is a bug in this crate.
    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("argument {value} is outside the supported domain: {reason}")]
    Domain { value: String, reason: &'static str },

    #[error("n = {0} exceeds the supported maximum of 2^31")]
    TooLarge(u64),

    #[error("tables not prepared for n = {n} (prepared up to {prepared})")]
    NotPrepared { n: u64, prepared: u64 },

    #[error("{k} is not an achievable weight on {n} vertices ({})", neighbor_text(.below, .above))]
    NotAchievable {
        n: u64,
        k: u64,
        below: Option<u64>,
        above: Option<u64>,
    },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("cache error: {0}")]
    Cache(String),
}

impl Error {
    pub(crate) fn domain(value: impl ToString, reason: &'static str) -> Self {
        Error::Domain {
            value: value.to_string(),
            reason,
        }
    }
}

fn neighbor_text(below: &Option<u64>, above: &Option<u64>) -> String {
    let show = |v: &Option<u64>| v.map_or("none".to_string(), |v| v.to_string());
    format!(
        "nearest achievable: {} below, {} above",
        show(below),
        show(above)
    )
}
