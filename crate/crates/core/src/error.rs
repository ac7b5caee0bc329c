use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index ({0}) is not admissible")]
    NotAdmissible(String),

    #[error("duality undefined for alternating indices: ({0})")]
    SignedDuality(String),

    #[error("divergent: {0}")]
    Divergent(String),

    #[error("divergent atom: {0}")]
    DivergentAtom(String),

    #[error("expansion too large: depth {depth} exceeds limit {limit} (about {estimate} interleavings)")]
    ExpansionTooLarge { depth: usize, limit: usize, estimate: u128 },

    #[error("invalid index syntax at column {column}: {message}")]
    IndexSyntax { column: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("malformed parameters for `{id}`: {message}")]
    BadParams { id: String, message: String },

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
