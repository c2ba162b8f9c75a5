use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("antiferromagnetic coupling {beta} on edge ({u}, {v})")]
    AntiferromagneticCoupling { u: usize, v: usize, beta: f64 },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{what}: size {actual} exceeds cap {cap}")]
    SizeCap { what: &'static str, actual: usize, cap: usize },
    #[error("conditioning event has probability zero (vertex {0} contradicts its clamp)")]
    ZeroProbability(usize),
    #[error("certification refused: {0}")]
    CertificationRefused(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn is_size_cap(&self) -> bool {
        matches!(self, Error::SizeCap { .. })
    }
}
