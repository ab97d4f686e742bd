use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid extrema: {0}")]
    InvalidExtrema(String),

    #[error("{what} = {value} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("size mismatch: diagram has {diagram} boxes, class has {class}")]
    SizeMismatch { diagram: usize, class: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("singular fit system: {0}")]
    SingularFit(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("leading-term check failed: {0}")]
    CheckFailed(String),

    #[error("diagram {diagram} leaves Y(A) for A = {a}")]
    OutsideBox { diagram: String, a: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
