use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KhaError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution makes the denominator factor `{factor}` vanish")]
    Pole { factor: String },
    #[error("expansion in {var} diverges at the requested end")]
    Divergent { var: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("degenerate fixed point: {0}")]
    DegenerateFixedPoint(String),
    #[error("out of supported range: {0}")]
    OutOfRange(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, KhaError>;
