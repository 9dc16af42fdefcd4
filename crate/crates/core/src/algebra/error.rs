use thiserror::Error;

/// Failures of the exact arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands belong to different variable tables")]
    TableMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("not divisible")]
    NotDivisible,
    #[error("root of order p^{requested} requested, but the table has root depth {depth}")]
    RootDepthExceeded { requested: u32, depth: u32 },
    #[error("{0} is not a p-th power")]
    NotAPower(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable table: {0}")]
    InvalidTable(String),
    #[error("substitution produces a zero denominator")]
    ZeroDenominator,
    #[error("substitution result is not a polynomial")]
    NotPolynomial,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
