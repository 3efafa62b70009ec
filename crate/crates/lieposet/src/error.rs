use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {label} out of range 1..={n}")]
    OutOfRange { label: i64, n: usize },
    #[error("cover relations contain a cycle through {0:?}")]
    Cycle(Vec<i64>),
    #[error("ranks list must be nonempty with positive entries")]
    BadRanks,
    #[error("element {0} is extremal; a cone needs a non-extremal element")]
    ExtremalCone(usize),
    #[error("glue: {0}")]
    Glue(String),
    #[error("formula inapplicable: height {0} exceeds 2")]
    FormulaInapplicable(usize),
    #[error("height {found} not allowed here (expected {expected})")]
    Height { found: usize, expected: &'static str },
    #[error("signed poset violates: {0}")]
    Signed(String),
    #[error("bracket of basis elements {0} and {1} leaves the span")]
    NotClosed(usize, usize),
    #[error("vector length {found} does not match dimension {expected}")]
    Length { found: usize, expected: usize },
    #[error("rule {rule}: {reason}")]
    Rule { rule: String, reason: String },
    #[error("algebra is not Frobenius (certified index {0})")]
    NotFrobenius(String),
    #[error("Kirillov form is singular")]
    Singular,
    #[error("no Frobenius functional found after {0} draws")]
    NoFunctional(usize),
    #[error("trace uses index-raising rule {0}")]
    IndexRaisingRule(String),
    #[error("enumeration guardrail: n = {0} exceeds 7")]
    Guardrail(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
