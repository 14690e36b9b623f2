use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("stabilizer of orbit `{0}` is not a subgroup")]
    NotASubgroup(String),
    #[error("duplicate orbit id `{0}`")]
    DuplicateSchema(String),
    #[error("unknown orbit `{0}`")]
    UnknownSchema(String),
    #[error("orbit `{schema}` has arity {expected}, got {found} atoms")]
    ArityMismatch {
        schema: String,
        expected: usize,
        found: usize,
    },
    #[error("atom tuple for orbit `{0}` is not injective")]
    NotInjective(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("reference `#{0}` is not inside a matching mu")]
    UnboundRef(String),
    #[error(
        "mu `{0}` is unguarded: a reference reaches it without passing a lambda or application"
    )]
    UnguardedMu(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoalgebraError {
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error("step for `{schema}`: {msg}")]
    InvalidStep { schema: String, msg: String },
    #[error("orbit `{0}` has no step")]
    MissingStep(String),
    #[error("step of orbit `{0}` is not invariant under its stabilizer")]
    NotWellDefined(String),
    #[error("element {0} has a support larger than the declared bound")]
    SupportTooLarge(String),
    #[error("step target {0} leaves the enumerated carrier")]
    EscapesCarrier(String),
    #[error("this coalgebra cannot enumerate its elements")]
    NotEnumerable,
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}
