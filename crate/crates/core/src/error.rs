use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn at(line: &Option<usize>) -> String {
    match line {
        Some(l) => format!("line {l}: "),
        None => String::new(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structure has no elements")]
    EmptyStructure,
    #[error("{}duplicate element `{name}`", at(.line))]
    DuplicateElement { name: String, line: Option<usize> },
    #[error("{}unknown element `{name}`", at(.line))]
    UnknownElement { name: String, line: Option<usize> },
    #[error("line {line}: unknown directive `{directive}`")]
    UnknownDirective { directive: String, line: usize },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("order has a cycle through `{a}` and `{b}`")]
    CycleDetected { a: String, b: String },
    #[error("relation is not a partial order: {0}")]
    InvalidRelation(String),
    #[error("`{a}` and `{b}` have no least upper bound")]
    NotAJoinSemilattice { a: String, b: String },
    #[error("`{a}` and `{b}` have no greatest lower bound")]
    NotALattice { a: String, b: String },
    #[error("{n} elements exceeds the limit of {max}")]
    SizeLimitExceeded { n: usize, max: usize },
    #[error("element index {index} out of range for a structure of {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("join of an empty set")]
    EmptySet,
    #[error("subset is not closed under join")]
    NotJoinClosed,
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("bad builtin parameter: {0}")]
    BadParameter(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("fact {id} does not hold: {statement}")]
    FactViolation { id: String, statement: String },
}
