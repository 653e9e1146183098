use thiserror::Error;

use crate::syntax::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{table} table has {got} entries, expected {expected}")]
    TableShape {
        table: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("{table} table entry {index} = {value} is out of range for {size} elements")]
    TableOutOfRange {
        table: &'static str,
        index: usize,
        value: usize,
        size: usize,
    },
    #[error("algebra must have at least one element")]
    EmptyAlgebra,
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("size cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: usize,
        cap: usize,
    },
    #[error("relative tops are not closed under meet: 1_{a} ∧ 1_{b} is not a relative top")]
    DomainLatticeNotClosed { a: String, b: String },
    #[error("domain of `{element}` is not a Boolean algebra:\n{report}")]
    NotBoolean { element: String, report: String },
    #[error("projection needs 1_y >= 1_x, which fails for x = `{x}`, y = `{y}`")]
    ProjectionPrecondition { x: String, y: String },
    #[error("glue: {0}")]
    Glue(String),
    #[error("filter precondition: {0}")]
    FilterPrecondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("proposition `{0}` has no value")]
    UnboundProp(String),
    #[error("{count} propositions exceed the assignment-sweep limit of {limit}")]
    TooManyProps { count: usize, limit: usize },
    #[error("ill-formed model: {0}")]
    Model(String),
    #[error("ill-formed modal algebra:\n{0}")]
    Mrba(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
