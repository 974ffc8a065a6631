use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cover relation contains a cycle through element {0}")]
    CycleDetected(usize),
    #[error("elements {0} and {1} have no least upper bound")]
    MissingLub(usize, usize),
    #[error("elements {0} and {1} have no greatest lower bound")]
    MissingGlb(usize, usize),
    #[error("index {index} out of range for a structure of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("structure of {size} elements exceeds the element budget {budget}")]
    SizeOverflow { size: u128, budget: usize },
    #[error("expected {expected} arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("value {value} is not below the base size {base}")]
    ValueOutOfRange { value: usize, base: usize },
    #[error("operations live on different bases ({0} vs {1})")]
    BaseMismatch(usize, usize),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("flavor mismatch: {0}")]
    FlavorMismatch(String),
    #[error("map does not preserve the bounds it is declared to preserve")]
    PreservationViolated,
    #[error("operation is not in the centralizer")]
    NotInCentralizer,
    #[error("structure has no least element")]
    NoLeastElement,
    #[error("structure has a least element")]
    HasLeastElement,
    #[error("lattice is not distributive")]
    NotDistributive,
    #[error("search undecided within budget: {0}")]
    Undecided(String),
    #[error("unknown clone {0:?}")]
    UnknownClone(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("counting formulas disagree: {0}")]
    FormulaDisagreement(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
