use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
    #[error("group order exceeds cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("enumeration budget exceeded: {what} needs {needed}, cap {cap}")]
    BudgetExceeded { what: &'static str, needed: u128, cap: u128 },
    #[error("bar complex too large: degree {degree} has {cells} cells, budget {budget}")]
    SizeBudgetExceeded { degree: usize, cells: u128, budget: u128 },
    #[error("vector is not in the kernel")]
    NotInKernel,
    #[error("generating set does not span a submodule of the given space")]
    NotSubmodule,
    #[error("vector is not in the module")]
    NotInModule,
    #[error("{0} is not a direct summand of {1}")]
    NotASummand(String, String),
    #[error("tuple entries do not commute")]
    NonCommutingTuple,
    #[error("no sector amplitude for orbit {0}")]
    MissingSector(usize),
    #[error("verification mismatch: {0}")]
    VerificationMismatch(String),
}
