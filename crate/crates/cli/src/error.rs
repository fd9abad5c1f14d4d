use serde::Serialize;
use untwist::Error;

/// Everything that can end a run, with its exit code.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    /// Bad flags, config keys or argument values.
    Usage(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl CliError {
    pub fn mismatch(msg: impl Into<String>) -> Self {
        CliError::Core(Error::VerificationMismatch(msg.into()))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => match e {
                Error::OrderCapExceeded { .. } | Error::BudgetExceeded { .. } | Error::SizeBudgetExceeded { .. } => {
                    "budget"
                }
                Error::UnknownFamily(_)
                | Error::InvalidPermutation(_)
                | Error::Parse(_)
                | Error::InvalidArgument(_)
                | Error::MissingSector(_)
                | Error::NonCommutingTuple => "parse",
                Error::VerificationMismatch(_) => "verification",
                Error::NotInKernel | Error::NotSubmodule | Error::NotInModule | Error::NotASummand(..) => "internal",
            },
            CliError::Usage(_) => "parse",
            CliError::Io(_) => "io",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.kind() {
            "budget" => 2,
            "parse" => 3,
            "verification" => 4,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> ErrorJson {
        let message = match self {
            CliError::Core(e) => e.to_string(),
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
        };
        ErrorJson { kind: self.kind(), code: self.exit_code(), message }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_json().message)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorJson {
    pub kind: &'static str,
    pub code: u8,
    pub message: String,
}
