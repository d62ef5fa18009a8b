//! Instance files, solver dispatch, instance generation and benchmarking
//! behind the `deltakp` binary.

pub mod bench;
pub mod file;
pub mod generate;
pub mod solve;

use thiserror::Error;

pub use bench::{bench, write_csv, BenchOptions, BenchRecord};
pub use file::{InstanceFile, Meta};
pub use generate::{generate, GenParams, Kind};
pub use solve::{parse_epsilon, solve, SolveOptions};

/// Process exit codes. Stable; also listed in `deltakp --help`.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const VALIDATION: i32 = 4;
    pub const EPSILON: i32 = 5;
    pub const CAP: i32 = 6;
    pub const SOLVER: i32 = 7;
    pub const IO: i32 = 8;
    pub const INFEASIBLE: i32 = 10;
}

pub const EXIT_CODES_HELP: &str = "\
Exit codes:
   0  success
   2  bad command line
   3  instance file could not be parsed
   4  instance failed validation
   5  epsilon missing, malformed or out of range
   6  oracle search space exceeds --cap
   7  solver error (overflow, unsupported mode for this instance kind)
   8  file system error
  10  instance is infeasible";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Epsilon(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Solver(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => exit::IO,
            CliError::Parse(_) => exit::PARSE,
            CliError::Invalid(_) => exit::VALIDATION,
            CliError::Epsilon(_) => exit::EPSILON,
            CliError::Cap(_) => exit::CAP,
            CliError::Solver(_) => exit::SOLVER,
        }
    }
}

impl From<deltakp::Error> for CliError {
    fn from(e: deltakp::Error) -> Self {
        use deltakp::Error as E;
        match e {
            E::Invalid(_) | E::ZeroMatrix => CliError::Invalid(e.to_string()),
            E::EpsilonOutOfRange(_) => CliError::Epsilon(e.to_string()),
            E::CapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Solver(e.to_string()),
        }
    }
}
