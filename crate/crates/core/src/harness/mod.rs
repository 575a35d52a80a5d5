//! Scenario layer: configuration, synthetic users, sweeps and reports.

mod output;
mod run;
mod scenario;
mod users;

use thiserror::Error;

pub use output::{
    cdf_csv, cdf_file_name, metadata_text, table1_csv, write_report, CDF_HEADER, METADATA_FILE, TABLE1_HEADER,
};
pub use run::{run, table1, user_link, CdfSeries, RunMetadata, RunReport, Table1Row};
pub use scenario::{
    load_scenario, parse_scenario, Scenario, ScenarioError, User, DEFAULT_TABLE_SPREAD_DEG,
    DEFAULT_TRIALS_PER_USER, GENERATOR_STREAM,
};
pub use users::{generate_users, GeneratorBounds};

/// Process exit codes of the command-line tool.
pub mod exit_code {
    pub const SUCCESS: i32 = 0;
    pub const IO: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const NUMERICAL: i32 = 3;
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(#[from] ScenarioError),
    #[error("numerical failure ({context}): {message}")]
    Numerical { context: String, message: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => exit_code::CONFIG,
            HarnessError::Numerical { .. } => exit_code::NUMERICAL,
            HarnessError::Io(_) => exit_code::IO,
        }
    }
}
