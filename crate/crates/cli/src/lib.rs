//! Test-function registry, run configuration and CSV/JSON output for the
//! `padecheb` command.

pub mod args;
pub mod config;
pub mod error;
pub mod registry;
pub mod run;

pub use config::{ConvergenceConfig, Dim, Method, RunConfig};
pub use error::CliError;
pub use run::{run_approx, run_convergence, Summary};
