use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("build failed: {message}")]
    Build {
        message: String,
        failed_cells: Vec<(usize, usize)>,
    },
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Build { .. } => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<padecheb::Error> for CliError {
    fn from(e: padecheb::Error) -> Self {
        let failed_cells = match &e {
            padecheb::Error::CellFailures { failures, .. } => failures.iter().map(|f| f.cell).collect(),
            _ => Vec::new(),
        };
        CliError::Build {
            message: e.to_string(),
            failed_cells,
        }
    }
}
