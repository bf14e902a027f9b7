use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{cell}: {source}")]
    Cell {
        cell: String,
        #[source]
        source: bura::Error,
    },
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) => 2,
            _ => 1,
        }
    }
}

/// Attaches the failing cell to a library error.
pub trait CellContext<T> {
    fn cell(self, f: impl FnOnce() -> String) -> Result<T, CliError>;
}

impl<T> CellContext<T> for bura::Result<T> {
    fn cell(self, f: impl FnOnce() -> String) -> Result<T, CliError> {
        self.map_err(|source| CliError::Cell { cell: f(), source })
    }
}
