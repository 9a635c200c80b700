//! Error type shared by the command implementations.

use crate::expr::ParseError;

pub const MAX_TABLE_GENUS: usize = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] crcoh::Error),
    #[error("structure tables are exported for genus <= {max}, got {genus}")]
    TableCap { genus: usize, max: usize },
    #[error("table disagrees with live computation: {0}")]
    TableMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;
