use std::io;
use std::path::PathBuf;

use sudoku_phase::backbone::BackboneError;
use sudoku_phase::lp::LpError;
use sudoku_phase::spectral::SpectralError;
use sudoku_phase::{GenerateError, GridError, Unsatisfiable};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: no puzzle could be parsed ({errors} bad lines)")]
    EmptyDataset { path: PathBuf, errors: usize },
    #[error("reading {path}")]
    Read { path: PathBuf, source: io::Error },
    #[error("writing {path}")]
    Write { path: PathBuf, source: io::Error },
    #[error("csv")]
    Csv(#[from] csv::Error),
    #[error("bad sweep table: {0}")]
    Table(String),
    #[error("critical point: {0}")]
    Critical(String),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error("instance {instance} at {clues} clues")]
    Instance {
        clues: usize,
        instance: usize,
        source: InstanceError,
    },
}

/// Failures of a single measurement inside a sweep.
#[derive(Debug, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Unsatisfiable(#[from] Unsatisfiable),
    #[error(transparent)]
    Backbone(#[from] BackboneError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

impl LabError {
    /// Process exit code: 1 usage, 2 data, 3 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Config(_) => 1,
            LabError::EmptyDataset { .. }
            | LabError::Read { .. }
            | LabError::Csv(_)
            | LabError::Table(_)
            | LabError::Critical(_)
            | LabError::Grid(_)
            | LabError::Generate(_) => 2,
            LabError::Write { .. } | LabError::Instance { .. } => 3,
        }
    }
}
