//! File formats, experiment drivers and the command-line interface for
//! `sweepvor-core`.

pub mod cli;
pub mod config;
pub mod experiments;
pub mod formats;
pub mod mesh_io;
pub mod parallel;
pub mod svg;
pub mod verify;

pub use config::{Command, RunConfig};
pub use mesh_io::{mesh_from_json, mesh_to_json, read_mesh, write_mesh, MeshIoError};
pub use parallel::Parallel;

/// Failure of a CLI run, carrying its exit code.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(#[from] sweepvor_core::Error),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Mesh(#[from] MeshIoError),
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Io(_) | RunError::Mesh(MeshIoError::Io(_)) => 1,
            RunError::Config(_) | RunError::Mesh(MeshIoError::Schema { .. }) => 2,
            RunError::Numerical(_) => 3,
            RunError::Verification(_) => 4,
        }
    }
}
