//! File formats and commands behind the `ptspline` binary.

pub mod commands;
pub mod files;

pub use commands::{CliError, DimMethod, Outcome, StrategyArg};
pub use files::{mesh_hash, BasisFile, FileError, MeshFile};
