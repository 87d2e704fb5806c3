//! Seeded ensembles of random puzzles, metric sweeps over clue density, the
//! long-format CSV table they produce, and critical-point extraction.

pub mod critical;
pub mod ensemble;
mod error;
pub mod ingest;
pub mod sweep;
pub mod table;

pub use critical::critical_point;
pub use ensemble::generate_ensemble;
pub use error::{InstanceError, LabError};
pub use ingest::{ingest_dataset, Dataset};
pub use sweep::{parse_clue_counts, sweep, Metric, SweepConfig};
pub use table::{read_csv, write_csv, SweepRow};
