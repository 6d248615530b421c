//! Reproducible experiment harness: plain-text configurations select a
//! named experiment from the registry, runs write byte-stable CSV results
//! next to their resolved configuration, and the acceptance suite checks
//! every numbered criterion of the toolkit.

pub mod config;
pub mod criteria;
pub mod error;
pub mod experiments;
pub mod registry;
pub mod runner;
pub mod svg;
pub mod table;

pub use config::ExperimentConfig;
pub use error::HarnessError;
pub use registry::{registry, Experiment, ParamKind, ParamSpec, Resolved};
pub use runner::{run_experiment, RunSummary};
pub use table::MetricTable;
