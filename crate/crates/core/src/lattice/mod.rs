//! Finite lattice geometry and spin configurations.

pub mod boundary;
pub mod codec;
pub mod compose;
pub mod config;
pub mod constraint;
pub mod density;
pub mod region;
pub mod sample;

pub use boundary::{BoundaryCondition, ExplicitBoundary};
pub use compose::{compose, restrict};
pub use config::Config;
pub use constraint::constraint;
pub use density::Density;
pub use region::{NeighborTable, Region, RegionKind};
pub use sample::sample_config;
