//! Core toolkit for the Fredrickson–Andersen 2-spin facilitated model and its
//! bootstrap-percolation counterpart: finite lattice geometry, bit-packed spin
//! configurations, the j-neighbour constraint, synchronous bootstrap
//! percolation, and the multiscale droplet calculus (traversability,
//! super-good recognizers and the droplet probability lower bound).
//!
//! State convention everywhere: `0` = infected/empty (the facilitating
//! state), `1` = healthy/filled.

pub mod bootstrap;
pub mod droplet;
pub mod error;
pub mod lattice;
pub mod numeric;
pub mod rng;
pub mod stats;

pub use error::{CodecError, LatticeError};
pub use lattice::boundary::BoundaryCondition;
pub use lattice::config::Config;
pub use lattice::constraint::constraint;
pub use lattice::density::Density;
pub use lattice::region::{Region, RegionKind};
pub use rng::SeededRng;
