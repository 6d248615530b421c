//! The generalized coalescing-and-branching symmetric exclusion process:
//! a finite local state space with a particle bipartition on a connected
//! graph; every edge touching a particle resamples its two endpoints from
//! the conditioned product measure at rate one. Exact small-instance
//! generators, event-driven simulation, the box renormalization, the
//! relaxation-time scaling study, and random-walk cover times.

pub mod cover;
pub mod error;
pub mod params;
pub mod renorm;
pub mod scaling;
pub mod simulate;

pub use cover::cover_time_estimate;
pub use error::CbsepError;
pub use params::{gcbsep_build, particle_labels, GcbsepParams, Graph};
pub use renorm::{renormalize, renormalized_particle_prob};
pub use scaling::{estimate_trel_mc, scaling_study, ScalingRow, TrelMethod};
pub use simulate::{gcbsep_simulate, TrajectorySummary};
