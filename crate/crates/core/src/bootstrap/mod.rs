//! j-neighbour bootstrap percolation: synchronous steps, closures,
//! spanning and crossing events, and the infection-time lower-bound
//! estimator.

pub mod closure;
pub mod constants;
pub mod crossing;
pub mod tau0;

pub use closure::{bp_closure, bp_closure_with_table, bp_step, internally_spanned, ClosureResult};
pub use constants::{lambda, LAMBDA_2_2, PI_SQ_OVER_9};
pub use crossing::{crossing_event, estimate_rho, tau0_lower_bound, RhoEstimate};
pub use tau0::{bp_tau0_samples, BpHitTime};
