//! Event-driven continuous-time simulation of the FA-jf model on finite
//! regions and tori: exact-in-law Poisson ring process, hitting time of the
//! origin, and stationarity diagnostics.

pub mod error;
pub mod events;
pub mod sim;
pub mod stationarity;

pub use error::SimError;
pub use events::{read_event_log, write_event_log, Event};
pub use sim::{fa_run, fa_tau0_samples, HitTime, InitialLaw, SimOutcome, SimParams};
pub use stationarity::{stationarity_check, StationarityReport};
