//! Registered experiments, one unit struct per `module.operation`.

mod bootstrap;
mod cbsep;
mod droplet;
mod kcm;
mod spectral;

use crate::registry::Experiment;

pub use spectral::connected_subsets;

pub static ALL: &[&dyn Experiment] = &[
    &bootstrap::Constants,
    &bootstrap::Tau0Samples,
    &bootstrap::Rho,
    &droplet::SgBound,
    &droplet::GIntegral,
    &droplet::Scales,
    &kcm::Tau0Samples,
    &kcm::Stationarity,
    &spectral::Fa1fSweep,
    &cbsep::Scaling,
    &cbsep::CoverTime,
];
