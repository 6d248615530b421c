//! Exact finite-state machinery for the constrained chains: reversible
//! generators as explicit state spaces with measures and jump rates,
//! relaxation times by dense or iterative eigensolving, the super-good
//! conditioned Poincaré constant, the two-block and auxiliary block-chain
//! bounds, and strong lumpability checks.

pub mod blocks;
pub mod chain;
pub mod dump;
pub mod eigen;
pub mod error;
pub mod fa;
pub mod lump;

pub use blocks::{
    aux_chain_1, aux_chain_2, build_aux1_chain, gen_aux1_instance, gen_aux2_instance, gen_two_block_instance,
    two_block_trel, Aux1Instance, Aux2Instance, SweepReport, TwoBlockInstance,
};
pub use chain::ChainSpec;
pub use dump::{dump_chain, parse_chain};
pub use eigen::{
    distribution_at, relaxation_time, spectrum_dense, survival_probability, DENSE_CAP,
};
pub use error::SpectralError;
pub use fa::{fa1f_poincare_check, fa_chain_on_region, fa_chain_on_sites, gamma, Fa1fVariant};
pub use lump::{lumpability_check, LumpReport};
