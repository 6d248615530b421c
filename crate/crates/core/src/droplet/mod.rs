//! Multiscale droplet calculus: length scales, traversability events and
//! probabilities, super-good recognizers with replayable witnesses, the
//! droplet-probability lower bound, and the torus environment events.

pub mod envir;
pub mod field;
pub mod gfun;
pub mod scales;
pub mod sgbound;
pub mod shrunken;
pub mod supergood;
pub mod traverse;

pub use envir::{env_event, env_good_box, env_report, EnvReport};
pub use field::{Clip, ClipOutside, Field, Rect};
pub use gfun::{beta_fn, g_fn, g_integral, g_integral_between};
pub use scales::{n_final, scale_ell, ScaleSequence, ScaleSource};
pub use sgbound::{
    riemann_sandwich, sg_prob_lower_bound, sg_prob_lower_bound_scales, sg_rate, RiemannSandwich,
};
pub use shrunken::{i1_segment, i3_segment, is_shrunken_supergood, ShrunkenWitness};
pub use supergood::{is_mobile_droplet, is_supergood, verify_witness, SgWitness};
pub use traverse::{
    is_traversable, traversable_log_prob, traversable_log_prob_big, Direction, ProbMethod,
    TraversalBc,
};
