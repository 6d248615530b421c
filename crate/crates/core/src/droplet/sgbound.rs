//! The droplet probability lower bound: the product of traversability
//! factors along the nested-rectangle recursion with every core offset
//! pinned to zero,
//!
//!   q * prod_{m=1..N} T^1(ell_m - ell_{m-1}, ell_m)
//!                    * T^1(ell_m - ell_{m-1}, ell_{m-1}),
//!
//! evaluated exactly in the log domain through the transfer-matrix path.
//! As q -> 0, -q' log of this product approaches pi^2/9.

use num_bigint::BigUint;

use crate::error::DropletError;
use crate::lattice::density::Density;

use super::gfun::{g_fn, g_integral_between};
use super::scales::ScaleSequence;
use super::traverse::{traversable_log_prob_big, TraversalBc};

/// Natural-log lower bound for the super-good probability of the final
/// square Lambda^(2N) at density q (density-derived scales).
pub fn sg_prob_lower_bound(q: Density) -> Result<f64, DropletError> {
    let scales = ScaleSequence::from_density(q)?;
    sg_prob_lower_bound_scales(q, &scales)
}

/// Same bound over an explicit scale sequence (indices 1..=max).
pub fn sg_prob_lower_bound_scales(
    q: Density,
    scales: &ScaleSequence,
) -> Result<f64, DropletError> {
    let qp = q.q_prime();
    let mut log_total = q.q().ln();
    for m in 1..=scales.max_index() {
        let a: BigUint = scales.ell(m)? - scales.ell(m - 1)?;
        let b_hi = scales.ell_f64(m)?;
        let b_lo = scales.ell_f64(m - 1)?;
        log_total += traversable_log_prob_big(&a, b_hi * qp, TraversalBc::Healthy);
        log_total += traversable_log_prob_big(&a, b_lo * qp, TraversalBc::Healthy);
    }
    Ok(log_total)
}

/// The normalized rate r(q) = -q' * sg_prob_lower_bound(q); decreases to
/// pi^2/9 as q -> 0.
pub fn sg_rate(q: Density) -> Result<f64, DropletError> {
    Ok(-q.q_prime() * sg_prob_lower_bound(q)?)
}

/// Left/right Riemann sums of g over the partition {q' ell_m} against the
/// exact integral: since g is decreasing,
///   q' sum (ell_m - ell_{m-1}) g(q' ell_m) <= int_{q' ell_0}^{q' ell_N} g
///                <= q' sum (ell_m - ell_{m-1}) g(q' ell_{m-1}).
#[derive(Debug, Clone, Copy)]
pub struct RiemannSandwich {
    pub lower: f64,
    pub integral: f64,
    pub upper: f64,
}

impl RiemannSandwich {
    pub fn holds(&self, slack: f64) -> bool {
        self.lower <= self.integral + slack && self.integral <= self.upper + slack
    }
}

pub fn riemann_sandwich(q: Density) -> Result<RiemannSandwich, DropletError> {
    let scales = ScaleSequence::from_density(q)?;
    let qp = q.q_prime();
    let mut lower = 0.0;
    let mut upper = 0.0;
    for m in 1..=scales.max_index() {
        let gap = scales.ell_f64(m)? - scales.ell_f64(m - 1)?;
        lower += gap * g_fn(qp * scales.ell_f64(m)?)?;
        upper += gap * g_fn(qp * scales.ell_f64(m - 1)?)?;
    }
    let integral = g_integral_between(qp, qp * scales.ell_f64(scales.max_index())?)?;
    Ok(RiemannSandwich {
        lower: qp * lower,
        integral,
        upper: qp * upper,
    })
}
