//! Traversability: the event that every pair of adjacent columns (rows) of
//! a rectangle plus the one relevant boundary line contains an infection,
//! and its exact probability under the product measure.
//!
//! The probability comes from the no-two-consecutive-empty-columns
//! recursion over column occupancy: with u = 1 - (1-q)^b,
//!   p_1 = u, r_1 = 1 - u,
//!   p_{k+1} = u (p_k + r_k),  r_{k+1} = (1-u) p_k,
//! giving T^1(a,b) = p_a (healthy boundary forces the last column occupied)
//! and T^0(a,b) = p_a + r_a. Everything runs in the log domain so widths up
//! to 10^30 and beyond survive; the transfer-matrix path powers the 2x2
//! recursion matrix in O(log a).

use num_bigint::BigUint;

use crate::error::DropletError;
use crate::lattice::boundary::BoundaryCondition;
use crate::lattice::config::Config;
use crate::lattice::density::Density;
use crate::numeric::{log1m_exp, log_add_exp};

use super::field::{Clip, ClipOutside, Field, Rect};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Right,
    Left,
    Up,
    Down,
}

/// Evaluate the traversability event for `rect` inside an evaluation clip.
/// Degenerate rectangles are traversable (the pair condition is vacuous,
/// which is what the extreme core offsets need).
pub(crate) fn traversable_in_clip(field: &Field, clip: &Clip, rect: Rect, dir: Direction) -> bool {
    if rect.is_degenerate() {
        return true;
    }
    let (y_lo, y_hi) = (rect.y0, rect.y0 + rect.h);
    let (x_lo, x_hi) = (rect.x0, rect.x0 + rect.w);
    match dir {
        Direction::Right | Direction::Left => {
            // columns of R plus the one boundary column; require no two
            // consecutive empty columns in the scan order
            let cols: Vec<i64> = match dir {
                Direction::Right => (rect.x0..=rect.x0 + rect.w).collect(),
                Direction::Left => (rect.x0 - 1..rect.x0 + rect.w).collect(),
                _ => unreachable!(),
            };
            let mut prev = true; // no pair constraint before the first column
            for (i, &x) in cols.iter().enumerate() {
                let occ = clip.col_occupied(field, x, y_lo, y_hi);
                if i > 0 && !prev && !occ {
                    return false;
                }
                prev = occ;
            }
            true
        }
        Direction::Up | Direction::Down => {
            let rows: Vec<i64> = match dir {
                Direction::Up => (rect.y0..=rect.y0 + rect.h).collect(),
                Direction::Down => (rect.y0 - 1..rect.y0 + rect.h).collect(),
                _ => unreachable!(),
            };
            let mut prev = true;
            for (i, &y) in rows.iter().enumerate() {
                let occ = clip.row_occupied(field, y, x_lo, x_hi);
                if i > 0 && !prev && !occ {
                    return false;
                }
                prev = occ;
            }
            true
        }
    }
}

/// The omega-traversability event for a rectangle inside a configuration.
/// Lines beyond the configuration's region read from `bc`; lines inside it
/// read the configuration (so flanks of sub-rectangles see their actual
/// surroundings).
pub fn is_traversable(
    config: &Config,
    bc: &BoundaryCondition,
    rect: Rect,
    dir: Direction,
) -> Result<bool, DropletError> {
    let field = Field::new(config)?;
    if !rect.is_degenerate() && !field.bounds().contains_rect(&rect) {
        return Err(DropletError::RectOutsideRegion);
    }
    if config.region().is_torus() && !matches!(bc, BoundaryCondition::AllHealthy) {
        return Err(DropletError::NotATorus);
    }
    let clip = Clip::new(rect, ClipOutside::Region(bc));
    Ok(traversable_in_clip(&field, &clip, rect, dir))
}

/// Boundary flavour entering the exact probability: the relevant boundary
/// line all-healthy or all-infected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraversalBc {
    Healthy,
    Infected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbMethod {
    /// Linear sweep of the recursion, O(a).
    Recursion,
    /// Log-domain powering of the 2x2 recursion matrix, O(log a).
    TransferMatrix,
}

/// log u and log(1-u) for u = 1 - (1-q)^b, evaluated as
/// u = -expm1(b log1p(-q)) so that b up to 10^30 survives.
fn column_log_probs(b_times_qprime: f64) -> (f64, f64) {
    let log_one_minus_u = -b_times_qprime;
    let log_u = log1m_exp(log_one_minus_u);
    (log_u, log_one_minus_u)
}

fn finish(bc: TraversalBc, log_p: f64, log_r: f64) -> f64 {
    match bc {
        TraversalBc::Healthy => log_p,
        TraversalBc::Infected => log_add_exp(log_p, log_r),
    }
}

fn recursion_log_prob(a: u64, log_u: f64, log_1mu: f64, bc: TraversalBc) -> f64 {
    if a == 0 {
        return 0.0;
    }
    let mut log_p = log_u;
    let mut log_r = log_1mu;
    for _ in 1..a {
        let next_p = log_u + log_add_exp(log_p, log_r);
        let next_r = log_1mu + log_p;
        log_p = next_p;
        log_r = next_r;
    }
    finish(bc, log_p, log_r)
}

/// 2x2 matrices over the (max, +)-free log semiring.
#[derive(Clone, Copy)]
struct LogMat([[f64; 2]; 2]);

impl LogMat {
    fn identity() -> LogMat {
        LogMat([[0.0, f64::NEG_INFINITY], [f64::NEG_INFINITY, 0.0]])
    }

    fn mul(&self, other: &LogMat) -> LogMat {
        let a = &self.0;
        let b = &other.0;
        let mut out = [[0.0f64; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = log_add_exp(a[i][0] + b[0][j], a[i][1] + b[1][j]);
            }
        }
        LogMat(out)
    }
}

fn transfer_log_prob_bits(
    bits: impl Iterator<Item = bool>,
    log_u: f64,
    log_1mu: f64,
    bc: TraversalBc,
) -> f64 {
    // M = [[u, u], [1-u, 0]]; (p_a, r_a)^T = M^a e_1
    let base = LogMat([[log_u, log_u], [log_1mu, f64::NEG_INFINITY]]);
    let mut result = LogMat::identity();
    let mut power = base;
    for bit in bits {
        if bit {
            result = result.mul(&power);
        }
        power = power.mul(&power);
    }
    let log_p = result.0[0][0];
    let log_r = result.0[1][0];
    finish(bc, log_p, log_r)
}

fn u64_bits_lsb(mut a: u64) -> impl Iterator<Item = bool> {
    std::iter::from_fn(move || {
        if a == 0 {
            None
        } else {
            let bit = a & 1 == 1;
            a >>= 1;
            Some(bit)
        }
    })
}

fn biguint_bits_lsb(a: &BigUint) -> impl Iterator<Item = bool> + '_ {
    (0..a.bits()).map(move |i| a.bit(i))
}

/// Natural-log probability of the right-traversability event for R(a, b):
/// exact under the product measure, for either boundary flavour. Up/down
/// traversability of R(a, b) is this function with (b, a).
pub fn traversable_log_prob(
    a: u64,
    b: u64,
    q: Density,
    bc: TraversalBc,
    method: ProbMethod,
) -> f64 {
    if a == 0 {
        return 0.0;
    }
    let (log_u, log_1mu) = column_log_probs(b as f64 * q.q_prime());
    match method {
        ProbMethod::Recursion => recursion_log_prob(a, log_u, log_1mu, bc),
        ProbMethod::TransferMatrix => transfer_log_prob_bits(u64_bits_lsb(a), log_u, log_1mu, bc),
    }
}

/// Transfer-matrix path with a big-integer width and a possibly enormous
/// height supplied as b * q' directly.
pub fn traversable_log_prob_big(
    a: &BigUint,
    b_times_qprime: f64,
    bc: TraversalBc,
) -> f64 {
    if a.bits() == 0 {
        return 0.0;
    }
    let (log_u, log_1mu) = column_log_probs(b_times_qprime);
    transfer_log_prob_bits(biguint_bits_lsb(a), log_u, log_1mu, bc)
}
