//! Droplet-calculus invariants at toy scale: boundary monotonicity of the
//! super-good event, super-good implies internally spanned, prefactor
//! stabilization of the traversability cost, and probability agreement
//! with direct enumeration.

use std::collections::BTreeMap;

use fa2f_core::bootstrap::closure::bp_closure;
use fa2f_core::droplet::{
    g_fn, is_supergood, is_traversable, traversable_log_prob, Direction, ProbMethod, Rect,
    ScaleSequence, TraversalBc,
};
use fa2f_core::{BoundaryCondition, Config, Density, Region, SeededRng};

fn square_config(region: &Region, bits: u32, n: usize) -> Config {
    let mut cfg = Config::all_healthy(region.clone());
    for i in 0..n {
        if bits & (1 << i) != 0 {
            cfg.set_state(i, 0);
        }
    }
    cfg
}

fn boundary_from_bits(region: &Region, bits: u32) -> BoundaryCondition {
    let sites = region.boundary_sites().unwrap();
    let mut states = BTreeMap::new();
    for (k, coord) in sites.into_iter().enumerate() {
        states.insert(coord, if bits & (1 << k) != 0 { 0u8 } else { 1u8 });
    }
    BoundaryCondition::explicit(region, states).unwrap()
}

#[test]
fn supergood_monotone_in_boundary_exhaustively() {
    // SG under the all-healthy boundary implies SG under every omega:
    // all 16 configs x all 256 boundaries of the toy square
    let scales = ScaleSequence::custom(&[1, 2]).unwrap();
    let region = Region::rect2(2, 2).unwrap();
    let rect = Rect::new(0, 0, 2, 2);
    for bits in 0u32..16 {
        let cfg = square_config(&region, bits, 4);
        let sg_healthy = is_supergood(&cfg, &BoundaryCondition::AllHealthy, rect, 2, &scales)
            .unwrap()
            .is_some();
        if !sg_healthy {
            continue;
        }
        for omega_bits in 0u32..256 {
            let omega = boundary_from_bits(&region, omega_bits);
            assert!(
                is_supergood(&cfg, &omega, rect, 2, &scales)
                    .unwrap()
                    .is_some(),
                "bits {bits:#x}, omega {omega_bits:#x}"
            );
        }
    }
}

#[test]
fn supergood_implies_internally_spanned_exhaustively() {
    // toy square, all configs, healthy/infected/16 random boundaries:
    // a super-good configuration bootstraps to the full rectangle under
    // the same boundary
    let scales = ScaleSequence::custom(&[1, 2]).unwrap();
    let region = Region::rect2(2, 2).unwrap();
    let rect = Rect::new(0, 0, 2, 2);
    let mut boundaries = vec![BoundaryCondition::AllHealthy, BoundaryCondition::AllInfected];
    let q = Density::new(0.5).unwrap();
    for seed in 0..16 {
        boundaries.push(BoundaryCondition::sample(&region, q, &SeededRng::new(seed)).unwrap());
    }
    for bits in 0u32..16 {
        let cfg = square_config(&region, bits, 4);
        for bc in &boundaries {
            if is_supergood(&cfg, bc, rect, 2, &scales).unwrap().is_some() {
                let closed = bp_closure(2, &cfg, bc).unwrap();
                assert_eq!(
                    closed.closed.infected_count(),
                    4,
                    "bits {bits:#x} under {bc:?}"
                );
            }
        }
    }
}

#[test]
fn supergood_implies_spanned_at_level_four() {
    // toy scales (1,2,4): sampled 4x4 configs
    let scales = ScaleSequence::custom(&[1, 2, 4]).unwrap();
    let region = Region::rect2(4, 4).unwrap();
    let rect = Rect::new(0, 0, 4, 4);
    let q = Density::new(0.45).unwrap();
    let base = SeededRng::new(200);
    let mut sg_count = 0;
    for rep in 0..4_000 {
        let cfg = fa2f_core::lattice::sample::sample_config(&region, q, &base.substream(rep));
        if is_supergood(&cfg, &BoundaryCondition::AllHealthy, rect, 4, &scales)
            .unwrap()
            .is_some()
        {
            sg_count += 1;
            let closed = bp_closure(2, &cfg, &BoundaryCondition::AllHealthy).unwrap();
            assert_eq!(closed.closed.infected_count(), 16, "rep {rep}");
        }
    }
    assert!(sg_count > 50, "only {sg_count} super-good samples");
}

/// Direct enumeration of the traversability probability over all 2^(a*b)
/// configurations, written independently of the production recursion.
fn brute_force_prob(a: usize, b: usize, q: f64, bc: TraversalBc, dir: Direction) -> f64 {
    let region = Region::rect2(a, b).unwrap();
    let rect = Rect::new(0, 0, a as i64, b as i64);
    let boundary = match bc {
        TraversalBc::Healthy => BoundaryCondition::AllHealthy,
        TraversalBc::Infected => BoundaryCondition::AllInfected,
    };
    let n = a * b;
    let mut total = 0.0;
    for bits in 0u32..1 << n {
        let cfg = square_config(&region, bits, n);
        if is_traversable(&cfg, &boundary, rect, dir).unwrap() {
            let infected = bits.count_ones() as i32;
            total += q.powi(infected) * (1.0 - q).powi(n as i32 - infected);
        }
    }
    total
}

#[test]
fn probability_matches_enumeration_both_axes() {
    for &q in &[0.25, 0.5] {
        let d = Density::new(q).unwrap();
        for a in 1..=3usize {
            for b in 1..=2usize {
                for bc in [TraversalBc::Healthy, TraversalBc::Infected] {
                    let expect_lr = brute_force_prob(a, b, q, bc, Direction::Right);
                    let expect_left = brute_force_prob(a, b, q, bc, Direction::Left);
                    let got =
                        traversable_log_prob(a as u64, b as u64, d, bc, ProbMethod::Recursion)
                            .exp();
                    assert!((got - expect_lr).abs() < 1e-13, "a={a} b={b} q={q}");
                    assert!((expect_left - expect_lr).abs() < 1e-13);
                    // up/down swap the roles of a and b
                    let expect_up = brute_force_prob(a, b, q, bc, Direction::Up);
                    let got_ud =
                        traversable_log_prob(b as u64, a as u64, d, bc, ProbMethod::Recursion)
                            .exp();
                    assert!((got_ud - expect_up).abs() < 1e-13, "up a={a} b={b}");
                }
            }
        }
    }
}

#[test]
fn traversability_cost_prefactor_stabilizes() {
    // Delta(a) = log T^1(a,b) + a g(b q') settles to an a-independent
    // constant (geometric convergence of the transfer recursion)
    let q = Density::new(0.1).unwrap();
    let b = 10u64;
    let g = g_fn(b as f64 * q.q_prime()).unwrap();
    let delta = |a: u64| {
        traversable_log_prob(a, b, q, TraversalBc::Healthy, ProbMethod::TransferMatrix)
            + a as f64 * g
    };
    for &a in &[10_000u64, 20_000, 40_000] {
        let diff = (delta(2 * a) - delta(a)).abs();
        assert!(diff <= 1e-8, "a = {a}: |Delta(2a) - Delta(a)| = {diff:e}");
    }
}
