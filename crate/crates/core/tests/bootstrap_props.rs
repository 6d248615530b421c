//! Structural properties of the bootstrap percolation engine: idempotence,
//! monotonicity in infections and boundary, rectangular closure components,
//! and agreement between synchronous and arbitrary-order update schedules.

use fa2f_core::bootstrap::closure::{bp_closure, bp_step};
use fa2f_core::bootstrap::crossing::infected_components;
use fa2f_core::lattice::sample::sample_config;
use fa2f_core::{BoundaryCondition, Config, Density, Region, SeededRng};
use rand::seq::SliceRandom;
use rand::Rng;

#[test]
fn closure_is_idempotent_on_random_configs() {
    let region = Region::rect2(8, 8).unwrap();
    let q = Density::new(0.4).unwrap();
    let base = SeededRng::new(100);
    for rep in 0..10_000 {
        let cfg = sample_config(&region, q, &base.substream(rep));
        let once = bp_closure(2, &cfg, &BoundaryCondition::AllHealthy).unwrap();
        let twice = bp_closure(2, &once.closed, &BoundaryCondition::AllHealthy).unwrap();
        assert_eq!(once.closed, twice.closed);
        assert_eq!(twice.rounds, 0);
    }
}

#[test]
fn closure_monotone_in_infections() {
    let region = Region::rect2(7, 7).unwrap();
    let q = Density::new(0.3).unwrap();
    let base = SeededRng::new(101);
    for rep in 0..2_000 {
        let small = sample_config(&region, q, &base.substream(rep));
        // add extra infections to get a nested pair
        let mut big = small.clone();
        let mut rng = base.substream(rep + 1_000_000).rng();
        for idx in 0..big.len() {
            if rng.random_bool(0.1) {
                big.set_state(idx, 0);
            }
        }
        assert!(small.infections_subset_of(&big));
        let cs = bp_closure(2, &small, &BoundaryCondition::AllHealthy).unwrap();
        let cb = bp_closure(2, &big, &BoundaryCondition::AllHealthy).unwrap();
        assert!(cs.closed.infections_subset_of(&cb.closed), "rep {rep}");
    }
}

#[test]
fn closure_monotone_in_boundary() {
    let region = Region::rect2(6, 6).unwrap();
    let q = Density::new(0.25).unwrap();
    let base = SeededRng::new(102);
    for rep in 0..2_000 {
        let cfg = sample_config(&region, q, &base.substream(rep));
        let healthy = bp_closure(2, &cfg, &BoundaryCondition::AllHealthy).unwrap();
        let infected = bp_closure(2, &cfg, &BoundaryCondition::AllInfected).unwrap();
        assert!(
            healthy.closed.infections_subset_of(&infected.closed),
            "rep {rep}"
        );
    }
}

#[test]
fn all_4x4_closure_components_are_rectangles() {
    // exhaustive: every 2-BP closure in the 4x4 box splits into full
    // rectangular components (the cuboid check inside
    // infected_components errors otherwise)
    let region = Region::rect2(4, 4).unwrap();
    for bits in 0u32..1 << 16 {
        let mut cfg = Config::all_healthy(region.clone());
        for i in 0..16 {
            if bits & (1 << i) != 0 {
                cfg.set_state(i, 0);
            }
        }
        let closed = bp_closure(2, &cfg, &BoundaryCondition::AllHealthy).unwrap();
        infected_components(&closed.closed)
            .unwrap_or_else(|e| panic!("bits {bits:#06x}: {e}"));
    }
}

/// Arbitrary-order closure: keep sweeping sites in random order, infecting
/// any healthy site with >= 2 infected neighbours, until stable.
fn async_closure(cfg: &Config, order_seed: u64) -> Config {
    let region = cfg.region();
    let mut out = cfg.clone();
    let mut rng = SeededRng::new(order_seed).rng();
    let mut sites: Vec<usize> = (0..region.len()).collect();
    loop {
        sites.shuffle(&mut rng);
        let mut changed = false;
        for &idx in &sites {
            if out.is_infected(idx) {
                continue;
            }
            let coord = region.coord_of(idx);
            if fa2f_core::constraint(2, &out, &BoundaryCondition::AllHealthy, &coord).unwrap() {
                out.set_state(idx, 0);
                changed = true;
            }
        }
        if !changed {
            return out;
        }
    }
}

#[test]
fn synchronous_equals_asynchronous_closure() {
    let region = Region::rect2(6, 6).unwrap();
    let q = Density::new(0.35).unwrap();
    let base = SeededRng::new(103);
    for rep in 0..1_000 {
        let cfg = sample_config(&region, q, &base.substream(rep));
        let sync = bp_closure(2, &cfg, &BoundaryCondition::AllHealthy).unwrap();
        let async_result = async_closure(&cfg, rep);
        assert_eq!(sync.closed, async_result, "rep {rep}");
    }
}

#[test]
fn single_step_iteration_reaches_the_closure() {
    let region = Region::torus2(12).unwrap();
    let q = Density::new(0.2).unwrap();
    let cfg = sample_config(&region, q, &SeededRng::new(104));
    let fixpoint = bp_closure(2, &cfg, &BoundaryCondition::AllHealthy).unwrap();
    let mut state = cfg;
    let mut steps = 0u32;
    loop {
        let next = bp_step(2, &state, &BoundaryCondition::AllHealthy).unwrap();
        if next == state {
            break;
        }
        state = next;
        steps += 1;
    }
    assert_eq!(state, fixpoint.closed);
    assert_eq!(steps, fixpoint.rounds);
}
