//! Projection property: the particle-indicator image of g-CBSEP is exactly
//! the binary CBSEP with p = pi(S_1), rate for rate.

use fa2f_cbsep::{gcbsep_build, particle_labels, GcbsepParams, Graph};
use fa2f_spectral::{lumpability_check, relaxation_time};

fn assert_lumps_to_binary(graph: Graph, weights: Vec<f64>, particle: Vec<bool>) {
    let params = GcbsepParams::new(graph.clone(), weights, particle).unwrap();
    let p = params.particle_prob();
    let (chain, states) = gcbsep_build(&params).unwrap();
    chain.check_detailed_balance(1e-12).unwrap();
    let labels = particle_labels(&params, &states);
    let report = lumpability_check(&chain, &labels).unwrap();
    assert!(
        report.lumpable,
        "residual = {:.3e}",
        report.max_residual
    );
    assert!(report.max_residual <= 1e-12);
    let lumped = report.lumped.unwrap();

    let binary = GcbsepParams::binary(graph, p).unwrap();
    let (direct, direct_states) = gcbsep_build(&binary).unwrap();
    assert_eq!(lumped.len(), direct.len());
    // lumped states are ordered by ascending particle pattern; binary
    // states are packed patterns ascending, so the orders agree
    for (k, &pattern) in report.class_labels.iter().enumerate() {
        assert_eq!(direct_states[k], pattern as u64);
    }
    for (&(i, j, r), &(i2, j2, r2)) in lumped.rates().iter().zip(direct.rates()) {
        assert_eq!((i, j), (i2, j2));
        assert!(
            (r - r2).abs() <= 1e-12 * r.max(r2),
            "rate mismatch at ({i},{j}): {r} vs {r2}"
        );
    }
    for (a, b) in lumped.measure().iter().zip(direct.measure()) {
        assert!((a - b).abs() < 1e-12);
    }
    // relaxation times agree as well
    let t1 = relaxation_time(&lumped).unwrap();
    let t2 = relaxation_time(&direct).unwrap();
    assert!((t1 - t2).abs() < 1e-9 * t1.max(1.0));
}

#[test]
fn single_edge_three_states_lumps() {
    // |S| = 3 with a one-element particle class
    assert_lumps_to_binary(
        Graph::Explicit {
            vertices: 2,
            edges: vec![(0, 1)],
        },
        vec![0.3, 0.5, 0.2],
        vec![false, false, true],
    );
}

#[test]
fn single_edge_two_particle_states_lumps() {
    assert_lumps_to_binary(
        Graph::Explicit {
            vertices: 2,
            edges: vec![(0, 1)],
        },
        vec![0.4, 0.35, 0.25],
        vec![false, true, true],
    );
}

#[test]
fn two_by_two_torus_three_states_lumps() {
    assert_lumps_to_binary(
        Graph::Torus { dims: vec![2, 2] },
        vec![0.5, 0.2, 0.3],
        vec![false, true, true],
    );
}

#[test]
fn perturbed_chain_fails_lumpability() {
    // negative control: damage one rate and the projection stops being
    // Markov-consistent
    let params = GcbsepParams::new(
        Graph::Explicit {
            vertices: 2,
            edges: vec![(0, 1)],
        },
        vec![0.3, 0.5, 0.2],
        vec![false, false, true],
    )
    .unwrap();
    let (chain, states) = gcbsep_build(&params).unwrap();
    let labels = particle_labels(&params, &states);
    // nudge a class-crossing rate out of a class with several members, so
    // the per-state class totals disagree
    let mut rates: Vec<(u32, u32, f64)> = chain.rates().to_vec();
    let class_size = |l: usize| labels.iter().filter(|&&x| x == l).count();
    let target = rates
        .iter()
        .position(|&(i, j, _)| {
            labels[i as usize] != labels[j as usize] && class_size(labels[i as usize]) >= 2
        })
        .expect("a class-crossing rate exists");
    rates[target].2 *= 1.05;
    let damaged = fa2f_spectral::ChainSpec::new(chain.measure().to_vec(), rates).unwrap();
    let report = lumpability_check(&damaged, &labels).unwrap();
    assert!(!report.lumpable, "residual = {:.3e}", report.max_residual);
}
