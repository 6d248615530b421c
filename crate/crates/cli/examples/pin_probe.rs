//! Dev probe: computes every value that the test suites freeze as a
//! regression constant, printed with full precision. Run once in release
//! mode; the outputs are pasted into the pinned constants.

use fa2f_cbsep::{gcbsep_build, scaling_study, GcbsepParams, Graph};
use fa2f_core::bootstrap::{bp_tau0_samples, estimate_rho, BpHitTime, LAMBDA_2_2};
use fa2f_core::droplet::ScaleSequence;
use fa2f_core::{stats, BoundaryCondition, Density, Region, SeededRng};
use fa2f_kcm::sim::{fa_tau0_samples, InitialLaw, SimParams};
use fa2f_spectral::{
    aux_chain_1, aux_chain_2, gamma, gen_aux1_instance, gen_aux2_instance, relaxation_time,
    spectrum_dense, fa_chain_on_region,
};
use std::time::Instant;

fn main() {
    let t0 = Instant::now();

    // --- aux chain sweeps (production seeds of criterion A10)
    let mut max1: f64 = 0.0;
    for k in 0..100u64 {
        let inst = gen_aux1_instance(&SeededRng::new(10_002).substream(k), 4);
        let (t, taux) = aux_chain_1(&inst).unwrap();
        max1 = max1.max(t / taux);
    }
    println!("aux1 max T_rel/T_aux over 100 trials = {max1:.15}");
    let mut max2: f64 = 0.0;
    for k in 0..100u64 {
        let inst = gen_aux2_instance(&SeededRng::new(10_003).substream(k), 4);
        let (t, taux) = aux_chain_2(&inst).unwrap();
        max2 = max2.max(t / taux);
    }
    println!("aux2 max T_rel/T_aux over 100 trials = {max2:.15}");
    println!("[{:?}]", t0.elapsed());

    // --- A12 scaling sweep
    let ps = [0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625];
    let rows = scaling_study(2, &[4, 9, 16], &ps, &SeededRng::new(12_000)).unwrap();
    let mut max_ratio: f64 = 0.0;
    for row in &rows {
        println!(
            "cbsep n={} p={} method={} t_rel={:.12} ratio={:.12}",
            row.n,
            row.p,
            row.method.as_str(),
            row.t_rel,
            row.ratio
        );
        max_ratio = max_ratio.max(row.ratio);
    }
    println!("cbsep scaling max ratio = {max_ratio:.15}");
    println!("[{:?}]", t0.elapsed());

    // --- cbsep pinned instances
    let p2 = GcbsepParams::binary(Graph::Torus { dims: vec![2, 2] }, 0.5).unwrap();
    let (chain2, _) = gcbsep_build(&p2).unwrap();
    println!(
        "cbsep 2x2-torus p=1/2 t_rel = {:.15} (15 states)",
        relaxation_time(&chain2).unwrap()
    );

    // --- FA-2f 2x2 torus active class spectrum
    let region = Region::torus2(2).unwrap();
    let q03 = Density::new(0.3).unwrap();
    let restriction = |s: u32| s.count_ones() >= 3 || s == 0b1001 || s == 0b0110;
    let chain = fa_chain_on_region(2, &region, &BoundaryCondition::AllHealthy, q03, Some(&restriction))
        .unwrap();
    let spec = spectrum_dense(&chain).unwrap();
    println!(
        "fa2f 2x2 torus q=0.3 active-class spectrum = {:?}",
        spec.iter().map(|v| format!("{v:.12}")).collect::<Vec<_>>()
    );
    println!(
        "fa2f 2x2 torus q=0.3 t_rel = {:.15}",
        relaxation_time(&chain).unwrap()
    );

    // --- gamma pins
    let toy = ScaleSequence::custom(&[1, 2]).unwrap();
    let q05 = Density::new(0.5).unwrap();
    println!(
        "gamma 2x2 healthy q=0.5 = {:.15}",
        gamma((2, 2), &BoundaryCondition::AllHealthy, q05, &toy).unwrap()
    );
    println!(
        "gamma 2x2 infected q=0.5 = {:.15}",
        gamma((2, 2), &BoundaryCondition::AllInfected, q05, &toy).unwrap()
    );
    println!("[{:?}]", t0.elapsed());

    // --- FA-1f on a 2-site path restricted to Omega^+, q = 0.3
    let path = Region::rect2(2, 1).unwrap();
    let omega_plus = |s: u32| s != 0;
    let chain_p = fa_chain_on_region(
        1,
        &path,
        &BoundaryCondition::AllHealthy,
        q03,
        Some(&omega_plus),
    )
    .unwrap();
    println!(
        "fa1f 2-site path Omega^+ q=0.3 t_rel = {:.15}",
        relaxation_time(&chain_p).unwrap()
    );

    // --- rho estimates: oracle at 1e6 samples, production at 1e5
    let v = Region::rectangle_at(&[9, 9], &[-4, -4]).unwrap();
    let q035 = Density::new(0.35).unwrap();
    let oracle = estimate_rho(&v, q035, 1_000_000, &SeededRng::new(777)).unwrap();
    println!(
        "rho oracle 1e6: {:.15} +- {:.3e} argmax {:?}",
        oracle.estimate, oracle.stderr, oracle.argmax
    );
    let prod = estimate_rho(&v, q035, 100_000, &SeededRng::new(778)).unwrap();
    println!(
        "rho production 1e5: {:.15} +- {:.3e}",
        prod.estimate, prod.stderr
    );
    println!("[{:?}]", t0.elapsed());

    // --- BP tau0 medians: oracle 1e4 replicas at q=0.2 L=256; production 1e3
    let torus256 = Region::torus2(256).unwrap();
    let q02 = Density::new(0.2).unwrap();
    let oracle_samples = bp_tau0_samples(&torus256, q02, 10_000, &SeededRng::new(900)).unwrap();
    let fin: Vec<f64> = oracle_samples.iter().map(BpHitTime::as_f64).collect();
    println!("bp tau0 oracle q=0.2 L=256 1e4 median = {}", stats::median(&fin));
    let prod_samples = bp_tau0_samples(&torus256, q02, 1_000, &SeededRng::new(901)).unwrap();
    let fin_p: Vec<f64> = prod_samples.iter().map(BpHitTime::as_f64).collect();
    println!("bp tau0 production q=0.2 L=256 1e3 median = {}", stats::median(&fin_p));
    println!("[{:?}]", t0.elapsed());

    // --- A15 BP trend: medians at (q, L) with seeds 15_000 + i
    for (i, (qv, l)) in [(0.3, 64usize), (0.2, 128), (0.15, 256)].iter().enumerate() {
        let torus = Region::torus2(*l).unwrap();
        let q = Density::new(*qv).unwrap();
        let samples =
            bp_tau0_samples(&torus, q, 1_000, &SeededRng::new(15_000 + i as u64)).unwrap();
        let vals: Vec<f64> = samples.iter().map(BpHitTime::as_f64).collect();
        let med = stats::median(&vals);
        let ratio = *qv * med.ln() / LAMBDA_2_2;
        println!(
            "bp trend q={qv} L={l}: median = {med}, q ln(median)/lambda = {ratio:.12}, L/median = {:.1}",
            *l as f64 / med
        );
    }
    println!("[{:?}]", t0.elapsed());

    // --- A15 FA trend: censored means at q in {0.3, 0.4, 0.5}, 64^2, 1e3
    for (i, qv) in [0.3f64, 0.4, 0.5].iter().enumerate() {
        let params = SimParams {
            j: 2,
            q: Density::new(*qv).unwrap(),
            region: Region::torus2(64).unwrap(),
            bc: BoundaryCondition::AllHealthy,
            init: InitialLaw::Stationary,
            t_max: 1e4,
            rng: SeededRng::new(15_100 + i as u64),
            record_events: false,
        };
        let samples = fa_tau0_samples(&params, 1_000).unwrap();
        let mean = samples.iter().map(|t| t.censored(1e4)).sum::<f64>() / 1000.0;
        let hits = samples.iter().filter(|t| t.hit_value().is_some()).count();
        println!("fa trend q={qv}: censored mean = {mean}, hit fraction = {}", hits as f64 / 1000.0);
    }
    println!("[{:?}]", t0.elapsed());

    // --- kcm tau0 regression: oracle 1e4 replicas vs production 1e3
    let base = SimParams {
        j: 2,
        q: Density::new(0.4).unwrap(),
        region: Region::torus2(64).unwrap(),
        bc: BoundaryCondition::AllHealthy,
        init: InitialLaw::Stationary,
        t_max: 1e4,
        rng: SeededRng::new(950),
        record_events: false,
    };
    let oracle_fa = fa_tau0_samples(&base, 10_000).unwrap();
    let m_oracle = oracle_fa.iter().map(|t| t.censored(1e4)).sum::<f64>() / 10_000.0;
    println!("kcm tau0 oracle q=0.4 1e4 mean = {m_oracle}");
    let prod_fa = fa_tau0_samples(
        &SimParams {
            rng: SeededRng::new(951),
            ..base.clone()
        },
        1_000,
    )
    .unwrap();
    let m_prod = prod_fa.iter().map(|t| t.censored(1e4)).sum::<f64>() / 1_000.0;
    println!("kcm tau0 production q=0.4 1e3 mean = {m_prod}");
    println!("total [{:?}]", t0.elapsed());
}
