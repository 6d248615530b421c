//! Product-measure sampling: each site infected independently with
//! probability q.

use crate::lattice::config::Config;
use crate::lattice::density::Density;
use crate::lattice::region::Region;
use crate::rng::SeededRng;
use rand::Rng;

/// Draw a configuration from the product Bernoulli measure mu_q.
/// One u64 per site against a fixed threshold keeps the draw exact to
/// 2^-64 and cheap enough for 10^8-site sweeps.
pub fn sample_config(region: &Region, q: Density, rng: &SeededRng) -> Config {
    let mut r = rng.rng();
    let threshold = q.infected_threshold();
    let mut cfg = Config::all_healthy(region.clone());
    for idx in 0..region.len() {
        if r.random::<u64>() < threshold {
            cfg.set_state(idx, 0);
        }
    }
    cfg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_small_q_is_all_healthy() {
        let region = Region::rect2(10, 10).unwrap();
        let q = Density::new(1e-300).unwrap();
        let cfg = sample_config(&region, q, &SeededRng::new(1));
        assert_eq!(cfg.infected_count(), 0);
    }

    #[test]
    fn same_rng_same_config() {
        let region = Region::torus2(16).unwrap();
        let q = Density::new(0.3).unwrap();
        let s = SeededRng::new(42);
        assert_eq!(
            sample_config(&region, q, &s),
            sample_config(&region, q, &s)
        );
    }

    #[test]
    fn million_site_fraction_within_binomial_ci() {
        let region = Region::rect2(1000, 1000).unwrap();
        let q = Density::new(0.3).unwrap();
        let cfg = sample_config(&region, q, &SeededRng::new(7));
        let frac = cfg.infected_count() as f64 / 1e6;
        let tol = 4.0 * (0.3f64 * 0.7 / 1e6).sqrt();
        assert!((frac - 0.3).abs() < tol, "frac = {frac}, tol = {tol}");
    }

    #[test]
    fn deviation_rate_over_seeds() {
        // 4-sigma exceedances should be rare: under 1% of 200 seeds.
        let region = Region::rect2(100, 100).unwrap();
        let q = Density::new(0.3).unwrap();
        let tol = 4.0 * (0.3f64 * 0.7 / 1e4).sqrt();
        let mut bad = 0;
        for seed in 0..200 {
            let cfg = sample_config(&region, q, &SeededRng::new(seed));
            let frac = cfg.infected_count() as f64 / 1e4;
            if (frac - 0.3).abs() > tol {
                bad += 1;
            }
        }
        assert!(bad <= 2, "{bad} of 200 seeds outside 4 sigma");
    }
}
