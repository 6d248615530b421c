//! Property tests for the serialization codecs and the constraint
//! predicate.

use proptest::prelude::*;

use fa2f_core::lattice::codec::{parse_text, read_binary, write_binary, write_text};
use fa2f_core::lattice::compose::restrict;
use fa2f_core::{BoundaryCondition, Config, Region, SeededRng};
use rand::Rng;

fn arb_config() -> impl Strategy<Value = Config> {
    (1usize..12, 1usize..12, any::<u64>(), any::<bool>()).prop_map(|(w, h, seed, torus)| {
        let region = if torus {
            Region::torus(&[w, h]).unwrap()
        } else {
            Region::rect2(w, h).unwrap()
        };
        let mut rng = SeededRng::new(seed).rng();
        let mut cfg = Config::all_healthy(region);
        for i in 0..cfg.len() {
            if rng.random_bool(0.5) {
                cfg.set_state(i, 0);
            }
        }
        cfg
    })
}

proptest! {
    #[test]
    fn binary_roundtrip(cfg in arb_config()) {
        let bytes = write_binary(&cfg);
        prop_assert_eq!(read_binary(&bytes).unwrap(), cfg);
    }

    #[test]
    fn text_roundtrip_rectangles(cfg in arb_config()) {
        if cfg.region().is_torus() {
            return Ok(());
        }
        let text = write_text(&cfg).unwrap();
        let back = parse_text(&text).unwrap();
        prop_assert_eq!(back, cfg);
    }

    #[test]
    fn constraint_monotone_in_infections(cfg in arb_config(), extra in any::<u64>(), j in 1u8..4) {
        let region = cfg.region().clone();
        let mut more = cfg.clone();
        let mut rng = SeededRng::new(extra).rng();
        for i in 0..more.len() {
            if rng.random_bool(0.3) {
                more.set_state(i, 0);
            }
        }
        for idx in 0..region.len() {
            let coord = region.coord_of(idx);
            let before = fa2f_core::constraint(j, &cfg, &BoundaryCondition::AllHealthy, &coord).unwrap();
            let after = fa2f_core::constraint(j, &more, &BoundaryCondition::AllHealthy, &coord).unwrap();
            prop_assert!(!before || after, "adding infections flipped the constraint off");
        }
    }

    #[test]
    fn constraint_infected_boundary_dominates(cfg in arb_config(), j in 1u8..4) {
        if cfg.region().is_torus() {
            return Ok(());
        }
        let region = cfg.region().clone();
        for idx in 0..region.len() {
            let coord = region.coord_of(idx);
            let healthy = fa2f_core::constraint(j, &cfg, &BoundaryCondition::AllHealthy, &coord).unwrap();
            let infected = fa2f_core::constraint(j, &cfg, &BoundaryCondition::AllInfected, &coord).unwrap();
            prop_assert!(!healthy || infected);
        }
    }

    #[test]
    fn restriction_of_whole_region_is_identity(cfg in arb_config()) {
        if cfg.region().is_torus() {
            return Ok(());
        }
        let back = restrict(&cfg, cfg.region()).unwrap();
        prop_assert_eq!(back, cfg);
    }
}
