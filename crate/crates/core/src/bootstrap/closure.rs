//! Synchronous j-BP updates and the closure fixpoint.
//!
//! The closure runs a work-queue frontier: only the neighbours of newly
//! infected sites are re-examined, so the total cost is O(sites) per
//! closure regardless of how many rounds it takes.

use crate::error::{BpError, LatticeError};
use crate::lattice::boundary::BoundaryCondition;
use crate::lattice::config::Config;
use crate::lattice::region::{NeighborTable, OUTSIDE, PAD};

/// Result of running BP to its fixpoint.
#[derive(Debug, Clone)]
pub struct ClosureResult {
    /// Final configuration; infections are a superset of the input's.
    pub closed: Config,
    /// Number of synchronous rounds until nothing changes (0 when the
    /// input is already closed).
    pub rounds: u32,
}

fn validate_j(j: u8, config: &Config) -> Result<(), LatticeError> {
    let max = 2 * config.region().ndim() as u8;
    if j == 0 || j > max {
        return Err(LatticeError::InvalidConstraint { j, max });
    }
    Ok(())
}

/// One synchronous update: every healthy site with >= j infected
/// neighbours (boundary sites counted per `bc`) becomes infected.
pub fn bp_step(j: u8, config: &Config, bc: &BoundaryCondition) -> Result<Config, BpError> {
    validate_j(j, config)?;
    let region = config.region();
    let table = region.neighbor_table();
    let mut next = config.clone();
    for idx in 0..region.len() {
        if config.is_infected(idx) {
            continue;
        }
        if crate::lattice::constraint::constraint_at(j, config, bc, &table, idx) {
            next.set_state(idx, 0);
        }
    }
    Ok(next)
}

/// Internal engine: run to the fixpoint, optionally stopping as soon as
/// `watch` becomes infected. Returns the closure, the number of rounds to
/// the fixpoint (valid only when not stopped early), and the round at which
/// `watch` was infected.
/// True when the stride-arithmetic 2-d engine applies (no neighbour table
/// needed).
pub(crate) fn fast_2d_applies(config: &Config, bc: &BoundaryCondition) -> bool {
    config.region().ndim() == 2 && !matches!(bc, BoundaryCondition::Explicit(_))
}

pub(crate) fn closure_engine(
    j: u8,
    config: &Config,
    bc: &BoundaryCondition,
    table: &NeighborTable,
    watch: Option<usize>,
    stop_on_watch: bool,
) -> (Config, u32, Option<u32>) {
    let region = config.region();
    if fast_2d_applies(config, bc) {
        return closure_engine_2d(j, config, bc, watch, stop_on_watch);
    }
    let len = region.len();
    let mut closed = config.clone();

    let mut watch_round = match watch {
        Some(w) if config.is_infected(w) => Some(0),
        _ => None,
    };
    if stop_on_watch && watch_round.is_some() {
        return (closed, 0, watch_round);
    }

    // Infected-neighbour counts for healthy sites.
    let mut counts = vec![0u8; len];
    let explicit = matches!(bc, BoundaryCondition::Explicit(_));
    let outside_infected = matches!(bc, BoundaryCondition::AllInfected);
    for idx in 0..len {
        if closed.is_infected(idx) {
            continue;
        }
        let mut c = 0u8;
        if explicit {
            region.for_each_neighbor(idx, |inside, coord| {
                let infected = match inside {
                    Some(i) => closed.is_infected(i),
                    None => bc.is_infected_at(coord),
                };
                if infected {
                    c += 1;
                }
            });
        } else {
            for &n in table.neighbors(idx) {
                match n {
                    PAD => {}
                    OUTSIDE => {
                        if outside_infected {
                            c += 1;
                        }
                    }
                    i => {
                        if closed.is_infected(i as usize) {
                            c += 1;
                        }
                    }
                }
            }
        }
        counts[idx] = c;
    }

    let mut frontier: Vec<u32> = (0..len as u32)
        .filter(|&i| !closed.is_infected(i as usize) && counts[i as usize] >= j)
        .collect();
    let mut next: Vec<u32> = Vec::new();
    let mut rounds = 0u32;

    while !frontier.is_empty() {
        rounds += 1;
        for &f in &frontier {
            closed.set_state(f as usize, 0);
        }
        if let Some(w) = watch {
            if watch_round.is_none() && closed.is_infected(w) {
                watch_round = Some(rounds);
                if stop_on_watch {
                    return (closed, rounds, watch_round);
                }
            }
        }
        next.clear();
        for &f in &frontier {
            for &n in table.neighbors(f as usize) {
                if n == PAD || n == OUTSIDE {
                    continue;
                }
                let ni = n as usize;
                if closed.is_infected(ni) {
                    continue;
                }
                counts[ni] += 1;
                if counts[ni] == j {
                    next.push(n);
                }
            }
        }
        std::mem::swap(&mut frontier, &mut next);
    }
    (closed, rounds, watch_round)
}

/// Stride-arithmetic engine for the 2-d case with a symbolic boundary:
/// neighbour offsets are computed inline and the working state lives in a
/// byte array, which makes large sweeps a few times faster than the
/// table-driven generic path. Duplicate wrap-neighbours on side-2 tori are
/// handled by deduplicating the four candidate indices per site.
fn closure_engine_2d(
    j: u8,
    config: &Config,
    bc: &BoundaryCondition,
    watch: Option<usize>,
    stop_on_watch: bool,
) -> (Config, u32, Option<u32>) {
    let region = config.region();
    let (w, h) = (region.dims()[0], region.dims()[1]);
    let len = w * h;
    let torus = region.is_torus();
    let outside_infected = matches!(bc, BoundaryCondition::AllInfected);

    let mut watch_round = match watch {
        Some(x) if config.is_infected(x) => Some(0),
        _ => None,
    };
    if stop_on_watch && watch_round.is_some() {
        return (config.clone(), 0, watch_round);
    }

    // infected flags as bytes for cheap random access
    let mut infected = vec![0u8; len];
    for (idx, slot) in infected.iter_mut().enumerate() {
        *slot = config.is_infected(idx) as u8;
    }

    // up to four deduplicated neighbour slots (side-2 tori wrap both ways
    // onto the same site)
    let neighbors_of = |idx: usize, out: &mut [usize; 4]| -> usize {
        let x = idx % w;
        let y = idx / w;
        if torus {
            let mut n = 0;
            let push = |cand: usize, out: &mut [usize; 4], n: &mut usize| {
                if !out[..*n].contains(&cand) {
                    out[*n] = cand;
                    *n += 1;
                }
            };
            push(if x == 0 { idx + w - 1 } else { idx - 1 }, out, &mut n);
            push(if x + 1 == w { idx + 1 - w } else { idx + 1 }, out, &mut n);
            push(if y == 0 { idx + len - w } else { idx - w }, out, &mut n);
            push(if y + 1 == h { idx + w - len } else { idx + w }, out, &mut n);
            n
        } else {
            let mut n = 0;
            if x > 0 {
                out[n] = idx - 1;
                n += 1;
            }
            if x + 1 < w {
                out[n] = idx + 1;
                n += 1;
            }
            if y > 0 {
                out[n] = idx - w;
                n += 1;
            }
            if y + 1 < h {
                out[n] = idx + w;
                n += 1;
            }
            n
        }
    };

    let mut counts = vec![0u8; len];
    if torus {
        let mut slots = [0usize; 4];
        for idx in 0..len {
            if infected[idx] != 0 {
                continue;
            }
            let n = neighbors_of(idx, &mut slots);
            let mut c = 0u8;
            for &nb in &slots[..n] {
                c += infected[nb];
            }
            counts[idx] = c;
        }
    } else {
        for idx in 0..len {
            if infected[idx] != 0 {
                continue;
            }
            let x = idx % w;
            let y = idx / w;
            let mut c = 0u8;
            let mut outside = 0u8;
            if x > 0 { c += infected[idx - 1]; } else { outside += 1; }
            if x + 1 < w { c += infected[idx + 1]; } else { outside += 1; }
            if y > 0 { c += infected[idx - w]; } else { outside += 1; }
            if y + 1 < h { c += infected[idx + w]; } else { outside += 1; }
            if outside_infected {
                c += outside;
            }
            counts[idx] = c;
        }
    }

    let mut frontier: Vec<u32> = (0..len as u32)
        .filter(|&i| infected[i as usize] == 0 && counts[i as usize] >= j)
        .collect();
    let mut next: Vec<u32> = Vec::new();
    let mut rounds = 0u32;
    while !frontier.is_empty() {
        rounds += 1;
        for &f in &frontier {
            infected[f as usize] = 1;
        }
        if let Some(x) = watch {
            if watch_round.is_none() && infected[x] != 0 {
                watch_round = Some(rounds);
                if stop_on_watch {
                    break;
                }
            }
        }
        next.clear();
        if torus {
            let mut slots = [0usize; 4];
            for &f in &frontier {
                let n = neighbors_of(f as usize, &mut slots);
                for &nb in &slots[..n] {
                    if infected[nb] != 0 {
                        continue;
                    }
                    counts[nb] += 1;
                    if counts[nb] == j {
                        next.push(nb as u32);
                    }
                }
            }
        } else {
            for &f in &frontier {
                let idx = f as usize;
                let x = idx % w;
                let y = idx / w;
                let visit = |nb: usize, next: &mut Vec<u32>, counts: &mut [u8]| {
                    if infected[nb] == 0 {
                        counts[nb] += 1;
                        if counts[nb] == j {
                            next.push(nb as u32);
                        }
                    }
                };
                if x > 0 { visit(idx - 1, &mut next, &mut counts); }
                if x + 1 < w { visit(idx + 1, &mut next, &mut counts); }
                if y > 0 { visit(idx - w, &mut next, &mut counts); }
                if y + 1 < h { visit(idx + w, &mut next, &mut counts); }
            }
        }
        std::mem::swap(&mut frontier, &mut next);
    }

    // pack the byte flags back into the bit-packed configuration by words
    let mut closed = config.clone();
    for (word_idx, chunk) in infected.chunks(64).enumerate() {
        let mut healthy_bits = 0u64;
        for (bit, &flag) in chunk.iter().enumerate() {
            healthy_bits |= u64::from(flag ^ 1) << bit;
        }
        closed.set_word(word_idx, healthy_bits, chunk.len());
    }
    (closed, rounds, watch_round)
}

/// Least BP fixpoint containing the initial infections.
pub fn bp_closure(j: u8, config: &Config, bc: &BoundaryCondition) -> Result<ClosureResult, BpError> {
    validate_j(j, config)?;
    if fast_2d_applies(config, bc) {
        let (closed, rounds, _) = closure_engine_2d(j, config, bc, None, false);
        return Ok(ClosureResult { closed, rounds });
    }
    let table = config.region().neighbor_table();
    let (closed, rounds, _) = closure_engine(j, config, bc, &table, None, false);
    Ok(ClosureResult { closed, rounds })
}

/// Closure with a caller-provided neighbour table, for sweeps that run
/// many closures over one region.
pub fn bp_closure_with_table(
    j: u8,
    config: &Config,
    bc: &BoundaryCondition,
    table: &NeighborTable,
) -> Result<ClosureResult, BpError> {
    validate_j(j, config)?;
    let (closed, rounds, _) = closure_engine(j, config, bc, table, None, false);
    Ok(ClosureResult { closed, rounds })
}

/// True iff 2-BP with all-healthy boundary fills the whole region.
pub fn internally_spanned(config: &Config) -> bool {
    let closed = bp_closure(2, config, &BoundaryCondition::AllHealthy)
        .expect("j = 2 is valid in any dimension >= 1")
        .closed;
    closed.infected_count() == config.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::region::Region;

    fn cfg_3x3(infected: &[(i64, i64)]) -> Config {
        let r = Region::rectangle_at(&[3, 3], &[1, 1]).unwrap();
        let coords: Vec<Vec<i64>> = infected.iter().map(|&(x, y)| vec![x, y]).collect();
        let refs: Vec<&[i64]> = coords.iter().map(|c| c.as_slice()).collect();
        Config::from_infected_coords(r, &refs).unwrap()
    }

    #[test]
    fn step_all_infected_absorbing() {
        let r = Region::rect2(4, 4).unwrap();
        let c = Config::all_infected(r);
        let s = bp_step(2, &c, &BoundaryCondition::AllHealthy).unwrap();
        assert_eq!(s, c);
    }

    #[test]
    fn step_adds_expected_sites() {
        // infections {(1,1),(2,2)} in the 3x3 box [1,3]^2: one step adds
        // exactly (1,2) and (2,1)
        let c = cfg_3x3(&[(1, 1), (2, 2)]);
        let s = bp_step(2, &c, &BoundaryCondition::AllHealthy).unwrap();
        let expect = cfg_3x3(&[(1, 1), (2, 2), (1, 2), (2, 1)]);
        assert_eq!(s, expect);
    }

    #[test]
    fn step_empty_unchanged() {
        let r = Region::rect2(3, 3).unwrap();
        let c = Config::all_healthy(r);
        let s = bp_step(2, &c, &BoundaryCondition::AllHealthy).unwrap();
        assert_eq!(s, c);
    }

    #[test]
    fn diagonal_fills_box() {
        let c = cfg_3x3(&[(1, 1), (2, 2), (3, 3)]);
        let res = bp_closure(2, &c, &BoundaryCondition::AllHealthy).unwrap();
        assert_eq!(res.closed.infected_count(), 9);
        assert_eq!(res.rounds, 2);
    }

    #[test]
    fn column_does_not_grow() {
        // a single infected column in a 5x5 box stays put under 2-BP
        let r = Region::rect2(5, 5).unwrap();
        let coords: Vec<Vec<i64>> = (0..5).map(|y| vec![2, y]).collect();
        let refs: Vec<&[i64]> = coords.iter().map(|c| c.as_slice()).collect();
        let c = Config::from_infected_coords(r, &refs).unwrap();
        let res = bp_closure(2, &c, &BoundaryCondition::AllHealthy).unwrap();
        assert_eq!(res.closed, c);
        assert_eq!(res.rounds, 0);
    }

    #[test]
    fn one_bp_fills_connected_region() {
        let r = Region::rect2(6, 4).unwrap();
        let c = Config::from_infected_coords(r, &[&[3, 2]]).unwrap();
        let res = bp_closure(1, &c, &BoundaryCondition::AllHealthy).unwrap();
        assert_eq!(res.closed.infected_count(), 24);
    }

    #[test]
    fn spanned_examples() {
        let r = Region::rect2(2, 2).unwrap();
        assert!(internally_spanned(&Config::all_infected(r.clone())));
        assert!(!internally_spanned(&Config::all_healthy(r.clone())));
        let c = Config::from_infected_coords(r, &[&[0, 0], &[1, 1]]).unwrap();
        assert!(internally_spanned(&c));
    }

    #[test]
    fn fast_2d_path_matches_generic_engine() {
        // an explicit boundary identical to the symbolic one forces the
        // generic table-driven engine; both paths must agree exactly
        use crate::lattice::density::Density;
        use crate::lattice::sample::sample_config;
        use crate::rng::SeededRng;
        use std::collections::BTreeMap;
        let region = Region::rect2(7, 5).unwrap();
        let q = Density::new(0.35).unwrap();
        for (symbolic, state) in [
            (BoundaryCondition::AllHealthy, 1u8),
            (BoundaryCondition::AllInfected, 0u8),
        ] {
            let mut states = BTreeMap::new();
            for coord in region.boundary_sites().unwrap() {
                states.insert(coord, state);
            }
            let explicit = BoundaryCondition::explicit(&region, states).unwrap();
            for seed in 0..300 {
                let cfg = sample_config(&region, q, &SeededRng::new(seed));
                let fast = bp_closure(2, &cfg, &symbolic).unwrap();
                let generic = bp_closure(2, &cfg, &explicit).unwrap();
                assert_eq!(fast.closed, generic.closed, "seed {seed}");
                assert_eq!(fast.rounds, generic.rounds, "seed {seed}");
            }
        }
    }

    #[test]
    fn infected_boundary_grows_closure() {
        // closure under 0-boundary contains closure under 1-boundary
        let r = Region::rect2(3, 3).unwrap();
        let c = Config::from_infected_coords(r, &[&[1, 1]]).unwrap();
        let one = bp_closure(2, &c, &BoundaryCondition::AllHealthy).unwrap();
        let zero = bp_closure(2, &c, &BoundaryCondition::AllInfected).unwrap();
        assert!(one.closed.infections_subset_of(&zero.closed));
        assert_eq!(zero.closed.infected_count(), 9); // infected frame fills everything
        assert_eq!(one.closed.infected_count(), 1);
    }
}
