//! The FA-jf / j-BP facilitation predicate: at least `j` infected
//! neighbours, counting frozen boundary sites per the boundary condition.

use crate::error::LatticeError;
use crate::lattice::boundary::BoundaryCondition;
use crate::lattice::config::Config;
use crate::lattice::region::{NeighborTable, OUTSIDE, PAD};

/// True iff site `x` has at least `j` infected neighbours in
/// `config · bc`. Torus regions wrap and ignore `bc`.
pub fn constraint(
    j: u8,
    config: &Config,
    bc: &BoundaryCondition,
    x: &[i64],
) -> Result<bool, LatticeError> {
    let region = config.region();
    let max = 2 * region.ndim() as u8;
    if j == 0 || j > max {
        return Err(LatticeError::InvalidConstraint { j, max });
    }
    let idx = region.index_of(x).ok_or(LatticeError::SiteOutsideRegion)?;
    let mut count = 0u8;
    region.for_each_neighbor(idx, |inside, coord| {
        let infected = match inside {
            Some(i) => config.is_infected(i),
            None => bc.is_infected_at(coord),
        };
        if infected {
            count += 1;
        }
    });
    Ok(count >= j)
}

/// Table-driven fast path for simulation loops. For `Explicit` boundaries the
/// outside neighbours are resolved through the slow coordinate walk.
#[inline]
pub fn constraint_at(
    j: u8,
    config: &Config,
    bc: &BoundaryCondition,
    table: &NeighborTable,
    idx: usize,
) -> bool {
    let mut count = 0u8;
    match bc {
        BoundaryCondition::Explicit(_) => {
            config.region().for_each_neighbor(idx, |inside, coord| {
                let infected = match inside {
                    Some(i) => config.is_infected(i),
                    None => bc.is_infected_at(coord),
                };
                if infected {
                    count += 1;
                }
            });
        }
        _ => {
            let outside_infected = matches!(bc, BoundaryCondition::AllInfected);
            for &n in table.neighbors(idx) {
                match n {
                    PAD => {}
                    OUTSIDE => {
                        if outside_infected {
                            count += 1;
                        }
                    }
                    i => {
                        if config.is_infected(i as usize) {
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    count >= j
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::region::Region;

    #[test]
    fn all_healthy_never_satisfied() {
        let r = Region::rect2(3, 3).unwrap();
        let cfg = Config::all_healthy(r);
        for x in 0..3 {
            for y in 0..3 {
                assert!(!constraint(1, &cfg, &BoundaryCondition::AllHealthy, &[x, y]).unwrap());
            }
        }
    }

    #[test]
    fn two_axis_neighbours_satisfy_j2() {
        // x at the centre with infected neighbours at x ± e1
        let r = Region::rect2(3, 3).unwrap();
        let cfg = Config::from_infected_coords(r, &[&[0, 1], &[2, 1]]).unwrap();
        assert!(constraint(2, &cfg, &BoundaryCondition::AllHealthy, &[1, 1]).unwrap());
        assert!(!constraint(3, &cfg, &BoundaryCondition::AllHealthy, &[1, 1]).unwrap());
    }

    #[test]
    fn infected_boundary_counts() {
        // 2x2 all-healthy interior, fully infected boundary: each corner
        // touches two boundary sites.
        let r = Region::rect2(2, 2).unwrap();
        let cfg = Config::all_healthy(r);
        assert!(constraint(2, &cfg, &BoundaryCondition::AllInfected, &[0, 0]).unwrap());
        assert!(!constraint(2, &cfg, &BoundaryCondition::AllHealthy, &[0, 0]).unwrap());
    }

    #[test]
    fn outside_site_rejected() {
        let r = Region::rect2(2, 2).unwrap();
        let cfg = Config::all_healthy(r);
        assert!(matches!(
            constraint(2, &cfg, &BoundaryCondition::AllHealthy, &[5, 0]),
            Err(LatticeError::SiteOutsideRegion)
        ));
    }

    #[test]
    fn table_path_matches_slow_path() {
        let r = Region::rect2(3, 2).unwrap();
        let table = r.neighbor_table();
        let cfg = Config::from_infected_coords(r.clone(), &[&[0, 0], &[2, 1]]).unwrap();
        for bc in [BoundaryCondition::AllHealthy, BoundaryCondition::AllInfected] {
            for idx in 0..r.len() {
                let coord = r.coord_of(idx);
                assert_eq!(
                    constraint(2, &cfg, &bc, &coord).unwrap(),
                    constraint_at(2, &cfg, &bc, &table, idx)
                );
            }
        }
    }
}
