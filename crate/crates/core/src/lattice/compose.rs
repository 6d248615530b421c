//! Gluing disjoint rectangle configurations and restricting to
//! sub-rectangles. `compose(parts)` requires the parts to tile a rectangle
//! exactly; restriction to each part then reproduces the input.

use crate::error::LatticeError;
use crate::lattice::config::Config;
use crate::lattice::region::{Region, RegionKind};

/// Glue pairwise disjoint rectangle parts into the configuration on their
/// bounding rectangle. The parts must tile that rectangle exactly.
pub fn compose(parts: &[Config]) -> Result<Config, LatticeError> {
    if parts.is_empty() {
        return Err(LatticeError::PartsDoNotTile);
    }
    let nd = parts[0].region().ndim();
    for p in parts {
        if p.region().kind() != RegionKind::Rectangle {
            return Err(LatticeError::NotARectangle);
        }
        if p.region().ndim() != nd {
            return Err(LatticeError::DimensionMismatch {
                expected: nd,
                got: p.region().ndim(),
            });
        }
    }
    let mut lo = parts[0].region().offset().to_vec();
    let mut hi: Vec<i64> = parts[0]
        .region()
        .offset()
        .iter()
        .zip(parts[0].region().dims())
        .map(|(&o, &d)| o + d as i64)
        .collect();
    let mut total: usize = 0;
    for p in parts {
        let r = p.region();
        for axis in 0..nd {
            lo[axis] = lo[axis].min(r.offset()[axis]);
            hi[axis] = hi[axis].max(r.offset()[axis] + r.dims()[axis] as i64);
        }
        total += r.len();
    }
    let dims: Vec<usize> = hi
        .iter()
        .zip(&lo)
        .map(|(&h, &l)| (h - l) as usize)
        .collect();
    let bbox = Region::rectangle_at(&dims, &lo)?;
    if total > bbox.len() {
        return Err(LatticeError::OverlappingParts);
    }
    let mut covered = vec![false; bbox.len()];
    let mut out = Config::all_healthy(bbox.clone());
    let mut coord = vec![0i64; nd];
    for p in parts {
        for idx in 0..p.len() {
            p.region().coord_into(idx, &mut coord);
            let j = bbox.index_of(&coord).expect("part inside bounding box");
            if covered[j] {
                return Err(LatticeError::OverlappingParts);
            }
            covered[j] = true;
            out.set_state(j, p.state(idx));
        }
    }
    if covered.iter().any(|&c| !c) {
        return Err(LatticeError::PartsDoNotTile);
    }
    Ok(out)
}

/// Restriction of a configuration to a sub-rectangle (no torus wrapping).
pub fn restrict(config: &Config, sub: &Region) -> Result<Config, LatticeError> {
    if sub.kind() != RegionKind::Rectangle {
        return Err(LatticeError::NotARectangle);
    }
    if sub.ndim() != config.region().ndim() {
        return Err(LatticeError::DimensionMismatch {
            expected: config.region().ndim(),
            got: sub.ndim(),
        });
    }
    let parent = config.region();
    let mut out = Config::all_healthy(sub.clone());
    let mut coord = vec![0i64; sub.ndim()];
    for idx in 0..sub.len() {
        sub.coord_into(idx, &mut coord);
        // On a torus index_of would wrap; restriction demands the canonical
        // representatives, so range-check explicitly.
        if parent.kind() == RegionKind::Torus {
            for (axis, &c) in coord.iter().enumerate() {
                if c < 0 || c >= parent.dims()[axis] as i64 {
                    return Err(LatticeError::SiteOutsideRegion);
                }
            }
        }
        let j = parent
            .index_of(&coord)
            .ok_or(LatticeError::SiteOutsideRegion)?;
        out.set_state(idx, config.state(j));
    }
    Ok(out)
}
