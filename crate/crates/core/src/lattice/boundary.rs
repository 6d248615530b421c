//! Boundary conditions: a fixed state on the outer boundary of a rectangle,
//! entering constraints and traversability. Tori have no boundary.

use std::collections::BTreeMap;

use crate::error::LatticeError;
use crate::lattice::region::Region;
use crate::rng::SeededRng;
use crate::Density;
use rand::Rng;

/// States frozen on `∂Λ`. The symbolic forms avoid materialising the
/// boundary for the common all-healthy / all-infected cases.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryCondition {
    /// `𝟙`: every boundary site healthy.
    AllHealthy,
    /// `𝟘`: every boundary site infected.
    AllInfected,
    Explicit(ExplicitBoundary),
}

impl BoundaryCondition {
    /// State of a boundary site; `Explicit` panics on sites it does not
    /// cover, which the constructor rules out for in-contract callers.
    #[inline]
    pub fn state_at(&self, coord: &[i64]) -> u8 {
        match self {
            BoundaryCondition::AllHealthy => 1,
            BoundaryCondition::AllInfected => 0,
            BoundaryCondition::Explicit(b) => b.state_at(coord),
        }
    }

    #[inline]
    pub fn is_infected_at(&self, coord: &[i64]) -> bool {
        self.state_at(coord) == 0
    }

    pub fn explicit(
        region: &Region,
        states: BTreeMap<Vec<i64>, u8>,
    ) -> Result<BoundaryCondition, LatticeError> {
        Ok(BoundaryCondition::Explicit(ExplicitBoundary::new(
            region, states,
        )?))
    }

    /// Product-measure sample on the boundary of `region`.
    pub fn sample(
        region: &Region,
        q: Density,
        rng: &SeededRng,
    ) -> Result<BoundaryCondition, LatticeError> {
        let mut r = rng.rng();
        let threshold = q.infected_threshold();
        let mut states = BTreeMap::new();
        for coord in region.boundary_sites()? {
            let state = if r.random::<u64>() < threshold { 0 } else { 1 };
            states.insert(coord, state);
        }
        Self::explicit(region, states)
    }
}

/// An explicit assignment covering exactly `∂Λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitBoundary {
    states: BTreeMap<Vec<i64>, u8>,
}

impl ExplicitBoundary {
    pub fn new(
        region: &Region,
        states: BTreeMap<Vec<i64>, u8>,
    ) -> Result<ExplicitBoundary, LatticeError> {
        let boundary = region.boundary_sites()?;
        if states.len() != boundary.len() {
            return Err(LatticeError::BoundaryMismatch(format!(
                "expected {} boundary sites, got {}",
                boundary.len(),
                states.len()
            )));
        }
        for coord in &boundary {
            match states.get(coord) {
                Some(0 | 1) => {}
                Some(s) => {
                    return Err(LatticeError::BoundaryMismatch(format!(
                        "state {s} at {coord:?} is not 0 or 1"
                    )))
                }
                None => {
                    return Err(LatticeError::BoundaryMismatch(format!(
                        "boundary site {coord:?} missing"
                    )))
                }
            }
        }
        Ok(ExplicitBoundary { states })
    }

    #[inline]
    pub fn state_at(&self, coord: &[i64]) -> u8 {
        *self
            .states
            .get(coord)
            .unwrap_or_else(|| panic!("site {coord:?} not on the covered boundary"))
    }

    pub fn sites(&self) -> impl Iterator<Item = (&Vec<i64>, u8)> {
        self.states.iter().map(|(c, &s)| (c, s))
    }
}
