//! Exact FA-jf chains on small regions, the FA-1f Poincaré variants, and
//! the super-good conditioned Poincaré constant gamma.

use nalgebra::{DMatrix, SymmetricEigen};

use fa2f_core::droplet::{is_supergood, Rect, ScaleSequence};
use fa2f_core::lattice::region::{Region, OUTSIDE, PAD};
use fa2f_core::{BoundaryCondition, Config, Density};

use crate::chain::ChainSpec;
use crate::error::SpectralError;

/// Exhaustive enumeration cap: at most this many sites per chain.
pub const SITE_CAP: usize = 20;

/// Adjacency and frozen outside-infection counts for a finite site set.
struct SiteSystem {
    n: usize,
    neighbors: Vec<Vec<usize>>,
    outside_infected: Vec<u8>,
}

impl SiteSystem {
    fn from_region(region: &Region, bc: &BoundaryCondition) -> Result<SiteSystem, SpectralError> {
        let n = region.len();
        if n > SITE_CAP {
            return Err(SpectralError::CapExceeded {
                have: n,
                cap: SITE_CAP,
            });
        }
        let table = region.neighbor_table();
        let mut neighbors = vec![Vec::new(); n];
        let mut outside_infected = vec![0u8; n];
        for idx in 0..n {
            for &nb in table.neighbors(idx) {
                match nb {
                    PAD => {}
                    OUTSIDE => {}
                    i => neighbors[idx].push(i as usize),
                }
            }
            // resolve outside neighbours through the boundary condition
            if !region.is_torus() {
                region.for_each_neighbor(idx, |inside, coord| {
                    if inside.is_none() && bc.is_infected_at(coord) {
                        outside_infected[idx] += 1;
                    }
                });
            }
        }
        Ok(SiteSystem {
            n,
            neighbors,
            outside_infected,
        })
    }

    fn from_sites(sites: &[(i64, i64)]) -> Result<SiteSystem, SpectralError> {
        let n = sites.len();
        if n == 0 {
            return Err(SpectralError::EmptyStateSpace);
        }
        if n > SITE_CAP {
            return Err(SpectralError::CapExceeded {
                have: n,
                cap: SITE_CAP,
            });
        }
        let mut neighbors = vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let dx = (sites[a].0 - sites[b].0).abs();
                let dy = (sites[a].1 - sites[b].1).abs();
                if dx + dy == 1 {
                    neighbors[a].push(b);
                }
            }
        }
        Ok(SiteSystem {
            n,
            neighbors,
            outside_infected: vec![0; n],
        })
    }

    fn connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Infected-neighbour count of slot x in state `mask` (bit = infected).
    #[inline]
    fn infected_neighbors(&self, mask: u32, x: usize) -> u8 {
        let mut c = self.outside_infected[x];
        for &nb in &self.neighbors[x] {
            c += ((mask >> nb) & 1) as u8;
        }
        c
    }
}

/// Measure of `mask` under mu_q (bit set = infected).
fn state_weight(mask: u32, n: usize, q: f64) -> f64 {
    let inf = mask.count_ones() as i32;
    q.powi(inf) * (1.0 - q).powi(n as i32 - inf)
}

/// Heat-bath FA-jf rates on the listed states (masks): at a site whose
/// constraint holds, flip to infected at rate q, to healthy at rate 1-q.
/// `unconstrained` (if any) always resamples. Moves leaving the state list
/// are dropped (reflection).
fn build_chain(
    system: &SiteSystem,
    j: u8,
    q: Density,
    states: &[u32],
    unconstrained: Option<usize>,
) -> Result<ChainSpec, SpectralError> {
    if states.is_empty() {
        return Err(SpectralError::EmptyStateSpace);
    }
    let mut index = std::collections::HashMap::with_capacity(states.len());
    for (k, &s) in states.iter().enumerate() {
        index.insert(s, k as u32);
    }
    let qv = q.q();
    let measure: Vec<f64> = states
        .iter()
        .map(|&s| state_weight(s, system.n, qv))
        .collect();
    let mut rates = Vec::new();
    for (k, &s) in states.iter().enumerate() {
        for x in 0..system.n {
            let free = Some(x) == unconstrained || system.infected_neighbors(s, x) >= j;
            if !free {
                continue;
            }
            let t = s ^ (1 << x);
            let Some(&kt) = index.get(&t) else {
                continue; // reflected at the event boundary
            };
            let to_infected = t & (1 << x) != 0;
            let rate = if to_infected { qv } else { 1.0 - qv };
            rates.push((k as u32, kt, rate));
        }
    }
    ChainSpec::new(measure, rates)
}

/// FA-jf heat-bath chain on a whole region with boundary condition,
/// optionally restricted (reflected) to an event over bit-masks
/// (bit = infected, site order = region linear order).
pub fn fa_chain_on_region(
    j: u8,
    region: &Region,
    bc: &BoundaryCondition,
    q: Density,
    restriction: Option<&dyn Fn(u32) -> bool>,
) -> Result<ChainSpec, SpectralError> {
    let system = SiteSystem::from_region(region, bc)?;
    let all: Vec<u32> = (0u32..1 << system.n)
        .filter(|&s| restriction.map_or(true, |r| r(s)))
        .collect();
    build_chain(&system, j, q, &all, None)
}

/// FA-jf chain on an explicit 2-d site list (free boundary), optionally
/// restricted.
pub fn fa_chain_on_sites(
    j: u8,
    sites: &[(i64, i64)],
    q: Density,
    restriction: Option<&dyn Fn(u32) -> bool>,
) -> Result<ChainSpec, SpectralError> {
    let system = SiteSystem::from_sites(sites)?;
    let all: Vec<u32> = (0u32..1 << system.n)
        .filter(|&s| restriction.map_or(true, |r| r(s)))
        .collect();
    build_chain(&system, j, q, &all, None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fa1fVariant {
    /// On Omega^+ (at least one infection), plain FA-1f constraints.
    Ergodic,
    /// On the full space with the given site index always free to resample.
    BoundarySite(usize),
}

/// Best Poincaré constant of the FA-1f variant on a connected site set,
/// plus the density exponent log T_rel / log(1/q).
pub fn fa1f_poincare_check(
    sites: &[(i64, i64)],
    q: Density,
    variant: Fa1fVariant,
) -> Result<(f64, f64), SpectralError> {
    let system = SiteSystem::from_sites(sites)?;
    if !system.connected() {
        return Err(SpectralError::Disconnected);
    }
    let chain = match variant {
        Fa1fVariant::Ergodic => {
            let states: Vec<u32> = (1u32..1 << system.n).collect(); // drop the all-healthy state
            build_chain(&system, 1, q, &states, None)?
        }
        Fa1fVariant::BoundarySite(z) => {
            if z >= system.n {
                return Err(SpectralError::BadInstance(format!(
                    "site index {z} out of range"
                )));
            }
            let states: Vec<u32> = (0u32..1 << system.n).collect();
            build_chain(&system, 1, q, &states, Some(z))?
        }
    };
    let t_rel = crate::eigen::relaxation_time(&chain)?;
    let exponent = if t_rel > 0.0 {
        t_rel.ln() / (1.0 / q.q()).ln()
    } else {
        0.0
    };
    Ok((t_rel, exponent))
}

/// Best constant C >= 1 with
///   Var_R(f | SG^omega) <= C sum_x mu_R(c_x Var_x(f) | SG^omega)
/// over all f on the full configuration space of R (off-event values enter
/// the right side only). Solved as a generalized eigenproblem on the
/// complement of the Dirichlet form's kernel; a kernel vector with positive
/// variance means an infinite constant and is reported as an error.
pub fn gamma(
    rect_dims: (usize, usize),
    bc: &BoundaryCondition,
    q: Density,
    scales: &ScaleSequence,
) -> Result<f64, SpectralError> {
    let (w, h) = rect_dims;
    let n_sites = w * h;
    if n_sites > 16 {
        return Err(SpectralError::CapExceeded {
            have: n_sites,
            cap: 16,
        });
    }
    let region = Region::rect2(w, h)?;
    // locate the class level of this shape
    let mut level = None;
    for n in 0..=scales.max_level() {
        if scales.is_class(w as i64, h as i64, n)? {
            level = Some(n);
            break;
        }
    }
    let Some(level) = level else {
        return Err(SpectralError::Droplet(
            fa2f_core::error::DropletError::NotOfClass { n: u32::MAX },
        ));
    };
    let system = SiteSystem::from_region(&region, bc)?;
    let qv = q.q();
    let total_states = 1usize << n_sites;
    let rect = Rect::new(0, 0, w as i64, h as i64);

    // super-good membership per mask
    let mut sg = vec![false; total_states];
    let mut cfg = Config::all_healthy(region.clone());
    for mask in 0..total_states as u32 {
        for i in 0..n_sites {
            cfg.set_state(i, if mask & (1 << i) != 0 { 0 } else { 1 });
        }
        sg[mask as usize] = is_supergood(&cfg, bc, rect, level, scales)?.is_some();
    }
    let sg_weight: f64 = (0..total_states)
        .filter(|&s| sg[s])
        .map(|s| state_weight(s as u32, n_sites, qv))
        .sum();
    if sg_weight == 0.0 {
        return Err(SpectralError::ZeroProbabilityEvent("empty super-good event".into()));
    }

    // A: variance conditioned on SG; B: constrained single-site variances
    let mut a = DMatrix::<f64>::zeros(total_states, total_states);
    let mut b = DMatrix::<f64>::zeros(total_states, total_states);
    let mut pi_hat = vec![0.0; total_states];
    for s in 0..total_states {
        if sg[s] {
            pi_hat[s] = state_weight(s as u32, n_sites, qv) / sg_weight;
        }
    }
    for s in 0..total_states {
        if pi_hat[s] == 0.0 {
            continue;
        }
        a[(s, s)] += pi_hat[s];
        for t in 0..total_states {
            if pi_hat[t] > 0.0 {
                a[(s, t)] -= pi_hat[s] * pi_hat[t];
            }
        }
        for x in 0..n_sites {
            if system.infected_neighbors(s as u32, x) < 2 {
                continue;
            }
            let s_inf = s | (1 << x);
            let s_heal = s & !(1 << x);
            let wgt = pi_hat[s] * qv * (1.0 - qv);
            b[(s_inf, s_inf)] += wgt;
            b[(s_heal, s_heal)] += wgt;
            b[(s_inf, s_heal)] -= wgt;
            b[(s_heal, s_inf)] -= wgt;
        }
    }

    // pencil solve on the complement of ker B
    let eig_b = SymmetricEigen::new(b);
    let max_eig = eig_b
        .eigenvalues
        .iter()
        .fold(0.0f64, |m, &v| m.max(v.abs()));
    let tol = 1e-12 * max_eig.max(1e-300);
    let mut keep: Vec<usize> = Vec::new();
    for (k, &val) in eig_b.eigenvalues.iter().enumerate() {
        if val > tol {
            keep.push(k);
        } else {
            // kernel direction: positive conditional variance => infinite C
            let v = eig_b.eigenvectors.column(k);
            let energy = (&a * v).dot(&v);
            if energy > 1e-9 {
                return Err(SpectralError::InfiniteGamma);
            }
        }
    }
    if keep.is_empty() {
        return Ok(1.0); // A is zero on the kernel: the left side vanishes
    }
    // M = S^{-1/2} U^T A U S^{-1/2} over the kept columns
    let m_dim = keep.len();
    let mut u_kept = DMatrix::<f64>::zeros(total_states, m_dim);
    for (col, &k) in keep.iter().enumerate() {
        let scale = eig_b.eigenvalues[k].sqrt();
        for r in 0..total_states {
            u_kept[(r, col)] = eig_b.eigenvectors[(r, k)] / scale;
        }
    }
    let m = u_kept.transpose() * a * u_kept;
    let m_sym = 0.5 * (&m + m.transpose());
    let lam = SymmetricEigen::new(m_sym)
        .eigenvalues
        .iter()
        .fold(f64::NEG_INFINITY, |mx, &v| mx.max(v));
    Ok(lam.max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::relaxation_time;

    #[test]
    fn single_unconstrained_site_relaxes_at_rate_one() {
        // heat-bath on one free site: gap = q + (1-q) = 1
        let (t, _) = fa1f_poincare_check(
            &[(0, 0)],
            Density::new(0.3).unwrap(),
            Fa1fVariant::BoundarySite(0),
        )
        .unwrap();
        assert!((t - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fa2f_2x2_torus_is_reversible_and_solvable() {
        let region = Region::torus2(2).unwrap();
        let q = Density::new(0.3).unwrap();
        let chain =
            fa_chain_on_region(2, &region, &BoundaryCondition::AllHealthy, q, None).unwrap();
        assert_eq!(chain.len(), 16);
        chain.check_detailed_balance(1e-12).unwrap();
        // the chain is reducible: the all-healthy state is isolated (no
        // site ever has 2 infected neighbours from nothing)
        assert!(relaxation_time(&chain).is_err());
    }

    #[test]
    fn fa2f_2x2_torus_active_class() {
        // On T_2^2 a site flips only when both its neighbours are infected;
        // adjacent pairs are frozen, so the active communicating class is
        // {diagonal pairs, triples, full} = 7 states.
        let region = Region::torus2(2).unwrap();
        let q = Density::new(0.3).unwrap();
        let restriction = |s: u32| s.count_ones() >= 3 || s == 0b1001 || s == 0b0110;
        let chain = fa_chain_on_region(
            2,
            &region,
            &BoundaryCondition::AllHealthy,
            q,
            Some(&restriction),
        )
        .unwrap();
        assert_eq!(chain.len(), 7);
        chain.check_detailed_balance(1e-12).unwrap();
        let t = relaxation_time(&chain).unwrap();
        assert!(t.is_finite() && t > 0.0);
    }

    #[test]
    fn sg_restricted_square_has_five_states() {
        // matches the droplet-calculus count of super-good configurations
        let region = Region::rect2(2, 2).unwrap();
        let q = Density::new(0.5).unwrap();
        let scales = ScaleSequence::custom(&[1, 2]).unwrap();
        let rect = Rect::new(0, 0, 2, 2);
        let bc = BoundaryCondition::AllHealthy;
        let sg = move |s: u32| {
            let mut cfg = Config::all_healthy(region.clone());
            for i in 0..4 {
                cfg.set_state(i, if s & (1 << i) != 0 { 0 } else { 1 });
            }
            is_supergood(&cfg, &bc, rect, 2, &scales).unwrap().is_some()
        };
        let region2 = Region::rect2(2, 2).unwrap();
        let chain = fa_chain_on_region(
            2,
            &region2,
            &BoundaryCondition::AllHealthy,
            q,
            Some(&sg),
        )
        .unwrap();
        assert_eq!(chain.len(), 5);
        chain.check_detailed_balance(1e-12).unwrap();
    }

    #[test]
    fn ergodic_fa1f_on_path_is_irreducible() {
        let q = Density::new(0.3).unwrap();
        let (t, expo) =
            fa1f_poincare_check(&[(0, 0), (1, 0)], q, Fa1fVariant::Ergodic).unwrap();
        assert!(t.is_finite() && t >= 0.99);
        assert!(expo.is_finite());
    }

    #[test]
    fn gamma_level_zero_is_one() {
        let scales = ScaleSequence::custom(&[1, 2]).unwrap();
        let q = Density::new(0.4).unwrap();
        for bc in [BoundaryCondition::AllHealthy, BoundaryCondition::AllInfected] {
            let g = gamma((1, 1), &bc, q, &scales).unwrap();
            assert_eq!(g, 1.0);
        }
    }

    #[test]
    fn gamma_toy_square_finite_and_at_least_one() {
        let scales = ScaleSequence::custom(&[1, 2]).unwrap();
        let q = Density::new(0.5).unwrap();
        let g = gamma((2, 2), &BoundaryCondition::AllHealthy, q, &scales).unwrap();
        assert!(g.is_finite() && g >= 1.0, "gamma = {g}");
        let g0 = gamma((2, 2), &BoundaryCondition::AllInfected, q, &scales).unwrap();
        assert!(g0.is_finite() && g0 >= 1.0);
    }

    #[test]
    fn fa1f_two_site_path_pinned() {
        // dense-oracle pin: the 3-state Omega^+ chain at q = 0.3 has
        // T_rel = 10/3
        let region = Region::rect2(2, 1).unwrap();
        let q = Density::new(0.3).unwrap();
        let restriction = |s: u32| s != 0;
        let chain = fa_chain_on_region(
            1,
            &region,
            &BoundaryCondition::AllHealthy,
            q,
            Some(&restriction),
        )
        .unwrap();
        let t = relaxation_time(&chain).unwrap();
        assert!((t - 10.0 / 3.0).abs() < 1e-12, "t = {t}");
    }

    #[test]
    fn fa2f_2x2_torus_spectrum_pinned() {
        // frozen from the dense eigensolve oracle at q = 0.3
        let region = Region::torus2(2).unwrap();
        let q = Density::new(0.3).unwrap();
        let restriction = |s: u32| s.count_ones() >= 3 || s == 0b1001 || s == 0b0110;
        let chain = fa_chain_on_region(
            2,
            &region,
            &BoundaryCondition::AllHealthy,
            q,
            Some(&restriction),
        )
        .unwrap();
        let spectrum = crate::eigen::spectrum_dense(&chain).unwrap();
        let pinned = [
            0.0,
            0.121767001687,
            1.0,
            1.0,
            1.190049506164,
            1.478232998313,
            3.209950493836,
        ];
        assert_eq!(spectrum.len(), pinned.len());
        for (got, pin) in spectrum.iter().zip(&pinned) {
            assert!((got - pin).abs() < 1e-9, "{spectrum:?}");
        }
        let t = relaxation_time(&chain).unwrap();
        assert!((t - 8.212405546180715).abs() < 1e-9);
    }

    #[test]
    fn gamma_is_the_least_upper_envelope() {
        // the pinned gamma = 2 on the toy square must dominate the
        // variance-to-Dirichlet ratio of every function and be attained
        use fa2f_core::droplet::{is_supergood, ScaleSequence};
        use fa2f_core::SeededRng;
        use rand::Rng;
        let scales = ScaleSequence::custom(&[1, 2]).unwrap();
        let q = Density::new(0.5).unwrap();
        let bc = BoundaryCondition::AllHealthy;
        let g = gamma((2, 2), &bc, q, &scales).unwrap();
        let region = Region::rect2(2, 2).unwrap();
        let rect = Rect::new(0, 0, 2, 2);
        let system = SiteSystem::from_region(&region, &bc).unwrap();
        let qv = q.q();
        let mut sg = [false; 16];
        let mut weights = [0.0f64; 16];
        let mut cfg = Config::all_healthy(region.clone());
        for mask in 0u32..16 {
            for i in 0..4 {
                cfg.set_state(i, if mask & (1 << i) != 0 { 0 } else { 1 });
            }
            sg[mask as usize] =
                is_supergood(&cfg, &bc, rect, 2, &scales).unwrap().is_some();
            weights[mask as usize] = state_weight(mask, 4, qv);
        }
        let z: f64 = (0..16).filter(|&m| sg[m]).map(|m| weights[m]).sum();
        let ratio = |f: &[f64; 16]| -> (f64, f64) {
            let mean: f64 = (0..16).filter(|&m| sg[m]).map(|m| weights[m] / z * f[m]).sum();
            let var: f64 = (0..16)
                .filter(|&m| sg[m])
                .map(|m| weights[m] / z * (f[m] - mean) * (f[m] - mean))
                .sum();
            let mut dir = 0.0;
            for m in 0..16usize {
                if !sg[m] {
                    continue;
                }
                for x in 0..4 {
                    if system.infected_neighbors(m as u32, x) < 2 {
                        continue;
                    }
                    let a = f[m | (1 << x)];
                    let b = f[m & !(1 << x)];
                    dir += weights[m] / z * qv * (1.0 - qv) * (a - b) * (a - b);
                }
            }
            (var, dir)
        };
        let mut rng = SeededRng::new(55).rng();
        let mut best: f64 = 0.0;
        for _ in 0..2000 {
            let mut f = [0.0f64; 16];
            for slot in f.iter_mut() {
                *slot = rng.random::<f64>() - 0.5;
            }
            let (var, dir) = ratio(&f);
            if dir > 1e-12 {
                best = best.max(var / dir);
                assert!(var <= g * dir * (1.0 + 1e-9), "ratio {} > gamma {g}", var / dir);
            }
        }
        assert!(best > 0.5 * g, "random probes reached only {best} of {g}");
    }

    #[test]
    fn disconnected_sites_rejected() {
        let q = Density::new(0.3).unwrap();
        assert!(matches!(
            fa1f_poincare_check(&[(0, 0), (2, 0)], q, Fa1fVariant::Ergodic),
            Err(SpectralError::Disconnected)
        ));
    }
}
