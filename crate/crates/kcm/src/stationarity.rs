//! Reversibility diagnostic: started from mu_q, the time averages of the
//! infected fraction and of the nearest-neighbour infected-pair fraction
//! must sit at q and q^2. Error bars come from batch means (64 batches
//! over the observation window), which corrects for autocorrelation as
//! long as a batch spans many relaxation times.

use fa2f_core::lattice::region::{OUTSIDE, PAD};
use fa2f_core::stats;

use crate::error::SimError;
use crate::sim::{SimParams, Simulator, Step};

#[derive(Debug, Clone)]
pub struct StationarityReport {
    pub occupancy_avg: f64,
    pub occupancy_stderr: f64,
    pub occupancy_target: f64,
    pub pair_avg: f64,
    pub pair_stderr: f64,
    pub pair_target: f64,
    pub batches: usize,
    pub pass: bool,
}

const BATCHES: usize = 64;
const SIGMAS: f64 = 4.0;

/// Run from mu_q, discard [0, t_burn), average over [t_burn, t_burn+t_obs).
pub fn stationarity_check(
    params: &SimParams,
    t_burn: f64,
    t_obs: f64,
) -> Result<StationarityReport, SimError> {
    if !(t_obs > 0.0) {
        return Err(SimError::ZeroEffectiveSamples);
    }
    let region = &params.region;
    let table = region.neighbor_table();
    let mut sim = Simulator::new(params);
    let n_sites = region.len() as f64;

    // distinct nearest-neighbour pairs (deduplicated like the table)
    let mut n_pairs = 0u64;
    for idx in 0..region.len() {
        for &nb in table.neighbors(idx) {
            if nb != PAD && nb != OUTSIDE && (nb as usize) > idx {
                n_pairs += 1;
            }
        }
    }
    let infected_pairs = |cfg: &fa2f_core::Config| -> u64 {
        let mut c = 0;
        for idx in 0..region.len() {
            if !cfg.is_infected(idx) {
                continue;
            }
            for &nb in table.neighbors(idx) {
                if nb != PAD && nb != OUTSIDE && (nb as usize) > idx && cfg.is_infected(nb as usize)
                {
                    c += 1;
                }
            }
        }
        c
    };

    let t_end = t_burn + t_obs;
    let batch_len = t_obs / BATCHES as f64;
    let mut occ_batches = vec![0.0f64; BATCHES];
    let mut pair_batches = vec![0.0f64; BATCHES];

    let mut infected = sim.config.infected_count() as f64;
    let mut pairs = infected_pairs(&sim.config) as f64;
    let mut t_prev = 0.0f64;

    let accumulate = |from: f64, to: f64, occ: f64, pr: f64, occ_b: &mut [f64], pair_b: &mut [f64]| {
        // spread the piecewise-constant value over the batches it spans
        let lo = from.max(t_burn);
        let hi = to.min(t_end);
        if hi <= lo {
            return;
        }
        let mut t = lo;
        while t < hi {
            let b = (((t - t_burn) / batch_len) as usize).min(BATCHES - 1);
            let batch_end = t_burn + (b + 1) as f64 * batch_len;
            let seg = hi.min(batch_end) - t;
            occ_b[b] += occ * seg;
            pair_b[b] += pr * seg;
            t += seg.max(1e-300);
        }
    };

    loop {
        let step = sim.step(t_end);
        let now = sim.time;
        accumulate(
            t_prev,
            now,
            infected / n_sites,
            pairs / n_pairs as f64,
            &mut occ_batches,
            &mut pair_batches,
        );
        t_prev = now;
        match step {
            Step::Horizon => break,
            Step::Ring { site, changed } => {
                if changed {
                    // incremental pair update around the flipped site
                    let now_infected = sim.config.is_infected(site);
                    let mut adjacent_infected = 0i64;
                    for &nb in table.neighbors(site) {
                        if nb != PAD && nb != OUTSIDE && sim.config.is_infected(nb as usize) {
                            adjacent_infected += 1;
                        }
                    }
                    if now_infected {
                        infected += 1.0;
                        pairs += adjacent_infected as f64;
                    } else {
                        infected -= 1.0;
                        pairs -= adjacent_infected as f64;
                    }
                }
            }
        }
    }

    for b in 0..BATCHES {
        occ_batches[b] /= batch_len;
        pair_batches[b] /= batch_len;
    }
    let occupancy_avg = stats::mean(&occ_batches);
    let pair_avg = stats::mean(&pair_batches);
    let occupancy_stderr = stats::batch_stderr(&occ_batches);
    let pair_stderr = stats::batch_stderr(&pair_batches);
    if !occupancy_stderr.is_finite() || !pair_stderr.is_finite() {
        return Err(SimError::ZeroEffectiveSamples);
    }
    let q = params.q.q();
    let pass = (occupancy_avg - q).abs() <= SIGMAS * occupancy_stderr
        && (pair_avg - q * q).abs() <= SIGMAS * pair_stderr;
    Ok(StationarityReport {
        occupancy_avg,
        occupancy_stderr,
        occupancy_target: q,
        pair_avg,
        pair_stderr,
        pair_target: q * q,
        batches: BATCHES,
        pass,
    })
}
