//! Relaxation-time scaling study against the bound
//! p^{-1} max(1, log(1/p)): exact eigensolves where the state space
//! permits, integrated-autocorrelation estimates beyond.

use fa2f_core::{stats, SeededRng};
use fa2f_spectral::relaxation_time;

use crate::error::CbsepError;
use crate::params::{gcbsep_build, GcbsepParams, Graph, STATE_CAP};
use crate::simulate::gcbsep_simulate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrelMethod {
    Exact,
    MonteCarlo,
}

impl TrelMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            TrelMethod::Exact => "exact",
            TrelMethod::MonteCarlo => "mc",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScalingRow {
    pub d: usize,
    pub n: usize,
    pub p: f64,
    pub method: TrelMethod,
    pub t_rel: f64,
    pub bound: f64,
    pub ratio: f64,
}

/// Monte Carlo relaxation estimate: the integrated autocorrelation time of
/// the particle-count observable, in time units. A lower-bound-flavoured
/// proxy (it sees one observable's overlap with the slow modes),
/// cross-calibrated against exact instances in the tests.
pub fn estimate_trel_mc(
    params: &GcbsepParams,
    t_total: f64,
    sample_dt: f64,
    rng: &SeededRng,
) -> Result<f64, CbsepError> {
    let v = params.graph.vertices();
    // stationary-ish start: single particle spreads quickly; discard a burn-in
    let particle_state = params
        .particle
        .iter()
        .position(|&x| x)
        .expect("validated particle mass") as u8;
    let mut init = vec![0u8; v];
    init[0] = particle_state;
    let burn = t_total * 0.1;
    let summary = gcbsep_simulate(params, &init, t_total + burn, sample_dt, rng)?;
    let skip = (burn / sample_dt) as usize;
    let series = &summary.samples[skip.min(summary.samples.len())..];
    Ok(stats::integrated_autocorr_time(series) * sample_dt)
}

/// Sweep binary CBSEP over torus sizes and densities; `n` entries are
/// vertex counts with integer side n^(1/d).
pub fn scaling_study(
    d: usize,
    ns: &[usize],
    ps: &[f64],
    rng: &SeededRng,
) -> Result<Vec<ScalingRow>, CbsepError> {
    let mut rows = Vec::new();
    let mut stream = 0u64;
    for &n in ns {
        let side = (n as f64).powf(1.0 / d as f64).round() as usize;
        if side.pow(d as u32) != n {
            return Err(CbsepError::BadGraph(format!(
                "n = {n} is not a d = {d} torus vertex count"
            )));
        }
        for &p in ps {
            let params = GcbsepParams::binary(
                Graph::Torus {
                    dims: vec![side; d],
                },
                p,
            )?;
            let states = 2u128.pow(n as u32);
            let (method, t_rel) = if states <= STATE_CAP as u128 {
                let (chain, _) = gcbsep_build(&params)?;
                (TrelMethod::Exact, relaxation_time(&chain)?)
            } else {
                let t = estimate_trel_mc(&params, 4000.0, 0.25, &rng.substream(stream))?;
                (TrelMethod::MonteCarlo, t)
            };
            stream += 1;
            let bound = (1.0 / p) * (1.0f64).max((1.0 / p).ln());
            rows.push(ScalingRow {
                d,
                n,
                p,
                method,
                t_rel,
                bound,
                ratio: t_rel / bound,
            });
        }
    }
    Ok(rows)
}
