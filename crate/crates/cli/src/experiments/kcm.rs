//! FA-jf simulation experiments.

use fa2f_core::{BoundaryCondition, Density, Region, SeededRng};
use fa2f_kcm::sim::{fa_tau0_samples, InitialLaw, SimParams};
use fa2f_kcm::stationarity::stationarity_check;

use crate::error::HarnessError;
use crate::registry::{Experiment, ParamKind, ParamSpec, Resolved};
use crate::table::{fmt_f64, MetricTable};

fn torus_params(params: &Resolved, j: u8) -> Result<SimParams, HarnessError> {
    Ok(SimParams {
        j,
        q: Density::new(params.f64("q"))?,
        region: Region::torus2(params.u64("L") as usize)?,
        bc: BoundaryCondition::AllHealthy,
        init: InitialLaw::Stationary,
        t_max: params.f64("t_max"),
        rng: SeededRng::new(params.seed),
        record_events: false,
    })
}

pub struct Tau0Samples;

impl Experiment for Tau0Samples {
    fn name(&self) -> &'static str {
        "kcm.tau0-samples"
    }

    fn summary(&self) -> &'static str {
        "Sample the FA-jf infection time of the origin from the stationary law"
    }

    fn params(&self) -> &'static [ParamSpec] {
        &[
            ParamSpec {
                name: "q",
                kind: ParamKind::F64,
                default: None,
                help: "density",
            },
            ParamSpec {
                name: "L",
                kind: ParamKind::U64,
                default: Some("64"),
                help: "torus side",
            },
            ParamSpec {
                name: "j",
                kind: ParamKind::U64,
                default: Some("2"),
                help: "facilitation threshold",
            },
            ParamSpec {
                name: "replicas",
                kind: ParamKind::U64,
                default: Some("1000"),
                help: "independent replicas",
            },
            ParamSpec {
                name: "t_max",
                kind: ParamKind::F64,
                default: Some("10000"),
                help: "censoring horizon",
            },
        ]
    }

    fn run(&self, params: &Resolved, out: &mut MetricTable) -> Result<(), HarnessError> {
        let sim = torus_params(params, params.u64("j") as u8)?;
        let samples = fa_tau0_samples(&sim, params.u64("replicas"))?;
        *out = MetricTable::new(&["seed", "replica", "q", "L", "tau0"]);
        for (rep, t) in samples.iter().enumerate() {
            out.push_row(vec![
                params.seed.to_string(),
                rep.to_string(),
                fmt_f64(sim.q.q()),
                params.u64("L").to_string(),
                t.to_string(),
            ]);
        }
        Ok(())
    }
}

pub struct Stationarity;

impl Experiment for Stationarity {
    fn name(&self) -> &'static str {
        "kcm.stationarity"
    }

    fn summary(&self) -> &'static str {
        "Time-averaged occupancy and pair observables against the product measure"
    }

    fn params(&self) -> &'static [ParamSpec] {
        &[
            ParamSpec {
                name: "q",
                kind: ParamKind::F64,
                default: None,
                help: "density",
            },
            ParamSpec {
                name: "L",
                kind: ParamKind::U64,
                default: Some("16"),
                help: "torus side",
            },
            ParamSpec {
                name: "j",
                kind: ParamKind::U64,
                default: Some("2"),
                help: "facilitation threshold",
            },
            ParamSpec {
                name: "t_burn",
                kind: ParamKind::F64,
                default: Some("100"),
                help: "burn-in window",
            },
            ParamSpec {
                name: "t_obs",
                kind: ParamKind::F64,
                default: Some("10000"),
                help: "observation window",
            },
        ]
    }

    fn run(&self, params: &Resolved, out: &mut MetricTable) -> Result<(), HarnessError> {
        let mut sim = torus_params(params, params.u64("j") as u8)?;
        sim.t_max = params.f64("t_burn") + params.f64("t_obs");
        let report = stationarity_check(&sim, params.f64("t_burn"), params.f64("t_obs"))?;
        *out = MetricTable::new(&[
            "observable",
            "time_average",
            "stderr",
            "target",
            "pass",
        ]);
        out.push_row(vec![
            "infected_fraction".into(),
            fmt_f64(report.occupancy_avg),
            fmt_f64(report.occupancy_stderr),
            fmt_f64(report.occupancy_target),
            ((report.occupancy_avg - report.occupancy_target).abs()
                <= 4.0 * report.occupancy_stderr)
                .to_string(),
        ]);
        out.push_row(vec![
            "infected_pair_fraction".into(),
            fmt_f64(report.pair_avg),
            fmt_f64(report.pair_stderr),
            fmt_f64(report.pair_target),
            ((report.pair_avg - report.pair_target).abs() <= 4.0 * report.pair_stderr)
                .to_string(),
        ]);
        Ok(())
    }
}
