//! Bootstrap percolation experiments.

use fa2f_core::bootstrap::{bp_tau0_samples, estimate_rho, lambda, tau0_lower_bound};
use fa2f_core::{Density, Region, SeededRng};

use crate::error::HarnessError;
use crate::registry::{Experiment, ParamKind, ParamSpec, Resolved};
use crate::table::{fmt_f64, MetricTable};

pub struct Constants;

impl Experiment for Constants {
    fn name(&self) -> &'static str {
        "bootstrap.constants"
    }

    fn summary(&self) -> &'static str {
        "Sharp-threshold constants lambda(2,2) and pi^2/9"
    }

    fn params(&self) -> &'static [ParamSpec] {
        &[]
    }

    fn run(&self, _params: &Resolved, out: &mut MetricTable) -> Result<(), HarnessError> {
        *out = MetricTable::new(&["name", "value"]);
        out.push_row(vec![
            "lambda(2,2)".into(),
            fmt_f64(lambda(2, 2).expect("tabulated")),
        ]);
        out.push_row(vec![
            "pi^2/9".into(),
            fmt_f64(fa2f_core::bootstrap::PI_SQ_OVER_9),
        ]);
        Ok(())
    }
}

pub struct Tau0Samples;

impl Experiment for Tau0Samples {
    fn name(&self) -> &'static str {
        "bootstrap.tau0-samples"
    }

    fn summary(&self) -> &'static str {
        "Sample the 2-BP infection time of the origin on a torus"
    }

    fn params(&self) -> &'static [ParamSpec] {
        &[
            ParamSpec {
                name: "q",
                kind: ParamKind::F64,
                default: None,
                help: "infection density in (0,1)",
            },
            ParamSpec {
                name: "L",
                kind: ParamKind::U64,
                default: Some("256"),
                help: "torus side",
            },
            ParamSpec {
                name: "replicas",
                kind: ParamKind::U64,
                default: Some("1000"),
                help: "independent replicas",
            },
        ]
    }

    fn run(&self, params: &Resolved, out: &mut MetricTable) -> Result<(), HarnessError> {
        let q = Density::new(params.f64("q"))?;
        let l = params.u64("L") as usize;
        let replicas = params.u64("replicas");
        let torus = Region::torus2(l)?;
        let samples = bp_tau0_samples(&torus, q, replicas, &SeededRng::new(params.seed))?;
        *out = MetricTable::new(&["seed", "replica", "q", "L", "tau0_bp"]);
        for (rep, t) in samples.iter().enumerate() {
            out.push_row(vec![
                params.seed.to_string(),
                rep.to_string(),
                fmt_f64(q.q()),
                l.to_string(),
                t.to_string(),
            ]);
        }
        Ok(())
    }
}

pub struct Rho;

impl Experiment for Rho {
    fn name(&self) -> &'static str {
        "bootstrap.rho"
    }

    fn summary(&self) -> &'static str {
        "Monte Carlo estimate of the boundary-crossing probability rho and the tau0 lower bound"
    }

    fn params(&self) -> &'static [ParamSpec] {
        &[
            ParamSpec {
                name: "q",
                kind: ParamKind::F64,
                default: None,
                help: "infection density in (0,1)",
            },
            ParamSpec {
                name: "half_width",
                kind: ParamKind::U64,
                default: Some("4"),
                help: "V = [-l, l]^2",
            },
            ParamSpec {
                name: "samples",
                kind: ParamKind::U64,
                default: Some("100000"),
                help: "Monte Carlo samples",
            },
        ]
    }

    fn run(&self, params: &Resolved, out: &mut MetricTable) -> Result<(), HarnessError> {
        let q = Density::new(params.f64("q"))?;
        let half = params.u64("half_width") as i64;
        let side = (2 * half + 1) as usize;
        let v = Region::rectangle_at(&[side, side], &[-half, -half])?;
        let est = estimate_rho(&v, q, params.u64("samples"), &SeededRng::new(params.seed))?;
        *out = MetricTable::new(&[
            "q",
            "half_width",
            "samples",
            "rho",
            "stderr",
            "argmax_x",
            "argmax_y",
            "tau0_lower_bound",
        ]);
        let bound = if est.estimate > 0.0 {
            fmt_f64(tau0_lower_bound(est.estimate, &v, q)?)
        } else {
            "inf".into()
        };
        out.push_row(vec![
            fmt_f64(q.q()),
            half.to_string(),
            est.samples.to_string(),
            fmt_f64(est.estimate),
            fmt_f64(est.stderr),
            est.argmax[0].to_string(),
            est.argmax[1].to_string(),
            bound,
        ]);
        Ok(())
    }
}
