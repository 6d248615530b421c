//! CBSEP experiments.

use fa2f_cbsep::{cover_time_estimate, scaling_study, Graph};
use fa2f_core::SeededRng;

use crate::error::HarnessError;
use crate::registry::{Experiment, ParamKind, ParamSpec, Resolved};
use crate::table::{fmt_f64, MetricTable};

pub struct Scaling;

impl Experiment for Scaling {
    fn name(&self) -> &'static str {
        "cbsep.scaling"
    }

    fn summary(&self) -> &'static str {
        "CBSEP relaxation times against the p^-1 max(1, log(1/p)) bound"
    }

    fn params(&self) -> &'static [ParamSpec] {
        &[
            ParamSpec {
                name: "d",
                kind: ParamKind::U64,
                default: Some("2"),
                help: "torus dimension",
            },
            ParamSpec {
                name: "n",
                kind: ParamKind::ListU64,
                default: Some("4,9,16"),
                help: "torus vertex counts",
            },
            ParamSpec {
                name: "p",
                kind: ParamKind::ListF64,
                default: Some("0.5,0.25,0.125,0.0625,0.03125,0.015625"),
                help: "particle densities",
            },
        ]
    }

    fn run(&self, params: &Resolved, out: &mut MetricTable) -> Result<(), HarnessError> {
        let ns: Vec<usize> = params.list_u64("n").iter().map(|&n| n as usize).collect();
        let rows = scaling_study(
            params.u64("d") as usize,
            &ns,
            &params.list_f64("p"),
            &SeededRng::new(params.seed),
        )?;
        *out = MetricTable::new(&["d", "n", "p", "method", "t_rel", "bound", "ratio"]);
        for row in rows {
            out.push_row(vec![
                row.d.to_string(),
                row.n.to_string(),
                fmt_f64(row.p),
                row.method.as_str().into(),
                fmt_f64(row.t_rel),
                fmt_f64(row.bound),
                fmt_f64(row.ratio),
            ]);
        }
        Ok(())
    }
}

pub struct CoverTime;

impl Experiment for CoverTime {
    fn name(&self) -> &'static str {
        "cbsep.cover-time"
    }

    fn summary(&self) -> &'static str {
        "Mean cover time of the continuous-time random walk on a torus"
    }

    fn params(&self) -> &'static [ParamSpec] {
        &[
            ParamSpec {
                name: "sides",
                kind: ParamKind::ListU64,
                default: Some("4,8,16"),
                help: "torus sides",
            },
            ParamSpec {
                name: "replicas",
                kind: ParamKind::U64,
                default: Some("400"),
                help: "walks per side",
            },
        ]
    }

    fn run(&self, params: &Resolved, out: &mut MetricTable) -> Result<(), HarnessError> {
        *out = MetricTable::new(&["side", "mean_cover_time", "stderr", "l2_log_l"]);
        for side in params.list_u64("sides") {
            let graph = Graph::Torus {
                dims: vec![side as usize, side as usize],
            };
            let (mean, err) = cover_time_estimate(
                &graph,
                params.u64("replicas"),
                &SeededRng::new(params.seed),
            )?;
            let scale = (side * side) as f64 * (side as f64).ln();
            out.push_row(vec![
                side.to_string(),
                fmt_f64(mean),
                fmt_f64(err),
                fmt_f64(scale),
            ]);
        }
        Ok(())
    }
}
