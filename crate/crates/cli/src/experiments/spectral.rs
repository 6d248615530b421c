//! Spectral experiments.

use fa2f_core::Density;
use fa2f_spectral::{fa1f_poincare_check, Fa1fVariant};

use crate::error::HarnessError;
use crate::registry::{Experiment, ParamKind, ParamSpec, Resolved};
use crate::table::{fmt_f64, MetricTable};

/// Connected subsets of the w x h grid, as coordinate lists.
pub fn connected_subsets(w: i64, h: i64) -> Vec<Vec<(i64, i64)>> {
    let cells: Vec<(i64, i64)> = (0..h).flat_map(|y| (0..w).map(move |x| (x, y))).collect();
    let n = cells.len();
    let mut out = Vec::new();
    'mask: for mask in 1u32..1 << n {
        let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        // connectivity over nearest-neighbour adjacency
        let mut seen = vec![false; members.len()];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(k) = stack.pop() {
            let (x, y) = cells[members[k]];
            for (m, &other) in members.iter().enumerate() {
                if seen[m] {
                    continue;
                }
                let (ox, oy) = cells[other];
                if (x - ox).abs() + (y - oy).abs() == 1 {
                    seen[m] = true;
                    count += 1;
                    stack.push(m);
                }
            }
        }
        if count != members.len() {
            continue 'mask;
        }
        out.push(members.iter().map(|&i| cells[i]).collect());
    }
    out
}

pub struct Fa1fSweep;

impl Experiment for Fa1fSweep {
    fn name(&self) -> &'static str {
        "spectral.fa1f-sweep"
    }

    fn summary(&self) -> &'static str {
        "Exact FA-1f relaxation times over every connected subset of a small grid"
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
                name: "grid",
                kind: ParamKind::U64,
                default: Some("3"),
                help: "grid side (subsets of grid x grid)",
            },
        ]
    }

    fn run(&self, params: &Resolved, out: &mut MetricTable) -> Result<(), HarnessError> {
        let q = Density::new(params.f64("q"))?;
        let side = params.u64("grid") as i64;
        if side > 3 {
            return Err(HarnessError::Validation(
                "grid side above 3 is past the exhaustive sweep budget".into(),
            ));
        }
        *out = MetricTable::new(&["sites", "variant", "t_rel", "exponent"]);
        for subset in connected_subsets(side, side) {
            let label = subset
                .iter()
                .map(|(x, y)| format!("({x};{y})"))
                .collect::<Vec<_>>()
                .join("+");
            let (t, e) = fa1f_poincare_check(&subset, q, Fa1fVariant::Ergodic)?;
            out.push_row(vec![
                label.clone(),
                "ergodic".into(),
                fmt_f64(t),
                fmt_f64(e),
            ]);
            let (tz, ez) = fa1f_poincare_check(&subset, q, Fa1fVariant::BoundarySite(0))?;
            out.push_row(vec![label, "boundary-z".into(), fmt_f64(tz), fmt_f64(ez)]);
        }
        Ok(())
    }
}
