//! Droplet-calculus experiments.

use fa2f_core::bootstrap::PI_SQ_OVER_9;
use fa2f_core::droplet::{
    g_integral, n_final, riemann_sandwich, scale_ell, sg_prob_lower_bound, sg_rate,
};
use fa2f_core::Density;
use num_bigint::BigUint;

use crate::error::HarnessError;
use crate::registry::{Experiment, ParamKind, ParamSpec, Resolved};
use crate::table::{fmt_f64, MetricTable};

pub struct SgBound;

impl Experiment for SgBound {
    fn name(&self) -> &'static str {
        "droplet.sg-bound"
    }

    fn summary(&self) -> &'static str {
        "Droplet probability lower bound and its normalized rate r(q)"
    }

    fn params(&self) -> &'static [ParamSpec] {
        &[ParamSpec {
            name: "q",
            kind: ParamKind::ListF64,
            default: None,
            help: "densities, comma separated",
        }]
    }

    fn run(&self, params: &Resolved, out: &mut MetricTable) -> Result<(), HarnessError> {
        *out = MetricTable::new(&[
            "q",
            "N",
            "log_rho_d",
            "r",
            "r_over_pi2_9",
            "sandwich_lower",
            "sandwich_integral",
            "sandwich_upper",
        ]);
        for qv in params.list_f64("q") {
            let q = Density::new(qv)?;
            let log_p = sg_prob_lower_bound(q)?;
            let r = sg_rate(q)?;
            let s = riemann_sandwich(q)?;
            out.push_row(vec![
                fmt_f64(qv),
                n_final(q)?.to_string(),
                fmt_f64(log_p),
                fmt_f64(r),
                fmt_f64(r / PI_SQ_OVER_9),
                fmt_f64(s.lower),
                fmt_f64(s.integral),
                fmt_f64(s.upper),
            ]);
        }
        Ok(())
    }
}

pub struct GIntegral;

impl Experiment for GIntegral {
    fn name(&self) -> &'static str {
        "droplet.g-integral"
    }

    fn summary(&self) -> &'static str {
        "Quadrature of the traversability cost integral against pi^2/18"
    }

    fn params(&self) -> &'static [ParamSpec] {
        &[]
    }

    fn run(&self, _params: &Resolved, out: &mut MetricTable) -> Result<(), HarnessError> {
        let value = g_integral();
        let target = fa2f_core::bootstrap::LAMBDA_2_2;
        *out = MetricTable::new(&["integral", "target", "abs_diff"]);
        out.push_row(vec![
            fmt_f64(value),
            fmt_f64(target),
            fmt_f64((value - target).abs()),
        ]);
        Ok(())
    }
}

pub struct Scales;

impl Experiment for Scales {
    fn name(&self) -> &'static str {
        "droplet.scales"
    }

    fn summary(&self) -> &'static str {
        "The droplet length scales ell_m at a density"
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
                name: "max_m",
                kind: ParamKind::U64,
                default: Some("0"),
                help: "largest index (0 = up to N)",
            },
        ]
    }

    fn run(&self, params: &Resolved, out: &mut MetricTable) -> Result<(), HarnessError> {
        let q = Density::new(params.f64("q"))?;
        let n = n_final(q)?;
        let max_m = match params.u64("max_m") {
            0 => n,
            m => m.min(n),
        };
        *out = MetricTable::new(&["m", "ell_m"]);
        for m in 0..=max_m {
            let ell: BigUint = scale_ell(m, q)?;
            out.push_row(vec![m.to_string(), ell.to_string()]);
        }
        Ok(())
    }
}
