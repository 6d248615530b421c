//! The special functions beta(u) = (u + sqrt(u(4-3u)))/2 and
//! g(z) = -log beta(1 - e^{-z}), whose integral over (0, infinity) is
//! pi^2/18. g is the exponential cost rate of traversability:
//! T(a, b) ~ exp(-a g(b q')) with an a-independent prefactor.

use crate::error::DropletError;

/// beta(u) for u in [0, 1]; beta(0) = 0, beta(1) = 1. Also the dominant
/// eigenvalue of the column-occupancy transfer matrix at occupation
/// probability u.
pub fn beta_fn(u: f64) -> Result<f64, DropletError> {
    if !(0.0..=1.0).contains(&u) {
        return Err(DropletError::DomainViolation(format!(
            "beta needs u in [0,1], got {u}"
        )));
    }
    Ok((u + (u * (4.0 - 3.0 * u)).sqrt()) / 2.0)
}

/// g(z) for z > 0, with care at both ends: for large z the direct formula
/// cancels catastrophically (beta -> 1), so 1 - beta is rebuilt from
/// eps = e^{-z} without subtraction, keeping full relative precision down
/// to g ~ e^{-2z}.
pub fn g_fn(z: f64) -> Result<f64, DropletError> {
    if !(z > 0.0) {
        return Err(DropletError::DomainViolation(format!(
            "g needs z > 0, got {z}"
        )));
    }
    if z < 1.0 {
        let u = -(-z).exp_m1();
        Ok(-(beta_fn(u)?.ln()))
    } else {
        let eps = (-z).exp();
        let u = 1.0 - eps;
        let w = u * (4.0 - 3.0 * u);
        let sq = w.sqrt();
        // 1 - beta = (eps^2 / 2) * ((2 - 3 eps)/(1 + sqrt w) + 3) / (1 + sqrt w)
        let delta = (eps * eps / 2.0) * ((2.0 - 3.0 * eps) / (1.0 + sq) + 3.0) / (1.0 + sq);
        Ok(-(-delta).ln_1p())
    }
}

/// Adaptive Simpson on [a, b] to absolute tolerance `eps`.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        fm: f64,
        whole: f64,
        eps: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(a, fa, m, fm, flm);
        let right = simpson(m, fm, b, fb, frm);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * eps {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, flm, left, eps / 2.0, depth - 1)
                + recurse(f, m, fm, b, fb, frm, right, eps / 2.0, depth - 1)
        }
    }
    if b <= a {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fb = f(b);
    let fm = f(m);
    let whole = simpson(a, fa, b, fb, fm);
    recurse(f, a, fa, b, fb, fm, whole, eps, 48)
}

/// Integral of g over [lo, hi], 0 <= lo < hi <= infinity. The integrable
/// log singularity at 0 gets an analytic head (g(z) = -log(z)/2 + O(sqrt z)
/// near 0); beyond Z = 40 the tail is bounded by e^{-2Z}/2 * (1 + 1e-3),
/// far below the quadrature tolerance.
pub fn g_integral_between(lo: f64, hi: f64) -> Result<f64, DropletError> {
    if lo < 0.0 || hi < lo {
        return Err(DropletError::DomainViolation(format!(
            "bad integration range [{lo}, {hi}]"
        )));
    }
    const HEAD: f64 = 1e-12;
    const Z_CUT: f64 = 40.0;
    let mut total = 0.0;
    let mut lo = lo;
    if lo < HEAD {
        // integral of -log(z)/2 over [lo, head]
        let head_to = hi.min(HEAD);
        let part = |z: f64| {
            if z == 0.0 {
                0.0
            } else {
                0.5 * z * (1.0 - z.ln())
            }
        };
        total += part(head_to) - part(lo);
        lo = head_to;
    }
    let hi_eff = hi.min(Z_CUT);
    if lo < hi_eff {
        // geometric panels keep the adaptive splitter off the singularity
        let g = |z: f64| g_fn(z).expect("z > 0 inside panel");
        let mut a = lo;
        while a < hi_eff {
            let b = (a * 8.0).min(hi_eff).max(a + 1e-12);
            total += adaptive_simpson(&g, a, b, 1e-13);
            a = b;
        }
    }
    if hi > Z_CUT {
        // g(z) = e^{-2z}(1 + o(1)); both endpoints' tails cancel to this
        let tail = |z: f64| 0.5 * (-2.0 * z).exp();
        total += tail(Z_CUT.max(lo)) - if hi.is_finite() { tail(hi) } else { 0.0 };
    }
    Ok(total)
}

/// The full integral, equal to pi^2/18.
pub fn g_integral() -> f64 {
    g_integral_between(0.0, f64::INFINITY).expect("valid range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bootstrap::constants::LAMBDA_2_2;

    #[test]
    fn beta_endpoints() {
        assert_eq!(beta_fn(0.0).unwrap(), 0.0);
        assert_eq!(beta_fn(1.0).unwrap(), 1.0);
        assert!(beta_fn(1.5).is_err());
        assert!(beta_fn(-0.1).is_err());
    }

    #[test]
    fn g_at_one() {
        assert!((g_fn(1.0).unwrap() - 0.113577).abs() < 1e-5);
    }

    #[test]
    fn g_vanishes_at_infinity_like_exp() {
        // g(z)/e^{-2z} -> 1
        for &z in &[6.0, 10.0, 20.0, 100.0] {
            let ratio = g_fn(z).unwrap() / (-2.0 * z).exp();
            assert!((ratio - 1.0).abs() < 0.02, "z = {z}, ratio = {ratio}");
        }
    }

    #[test]
    fn g_log_divergence_at_zero() {
        let z = 1e-6;
        let ratio = g_fn(z).unwrap() / (0.5 * (1.0 / z).ln());
        assert!((ratio - 1.0).abs() < 1e-3, "ratio = {ratio}");
    }

    #[test]
    fn branch_switch_is_seamless() {
        let below = g_fn(1.0 - 1e-9).unwrap();
        let above = g_fn(1.0 + 1e-9).unwrap();
        assert!((below - above).abs() < 1e-9);
    }

    #[test]
    fn monotone_decreasing_positive_convex() {
        let zs: Vec<f64> = (1..400).map(|i| i as f64 * 0.05).collect();
        let gs: Vec<f64> = zs.iter().map(|&z| g_fn(z).unwrap()).collect();
        for w in gs.windows(2) {
            assert!(w[0] > w[1]);
            assert!(w[1] > 0.0);
        }
        for w in gs.windows(3) {
            assert!(w[0] + w[2] >= 2.0 * w[1] - 1e-12); // midpoint convexity on the grid
        }
    }

    #[test]
    fn integral_is_pi_squared_over_18() {
        assert!((g_integral() - LAMBDA_2_2).abs() < 1e-8);
    }

    #[test]
    fn integral_splits_additively() {
        let a = g_integral_between(0.0, 0.7).unwrap();
        let b = g_integral_between(0.7, f64::INFINITY).unwrap();
        assert!((a + b - g_integral()).abs() < 1e-10);
    }
}
