//! Small log-domain helpers shared by the probability code.

/// log(exp(a) + exp(b)) without leaving the log domain.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// log(1 - exp(x)) for x <= 0, stable near both ends.
pub fn log1m_exp(x: f64) -> f64 {
    debug_assert!(x <= 0.0);
    if x == 0.0 {
        return f64::NEG_INFINITY;
    }
    // Crossover at ln 2 per the usual log1mexp recipe.
    if x > -std::f64::consts::LN_2 {
        (-x.exp_m1()).ln()
    } else {
        (-x.exp()).ln_1p()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_add_exp_matches_direct() {
        for &(a, b) in &[(0.0f64, 0.0f64), (-1.0, -2.0), (-700.0, -701.0), (-3.5, -40.0)] {
            let direct = (a.exp() + b.exp()).ln();
            assert!((log_add_exp(a, b) - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn log_add_exp_neg_infinity() {
        assert_eq!(log_add_exp(f64::NEG_INFINITY, -1.0), -1.0);
        assert_eq!(log_add_exp(-1.0, f64::NEG_INFINITY), -1.0);
        assert_eq!(
            log_add_exp(f64::NEG_INFINITY, f64::NEG_INFINITY),
            f64::NEG_INFINITY
        );
    }

    #[test]
    fn log1m_exp_small_and_large() {
        assert!((log1m_exp(-1e-10) - (1e-10f64).ln()).abs() < 1e-6);
        assert!((log1m_exp(-50.0) - (-(-50.0f64).exp())).abs() < 1e-15);
    }
}
