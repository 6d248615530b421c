//! Summary statistics shared by the simulation modules: batch means,
//! integrated autocorrelation time, medians over censored samples.

/// Arithmetic mean; 0 for empty input.
pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance; 0 for fewer than two points.
pub fn variance(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64
}

/// Standard error of the mean of `batch_means`, treating batches as i.i.d.
/// Valid when each batch spans many autocorrelation times.
pub fn batch_stderr(batch_means: &[f64]) -> f64 {
    if batch_means.len() < 2 {
        return f64::INFINITY;
    }
    (variance(batch_means) / batch_means.len() as f64).sqrt()
}

/// Median by sorting a copy; the upper of the two middles for even length.
pub fn median(xs: &[f64]) -> f64 {
    assert!(!xs.is_empty(), "median of empty slice");
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v[v.len() / 2]
}

/// Integrated autocorrelation time of an evenly spaced series, in units of
/// the sampling interval, with the Sokal self-consistent window
/// (window = c * tau, c = 5). Returns at least 0.5 (an i.i.d. series has
/// tau_int = 0.5 under the convention tau = 1/2 + sum_k rho_k).
pub fn integrated_autocorr_time(series: &[f64]) -> f64 {
    let n = series.len();
    if n < 8 {
        return 0.5;
    }
    let m = mean(series);
    let var0: f64 = series.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / n as f64;
    if var0 <= 0.0 {
        return 0.5;
    }
    let max_lag = n / 4;
    let mut tau = 0.5;
    for lag in 1..=max_lag {
        let mut acc = 0.0;
        for i in 0..n - lag {
            acc += (series[i] - m) * (series[i + lag] - m);
        }
        let rho = acc / ((n - lag) as f64 * var0);
        tau += rho;
        if (lag as f64) >= 5.0 * tau {
            break;
        }
    }
    tau.max(0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;
    use rand::Rng;

    #[test]
    fn mean_variance_basics() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(mean(&xs), 2.5);
        assert!((variance(&xs) - 5.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn median_odd_even() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 3.0);
    }

    #[test]
    fn iid_series_has_tau_half() {
        let mut rng = SeededRng::new(5).rng();
        let xs: Vec<f64> = (0..20_000).map(|_| rng.random::<f64>()).collect();
        let tau = integrated_autocorr_time(&xs);
        assert!(tau < 0.7, "tau = {tau}");
    }

    #[test]
    fn ar1_series_has_larger_tau() {
        // AR(1) with phi = 0.9 has tau_int = 1/2 + phi/(1-phi) = 9.5.
        let mut rng = SeededRng::new(6).rng();
        let mut x = 0.0;
        let xs: Vec<f64> = (0..200_000)
            .map(|_| {
                x = 0.9 * x + rng.random::<f64>() - 0.5;
                x
            })
            .collect();
        let tau = integrated_autocorr_time(&xs);
        assert!((tau - 9.5).abs() < 1.5, "tau = {tau}");
    }
}
