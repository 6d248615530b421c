//! Infection density q and its companion q' = -log(1-q).

use crate::error::LatticeError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Density {
    q: f64,
}

impl Density {
    pub fn new(q: f64) -> Result<Density, LatticeError> {
        if !(q > 0.0 && q < 1.0) {
            return Err(LatticeError::InvalidDensity(q));
        }
        Ok(Density { q })
    }

    #[inline]
    pub fn q(&self) -> f64 {
        self.q
    }

    /// q' = -log(1-q), always larger than q on (0, 1).
    #[inline]
    pub fn q_prime(&self) -> f64 {
        -(-self.q).ln_1p()
    }

    /// Threshold for "u64 draw < threshold ⇔ infected". P(infected) matches
    /// q to within 2^-64 relative rounding.
    #[inline]
    pub fn infected_threshold(&self) -> u64 {
        // q * 2^64, saturating; q < 1 keeps this below u64::MAX + 1.
        let scaled = self.q * 18446744073709551616.0; // 2^64
        if scaled >= 18446744073709551615.0 {
            u64::MAX
        } else {
            scaled as u64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range() {
        assert!(Density::new(0.0).is_err());
        assert!(Density::new(1.0).is_err());
        assert!(Density::new(-0.1).is_err());
        assert!(Density::new(f64::NAN).is_err());
    }

    #[test]
    fn q_prime_exceeds_q() {
        for &q in &[1e-9, 0.1, 0.5, 0.99] {
            let d = Density::new(q).unwrap();
            assert!(d.q_prime() > d.q());
        }
        // q' = -log(1-q) exactly
        let d = Density::new(0.5).unwrap();
        assert!((d.q_prime() - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn threshold_half() {
        let d = Density::new(0.5).unwrap();
        assert_eq!(d.infected_threshold(), 1u64 << 63);
    }
}
