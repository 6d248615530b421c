//! The droplet length scales ell_m and the nested rectangles Lambda^(n).
//!
//! The production sequence derives from the density,
//! `ell_m = floor(exp(m sqrt(q)) / sqrt(q))` (natural log/exp throughout),
//! with the final index `N = ceil(8 log(1/q) / sqrt(q))`. The values blow up
//! like q^(-17/2), far past u64 for small q, so they are held as big
//! integers with f64 mirrors for the analytic bounds. Custom toy sequences
//! (e.g. 1,2,4) make every recognizer exhaustively testable.

use num_bigint::BigUint;
use num_traits::{FromPrimitive, ToPrimitive};

use crate::error::DropletError;
use crate::lattice::density::Density;

#[derive(Debug, Clone, PartialEq)]
pub enum ScaleSource {
    /// Derived from a density via the closed-form growth law.
    Density { q: f64 },
    Custom,
}

/// Strictly increasing lengths `ell_0 = 1 < ell_1 < ...`.
#[derive(Debug, Clone)]
pub struct ScaleSequence {
    values: Vec<BigUint>,
    as_f64: Vec<f64>,
    source: ScaleSource,
}

/// `N = ceil(8 log(1/q) / sqrt(q))`, the final scale index at density q.
pub fn n_final(q: Density) -> Result<u64, DropletError> {
    let n = (8.0 * (1.0 / q.q()).ln() / q.q().sqrt()).ceil();
    // the final scale ell_N = q^(-17/2+o(1)) must stay within f64 range:
    // N sqrt(q) = 8 log(1/q) > 700 is already hopeless
    if !n.is_finite() || n > 9.0e15 || n * q.q().sqrt() > 700.0 {
        return Err(DropletError::ScaleOverflow { m: n as u64 });
    }
    Ok(n as u64)
}

/// `ell_m` at density q as an exact-within-f64 big integer.
pub fn scale_ell(m: u64, q: Density) -> Result<BigUint, DropletError> {
    if m == 0 {
        return Ok(BigUint::from(1u8));
    }
    let s = q.q().sqrt();
    let exponent = m as f64 * s;
    if exponent > 700.0 {
        return Err(DropletError::ScaleOverflow { m });
    }
    let v = (exponent.exp() / s).floor();
    if !v.is_finite() {
        return Err(DropletError::ScaleOverflow { m });
    }
    Ok(BigUint::from_f64(v).expect("finite nonnegative"))
}

impl ScaleSequence {
    /// The density-derived sequence, indices 0..=N(q).
    pub fn from_density(q: Density) -> Result<ScaleSequence, DropletError> {
        let n = n_final(q)?;
        let mut values = Vec::with_capacity(n as usize + 1);
        for m in 0..=n {
            values.push(scale_ell(m, q)?);
        }
        Self::from_values(values, ScaleSource::Density { q: q.q() })
    }

    /// Custom toy scales; `values[0]` must be 1 and the list strictly
    /// increasing.
    pub fn custom(values: &[u64]) -> Result<ScaleSequence, DropletError> {
        Self::from_values(
            values.iter().map(|&v| BigUint::from(v)).collect(),
            ScaleSource::Custom,
        )
    }

    fn from_values(values: Vec<BigUint>, source: ScaleSource) -> Result<ScaleSequence, DropletError> {
        if values.is_empty() {
            return Err(DropletError::ScalesEmpty);
        }
        if values[0] != BigUint::from(1u8) {
            return Err(DropletError::ScaleBaseNotOne);
        }
        for i in 1..values.len() {
            if values[i] <= values[i - 1] {
                return Err(DropletError::ScalesNotIncreasing { index: i });
            }
        }
        let as_f64 = values.iter().map(|v| v.to_f64().unwrap_or(f64::INFINITY)).collect();
        Ok(ScaleSequence {
            values,
            as_f64,
            source,
        })
    }

    pub fn source(&self) -> &ScaleSource {
        &self.source
    }

    /// Largest defined index (the sequence holds ell_0..=ell_max_index).
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn ell(&self, m: usize) -> Result<&BigUint, DropletError> {
        self.values.get(m).ok_or(DropletError::ScaleIndexOutOfRange {
            m,
            len: self.values.len(),
        })
    }

    pub fn ell_f64(&self, m: usize) -> Result<f64, DropletError> {
        self.as_f64
            .get(m)
            .copied()
            .ok_or(DropletError::ScaleIndexOutOfRange {
                m,
                len: self.values.len(),
            })
    }

    /// ell_m as i64, for the desk-scale geometry code.
    pub fn ell_i64(&self, m: usize) -> Result<i64, DropletError> {
        self.ell(m)?
            .to_i64()
            .ok_or(DropletError::ScaleOverflow { m: m as u64 })
    }

    /// Width and height of Lambda^(n): squares (ell_m, ell_m) for n = 2m,
    /// wide rectangles (ell_{m+1}, ell_m) for n = 2m + 1.
    pub fn level_dims(&self, n: u32) -> Result<(i64, i64), DropletError> {
        let n = n as usize;
        if n % 2 == 0 {
            let l = self.ell_i64(n / 2)?;
            Ok((l, l))
        } else {
            Ok((self.ell_i64((n + 1) / 2)?, self.ell_i64((n - 1) / 2)?))
        }
    }

    /// Dims of Lambda^(n,+), one line wider than Lambda^(n).
    pub fn level_plus_dims(&self, n: u32) -> Result<(i64, i64), DropletError> {
        let n = n as usize;
        if n % 2 == 0 {
            let l = self.ell_i64(n / 2)?;
            Ok((l + 1, l))
        } else {
            Ok((self.ell_i64((n + 1) / 2)?, self.ell_i64((n - 1) / 2)? + 1))
        }
    }

    /// Highest level usable with this sequence: 2 * max_index.
    pub fn max_level(&self) -> u32 {
        2 * self.max_index() as u32
    }

    /// Class-n membership of a (width, height) rectangle: class 0 is a
    /// single site; class 2m means width exactly ell_m with height in
    /// (ell_{m-1}, ell_m]; class 2m+1 means height exactly ell_m with width
    /// in (ell_m, ell_{m+1}].
    pub fn is_class(&self, w: i64, h: i64, n: u32) -> Result<bool, DropletError> {
        if w <= 0 || h <= 0 {
            return Ok(false);
        }
        if n == 0 {
            return Ok(w == 1 && h == 1);
        }
        let n = n as usize;
        if n % 2 == 0 {
            let m = n / 2;
            Ok(w == self.ell_i64(m)? && h > self.ell_i64(m - 1)? && h <= self.ell_i64(m)?)
        } else {
            let m = (n - 1) / 2;
            Ok(h == self.ell_i64(m)? && w > self.ell_i64(m)? && w <= self.ell_i64(m + 1)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_density_values() {
        let q = Density::new(0.25).unwrap();
        assert_eq!(scale_ell(0, q).unwrap(), BigUint::from(1u8));
        assert_eq!(scale_ell(1, q).unwrap(), BigUint::from(3u8));
        assert_eq!(scale_ell(2, q).unwrap(), BigUint::from(5u8));
        assert_eq!(scale_ell(3, q).unwrap(), BigUint::from(8u8));
        assert_eq!(n_final(q).unwrap(), 23);
    }

    #[test]
    fn paper_sequence_strictly_increasing_at_quarter() {
        let q = Density::new(0.25).unwrap();
        let s = ScaleSequence::from_density(q).unwrap();
        assert_eq!(s.max_index(), 23);
        for m in 1..=s.max_index() {
            assert!(s.ell(m).unwrap() > s.ell(m - 1).unwrap());
        }
    }

    #[test]
    fn tiny_density_needs_big_integers() {
        let q = Density::new(1e-6).unwrap();
        let n = n_final(q).unwrap();
        let ell_n = scale_ell(n, q).unwrap();
        assert!(ell_n > BigUint::from(u128::MAX)); // ~ q^(-17/2) = 1e51
        let s = ScaleSequence::from_density(q).unwrap();
        assert_eq!(s.max_index() as u64, n);
    }

    #[test]
    fn overflow_is_loud() {
        let q = Density::new(1e-40).unwrap();
        assert!(matches!(n_final(q), Err(DropletError::ScaleOverflow { .. })));
        assert!(matches!(
            ScaleSequence::from_density(q),
            Err(DropletError::ScaleOverflow { .. })
        ));
    }

    #[test]
    fn custom_validation() {
        assert!(ScaleSequence::custom(&[1, 2, 4]).is_ok());
        assert!(matches!(
            ScaleSequence::custom(&[1, 2, 2]),
            Err(DropletError::ScalesNotIncreasing { index: 2 })
        ));
        assert!(matches!(
            ScaleSequence::custom(&[2, 3]),
            Err(DropletError::ScaleBaseNotOne)
        ));
        assert!(matches!(
            ScaleSequence::custom(&[]),
            Err(DropletError::ScalesEmpty)
        ));
    }

    #[test]
    fn level_dims_nest() {
        let s = ScaleSequence::custom(&[1, 2, 4]).unwrap();
        assert_eq!(s.level_dims(0).unwrap(), (1, 1));
        assert_eq!(s.level_dims(1).unwrap(), (2, 1));
        assert_eq!(s.level_dims(2).unwrap(), (2, 2));
        assert_eq!(s.level_dims(3).unwrap(), (4, 2));
        assert_eq!(s.level_dims(4).unwrap(), (4, 4));
        // Lambda^(n1) fits inside Lambda^(n2) for n1 < n2
        for n in 0..4u32 {
            let (w1, h1) = s.level_dims(n).unwrap();
            let (w2, h2) = s.level_dims(n + 1).unwrap();
            assert!(w1 <= w2 && h1 <= h2);
        }
        assert_eq!(s.level_plus_dims(2).unwrap(), (3, 2));
        assert_eq!(s.level_plus_dims(1).unwrap(), (2, 2));
    }

    #[test]
    fn class_membership() {
        let s = ScaleSequence::custom(&[1, 2, 4]).unwrap();
        assert!(s.is_class(1, 1, 0).unwrap());
        assert!(!s.is_class(2, 1, 0).unwrap());
        // class 1: height 1, width in (1, 2]
        assert!(s.is_class(2, 1, 1).unwrap());
        assert!(!s.is_class(3, 1, 1).unwrap());
        // class 2: width 2, height in (1, 2]
        assert!(s.is_class(2, 2, 2).unwrap());
        assert!(!s.is_class(2, 3, 2).unwrap());
        // class 3: height 2, width in (2, 4]
        assert!(s.is_class(3, 2, 3).unwrap());
        assert!(s.is_class(4, 2, 3).unwrap());
        assert!(!s.is_class(5, 2, 3).unwrap());
        // class 4: width 4, height in (2, 4]
        assert!(s.is_class(4, 3, 4).unwrap());
        assert!(s.is_class(4, 4, 4).unwrap());
    }
}
