//! Box renormalization: partition the torus into boxes of side ell, treat
//! each box as one renormalized site whose state is the box configuration
//! and whose particle event is "some site in the box is a particle".

use crate::error::CbsepError;
use crate::params::{GcbsepParams, Graph};

/// pi-hat(S-hat_1) = 1 - (1 - p)^(ell^d), evaluated without cancellation.
pub fn renormalized_particle_prob(p: f64, ell: usize, d: usize) -> f64 {
    let k = (ell as f64).powi(d as i32);
    -(k * (-p).ln_1p()).exp_m1()
}

/// The renormalized parameters. The default box side is
/// ceil(p^(-1/d)), which drives pi-hat(S-hat_1) to 1 - 1/e as p -> 0.
pub fn renormalize(params: &GcbsepParams, ell: usize) -> Result<GcbsepParams, CbsepError> {
    let Graph::Torus { dims } = &params.graph else {
        return Err(CbsepError::NotATorus);
    };
    if ell == 0 {
        return Err(CbsepError::Divisibility { side: 0, ell });
    }
    for &side in dims {
        if side % ell != 0 {
            return Err(CbsepError::Divisibility { side, ell });
        }
    }
    if ell == 1 {
        return Ok(params.clone());
    }
    let block = ell.pow(dims.len() as u32);
    let s = params.states_per_site();
    let mut states: u128 = 1;
    for _ in 0..block {
        states = states.saturating_mul(s as u128);
        if states > (1 << 20) {
            return Err(CbsepError::CapExceeded {
                have: states,
                cap: 1 << 20,
            });
        }
    }
    let states = states as usize;
    let mut weights = vec![0.0f64; states];
    let mut particle = vec![false; states];
    for (packed, slot) in weights.iter_mut().enumerate() {
        let mut w = 1.0;
        let mut any = false;
        let mut x = packed;
        for _ in 0..block {
            let digit = x % s;
            x /= s;
            w *= params.weights[digit];
            any = any || params.particle[digit];
        }
        *slot = w;
        particle[packed] = any;
    }
    let new_dims: Vec<usize> = dims.iter().map(|&d| d / ell).collect();
    GcbsepParams::new(Graph::Torus { dims: new_dims }, weights, particle)
}

/// Default renormalization side for particle density p.
pub fn default_side(p: f64, d: usize) -> usize {
    (p.powf(-1.0 / d as f64)).ceil() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_at_ell_one() {
        let params = GcbsepParams::binary(Graph::Torus { dims: vec![4, 4] }, 0.3).unwrap();
        let same = renormalize(&params, 1).unwrap();
        assert_eq!(same.weights, params.weights);
    }

    #[test]
    fn block_particle_probability() {
        let p = 0.3;
        let params = GcbsepParams::binary(Graph::Torus { dims: vec![4, 4] }, p).unwrap();
        let renormed = renormalize(&params, 2).unwrap();
        let expect = 1.0 - (1.0 - p) * (1.0 - p) * (1.0 - p) * (1.0 - p);
        assert!((renormed.particle_prob() - expect).abs() < 1e-12);
        assert!((renormalized_particle_prob(p, 2, 2) - expect).abs() < 1e-15);
        assert_eq!(renormed.graph, Graph::Torus { dims: vec![2, 2] });
    }

    #[test]
    fn small_p_limit_is_one_minus_inv_e() {
        for &p in &[1e-4, 1e-6, 1e-8] {
            let ell = default_side(p, 2);
            let prob = renormalized_particle_prob(p, ell, 2);
            assert!(
                (prob - (1.0 - (-1.0f64).exp())).abs() < 25.0 * p.sqrt(),
                "p = {p}: prob = {prob}"
            );
        }
    }

    #[test]
    fn divisibility_checked() {
        let params = GcbsepParams::binary(Graph::Torus { dims: vec![4, 4] }, 0.3).unwrap();
        assert!(matches!(
            renormalize(&params, 3),
            Err(CbsepError::Divisibility { side: 4, ell: 3 })
        ));
    }
}
