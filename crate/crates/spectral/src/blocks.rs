//! Constrained block chains: the two-block bound T_rel <= 2/P(H) and the
//! two auxiliary chains whose relaxation times are controlled by the
//! probability ratios T_aux^(1), T_aux^(2). Hypotheses are verified by
//! enumeration before any number is returned; random small instances are
//! generated with the hypotheses forced by construction.

use fa2f_core::SeededRng;
use rand::Rng;

use crate::chain::ChainSpec;
use crate::eigen::relaxation_time;
use crate::error::SpectralError;

fn normalized(mut w: Vec<f64>) -> Vec<f64> {
    let s: f64 = w.iter().sum();
    for x in &mut w {
        *x /= s;
    }
    w
}

fn random_weights(rng: &mut impl Rng, size: usize) -> Vec<f64> {
    normalized((0..size).map(|_| rng.random_range(0.1..1.0)).collect())
}

// ---------------------------------------------------------------------------
// two-block chain

/// X_1 resampled at rate 1; X_2 resampled at rate 1 only when X_1 in H.
#[derive(Debug, Clone)]
pub struct TwoBlockInstance {
    pub w1: Vec<f64>,
    pub w2: Vec<f64>,
    pub h: Vec<bool>,
}

/// Exact relaxation time of the two-block chain and the bound 2/P(H).
pub fn two_block_trel(inst: &TwoBlockInstance) -> Result<(f64, f64), SpectralError> {
    let (n1, n2) = (inst.w1.len(), inst.w2.len());
    if inst.h.len() != n1 {
        return Err(SpectralError::BadInstance("H must index X_1".into()));
    }
    let p_h: f64 = inst
        .w1
        .iter()
        .zip(&inst.h)
        .filter(|&(_, &h)| h)
        .map(|(w, _)| w)
        .sum();
    if p_h == 0.0 {
        return Err(SpectralError::ZeroProbabilityEvent("P(H) = 0".into()));
    }
    let idx = |i1: usize, i2: usize| (i1 * n2 + i2) as u32;
    let mut measure = vec![0.0; n1 * n2];
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            measure[idx(i1, i2) as usize] = inst.w1[i1] * inst.w2[i2];
        }
    }
    let mut rates = Vec::new();
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            let from = idx(i1, i2);
            for j1 in 0..n1 {
                if j1 != i1 {
                    rates.push((from, idx(j1, i2), inst.w1[j1]));
                }
            }
            if inst.h[i1] {
                for j2 in 0..n2 {
                    if j2 != i2 {
                        rates.push((from, idx(i1, j2), inst.w2[j2]));
                    }
                }
            }
        }
    }
    let chain = ChainSpec::new(measure, rates)?;
    chain.check_detailed_balance(1e-12)?;
    Ok((relaxation_time(&chain)?, 2.0 / p_h))
}

pub fn gen_two_block_instance(rng: &SeededRng, max_size: usize) -> TwoBlockInstance {
    let mut r = rng.rng();
    let n1 = r.random_range(1..=max_size);
    let n2 = r.random_range(1..=max_size);
    let w1 = random_weights(&mut r, n1);
    let w2 = random_weights(&mut r, n2);
    let mut h: Vec<bool> = (0..n1).map(|_| r.random_bool(0.5)).collect();
    if !h.iter().any(|&x| x) {
        let k = r.random_range(0..n1);
        h[k] = true;
    }
    TwoBlockInstance { w1, w2, h }
}

/// Sweep summary for the proposition checks.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub trials: usize,
    pub max_ratio: f64,
    pub violations: usize,
}

// ---------------------------------------------------------------------------
// auxiliary chain 1

/// Three coordinates; when omega in H = {omega_3 in A3, (omega_1, omega_2)
/// in B12^{omega_3}}, the pair (1,2) resamples conditioned on B12^{omega_3};
/// symmetrically for K via A1 and B23^{omega_1}.
#[derive(Debug, Clone)]
pub struct Aux1Instance {
    pub w: [Vec<f64>; 3],
    pub a1: Vec<bool>,
    pub a3: Vec<bool>,
    /// b12[omega_3][i1 * n2 + i2]; only rows with a3 matter.
    pub b12: Vec<Vec<bool>>,
    /// b23[omega_1][i2 * n3 + i3]; only rows with a1 matter.
    pub b23: Vec<Vec<bool>>,
    pub f12: Vec<bool>,
    pub f23: Vec<bool>,
}

struct Aux1View<'a> {
    inst: &'a Aux1Instance,
    n: [usize; 3],
}

impl<'a> Aux1View<'a> {
    fn new(inst: &'a Aux1Instance) -> Aux1View<'a> {
        Aux1View {
            n: [inst.w[0].len(), inst.w[1].len(), inst.w[2].len()],
            inst,
        }
    }

    fn in_h(&self, i1: usize, i2: usize, i3: usize) -> bool {
        self.inst.a3[i3] && self.inst.b12[i3][i1 * self.n[1] + i2]
    }

    fn in_k(&self, i1: usize, i2: usize, i3: usize) -> bool {
        self.inst.a1[i1] && self.inst.b23[i1][i2 * self.n[2] + i3]
    }

    fn pair12_weight(&self, set: &[bool]) -> f64 {
        let mut acc = 0.0;
        for i1 in 0..self.n[0] {
            for i2 in 0..self.n[1] {
                if set[i1 * self.n[1] + i2] {
                    acc += self.inst.w[0][i1] * self.inst.w[1][i2];
                }
            }
        }
        acc
    }

    fn pair23_weight(&self, set: &[bool]) -> f64 {
        let mut acc = 0.0;
        for i2 in 0..self.n[1] {
            for i3 in 0..self.n[2] {
                if set[i2 * self.n[2] + i3] {
                    acc += self.inst.w[1][i2] * self.inst.w[2][i3];
                }
            }
        }
        acc
    }
}

/// Build the auxiliary chain on H ∪ K alone (well-defined even when one of
/// the events is empty, e.g. A3 = ∅ leaves the K-moves only).
pub fn build_aux1_chain(inst: &Aux1Instance) -> Result<ChainSpec, SpectralError> {
    let view = Aux1View::new(inst);
    let [n1, n2, n3] = view.n;
    let mut states = Vec::new();
    let mut index = vec![u32::MAX; n1 * n2 * n3];
    let flat = |i1: usize, i2: usize, i3: usize| (i1 * n2 + i2) * n3 + i3;
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            for i3 in 0..n3 {
                if view.in_h(i1, i2, i3) || view.in_k(i1, i2, i3) {
                    index[flat(i1, i2, i3)] = states.len() as u32;
                    states.push((i1, i2, i3));
                }
            }
        }
    }
    if states.is_empty() {
        return Err(SpectralError::EmptyStateSpace);
    }
    let measure: Vec<f64> = states
        .iter()
        .map(|&(i1, i2, i3)| inst.w[0][i1] * inst.w[1][i2] * inst.w[2][i3])
        .collect();
    let mut rates = Vec::new();
    for (k, &(i1, i2, i3)) in states.iter().enumerate() {
        if view.in_h(i1, i2, i3) {
            let z: f64 = view.pair12_weight(&inst.b12[i3]);
            for j1 in 0..n1 {
                for j2 in 0..n2 {
                    if inst.b12[i3][j1 * n2 + j2] && (j1, j2) != (i1, i2) {
                        let to = index[flat(j1, j2, i3)];
                        debug_assert_ne!(to, u32::MAX);
                        rates.push((k as u32, to, inst.w[0][j1] * inst.w[1][j2] / z));
                    }
                }
            }
        }
        if view.in_k(i1, i2, i3) {
            let z: f64 = view.pair23_weight(&inst.b23[i1]);
            for j2 in 0..n2 {
                for j3 in 0..n3 {
                    if inst.b23[i1][j2 * n3 + j3] && (j2, j3) != (i2, i3) {
                        let to = index[flat(i1, j2, j3)];
                        debug_assert_ne!(to, u32::MAX);
                        rates.push((k as u32, to, inst.w[1][j2] * inst.w[2][j3] / z));
                    }
                }
            }
        }
    }
    let chain = ChainSpec::new(measure, rates)?;
    chain.check_detailed_balance(1e-12)?;
    Ok(chain)
}

/// Exact T_rel of the auxiliary chain and the formula value T_aux^(1).
/// Hypotheses (the F-events force membership in H ∩ K) are checked by
/// enumeration and violations are errors, never silently ignored.
pub fn aux_chain_1(inst: &Aux1Instance) -> Result<(f64, f64), SpectralError> {
    let view = Aux1View::new(inst);
    let [n1, n2, n3] = view.n;
    // hypothesis (H1): A3 x F12 subset H ∩ K; (H2): A1 x F23 subset H ∩ K
    for i3 in 0..n3 {
        if !inst.a3[i3] {
            continue;
        }
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                if inst.f12[i1 * n2 + i2]
                    && !(view.in_h(i1, i2, i3) && view.in_k(i1, i2, i3))
                {
                    return Err(SpectralError::HypothesisViolated(format!(
                        "(H1) fails at ({i1},{i2},{i3})"
                    )));
                }
            }
        }
    }
    for i1 in 0..n1 {
        if !inst.a1[i1] {
            continue;
        }
        for i2 in 0..n2 {
            for i3 in 0..n3 {
                if inst.f23[i2 * n3 + i3]
                    && !(view.in_h(i1, i2, i3) && view.in_k(i1, i2, i3))
                {
                    return Err(SpectralError::HypothesisViolated(format!(
                        "(H2) fails at ({i1},{i2},{i3})"
                    )));
                }
            }
        }
    }
    let chain = build_aux1_chain(inst)?;
    let t_rel = relaxation_time(&chain)?;

    // T_aux^(1): empty maxima contribute a neutral factor 1
    let pf12 = view.pair12_weight(&inst.f12);
    let pf23 = view.pair23_weight(&inst.f23);
    if pf12 == 0.0 || pf23 == 0.0 {
        return Err(SpectralError::ZeroProbabilityEvent("F events".into()));
    }
    let mut max12: f64 = 1.0;
    for i3 in 0..n3 {
        if inst.a3[i3] {
            max12 = max12.max(view.pair12_weight(&inst.b12[i3]) / pf12);
        }
    }
    let mut max23: f64 = 1.0;
    for i1 in 0..n1 {
        if inst.a1[i1] {
            max23 = max23.max(view.pair23_weight(&inst.b23[i1]) / pf23);
        }
    }
    Ok((t_rel, max12 * max12 * max23))
}

/// Random instance with the hypotheses forced: F12 lives inside A1 x Omega2
/// and below every B12^{omega_3} with omega_3 in A3, and so on.
pub fn gen_aux1_instance(rng: &SeededRng, max_size: usize) -> Aux1Instance {
    let mut r = rng.rng();
    let n1 = r.random_range(1..=max_size);
    let n2 = r.random_range(1..=max_size);
    let n3 = r.random_range(1..=max_size);
    let w = [
        random_weights(&mut r, n1),
        random_weights(&mut r, n2),
        random_weights(&mut r, n3),
    ];
    let mut a1: Vec<bool> = (0..n1).map(|_| r.random_bool(0.6)).collect();
    if !a1.iter().any(|&x| x) {
        a1[r.random_range(0..n1)] = true;
    }
    let mut a3: Vec<bool> = (0..n3).map(|_| r.random_bool(0.6)).collect();
    if !a3.iter().any(|&x| x) {
        a3[r.random_range(0..n3)] = true;
    }
    // F12 inside A1 x Omega2, nonempty; F23 inside Omega2 x A3, nonempty
    let mut f12 = vec![false; n1 * n2];
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            if a1[i1] && r.random_bool(0.4) {
                f12[i1 * n2 + i2] = true;
            }
        }
    }
    if !f12.iter().any(|&x| x) {
        let i1 = (0..n1).find(|&i| a1[i]).unwrap();
        f12[i1 * n2 + r.random_range(0..n2)] = true;
    }
    let mut f23 = vec![false; n2 * n3];
    for i2 in 0..n2 {
        for i3 in 0..n3 {
            if a3[i3] && r.random_bool(0.4) {
                f23[i2 * n3 + i3] = true;
            }
        }
    }
    if !f23.iter().any(|&x| x) {
        let i3 = (0..n3).find(|&i| a3[i]).unwrap();
        f23[r.random_range(0..n2) * n3 + i3] = true;
    }
    // B12^{omega_3} must contain F12 plus A1 x {i2 : (i2, omega_3) in F23};
    // B23^{omega_1} must contain F23 plus {i2 : (omega_1, i2) in F12} x A3
    let mut b12 = vec![vec![false; n1 * n2]; n3];
    for (i3, row) in b12.iter_mut().enumerate() {
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                let forced = f12[i1 * n2 + i2]
                    || (a1[i1] && inst_f23_has(&f23, n3, i2, i3) && a3[i3]);
                row[i1 * n2 + i2] = forced || r.random_bool(0.3);
            }
        }
    }
    let mut b23 = vec![vec![false; n2 * n3]; n1];
    for (i1, row) in b23.iter_mut().enumerate() {
        for i2 in 0..n2 {
            for i3 in 0..n3 {
                let forced = f23[i2 * n3 + i3]
                    || (a3[i3] && f12_has(&f12, n2, i1, i2) && a1[i1]);
                row[i2 * n3 + i3] = forced || r.random_bool(0.3);
            }
        }
    }
    Aux1Instance {
        w,
        a1,
        a3,
        b12,
        b23,
        f12,
        f23,
    }
}

fn inst_f23_has(f23: &[bool], n3: usize, i2: usize, i3: usize) -> bool {
    f23[i2 * n3 + i3]
}

fn f12_has(f12: &[bool], n2: usize, i1: usize, i2: usize) -> bool {
    f12[i1 * n2 + i2]
}

// ---------------------------------------------------------------------------
// auxiliary chain 2

/// When omega in M = {omega_3 in A3, (omega_1,omega_2) in C12}, the pair
/// (1,2) resamples within C12 and omega_3 within A3, each at rate one;
/// symmetrically for N via A1 and C23.
#[derive(Debug, Clone)]
pub struct Aux2Instance {
    pub w: [Vec<f64>; 3],
    pub a1: Vec<bool>,
    pub a3: Vec<bool>,
    pub c12: Vec<bool>,
    pub c23: Vec<bool>,
    /// hat-C12 subset of C12.
    pub chat12: Vec<bool>,
    /// a3_family[i1 * n2 + i2] subset of A3, for pairs in hat-C12.
    pub a3_family: Vec<Vec<bool>>,
}

pub fn aux_chain_2(inst: &Aux2Instance) -> Result<(f64, f64), SpectralError> {
    let (n1, n2, n3) = (inst.w[0].len(), inst.w[1].len(), inst.w[2].len());
    let in_m = |i1: usize, i2: usize, i3: usize| inst.a3[i3] && inst.c12[i1 * n2 + i2];
    let in_n = |i1: usize, i2: usize, i3: usize| inst.a1[i1] && inst.c23[i2 * n3 + i3];

    // structural validation and hypothesis (Hbar)
    for p in 0..n1 * n2 {
        if inst.chat12[p] && !inst.c12[p] {
            return Err(SpectralError::BadInstance(
                "hat-C12 must be a subset of C12".into(),
            ));
        }
    }
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            let p = i1 * n2 + i2;
            if !inst.chat12[p] {
                continue;
            }
            if !inst.a3_family[p].iter().any(|&x| x) {
                return Err(SpectralError::HypothesisViolated(format!(
                    "empty A3 family at pair ({i1},{i2})"
                )));
            }
            for i3 in 0..n3 {
                if inst.a3_family[p][i3] {
                    if !inst.a3[i3] {
                        return Err(SpectralError::BadInstance(
                            "A3 family must sit inside A3".into(),
                        ));
                    }
                    if !(in_m(i1, i2, i3) && in_n(i1, i2, i3)) {
                        return Err(SpectralError::HypothesisViolated(format!(
                            "(Hbar) fails at ({i1},{i2},{i3})"
                        )));
                    }
                }
            }
        }
    }

    let mut states = Vec::new();
    let mut index = vec![u32::MAX; n1 * n2 * n3];
    let flat = |i1: usize, i2: usize, i3: usize| (i1 * n2 + i2) * n3 + i3;
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            for i3 in 0..n3 {
                if in_m(i1, i2, i3) || in_n(i1, i2, i3) {
                    index[flat(i1, i2, i3)] = states.len() as u32;
                    states.push((i1, i2, i3));
                }
            }
        }
    }
    if states.is_empty() {
        return Err(SpectralError::EmptyStateSpace);
    }
    let measure: Vec<f64> = states
        .iter()
        .map(|&(i1, i2, i3)| inst.w[0][i1] * inst.w[1][i2] * inst.w[2][i3])
        .collect();

    let pair12_weight = |set: &[bool]| {
        let mut acc = 0.0;
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                if set[i1 * n2 + i2] {
                    acc += inst.w[0][i1] * inst.w[1][i2];
                }
            }
        }
        acc
    };
    let pair23_weight = |set: &[bool]| {
        let mut acc = 0.0;
        for i2 in 0..n2 {
            for i3 in 0..n3 {
                if set[i2 * n3 + i3] {
                    acc += inst.w[1][i2] * inst.w[2][i3];
                }
            }
        }
        acc
    };
    let set_weight = |set: &[bool], w: &[f64]| -> f64 {
        set.iter().zip(w).filter(|&(&s, _)| s).map(|(_, x)| x).sum()
    };

    let zc12 = pair12_weight(&inst.c12);
    let zc23 = pair23_weight(&inst.c23);
    let za3 = set_weight(&inst.a3, &inst.w[2]);
    let za1 = set_weight(&inst.a1, &inst.w[0]);

    let mut rates = Vec::new();
    for (k, &(i1, i2, i3)) in states.iter().enumerate() {
        if in_m(i1, i2, i3) {
            for j1 in 0..n1 {
                for j2 in 0..n2 {
                    if inst.c12[j1 * n2 + j2] && (j1, j2) != (i1, i2) {
                        let to = index[flat(j1, j2, i3)];
                        rates.push((k as u32, to, inst.w[0][j1] * inst.w[1][j2] / zc12));
                    }
                }
            }
            for j3 in 0..n3 {
                if inst.a3[j3] && j3 != i3 {
                    let to = index[flat(i1, i2, j3)];
                    rates.push((k as u32, to, inst.w[2][j3] / za3));
                }
            }
        }
        if in_n(i1, i2, i3) {
            for j2 in 0..n2 {
                for j3 in 0..n3 {
                    if inst.c23[j2 * n3 + j3] && (j2, j3) != (i2, i3) {
                        let to = index[flat(i1, j2, j3)];
                        rates.push((k as u32, to, inst.w[1][j2] * inst.w[2][j3] / zc23));
                    }
                }
            }
            for j1 in 0..n1 {
                if inst.a1[j1] && j1 != i1 {
                    let to = index[flat(j1, i2, i3)];
                    rates.push((k as u32, to, inst.w[0][j1] / za1));
                }
            }
        }
    }
    let chain = ChainSpec::new(measure, rates)?;
    chain.check_detailed_balance(1e-12)?;
    let t_rel = relaxation_time(&chain)?;

    let zchat = pair12_weight(&inst.chat12);
    if zchat == 0.0 {
        return Err(SpectralError::ZeroProbabilityEvent("hat-C12".into()));
    }
    let mut max_a3_ratio: f64 = 1.0;
    for p in 0..n1 * n2 {
        if inst.chat12[p] {
            let fam = set_weight(&inst.a3_family[p], &inst.w[2]);
            max_a3_ratio = max_a3_ratio.max(za3 / fam);
        }
    }
    Ok((t_rel, max_a3_ratio * zc12 / zchat))
}

pub fn gen_aux2_instance(rng: &SeededRng, max_size: usize) -> Aux2Instance {
    let mut r = rng.rng();
    let n1 = r.random_range(1..=max_size);
    let n2 = r.random_range(1..=max_size);
    let n3 = r.random_range(1..=max_size);
    let w = [
        random_weights(&mut r, n1),
        random_weights(&mut r, n2),
        random_weights(&mut r, n3),
    ];
    let mut a1: Vec<bool> = (0..n1).map(|_| r.random_bool(0.6)).collect();
    if !a1.iter().any(|&x| x) {
        a1[r.random_range(0..n1)] = true;
    }
    let mut a3: Vec<bool> = (0..n3).map(|_| r.random_bool(0.6)).collect();
    if !a3.iter().any(|&x| x) {
        a3[r.random_range(0..n3)] = true;
    }
    let a3_star = (0..n3).find(|&i| a3[i]).unwrap();
    // hat-C12: nonempty subset of A1 x Omega2
    let mut chat12 = vec![false; n1 * n2];
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            if a1[i1] && r.random_bool(0.35) {
                chat12[i1 * n2 + i2] = true;
            }
        }
    }
    if !chat12.iter().any(|&x| x) {
        let i1 = (0..n1).find(|&i| a1[i]).unwrap();
        chat12[i1 * n2 + r.random_range(0..n2)] = true;
    }
    // C12 contains hat-C12; C23 must contain (i2, a3_star) for every i2
    // appearing in hat-C12
    let mut c12 = chat12.clone();
    for slot in c12.iter_mut() {
        *slot = *slot || r.random_bool(0.3);
    }
    let mut c23 = vec![false; n2 * n3];
    for i2 in 0..n2 {
        for i3 in 0..n3 {
            c23[i2 * n3 + i3] = r.random_bool(0.3);
        }
    }
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            if chat12[i1 * n2 + i2] {
                c23[i2 * n3 + a3_star] = true;
            }
        }
    }
    // A3 family: for each hat pair, a nonempty subset of
    // {i3 in A3 : (i2, i3) in C23}
    let mut a3_family = vec![vec![false; n3]; n1 * n2];
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            let p = i1 * n2 + i2;
            if !chat12[p] {
                continue;
            }
            for i3 in 0..n3 {
                if a3[i3] && c23[i2 * n3 + i3] && r.random_bool(0.5) {
                    a3_family[p][i3] = true;
                }
            }
            if !a3_family[p].iter().any(|&x| x) {
                a3_family[p][a3_star] = true;
            }
        }
    }
    Aux2Instance {
        w,
        a1,
        a3,
        c12,
        c23,
        chat12,
        a3_family,
    }
}
