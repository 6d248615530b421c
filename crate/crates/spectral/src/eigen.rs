//! Relaxation times by eigensolving the symmetrized generator
//! S = D^{1/2} (-L) D^{-1/2}: real PSD spectrum with kernel sqrt(mu);
//! T_rel = 1 / (second-smallest eigenvalue). Dense solve up to 4096
//! states, Lanczos with deflation of the constant above.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::chain::ChainSpec;
use crate::error::SpectralError;

/// Dense eigensolving is used at or below this many states.
pub const DENSE_CAP: usize = 4096;

/// Build the symmetrized matrix S (dense).
pub fn symmetrized_dense(chain: &ChainSpec) -> DMatrix<f64> {
    let n = chain.len();
    let mu = chain.measure();
    let mut s = DMatrix::<f64>::zeros(n, n);
    for &(i, j, r) in chain.rates() {
        let (i, j) = (i as usize, j as usize);
        s[(i, j)] -= r * (mu[i] / mu[j]).sqrt();
        s[(i, i)] += r;
    }
    s
}

/// All eigenvalues of S, ascending (dense path).
pub fn spectrum_dense(chain: &ChainSpec) -> Result<Vec<f64>, SpectralError> {
    if chain.len() > DENSE_CAP {
        return Err(SpectralError::CapExceeded {
            have: chain.len(),
            cap: DENSE_CAP,
        });
    }
    let eig = SymmetricEigen::new(symmetrized_dense(chain));
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(vals)
}

/// 1 / (second-smallest eigenvalue of -L). Errors on reducible chains with
/// the component decomposition attached.
pub fn relaxation_time(chain: &ChainSpec) -> Result<f64, SpectralError> {
    if chain.len() == 1 {
        // no nonconstant functions: relaxation is instantaneous
        return Ok(0.0);
    }
    let components = chain.components();
    if components.len() > 1 {
        return Err(SpectralError::Reducible { components });
    }
    let gap = if chain.len() <= DENSE_CAP {
        let vals = spectrum_dense(chain)?;
        if vals[0].abs() > 1e-7 * vals[vals.len() - 1].abs().max(1.0) {
            return Err(SpectralError::EigenFailure(format!(
                "kernel eigenvalue off zero: {:e}",
                vals[0]
            )));
        }
        vals[1]
    } else {
        lanczos_gap(chain)?
    };
    if !(gap > 0.0) {
        return Err(SpectralError::EigenFailure(format!(
            "nonpositive spectral gap {gap:e}"
        )));
    }
    Ok(1.0 / gap)
}

/// Distribution at time t started from `init` (dense path): init^T e^{tL}.
pub fn distribution_at(
    chain: &ChainSpec,
    init: &[f64],
    t: f64,
) -> Result<Vec<f64>, SpectralError> {
    if chain.len() > DENSE_CAP {
        return Err(SpectralError::CapExceeded {
            have: chain.len(),
            cap: DENSE_CAP,
        });
    }
    let n = chain.len();
    if init.len() != n {
        return Err(SpectralError::BadInstance("init length mismatch".into()));
    }
    let mu = chain.measure();
    let eig = SymmetricEigen::new(symmetrized_dense(chain));
    // e^{tL} = D^{-1/2} U e^{-t Lambda} U^T D^{1/2}
    let u = &eig.eigenvectors;
    let mut v = DVector::<f64>::zeros(n);
    for i in 0..n {
        v[i] = init[i] / mu[i].sqrt(); // (D^{-1/2})^T init, acting on the left
    }
    let mut w = u.transpose() * v;
    for (k, wk) in w.iter_mut().enumerate() {
        *wk *= (-t * eig.eigenvalues[k]).exp();
    }
    let back = u * w;
    let mut out = vec![0.0; n];
    for i in 0..n {
        out[i] = back[i] * mu[i].sqrt();
    }
    Ok(out)
}

/// Survival probability of the killed chain: P(no visit to an absorbing
/// state by time t | start = init). Uses the principal submatrix of the
/// generator on the surviving states, symmetrized the same way.
pub fn survival_probability(
    chain: &ChainSpec,
    absorbing: &[bool],
    init: usize,
    t: f64,
) -> Result<f64, SpectralError> {
    let n = chain.len();
    if absorbing.len() != n {
        return Err(SpectralError::BadInstance("absorbing mask length".into()));
    }
    if absorbing[init] {
        return Ok(0.0);
    }
    let alive: Vec<usize> = (0..n).filter(|&i| !absorbing[i]).collect();
    if alive.len() > DENSE_CAP {
        return Err(SpectralError::CapExceeded {
            have: alive.len(),
            cap: DENSE_CAP,
        });
    }
    let mut remap = vec![usize::MAX; n];
    for (k, &i) in alive.iter().enumerate() {
        remap[i] = k;
    }
    let mu = chain.measure();
    let m = alive.len();
    let mut s = DMatrix::<f64>::zeros(m, m);
    for &(i, j, r) in chain.rates() {
        let (iu, ju) = (i as usize, j as usize);
        if absorbing[iu] {
            continue;
        }
        // the full exit rate stays on the diagonal: jumps into absorbing
        // states kill the process
        s[(remap[iu], remap[iu])] += r;
        if !absorbing[ju] {
            s[(remap[iu], remap[ju])] -= r * (mu[iu] / mu[ju]).sqrt();
        }
    }
    let eig = SymmetricEigen::new(s);
    let u = &eig.eigenvectors;
    let k0 = remap[init];
    // survival = sum_j [e^{tL_A}]_{k0, j}
    //          = sum_j sqrt(mu_j/mu_k0) [U e^{-t Lambda} U^T]_{k0, j}
    let mut acc = 0.0;
    for j in 0..m {
        let mut entry = 0.0;
        for k in 0..m {
            entry += u[(k0, k)] * (-t * eig.eigenvalues[k]).exp() * u[(j, k)];
        }
        acc += entry * (mu[alive[j]] / mu[alive[k0]]).sqrt();
    }
    Ok(acc.clamp(0.0, 1.0))
}

/// Sparse CSR matrix for the Lanczos path.
struct Csr {
    n: usize,
    row_ptr: Vec<usize>,
    col: Vec<u32>,
    val: Vec<f64>,
}

impl Csr {
    fn from_chain_symmetrized(chain: &ChainSpec) -> Csr {
        let n = chain.len();
        let mu = chain.measure();
        // count entries per row: off-diagonals plus one diagonal each
        let mut counts = vec![1usize; n];
        for &(i, _, _) in chain.rates() {
            counts[i as usize] += 1;
        }
        let mut row_ptr = vec![0usize; n + 1];
        for i in 0..n {
            row_ptr[i + 1] = row_ptr[i] + counts[i];
        }
        let nnz = row_ptr[n];
        let mut col = vec![0u32; nnz];
        let mut val = vec![0.0f64; nnz];
        let mut cursor: Vec<usize> = row_ptr[..n].to_vec();
        let mut diag = vec![0.0f64; n];
        for &(i, j, r) in chain.rates() {
            let (iu, ju) = (i as usize, j as usize);
            let c = cursor[iu];
            col[c] = j;
            val[c] = -r * (mu[iu] / mu[ju]).sqrt();
            cursor[iu] += 1;
            diag[iu] += r;
        }
        for i in 0..n {
            let c = cursor[i];
            col[c] = i as u32;
            val[c] = diag[i];
            cursor[i] += 1;
        }
        Csr {
            n,
            row_ptr,
            col,
            val,
        }
    }

    fn spmv(&self, x: &[f64], y: &mut [f64]) {
        for i in 0..self.n {
            let mut acc = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.val[k] * x[self.col[k] as usize];
            }
            y[i] = acc;
        }
    }

    /// Gershgorin upper bound on the spectrum.
    fn gershgorin_upper(&self) -> f64 {
        let mut best: f64 = 0.0;
        for i in 0..self.n {
            let mut diag = 0.0;
            let mut off = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                if self.col[k] as usize == i {
                    diag += self.val[k];
                } else {
                    off += self.val[k].abs();
                }
            }
            best = best.max(diag + off);
        }
        best
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Largest eigenvalue of the tridiagonal (alpha, beta) by dense solve of
/// the small matrix. Returns the top Ritz value and the magnitude of the
/// bottom entry of its Ritz vector; beta_k times the latter bounds the
/// eigenvalue error of the Ritz pair.
fn tridiag_top_ritz(alpha: &[f64], beta: &[f64]) -> (f64, f64) {
    let k = alpha.len();
    let mut t = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alpha[i];
        if i + 1 < k {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let mut top = 0usize;
    for (i, &val) in eig.eigenvalues.iter().enumerate() {
        if val > eig.eigenvalues[top] {
            top = i;
        }
    }
    (eig.eigenvalues[top], eig.eigenvectors[(k - 1, top)].abs())
}

/// Spectral gap of S for large chains: Lanczos with full
/// reorthogonalization on A = cI - S deflated by the known kernel
/// sqrt(mu); lambda_max(A) = c - gap.
fn lanczos_gap(chain: &ChainSpec) -> Result<f64, SpectralError> {
    let n = chain.len();
    let csr = Csr::from_chain_symmetrized(chain);
    let c = csr.gershgorin_upper() * 1.0001 + 1e-12;
    let mu = chain.measure();
    let mut kernel: Vec<f64> = mu.iter().map(|m| m.sqrt()).collect();
    let knorm = norm(&kernel);
    for x in &mut kernel {
        *x /= knorm;
    }

    // A v = c v - S v - c (kernel . v) kernel
    let apply = |x: &[f64], y: &mut [f64], scratch: &mut Vec<f64>| {
        scratch.resize(x.len(), 0.0);
        csr.spmv(x, scratch);
        let kv = dot(&kernel, x);
        for i in 0..x.len() {
            y[i] = c * x[i] - scratch[i] - c * kv * kernel[i];
        }
    };

    let max_iter = n.min(600);
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut scratch = Vec::new();

    // deterministic start vector orthogonal to the kernel
    let mut v: Vec<f64> = (0..n)
        .map(|i| (i as f64 * 0.7368425 + 0.31).sin() + 0.05)
        .collect();
    let kv = dot(&kernel, &v);
    for i in 0..n {
        v[i] -= kv * kernel[i];
    }
    let nv = norm(&v);
    if nv == 0.0 {
        return Err(SpectralError::EigenFailure("degenerate start vector".into()));
    }
    for x in &mut v {
        *x /= nv;
    }

    let mut w = vec![0.0; n];
    for it in 0..max_iter {
        apply(&v, &mut w, &mut scratch);
        let a = dot(&v, &w);
        alpha.push(a);
        for i in 0..n {
            w[i] -= a * v[i];
        }
        if let Some(idx) = basis.len().checked_sub(1) {
            let b_prev = beta[idx];
            let prev = &basis[idx];
            for i in 0..n {
                w[i] -= b_prev * prev[i];
            }
        }
        basis.push(v.clone());
        // full reorthogonalization against the basis and the kernel
        for u in &basis {
            let uv = dot(u, &w);
            for i in 0..n {
                w[i] -= uv * u[i];
            }
        }
        let kw = dot(&kernel, &w);
        for i in 0..n {
            w[i] -= kw * kernel[i];
        }
        let b = norm(&w);
        if b < 1e-13 * c {
            break; // invariant subspace: the Ritz values are exact
        }
        beta.push(b);
        v = w.iter().map(|x| x / b).collect();

        if it % 10 == 9 {
            // T_k is built from alpha[0..k] and beta[0..k-1]; the residual
            // bound beta_k |y_k| controls the Ritz-value error
            let (est, bottom) = tridiag_top_ritz(&alpha, &beta[..alpha.len() - 1]);
            if b * bottom <= 1e-10 * c {
                return Ok(c - est);
            }
        }
    }
    let k = alpha.len();
    let (est, bottom) = tridiag_top_ritz(&alpha, &beta[..k - 1.min(beta.len())]);
    let residual = beta.get(k - 1).copied().unwrap_or(0.0) * bottom;
    if residual <= 1e-8 * c {
        Ok(c - est)
    } else {
        Err(SpectralError::EigenFailure(format!(
            "Lanczos did not converge in {k} iterations (residual bound {residual:.3e})"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_state(a: f64, b: f64) -> ChainSpec {
        ChainSpec::new(vec![b, a], [(0u32, 1u32, a), (1, 0, b)]).unwrap()
    }

    #[test]
    fn two_state_relaxation() {
        // T_rel = 1/(a+b)
        let c = two_state(0.5, 0.5);
        assert!((relaxation_time(&c).unwrap() - 1.0).abs() < 1e-12);
        let c = two_state(0.3, 0.9);
        assert!((relaxation_time(&c).unwrap() - 1.0 / 1.2).abs() < 1e-12);
    }

    #[test]
    fn complete_resampling_has_trel_one() {
        // L = Pi - I: from every state, jump to j at rate mu_j
        let mu = [0.1, 0.2, 0.3, 0.4];
        let mut rates = Vec::new();
        for i in 0..4u32 {
            for j in 0..4u32 {
                if i != j {
                    rates.push((i, j, mu[j as usize]));
                }
            }
        }
        let c = ChainSpec::new(mu.to_vec(), rates).unwrap();
        assert!((relaxation_time(&c).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reducible_is_reported() {
        let c = ChainSpec::new(
            vec![0.25; 4],
            [(0u32, 1u32, 1.0), (1, 0, 1.0), (2, 3, 1.0), (3, 2, 1.0)],
        )
        .unwrap();
        match relaxation_time(&c) {
            Err(SpectralError::Reducible { components }) => assert_eq!(components.len(), 2),
            other => panic!("expected Reducible, got {other:?}"),
        }
    }

    #[test]
    fn relabeling_invariance() {
        let mu = vec![0.1, 0.4, 0.2, 0.3];
        let rates = vec![
            (0u32, 1u32, 0.8),
            (1, 0, 0.2),
            (1, 2, 0.5),
            (2, 1, 1.0),
            (2, 3, 0.9),
            (3, 2, 0.6),
        ];
        let c = ChainSpec::new(mu, rates).unwrap();
        c.check_detailed_balance(1e-12).unwrap();
        let t = relaxation_time(&c).unwrap();
        let perm = vec![2usize, 0, 3, 1];
        let t2 = relaxation_time(&c.relabeled(&perm)).unwrap();
        assert!((t - t2).abs() < 1e-10 * t);
    }

    #[test]
    fn rescaling_invariance() {
        let c = two_state(0.4, 0.6);
        let t = relaxation_time(&c).unwrap();
        let t5 = relaxation_time(&c.time_rescaled(5.0)).unwrap();
        assert!((t / 5.0 - t5).abs() < 1e-12);
    }

    #[test]
    fn lanczos_matches_dense_on_midsize() {
        // ring of 600 states with heat-bath-ish rates: force the Lanczos
        // path by lowering the cap indirectly (call lanczos_gap directly)
        let n = 600usize;
        let mut rates = Vec::new();
        for i in 0..n as u32 {
            let j = (i + 1) % n as u32;
            rates.push((i, j, 1.0));
            rates.push((j, i, 1.0));
        }
        let c = ChainSpec::new(vec![1.0; n], rates).unwrap();
        let dense_gap = 1.0 / relaxation_time(&c).unwrap();
        let lgap = lanczos_gap(&c).unwrap();
        assert!(
            ((dense_gap - lgap) / dense_gap).abs() < 1e-7,
            "dense {dense_gap} vs lanczos {lgap}"
        );
    }

    fn weak_link_cycle(n: usize, weak: f64) -> ChainSpec {
        let mut rates = Vec::new();
        for i in 0..n as u32 {
            let j = (i + 1) % n as u32;
            let r = if i == 0 { weak } else { 1.0 };
            rates.push((i, j, r));
            rates.push((j, i, r));
        }
        ChainSpec::new(vec![1.0; n], rates).unwrap()
    }

    #[test]
    fn lanczos_converges_on_small_gaps() {
        // a weak-link cycle has a small gap with nearly degenerate low
        // modes, the regime the conditioned exclusion chains live in
        let c = weak_link_cycle(1500, 0.05);
        let dense_gap = 1.0 / relaxation_time(&c).unwrap();
        let lgap = lanczos_gap(&c).unwrap();
        assert!(
            ((dense_gap - lgap) / dense_gap).abs() < 1e-6,
            "dense {dense_gap:e} vs lanczos {lgap:e}"
        );
    }

    #[test]
    fn lanczos_never_reports_wrong_values_silently() {
        // an extreme gap ratio must either converge accurately or fail
        // loudly, never return a plausible-looking wrong number
        let c = weak_link_cycle(1500, 1e-3);
        let dense_gap = 1.0 / relaxation_time(&c).unwrap();
        match lanczos_gap(&c) {
            Ok(lgap) => assert!(
                ((dense_gap - lgap) / dense_gap).abs() < 1e-4,
                "dense {dense_gap:e} vs lanczos {lgap:e}"
            ),
            Err(SpectralError::EigenFailure(_)) => {}
            Err(other) => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn distribution_evolves_to_stationary() {
        let c = two_state(0.5, 0.5);
        let d0 = distribution_at(&c, &[1.0, 0.0], 0.0).unwrap();
        assert!((d0[0] - 1.0).abs() < 1e-12);
        let dinf = distribution_at(&c, &[1.0, 0.0], 50.0).unwrap();
        assert!((dinf[0] - c.measure()[0]).abs() < 1e-12);
        // mass conserved at intermediate times
        let dmid = distribution_at(&c, &[1.0, 0.0], 0.7).unwrap();
        assert!((dmid.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(dmid.iter().all(|&p| p >= -1e-12));
    }
}
