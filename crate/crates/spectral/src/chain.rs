//! Explicit reversible chains: enumerated states, a positive measure, and
//! sparse jump rates. Row sums define the generator diagonal.


use crate::error::SpectralError;

/// A finite continuous-time chain reversible w.r.t. `measure`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    n: usize,
    measure: Vec<f64>,
    /// Off-diagonal rates (from, to, rate > 0), sorted, at most one entry
    /// per ordered pair.
    rates: Vec<(u32, u32, f64)>,
}

impl ChainSpec {
    /// Build from a measure and off-diagonal rates. Duplicate ordered pairs
    /// accumulate; zero rates are dropped; the measure is normalized.
    pub fn new(
        measure: Vec<f64>,
        rates: impl IntoIterator<Item = (u32, u32, f64)>,
    ) -> Result<ChainSpec, SpectralError> {
        let n = measure.len();
        if n == 0 {
            return Err(SpectralError::EmptyStateSpace);
        }
        if measure.iter().any(|&m| !(m > 0.0) || !m.is_finite()) {
            return Err(SpectralError::BadInstance(
                "measure must be strictly positive and finite".into(),
            ));
        }
        let total: f64 = measure.iter().sum();
        let measure: Vec<f64> = measure.iter().map(|m| m / total).collect();
        let mut raw: Vec<(u32, u32, f64)> = Vec::new();
        for (i, j, r) in rates {
            if (i as usize) >= n || (j as usize) >= n {
                return Err(SpectralError::BadInstance(format!(
                    "rate entry ({i},{j}) out of range"
                )));
            }
            if i == j || r == 0.0 {
                continue;
            }
            if !(r > 0.0) || !r.is_finite() {
                return Err(SpectralError::BadInstance(format!(
                    "rate ({i},{j}) = {r} must be positive"
                )));
            }
            raw.push((i, j, r));
        }
        raw.sort_unstable_by_key(|&(i, j, _)| (i, j));
        let mut merged: Vec<(u32, u32, f64)> = Vec::with_capacity(raw.len());
        for (i, j, r) in raw {
            match merged.last_mut() {
                Some(last) if last.0 == i && last.1 == j => last.2 += r,
                _ => merged.push((i, j, r)),
            }
        }
        Ok(ChainSpec {
            n,
            measure,
            rates: merged,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn measure(&self) -> &[f64] {
        &self.measure
    }

    pub fn rates(&self) -> &[(u32, u32, f64)] {
        &self.rates
    }

    pub fn rate(&self, from: usize, to: usize) -> f64 {
        self.rates
            .binary_search_by_key(&(from as u32, to as u32), |&(i, j, _)| (i, j))
            .map(|k| self.rates[k].2)
            .unwrap_or(0.0)
    }

    /// Total exit rate of a state.
    pub fn exit_rate(&self, from: usize) -> f64 {
        self.rates
            .iter()
            .filter(|&&(i, _, _)| i as usize == from)
            .map(|&(_, _, r)| r)
            .sum()
    }

    /// Detailed balance mu_i r_ij = mu_j r_ji for every pair, to relative
    /// tolerance `tol` (floating-point inputs earn 1e-12).
    pub fn check_detailed_balance(&self, tol: f64) -> Result<(), SpectralError> {
        for &(i, j, r) in &self.rates {
            if i < j {
                let back = self.rate(j as usize, i as usize);
                let lhs = self.measure[i as usize] * r;
                let rhs = self.measure[j as usize] * back;
                let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
                if (lhs - rhs).abs() > tol * scale {
                    return Err(SpectralError::NotReversible {
                        from: i as usize,
                        to: j as usize,
                        detail: format!("mu_i r_ij = {lhs:e}, mu_j r_ji = {rhs:e}"),
                    });
                }
            }
        }
        // asymmetric support also breaks reversibility
        for &(i, j, _) in &self.rates {
            if self.rate(j as usize, i as usize) == 0.0 {
                return Err(SpectralError::NotReversible {
                    from: i as usize,
                    to: j as usize,
                    detail: "one-way rate".into(),
                });
            }
        }
        Ok(())
    }

    /// Communicating classes of the rate graph.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); self.n];
        for &(i, j, _) in &self.rates {
            adj[i as usize].push(j);
            adj[j as usize].push(i);
        }
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    let w = w as usize;
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.components().len() == 1
    }

    /// The chain with every rate scaled by `lambda` (relaxation time scales
    /// by 1/lambda).
    pub fn time_rescaled(&self, lambda: f64) -> ChainSpec {
        ChainSpec {
            n: self.n,
            measure: self.measure.clone(),
            rates: self
                .rates
                .iter()
                .map(|&(i, j, r)| (i, j, r * lambda))
                .collect(),
        }
    }

    /// The chain with states permuted by `perm` (new index = perm[old]).
    pub fn relabeled(&self, perm: &[usize]) -> ChainSpec {
        assert_eq!(perm.len(), self.n);
        let mut measure = vec![0.0; self.n];
        for (old, &new) in perm.iter().enumerate() {
            measure[new] = self.measure[old];
        }
        let rates: Vec<(u32, u32, f64)> = self
            .rates
            .iter()
            .map(|&(i, j, r)| (perm[i as usize] as u32, perm[j as usize] as u32, r))
            .collect();
        ChainSpec::new(measure, rates).expect("permutation preserves validity")
    }

    /// Dirichlet form D(f) = -<f, Lf>_mu = 1/2 sum mu_i r_ij (f_j - f_i)^2.
    pub fn dirichlet(&self, f: &[f64]) -> f64 {
        let mut acc = 0.0;
        for &(i, j, r) in &self.rates {
            let d = f[j as usize] - f[i as usize];
            acc += 0.5 * self.measure[i as usize] * r * d * d;
        }
        acc
    }

    /// Variance of f under the stationary measure.
    pub fn variance(&self, f: &[f64]) -> f64 {
        let mean: f64 = f.iter().zip(&self.measure).map(|(x, m)| x * m).sum();
        f.iter()
            .zip(&self.measure)
            .map(|(x, m)| m * (x - mean) * (x - mean))
            .sum()
    }
}
