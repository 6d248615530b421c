//! Strong lumpability: a state-space projection is Markov-consistent iff
//! every state of a class sends the same total rate into each other class.

use crate::chain::ChainSpec;
use crate::error::SpectralError;

#[derive(Debug, Clone)]
pub struct LumpReport {
    pub lumpable: bool,
    /// Largest deviation between per-state class rates within one class.
    pub max_residual: f64,
    pub lumped: Option<ChainSpec>,
    /// Original label value of each lumped state, ascending.
    pub class_labels: Vec<usize>,
}

/// Check strong lumpability of `chain` under `labels` (one label per
/// state, arbitrary values) and build the lumped chain when it holds.
/// Lumped states are ordered by ascending label value.
pub fn lumpability_check(chain: &ChainSpec, labels: &[usize]) -> Result<LumpReport, SpectralError> {
    let n = chain.len();
    if labels.len() != n {
        return Err(SpectralError::BadInstance(
            "labels must cover every state".into(),
        ));
    }
    // compact arbitrary label values to 0..k preserving their order
    let mut class_labels: Vec<usize> = labels.to_vec();
    class_labels.sort_unstable();
    class_labels.dedup();
    let labels: Vec<usize> = labels
        .iter()
        .map(|l| class_labels.binary_search(l).unwrap())
        .collect();
    let classes = class_labels.len();
    // per-state total rate into each label class
    let mut into = vec![vec![0.0f64; classes]; n];
    for &(i, j, r) in chain.rates() {
        let (i, j) = (i as usize, j as usize);
        if labels[i] != labels[j] {
            into[i][labels[j]] += r;
        }
    }
    let mut reference: Vec<Option<(usize, Vec<f64>)>> = vec![None; classes];
    let mut max_residual = 0.0f64;
    for s in 0..n {
        let class = labels[s];
        match &reference[class] {
            None => reference[class] = Some((s, into[s].clone())),
            Some((_, expected)) => {
                for c in 0..classes {
                    max_residual = max_residual.max((into[s][c] - expected[c]).abs());
                }
            }
        }
    }
    let lumpable = max_residual <= 1e-9;
    let lumped = if lumpable {
        let mut measure = vec![0.0f64; classes];
        for s in 0..n {
            measure[labels[s]] += chain.measure()[s];
        }
        let mut rates = Vec::new();
        for (class, entry) in reference.iter().enumerate() {
            if let Some((_, row)) = entry {
                for (target, &r) in row.iter().enumerate() {
                    if r > 0.0 && target != class {
                        rates.push((class as u32, target as u32, r));
                    }
                }
            }
        }
        Some(ChainSpec::new(measure, rates)?)
    } else {
        None
    };
    Ok(LumpReport {
        lumpable,
        max_residual,
        lumped,
        class_labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_projection_is_lumpable() {
        let chain = ChainSpec::new(
            vec![0.25, 0.75],
            [(0u32, 1u32, 0.75), (1, 0, 0.25)],
        )
        .unwrap();
        let labels: Vec<usize> = vec![0, 1];
        let rep = lumpability_check(&chain, &labels).unwrap();
        assert!(rep.lumpable);
        assert_eq!(rep.max_residual, 0.0);
        assert_eq!(rep.lumped.as_ref().unwrap(), &chain);
    }

    #[test]
    fn symmetric_pair_lumps() {
        // 3 states: 1 and 2 symmetric; rates 0->1 = 0->2 = 1, 1->0 = 2->0 = 1
        let chain = ChainSpec::new(
            vec![1.0 / 3.0; 3],
            [
                (0u32, 1u32, 1.0),
                (0, 2, 1.0),
                (1, 0, 1.0),
                (2, 0, 1.0),
            ],
        )
        .unwrap();
        let rep = lumpability_check(&chain, &[0, 1, 1]).unwrap();
        assert!(rep.lumpable);
        let lumped = rep.lumped.unwrap();
        assert_eq!(lumped.len(), 2);
        assert!((lumped.rate(0, 1) - 2.0).abs() < 1e-15);
        assert!((lumped.rate(1, 0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn perturbed_rate_is_detected() {
        let chain = ChainSpec::new(
            vec![1.0 / 3.0; 3],
            [
                (0u32, 1u32, 1.0),
                (0, 2, 1.0),
                (1, 0, 1.0),
                (2, 0, 1.3), // deliberately off
            ],
        )
        .unwrap();
        let rep = lumpability_check(&chain, &[0, 1, 1]).unwrap();
        assert!(!rep.lumpable);
        assert!((rep.max_residual - 0.3).abs() < 1e-12);
        assert!(rep.lumped.is_none());
    }
}
