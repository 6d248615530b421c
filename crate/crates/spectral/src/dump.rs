//! Text dump of a chain for external solver cross-checks: the measure
//! vector followed by sparse rate triplets.

use crate::chain::ChainSpec;
use crate::error::SpectralError;

pub fn dump_chain(chain: &ChainSpec) -> String {
    let mut out = String::new();
    out.push_str(&format!("fa2f-chain v1\nstates {}\nmeasure\n", chain.len()));
    for (i, m) in chain.measure().iter().enumerate() {
        out.push_str(&format!("{i} {m:.17e}\n"));
    }
    out.push_str("rates\n");
    for &(i, j, r) in chain.rates() {
        out.push_str(&format!("{i} {j} {r:.17e}\n"));
    }
    out
}

pub fn parse_chain(text: &str) -> Result<ChainSpec, SpectralError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().unwrap_or_default();
    if header != "fa2f-chain v1" {
        return Err(SpectralError::BadInstance(format!(
            "unexpected header {header:?}"
        )));
    }
    let states_line = lines.next().unwrap_or_default();
    let n: usize = states_line
        .strip_prefix("states ")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| SpectralError::BadInstance("missing states line".into()))?;
    if lines.next() != Some("measure") {
        return Err(SpectralError::BadInstance("missing measure section".into()));
    }
    let mut measure = vec![0.0; n];
    for slot in measure.iter_mut() {
        let line = lines
            .next()
            .ok_or_else(|| SpectralError::BadInstance("truncated measure".into()))?;
        let mut parts = line.split_whitespace();
        let _idx: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| SpectralError::BadInstance("bad measure row".into()))?;
        *slot = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| SpectralError::BadInstance("bad measure value".into()))?;
    }
    if lines.next() != Some("rates") {
        return Err(SpectralError::BadInstance("missing rates section".into()));
    }
    let mut rates = Vec::new();
    for line in lines {
        let mut parts = line.split_whitespace();
        let i: u32 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| SpectralError::BadInstance("bad rate row".into()))?;
        let j: u32 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| SpectralError::BadInstance("bad rate row".into()))?;
        let r: f64 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| SpectralError::BadInstance("bad rate value".into()))?;
        rates.push((i, j, r));
    }
    ChainSpec::new(measure, rates)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let chain = ChainSpec::new(
            vec![0.2, 0.3, 0.5],
            [(0u32, 1u32, 1.5), (1, 0, 1.0), (1, 2, 0.25), (2, 1, 0.15)],
        )
        .unwrap();
        let text = dump_chain(&chain);
        let back = parse_chain(&text).unwrap();
        assert_eq!(chain.len(), back.len());
        for (a, b) in chain.measure().iter().zip(back.measure()) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(chain.rates().len(), back.rates().len());
        for (&(i, j, r), &(i2, j2, r2)) in chain.rates().iter().zip(back.rates()) {
            assert_eq!((i, j), (i2, j2));
            assert!((r - r2).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_chain("nonsense").is_err());
        assert!(parse_chain("fa2f-chain v1\nstates 2\nmeasure\n0 0.5\n").is_err());
    }
}
