//! g-CBSEP parameters and the exact generator on Omega^+.

use fa2f_core::lattice::region::{Region, OUTSIDE, PAD};
use fa2f_spectral::ChainSpec;

use crate::error::CbsepError;

/// The underlying graph: a discrete torus or an explicit simple edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Graph {
    Torus { dims: Vec<usize> },
    Explicit { vertices: usize, edges: Vec<(u32, u32)> },
}

impl Graph {
    pub fn vertices(&self) -> usize {
        match self {
            Graph::Torus { dims } => dims.iter().product(),
            Graph::Explicit { vertices, .. } => *vertices,
        }
    }

    /// Deduplicated undirected edges (i < j). On a torus of side 2 the two
    /// parallel lattice edges collapse to one, matching the lattice-core
    /// neighbour convention.
    pub fn edges(&self) -> Result<Vec<(u32, u32)>, CbsepError> {
        match self {
            Graph::Torus { dims } => {
                let region = Region::torus(dims)
                    .map_err(|e| CbsepError::BadGraph(e.to_string()))?;
                let table = region.neighbor_table();
                let mut edges = Vec::new();
                for i in 0..region.len() {
                    for &n in table.neighbors(i) {
                        if n != PAD && n != OUTSIDE && (n as usize) > i {
                            edges.push((i as u32, n));
                        }
                    }
                }
                Ok(edges)
            }
            Graph::Explicit { vertices, edges } => {
                let mut out = Vec::new();
                for &(a, b) in edges {
                    if a as usize >= *vertices || b as usize >= *vertices {
                        return Err(CbsepError::BadGraph(format!(
                            "edge ({a},{b}) out of range"
                        )));
                    }
                    if a == b {
                        continue;
                    }
                    let e = (a.min(b), a.max(b));
                    if !out.contains(&e) {
                        out.push(e);
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn is_connected(&self) -> Result<bool, CbsepError> {
        let n = self.vertices();
        if n == 0 {
            return Ok(false);
        }
        let edges = self.edges()?;
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a as usize].push(b as usize);
            adj[b as usize].push(a as usize);
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        Ok(count == n)
    }
}

/// Local state space S with weights pi and a particle mask S_1.
#[derive(Debug, Clone)]
pub struct GcbsepParams {
    pub graph: Graph,
    pub weights: Vec<f64>,
    pub particle: Vec<bool>,
}

impl GcbsepParams {
    /// Binary CBSEP with particle density p.
    pub fn binary(graph: Graph, p: f64) -> Result<GcbsepParams, CbsepError> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(CbsepError::BadWeights(format!("p = {p} outside (0, 1]")));
        }
        GcbsepParams::new(graph, vec![1.0 - p, p], vec![false, true])
    }

    pub fn new(
        graph: Graph,
        weights: Vec<f64>,
        particle: Vec<bool>,
    ) -> Result<GcbsepParams, CbsepError> {
        if weights.is_empty() || weights.len() != particle.len() {
            return Err(CbsepError::BadWeights(
                "weights and particle mask must align".into(),
            ));
        }
        if weights.iter().any(|&w| w < 0.0 || !w.is_finite()) {
            return Err(CbsepError::BadWeights("negative weight".into()));
        }
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) {
            return Err(CbsepError::BadWeights("zero total".into()));
        }
        let weights: Vec<f64> = weights.iter().map(|w| w / total).collect();
        let p: f64 = weights
            .iter()
            .zip(&particle)
            .filter(|&(_, &is)| is)
            .map(|(w, _)| w)
            .sum();
        if !(p > 0.0) {
            return Err(CbsepError::NoParticleMass);
        }
        if !graph.is_connected()? {
            return Err(CbsepError::DisconnectedGraph);
        }
        Ok(GcbsepParams {
            graph,
            weights,
            particle,
        })
    }

    pub fn particle_prob(&self) -> f64 {
        self.weights
            .iter()
            .zip(&self.particle)
            .filter(|&(_, &is)| is)
            .map(|(w, _)| w)
            .sum()
    }

    pub fn states_per_site(&self) -> usize {
        self.weights.len()
    }
}

/// Enumerate Omega^+ states as mixed-radix digit vectors packed into u64
/// site-major (site 0 least significant). Returns (packed states, labels of
/// particle-count) helper elsewhere.
pub(crate) fn enumerate_states(
    params: &GcbsepParams,
    cap: usize,
) -> Result<Vec<u64>, CbsepError> {
    let s = params.states_per_site() as u128;
    let v = params.graph.vertices();
    let mut total: u128 = 1;
    for _ in 0..v {
        total = total.saturating_mul(s);
        if total > cap as u128 {
            return Err(CbsepError::CapExceeded { have: total, cap });
        }
    }
    let mut out = Vec::new();
    'outer: for packed in 0..total as u64 {
        let mut x = packed;
        for _ in 0..v {
            let digit = (x % s as u64) as usize;
            if params.particle[digit] {
                out.push(packed);
                continue 'outer;
            }
            x /= s as u64;
        }
    }
    Ok(out)
}

pub(crate) fn digit(packed: u64, site: usize, radix: u64) -> usize {
    ((packed / radix.pow(site as u32)) % radix) as usize
}

pub(crate) fn with_digit(packed: u64, site: usize, radix: u64, value: usize) -> u64 {
    let place = radix.pow(site as u32);
    let old = (packed / place) % radix;
    packed - old * place + value as u64 * place
}

/// Particle-count labels for the lumpability projection phi.
pub fn particle_labels(params: &GcbsepParams, states: &[u64]) -> Vec<usize> {
    let radix = params.states_per_site() as u64;
    let v = params.graph.vertices();
    states
        .iter()
        .map(|&s| {
            let mut label = 0usize;
            for site in 0..v {
                if params.particle[digit(s, site, radix)] {
                    label |= 1 << site;
                }
            }
            label
        })
        .collect()
}

/// Exhaustive cap on |S|^|V| for the exact generator.
pub const STATE_CAP: usize = 1 << 17;

/// The exact g-CBSEP generator on Omega^+, reversible w.r.t. the product
/// measure conditioned on at least one particle.
pub fn gcbsep_build(params: &GcbsepParams) -> Result<(ChainSpec, Vec<u64>), CbsepError> {
    let states = enumerate_states(params, STATE_CAP)?;
    let radix = params.states_per_site() as u64;
    let edges = params.graph.edges()?;
    let v = params.graph.vertices();
    let site_weight = |packed: u64, site: usize| params.weights[digit(packed, site, radix)];
    // zero-weight local states never occur under pi: drop their states
    let states: Vec<u64> = states
        .into_iter()
        .filter(|&s| (0..v).all(|x| site_weight(s, x) > 0.0))
        .collect();
    if states.is_empty() {
        return Err(CbsepError::NoParticleMass);
    }
    let mut index = std::collections::HashMap::with_capacity(states.len());
    for (k, &s) in states.iter().enumerate() {
        index.insert(s, k as u32);
    }
    let measure: Vec<f64> = states
        .iter()
        .map(|&s| (0..v).map(|x| site_weight(s, x)).product())
        .collect();
    // conditional edge-resample normalizer: 1 - pi(S_0)^2
    let p0: f64 = params
        .weights
        .iter()
        .zip(&params.particle)
        .filter(|&(_, &is)| !is)
        .map(|(w, _)| w)
        .sum();
    let z_edge = 1.0 - p0 * p0;
    let mut rates = Vec::new();
    for (k, &s) in states.iter().enumerate() {
        for &(x, y) in &edges {
            let (x, y) = (x as usize, y as usize);
            let dx = digit(s, x, radix);
            let dy = digit(s, y, radix);
            if !(params.particle[dx] || params.particle[dy]) {
                continue;
            }
            for a in 0..radix as usize {
                for b in 0..radix as usize {
                    if !(params.particle[a] || params.particle[b]) {
                        continue;
                    }
                    if (a, b) == (dx, dy) {
                        continue;
                    }
                    let w = params.weights[a] * params.weights[b];
                    if w == 0.0 {
                        continue;
                    }
                    let target = with_digit(with_digit(s, x, radix, a), y, radix, b);
                    let to = index[&target]; // resample keeps a particle on the edge
                    rates.push((k as u32, to, w / z_edge));
                }
            }
        }
    }
    let chain = ChainSpec::new(measure, rates)?;
    Ok((chain, states))
}
