//! Cover time of the continuous-time random walk (rate one per edge
//! direction) by Monte Carlo.

use fa2f_core::SeededRng;
use rand::Rng;

use crate::error::CbsepError;
use crate::params::Graph;

/// Mean time for the walk started at vertex 0 to visit every vertex,
/// averaged over replicas, with its standard error.
pub fn cover_time_estimate(
    graph: &Graph,
    replicas: u64,
    rng: &SeededRng,
) -> Result<(f64, f64), CbsepError> {
    if !graph.is_connected()? {
        return Err(CbsepError::DisconnectedGraph);
    }
    let v = graph.vertices();
    if v == 1 {
        return Ok((0.0, 0.0));
    }
    let edges = graph.edges()?;
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); v];
    for &(a, b) in &edges {
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    let mut total = 0.0f64;
    let mut total_sq = 0.0f64;
    for rep in 0..replicas {
        let mut r = rng.substream(rep).rng();
        let mut visited = vec![false; v];
        let mut remaining = v - 1;
        visited[0] = true;
        let mut at = 0usize;
        let mut t = 0.0f64;
        while remaining > 0 {
            let deg = adj[at].len() as f64;
            let u: f64 = r.random();
            let u = if u == 0.0 { f64::MIN_POSITIVE } else { u };
            t += -u.ln() / deg;
            at = adj[at][r.random_range(0..adj[at].len())] as usize;
            if !visited[at] {
                visited[at] = true;
                remaining -= 1;
            }
        }
        total += t;
        total_sq += t * t;
    }
    let mean = total / replicas as f64;
    let var = (total_sq / replicas as f64 - mean * mean).max(0.0);
    Ok((mean, (var / replicas as f64).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_is_zero() {
        let g = Graph::Explicit {
            vertices: 1,
            edges: vec![],
        };
        let (mean, err) = cover_time_estimate(&g, 10, &SeededRng::new(1)).unwrap();
        assert_eq!(mean, 0.0);
        assert_eq!(err, 0.0);
    }

    #[test]
    fn two_vertex_path_mean_one() {
        // cover happens at the first jump: Exp(1), mean 1
        let g = Graph::Explicit {
            vertices: 2,
            edges: vec![(0, 1)],
        };
        let (mean, err) = cover_time_estimate(&g, 20_000, &SeededRng::new(2)).unwrap();
        assert!((mean - 1.0).abs() < 4.0 * err.max(0.01), "mean = {mean}");
    }

    #[test]
    fn torus_cover_grows_like_l2_log_l() {
        let mut ratios = Vec::new();
        for &l in &[4usize, 8, 16] {
            let g = Graph::Torus { dims: vec![l, l] };
            let (mean, _) = cover_time_estimate(&g, 400, &SeededRng::new(3)).unwrap();
            let scale = (l * l) as f64 * (l as f64).ln();
            ratios.push(mean / scale);
        }
        let max = ratios.iter().fold(0.0f64, |a, &b| a.max(b));
        let min = ratios.iter().fold(f64::MAX, |a, &b| a.min(b));
        assert!(max / min < 3.0, "ratios = {ratios:?}");
    }
}
