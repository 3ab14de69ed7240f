use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphKind {
    /// G(n, p).
    ErdosRenyi { p: f64 },
    /// Preferential attachment; each new node attaches to `m` distinct nodes.
    BarabasiAlbert { m: usize },
    /// Node 0 joined to every other node.
    Star,
    Path,
}

/// Generates an undirected graph with unit costs, reproducible under `seed`.
pub fn generate(kind: GraphKind, n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::input("graph must have at least one node"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = match kind {
        GraphKind::ErdosRenyi { p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::input(format!("edge probability {p} outside [0, 1]")));
            }
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            edges
        }
        GraphKind::BarabasiAlbert { m } => barabasi_albert(n, m, &mut rng)?,
        GraphKind::Star => (1..n).map(|v| (0, v)).collect(),
        GraphKind::Path => (1..n).map(|v| (v - 1, v)).collect(),
    };
    Graph::from_edges(n, &edges, false)
}

fn barabasi_albert(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(usize, usize)>> {
    if m == 0 || m >= n {
        return Err(Error::input(format!(
            "attachment count m = {m} must satisfy 1 <= m < n = {n}"
        )));
    }
    // Seed with a clique on m + 1 nodes so every node has positive degree.
    let mut edges = Vec::with_capacity(n * m);
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * n * m);
    for u in 0..=m {
        for v in u + 1..=m {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    let mut chosen = Vec::with_capacity(m);
    for v in m + 1..n {
        chosen.clear();
        while chosen.len() < m {
            let t = *endpoints.choose(rng).expect("endpoint pool is non-empty");
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((v, t));
            endpoints.extend([v, t]);
        }
    }
    Ok(edges)
}
