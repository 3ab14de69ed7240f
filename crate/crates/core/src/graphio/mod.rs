//! Graph ingestion, knapsack cost assignment and synthetic instance generation.
//!
//! Graphs are stored as compressed adjacency lists and are immutable once
//! built. Undirected graphs store every edge in both endpoint lists; directed
//! graphs store out-neighbours only.

mod costs;
mod generate;
mod parse;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use costs::{assign_knapsack_costs, CostModel, DEFAULT_COST_ALPHA};
pub use generate::{generate, GraphKind};
pub use parse::{
    open_edge_list, parse_edge_list, read_edge_list_file, write_edge_list, write_id_map,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    directed: bool,
    costs: Vec<f64>,
    labels: Vec<u64>,
}

impl Graph {
    /// Builds a graph over nodes `0..n` from an edge list.
    ///
    /// Duplicate edges are collapsed and self-loops dropped. In undirected
    /// mode `(u, v)` and `(v, u)` are the same edge. Costs start at 1.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], directed: bool) -> Result<Self> {
        let mut pairs = Vec::with_capacity(if directed { edges.len() } else { 2 * edges.len() });
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) references a node outside 0..{n}"
                )));
            }
            if u == v {
                continue;
            }
            pairs.push((u, v));
            if !directed {
                pairs.push((v, u));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &pairs {
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = pairs.into_iter().map(|(_, v)| v).collect();
        Ok(Graph {
            offsets,
            targets,
            directed,
            costs: vec![1.0; n],
            labels: (0..n as u64).collect(),
        })
    }

    pub(crate) fn with_labels(mut self, labels: Vec<u64>) -> Self {
        debug_assert_eq!(labels.len(), self.n());
        self.labels = labels;
        self
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of edges; undirected edges are counted once.
    pub fn num_edges(&self) -> usize {
        if self.directed {
            self.targets.len()
        } else {
            self.targets.len() / 2
        }
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    /// Original node labels, indexed by dense id.
    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Replaces the per-node costs. Every cost must be finite and positive.
    pub fn with_costs(mut self, costs: Vec<f64>) -> Result<Self> {
        if costs.len() != self.n() {
            return Err(Error::input(format!(
                "expected {} costs, got {}",
                self.n(),
                costs.len()
            )));
        }
        if let Some(bad) = costs.iter().find(|c| !(c.is_finite() && **c > 0.0)) {
            return Err(Error::input(format!("cost {bad} is not a positive real")));
        }
        self.costs = costs;
        Ok(self)
    }

    /// Iterates edges; undirected edges are yielded once with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| self.directed || u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn metadata(&self, id_map: Option<String>) -> GraphMetadata {
        let n = self.n();
        let (mut lo, mut hi, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
        for &c in &self.costs {
            lo = lo.min(c);
            hi = hi.max(c);
            sum += c;
        }
        GraphMetadata {
            n,
            m: self.num_edges(),
            directed: self.directed,
            cost_min: if n == 0 { 0.0 } else { lo },
            cost_max: if n == 0 { 0.0 } else { hi },
            cost_mean: if n == 0 { 0.0 } else { sum / n as f64 },
            id_map,
        }
    }
}

/// JSON sidecar written next to an edge-list file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphMetadata {
    pub n: usize,
    pub m: usize,
    pub directed: bool,
    pub cost_min: f64,
    pub cost_max: f64,
    pub cost_mean: f64,
    pub id_map: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_and_reverse_edges_collapse() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0), (0, 1)], false).unwrap();
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.neighbors(1), &[0]);
    }

    #[test]
    fn self_loops_are_dropped() {
        let g = Graph::from_edges(3, &[(0, 0), (0, 1)], false).unwrap();
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.degree(0), 1);
    }

    #[test]
    fn directed_keeps_both_orientations() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0)], true).unwrap();
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn out_of_range_edge_is_rejected() {
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)], false),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn with_costs_validates() {
        let g = Graph::from_edges(2, &[(0, 1)], false).unwrap();
        assert!(g.clone().with_costs(vec![1.0]).is_err());
        assert!(g.clone().with_costs(vec![1.0, 0.0]).is_err());
        assert!(g.with_costs(vec![1.0, 2.5]).is_ok());
    }
}
