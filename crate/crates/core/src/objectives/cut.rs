use std::sync::Arc;

use super::{ElementId, ObjectiveKind, SetFunction, WorkingSet};
use crate::graphio::Graph;

/// Maximum cut: edges with exactly one endpoint in `S`.
///
/// Directed inputs are symmetrised first, so antiparallel arcs count as a
/// single edge. The function is submodular but not monotone.
#[derive(Debug, Clone)]
pub struct Cut {
    graph: Arc<Graph>,
}

impl Cut {
    pub fn new(graph: Arc<Graph>) -> Self {
        let graph = if graph.is_directed() {
            let edges: Vec<_> = graph.edges().collect();
            Arc::new(
                Graph::from_edges(graph.n(), &edges, false)
                    .expect("edges of a valid graph are in range"),
            )
        } else {
            graph
        };
        Cut { graph }
    }
}

/// Number of edges with exactly one endpoint in `set`. `set` must not
/// contain duplicates.
pub fn cut_value(graph: &Graph, set: &[ElementId]) -> usize {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted
        .iter()
        .map(|&u| {
            graph
                .neighbors(u)
                .iter()
                .filter(|v| sorted.binary_search(v).is_err())
                .count()
        })
        .sum()
}

impl SetFunction for Cut {
    fn ground_size(&self) -> usize {
        self.graph.n()
    }

    fn value(&self, set: &[ElementId]) -> f64 {
        cut_value(&self.graph, set) as f64
    }

    fn kind(&self) -> ObjectiveKind {
        ObjectiveKind::Cut
    }

    fn working_set(&self) -> Option<Box<dyn WorkingSet>> {
        Some(Box::new(CutSet {
            graph: Arc::clone(&self.graph),
            in_set: vec![false; self.graph.n()],
            value: 0,
        }))
    }
}

#[derive(Clone)]
struct CutSet {
    graph: Arc<Graph>,
    in_set: Vec<bool>,
    value: i64,
}

impl CutSet {
    fn delta(&self, e: ElementId) -> i64 {
        let nbrs = self.graph.neighbors(e);
        let inside = nbrs.iter().filter(|&&v| self.in_set[v]).count() as i64;
        nbrs.len() as i64 - 2 * inside
    }
}

impl WorkingSet for CutSet {
    fn value(&self) -> f64 {
        self.value as f64
    }

    fn gain(&mut self, e: ElementId) -> f64 {
        if self.in_set[e] {
            0.0
        } else {
            self.delta(e) as f64
        }
    }

    fn insert(&mut self, e: ElementId) {
        if !self.in_set[e] {
            self.value += self.delta(e);
            self.in_set[e] = true;
        }
    }

    fn boxed_clone(&self) -> Box<dyn WorkingSet> {
        Box::new(self.clone())
    }
}
