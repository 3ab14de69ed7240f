use std::sync::Arc;

use super::{ElementId, ObjectiveKind, SetFunction, WorkingSet};
use crate::graphio::Graph;

/// Maximum cover: the number of nodes that are in `S` or adjacent to it
/// (out-neighbours for directed graphs).
#[derive(Debug, Clone)]
pub struct Coverage {
    graph: Arc<Graph>,
}

impl Coverage {
    pub fn new(graph: Arc<Graph>) -> Self {
        Coverage { graph }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
}

/// Number of nodes in `set` or adjacent to it.
pub fn coverage_value(graph: &Graph, set: &[ElementId]) -> usize {
    let mut covered: Vec<usize> = Vec::new();
    for &v in set {
        covered.push(v);
        covered.extend_from_slice(graph.neighbors(v));
    }
    covered.sort_unstable();
    covered.dedup();
    covered.len()
}

impl SetFunction for Coverage {
    fn ground_size(&self) -> usize {
        self.graph.n()
    }

    fn value(&self, set: &[ElementId]) -> f64 {
        coverage_value(&self.graph, set) as f64
    }

    fn kind(&self) -> ObjectiveKind {
        ObjectiveKind::Coverage
    }

    fn working_set(&self) -> Option<Box<dyn WorkingSet>> {
        let n = self.graph.n();
        Some(Box::new(CoverageSet {
            graph: Arc::clone(&self.graph),
            covered: vec![false; n],
            in_set: vec![false; n],
            count: 0,
        }))
    }
}

#[derive(Clone)]
struct CoverageSet {
    graph: Arc<Graph>,
    covered: Vec<bool>,
    in_set: Vec<bool>,
    count: usize,
}

impl WorkingSet for CoverageSet {
    fn value(&self) -> f64 {
        self.count as f64
    }

    fn gain(&mut self, e: ElementId) -> f64 {
        if self.in_set[e] {
            return 0.0;
        }
        let own = usize::from(!self.covered[e]);
        let fresh = self
            .graph
            .neighbors(e)
            .iter()
            .filter(|&&v| !self.covered[v])
            .count();
        (own + fresh) as f64
    }

    fn insert(&mut self, e: ElementId) {
        if std::mem::replace(&mut self.in_set[e], true) {
            return;
        }
        let graph = Arc::clone(&self.graph);
        for &v in std::iter::once(&e).chain(graph.neighbors(e)) {
            if !std::mem::replace(&mut self.covered[v], true) {
                self.count += 1;
            }
        }
    }

    fn boxed_clone(&self) -> Box<dyn WorkingSet> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphio::{generate, GraphKind};
    use crate::objectives::Oracle;

    fn oracle(kind: GraphKind, n: usize) -> Oracle {
        Oracle::new(Coverage::new(Arc::new(generate(kind, n, 0).unwrap())))
    }

    #[test]
    fn star_center_covers_everything() {
        let o = oracle(GraphKind::Star, 6);
        assert_eq!(o.eval(&[0]).unwrap(), 6.0);
        assert_eq!(o.marginal(0, &[], 0.0).unwrap(), 6.0);
    }

    #[test]
    fn empty_and_full() {
        let o = oracle(GraphKind::ErdosRenyi { p: 0.3 }, 12);
        assert_eq!(o.eval(&[]).unwrap(), 0.0);
        let all: Vec<_> = (0..12).collect();
        assert_eq!(o.eval(&all).unwrap(), 12.0);
    }

    #[test]
    fn path_middle() {
        let o = oracle(GraphKind::Path, 3);
        assert_eq!(o.eval(&[1]).unwrap(), 3.0);
    }

    #[test]
    fn marginal_of_member_is_zero() {
        let o = oracle(GraphKind::Star, 6);
        let f = o.eval(&[0, 3]).unwrap();
        assert_eq!(o.marginal(3, &[0, 3], f).unwrap(), 0.0);
    }

    #[test]
    fn working_set_matches_eval() {
        let o = oracle(GraphKind::BarabasiAlbert { m: 2 }, 40);
        let mut ws = o.working_set();
        for e in [5, 0, 17, 5, 33, 2] {
            let before = ws.value();
            let g = ws.gain(e);
            ws.insert(e);
            assert_eq!(ws.value(), before + g);
            assert_eq!(ws.value(), o.eval(ws.members()).unwrap());
        }
    }
}
