use super::Graph;
use crate::error::{Error, Result};

/// Default offset subtracted from each degree in the degree cost model.
pub const DEFAULT_COST_ALPHA: f64 = 1.0 / 20.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CostModel {
    /// Every node costs 1, i.e. a cardinality constraint.
    Unit,
    /// `c(v) = cost_beta / |V| * (|N(v)| - cost_alpha)` with `cost_beta`
    /// chosen so the cheapest node costs exactly 1.
    Degree { cost_alpha: f64 },
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel::Degree {
            cost_alpha: DEFAULT_COST_ALPHA,
        }
    }
}

/// Returns a copy of `graph` with costs assigned by `model`.
///
/// With the degree model the normaliser reduces to dividing by the smallest
/// shifted degree, so `c(v) = (|N(v)| - cost_alpha) / min_u (|N(u)| - cost_alpha)`.
pub fn assign_knapsack_costs(graph: &Graph, model: CostModel) -> Result<Graph> {
    let n = graph.n();
    let costs = match model {
        CostModel::Unit => vec![1.0; n],
        CostModel::Degree { cost_alpha } => {
            if !cost_alpha.is_finite() || cost_alpha < 0.0 {
                return Err(Error::input(format!("cost_alpha {cost_alpha} must be >= 0")));
            }
            let shifted: Vec<f64> = (0..n)
                .map(|v| graph.degree(v) as f64 - cost_alpha)
                .collect();
            if let Some(v) = shifted.iter().position(|&s| s <= 0.0) {
                return Err(Error::input(format!(
                    "node {v} has degree {} <= cost_alpha {cost_alpha}; its cost would be non-positive",
                    graph.degree(v)
                )));
            }
            let floor = shifted.iter().copied().fold(f64::INFINITY, f64::min);
            // cost_beta = |V| / floor
            shifted.iter().map(|&s| s / floor).collect()
        }
    };
    graph.clone().with_costs(costs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphio::{generate, GraphKind};

    #[test]
    fn regular_graph_costs_are_one() {
        let edges: Vec<_> = (0..10).map(|i| (i, (i + 1) % 10)).collect();
        let ring = Graph::from_edges(10, &edges, false).unwrap();
        let g = assign_knapsack_costs(&ring, CostModel::default()).unwrap();
        assert!(g.costs().iter().all(|&c| c == 1.0));
    }

    #[test]
    fn star_costs() {
        let star = generate(GraphKind::Star, 6, 0).unwrap();
        let g = assign_knapsack_costs(&star, CostModel::default()).unwrap();
        let center = (0..6).find(|&v| g.degree(v) == 5).unwrap();
        for v in 0..6 {
            if v == center {
                let expect = (5.0 - 0.05) / (1.0 - 0.05);
                assert!((g.costs()[v] - expect).abs() < 1e-12);
                assert!((g.costs()[v] - 5.2105263).abs() < 1e-6);
            } else {
                assert_eq!(g.costs()[v], 1.0);
            }
        }
    }

    #[test]
    fn unit_mode() {
        let star = generate(GraphKind::Star, 6, 0).unwrap();
        let g = assign_knapsack_costs(&star, CostModel::Unit).unwrap();
        assert!(g.costs().iter().all(|&c| c == 1.0));
    }

    #[test]
    fn isolated_node_is_degenerate() {
        let g = Graph::from_edges(3, &[(0, 1)], false).unwrap();
        assert!(matches!(
            assign_knapsack_costs(&g, CostModel::default()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn minimum_cost_is_exactly_one() {
        for seed in 0..5 {
            let g = generate(GraphKind::BarabasiAlbert { m: 3 }, 300, seed).unwrap();
            let g = assign_knapsack_costs(&g, CostModel::default()).unwrap();
            let lo = g.costs().iter().copied().fold(f64::INFINITY, f64::min);
            assert_eq!(lo, 1.0);
            assert!(g.costs().iter().all(|&c| c >= 1.0));
        }
    }
}
