use serde::{Deserialize, Serialize};

use super::single::DeletionEvent;
use crate::objectives::ElementId;

/// Outcome of one single-budget pruner.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub tau: f64,
    pub size: usize,
    pub oracle_calls: u64,
    pub deletions: Vec<DeletionEvent>,
    /// Kept out of the JSON report; the id file carries the union.
    #[serde(skip)]
    pub pruned: Vec<ElementId>,
}

/// Summary of a pruning run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PruneReport {
    pub algorithm: String,
    pub n: usize,
    pub kappa_min: Option<f64>,
    pub kappa_max: Option<f64>,
    pub eta: Option<f64>,
    pub delta: Option<f64>,
    pub epsilon: Option<f64>,
    pub seed: Option<u64>,
    pub pruned_size: usize,
    pub oracle_calls: u64,
    /// Total deletion-rule firings across budgets.
    pub deletions: usize,
    pub budgets: Vec<BudgetReport>,
    pub elapsed_ms: f64,
}

impl PruneReport {
    /// A report for pruners without budgets or deletion rules.
    pub fn baseline(algorithm: &str, n: usize, pruned_size: usize, oracle_calls: u64) -> Self {
        PruneReport {
            algorithm: algorithm.to_string(),
            n,
            kappa_min: None,
            kappa_max: None,
            eta: None,
            delta: None,
            epsilon: None,
            seed: None,
            pruned_size,
            oracle_calls,
            deletions: 0,
            budgets: Vec::new(),
            elapsed_ms: 0.0,
        }
    }

    /// `(tau, |U'_tau|)` for every budget.
    pub fn per_budget_sizes(&self) -> Vec<(f64, usize)> {
        self.budgets.iter().map(|b| (b.tau, b.size)).collect()
    }
}
