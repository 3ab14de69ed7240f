use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::params::PruneParams;
use super::report::{BudgetReport, PruneReport};
use crate::error::{Error, Result};
use crate::objectives::{ElementId, Oracle, TrackedSet};

/// A firing of the deletion rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeletionEvent {
    /// Position in the stream of the element that triggered it.
    pub position: usize,
    /// Number of checkpoint elements dropped; 0 for the first checkpoint.
    pub removed: usize,
    pub value_before: f64,
    pub value_after: f64,
}

/// What happened to one streamed element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StepOutcome {
    pub skipped: bool,
    pub added: bool,
    pub new_best: bool,
    pub checkpoint: bool,
}

/// State of the single-budget streaming pruner.
///
/// The working set `A` only ever grows by appending, and the checkpoint
/// `A_s` is a snapshot of `A`, so `A_s` is always a prefix of `A`. The
/// prefix is tracked by length.
pub struct SinglePruner<'o> {
    params: PruneParams,
    n: usize,
    costs: &'o [f64],
    working: TrackedSet<'o>,
    gains: Vec<f64>,
    checkpoint_len: usize,
    checkpoint_value: f64,
    best: Option<(ElementId, f64)>,
    deletions: Vec<DeletionEvent>,
    ever_added: Option<Vec<ElementId>>,
    position: usize,
    queries: u64,
}

impl<'o> SinglePruner<'o> {
    /// `costs[e]` is the knapsack cost of element `e`.
    pub fn new(oracle: &'o Oracle, costs: &'o [f64], params: PruneParams) -> Result<Self> {
        params.validate()?;
        let n = oracle.n();
        if costs.len() != n {
            return Err(Error::input(format!(
                "cost vector has {} entries for a ground set of {n}",
                costs.len()
            )));
        }
        if n == 0 {
            return Err(Error::input("ground set is empty"));
        }
        if params.epsilon >= n as f64 {
            return Err(Error::input(format!(
                "epsilon = {} must be below n = {n}",
                params.epsilon
            )));
        }
        Ok(SinglePruner {
            params,
            n,
            costs,
            working: oracle.working_set(),
            gains: Vec::new(),
            checkpoint_len: 0,
            checkpoint_value: 0.0,
            best: None,
            deletions: Vec::new(),
            ever_added: None,
            position: 0,
            queries: 0,
        })
    }

    /// Records every element ever added so the deletion loss can be audited.
    pub fn instrumented(mut self) -> Self {
        self.ever_added = Some(Vec::new());
        self
    }

    pub fn params(&self) -> &PruneParams {
        &self.params
    }

    /// Processes one element. Ids are assumed valid; see [`quickprune_single`]
    /// for the checked entry point.
    pub fn process(&mut self, e: ElementId) -> StepOutcome {
        let position = self.position;
        self.position += 1;
        let mut out = StepOutcome::default();
        let cost = self.costs[e];
        let kappa = self.params.kappa;
        if cost > kappa {
            out.skipped = true;
            return out;
        }

        let f_a = self.working.value();
        let gain = self.working.gain(e);
        self.queries += 1;
        if gain >= self.params.delta * cost * f_a / kappa {
            self.working.insert(e);
            self.gains.push(gain);
            if let Some(log) = &mut self.ever_added {
                log.push(e);
            }
            out.added = true;
        }

        let single = self.working.oracle().eval(&[e]).expect("id checked by caller");
        self.queries += 1;
        let best_value = self.best.map_or(0.0, |(_, v)| v);
        if single > best_value {
            self.best = Some((e, single));
            out.new_best = true;
        }

        let f_a = self.working.value();
        if f_a > (self.n as f64 / self.params.epsilon) * self.checkpoint_value {
            let removed = self.checkpoint_len;
            let value_after = if removed > 0 {
                let kept = self.working.members()[removed..].to_vec();
                self.gains.drain(..removed);
                self.queries += 1;
                self.working.rebuild(&kept)
            } else {
                f_a
            };
            self.checkpoint_len = self.working.len();
            self.checkpoint_value = value_after;
            self.deletions.push(DeletionEvent {
                position,
                removed,
                value_before: f_a,
                value_after,
            });
            out.checkpoint = true;
        }
        out
    }

    /// The working set `A`, in insertion order.
    pub fn working_set(&self) -> &[ElementId] {
        self.working.members()
    }

    /// Cached `f(A)`.
    pub fn working_value(&self) -> f64 {
        self.working.value()
    }

    /// Gain each member of `A` had when it was added.
    pub fn insertion_gains(&self) -> &[f64] {
        &self.gains
    }

    /// The checkpoint `A_s`.
    pub fn checkpoint(&self) -> &[ElementId] {
        &self.working.members()[..self.checkpoint_len]
    }

    pub fn checkpoint_value(&self) -> f64 {
        self.checkpoint_value
    }

    /// Best singleton seen so far and its value.
    pub fn best_singleton(&self) -> Option<(ElementId, f64)> {
        self.best
    }

    pub fn deletions(&self) -> &[DeletionEvent] {
        &self.deletions
    }

    /// Every element ever added to `A`, when instrumented.
    pub fn ever_added(&self) -> Option<&[ElementId]> {
        self.ever_added.as_deref()
    }

    /// Oracle queries issued by this pruner.
    pub fn queries(&self) -> u64 {
        self.queries
    }

    /// `A + a*`, sorted.
    pub fn pruned(&self) -> Vec<ElementId> {
        let mut out = self.working.members().to_vec();
        if let Some((e, _)) = self.best {
            out.push(e);
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub(crate) fn budget_report(&self) -> BudgetReport {
        let pruned = self.pruned();
        BudgetReport {
            tau: self.params.kappa,
            size: pruned.len(),
            oracle_calls: self.queries,
            deletions: self.deletions.clone(),
            pruned,
        }
    }
}

/// Rejects out-of-range or repeated ids in a stream.
pub(crate) fn check_stream(oracle: &Oracle, stream: &[ElementId]) -> Result<()> {
    let mut seen = vec![false; oracle.n()];
    for &e in stream {
        oracle.check_id(e)?;
        if std::mem::replace(&mut seen[e], true) {
            return Err(Error::input(format!("element {e} appears twice in the stream")));
        }
    }
    Ok(())
}

/// One pass of the single-budget pruner over `stream`.
///
/// Returns the pruned set (sorted) and a report.
pub fn quickprune_single(
    stream: &[ElementId],
    oracle: &Oracle,
    costs: &[f64],
    params: PruneParams,
) -> Result<(Vec<ElementId>, PruneReport)> {
    check_stream(oracle, stream)?;
    let start = Instant::now();
    let calls_before = oracle.calls();
    let mut pruner = SinglePruner::new(oracle, costs, params)?;
    for &e in stream {
        pruner.process(e);
    }
    let budget = pruner.budget_report();
    let pruned = budget.pruned.clone();
    let report = PruneReport {
        algorithm: "quickprune-single".into(),
        n: oracle.n(),
        kappa_min: Some(params.kappa),
        kappa_max: Some(params.kappa),
        eta: None,
        delta: Some(params.delta),
        epsilon: Some(params.epsilon),
        seed: None,
        pruned_size: pruned.len(),
        oracle_calls: oracle.calls() - calls_before,
        deletions: budget.deletions.len(),
        budgets: vec![budget],
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok((pruned, report))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::graphio::{generate, GraphKind};
    use crate::objectives::Coverage;

    fn star_oracle() -> Oracle {
        Oracle::new(Coverage::new(Arc::new(generate(GraphKind::Star, 6, 0).unwrap())))
    }

    #[test]
    fn oversized_element_is_skipped_without_queries() {
        let o = star_oracle();
        let costs = vec![3.0, 1.0, 1.0, 1.0, 1.0, 1.0];
        let mut p = SinglePruner::new(&o, &costs, PruneParams::new(2.0, 1.0, 0.1).unwrap()).unwrap();
        let out = p.process(0);
        assert!(out.skipped);
        assert_eq!(o.calls(), 0);
        assert!(p.working_set().is_empty());
        assert_eq!(p.best_singleton(), None);
    }

    #[test]
    fn first_feasible_element_is_added() {
        let o = star_oracle();
        let costs = vec![1.0; 6];
        let mut p = SinglePruner::new(&o, &costs, PruneParams::new(2.0, 1.0, 0.1).unwrap()).unwrap();
        let out = p.process(3);
        assert!(out.added && out.new_best && out.checkpoint);
        assert_eq!(p.working_set(), &[3]);
        // the first checkpoint removes nothing and re-queries nothing
        assert_eq!(p.deletions()[0].removed, 0);
        assert_eq!(p.checkpoint(), &[3]);
        assert_eq!(o.calls(), 2);
    }

    // Star K1,5 with centre 0, unit costs, kappa = 2, delta = 1, epsilon = 0.1,
    // streamed as leaves 1..=5 then the centre. Hand simulation:
    //   leaf 1: A = {}, Δ = 2 >= 0, added; f(A) = 2 > 60 * 0 so A_s = {1}
    //   leaf 2: Δ = 1 (itself), threshold 1 * 2 / 2 = 1, added; f(A) = 3
    //   leaves 3..=5: Δ = 1 < 3 / 2, rejected
    //   centre: Δ = 6 - 3 = 3 >= 3 / 2, added; a* moves from leaf 1 to it
    #[test]
    fn hand_simulated_star() {
        let o = star_oracle();
        let costs = vec![1.0; 6];
        let mut p = SinglePruner::new(&o, &costs, PruneParams::new(2.0, 1.0, 0.1).unwrap()).unwrap();
        let steps: Vec<_> = [1, 2, 3, 4, 5, 0].iter().map(|&e| p.process(e)).collect();
        assert_eq!(
            steps.iter().map(|s| s.added).collect::<Vec<_>>(),
            vec![true, true, false, false, false, true]
        );
        assert_eq!(p.insertion_gains(), &[2.0, 1.0, 3.0]);
        assert_eq!(p.working_set(), &[1, 2, 0]);
        assert_eq!(p.best_singleton(), Some((0, 6.0)));
        assert_eq!(p.working_value(), 6.0);
        assert_eq!(p.deletions().len(), 1);
        assert_eq!(p.pruned(), vec![0, 1, 2]);
    }

    // Same stream with delta = 5: after leaf 1 the threshold is 5 * 2 / 2 = 5,
    // so later leaves (Δ = 1) and the centre (Δ = 4) are rejected, but the
    // centre still becomes a*.
    #[test]
    fn centre_rejected_but_kept_as_best_singleton() {
        let o = star_oracle();
        let costs = vec![1.0; 6];
        let mut p = SinglePruner::new(&o, &costs, PruneParams::new(2.0, 5.0, 0.1).unwrap()).unwrap();
        for e in [1, 2, 3, 4, 5, 0] {
            p.process(e);
        }
        assert_eq!(p.working_set(), &[1]);
        assert_eq!(p.best_singleton(), Some((0, 6.0)));
        assert_eq!(p.pruned(), vec![0, 1]);
    }

    #[test]
    fn empty_stream_and_infeasible_stream() {
        let o = star_oracle();
        let params = PruneParams::new(2.0, 0.1, 0.1).unwrap();
        let (u, _) = quickprune_single(&[], &o, &[1.0; 6], params).unwrap();
        assert!(u.is_empty());
        let (u, r) = quickprune_single(&[0, 1, 2, 3, 4, 5], &o, &[5.0; 6], params).unwrap();
        assert!(u.is_empty());
        assert_eq!(r.oracle_calls, 0);
    }

    #[test]
    fn single_feasible_element() {
        let o = star_oracle();
        let mut costs = vec![9.0; 6];
        costs[4] = 1.0;
        let params = PruneParams::new(2.0, 0.1, 0.1).unwrap();
        let (u, _) = quickprune_single(&[0, 1, 2, 3, 4, 5], &o, &costs, params).unwrap();
        assert_eq!(u, vec![4]);
    }

    #[test]
    fn bad_inputs() {
        let o = star_oracle();
        let params = PruneParams::new(2.0, 0.1, 0.1).unwrap();
        assert!(quickprune_single(&[0, 0], &o, &[1.0; 6], params).is_err());
        assert!(quickprune_single(&[6], &o, &[1.0; 6], params).is_err());
        assert!(quickprune_single(&[0], &o, &[1.0; 5], params).is_err());
        let huge_eps = PruneParams::new(2.0, 0.1, 6.0).unwrap();
        assert!(quickprune_single(&[0], &o, &[1.0; 6], huge_eps).is_err());
        assert!(PruneParams::new(0.0, 0.1, 0.1).is_err());
        assert!(PruneParams::new(1.0, -0.1, 0.1).is_err());
        assert!(PruneParams::new(1.0, 0.1, f64::NAN).is_err());
    }
}
