//! Pruning quality: retained value `P_r`, pruned fraction `P_g` and their
//! product `C`, per budget.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objectives::{ElementId, Oracle};
use crate::solvers::{greedy_cardinality, greedy_knapsack, Solution};

/// Heuristic run on both the full and the pruned ground set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    /// Lazy greedy with `k = floor(budget)`.
    Size,
    /// Cost-benefit greedy against the best singleton, budget `kappa`.
    Knapsack,
}

impl SolverKind {
    pub fn solve(
        self,
        oracle: &Oracle,
        costs: &[f64],
        ground: &[ElementId],
        budget: f64,
    ) -> Result<Solution> {
        match self {
            SolverKind::Size => {
                if !(budget >= 0.0) {
                    return Err(Error::input(format!("budget must be non-negative, got {budget}")));
                }
                greedy_cardinality(oracle, ground, budget.floor() as usize)
            }
            SolverKind::Knapsack => greedy_knapsack(oracle, costs, ground, budget),
        }
    }
}

/// One row of an evaluation. Column order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub pruner: String,
    pub budget: f64,
    pub size_full: usize,
    pub size_pruned: usize,
    pub value_full: f64,
    pub value_pruned: f64,
    /// `None` when the full solution has value 0 but the pruned one does not.
    pub p_r: Option<f64>,
    pub p_g: f64,
    pub combined: Option<f64>,
    pub oracle_calls_prune: u64,
    pub oracle_calls_solve: u64,
    pub oracle_calls_solve_full: u64,
    /// Budget outside the range the pruner was run for.
    pub out_of_range: bool,
}

/// `f(H(U'))/f(H(U))`; `1` if both are zero, undefined if only the
/// denominator is.
pub fn ratio(value_pruned: f64, value_full: f64) -> Option<f64> {
    if value_full == 0.0 {
        (value_pruned == 0.0).then_some(1.0)
    } else {
        Some(value_pruned / value_full)
    }
}

/// `1 - |U'| / |U|`; zero for an empty `U`.
pub fn pruned_fraction(size_pruned: usize, size_full: usize) -> f64 {
    if size_full == 0 {
        0.0
    } else {
        1.0 - size_pruned as f64 / size_full as f64
    }
}

fn distinct(ids: &[ElementId]) -> Vec<ElementId> {
    let mut v = ids.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn check_subset(full: &[ElementId], pruned: &[ElementId]) -> Result<()> {
    match pruned.iter().find(|e| full.binary_search(e).is_err()) {
        Some(e) => Err(Error::input(format!("pruned element {e} is not in the ground set"))),
        None => Ok(()),
    }
}

fn record(pruner: &str, budget: f64, full: &Solution, pruned: &Solution, sizes: (usize, usize)) -> EvalRecord {
    let p_r = ratio(pruned.value, full.value);
    let p_g = pruned_fraction(sizes.1, sizes.0);
    EvalRecord {
        pruner: pruner.to_string(),
        budget,
        size_full: sizes.0,
        size_pruned: sizes.1,
        value_full: full.value,
        value_pruned: pruned.value,
        p_r,
        p_g,
        combined: p_r.map(|r| r * p_g),
        oracle_calls_prune: 0,
        oracle_calls_solve: pruned.oracle_calls,
        oracle_calls_solve_full: full.oracle_calls,
        out_of_range: false,
    }
}

/// Runs `solver` on `full` and on `pruned` at `budget` and compares them.
pub fn evaluate_pruning(
    oracle: &Oracle,
    costs: &[f64],
    full: &[ElementId],
    pruned: &[ElementId],
    solver: SolverKind,
    budget: f64,
) -> Result<EvalRecord> {
    let full = distinct(full);
    let pruned = distinct(pruned);
    check_subset(&full, &pruned)?;
    let h_full = solver.solve(oracle, costs, &full, budget)?;
    let h_pruned = solver.solve(oracle, costs, &pruned, budget)?;
    Ok(record("", budget, &h_full, &h_pruned, (full.len(), pruned.len())))
}

/// A pruned set together with how it was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrunerOutput {
    pub name: String,
    pub pruned: Vec<ElementId>,
    pub oracle_calls: u64,
    /// Budget range the pruner targeted, if any.
    pub range: Option<(f64, f64)>,
}

/// One record per `(budget, pruner)`, budgets outermost, both in input
/// order. `H(U)` is solved once per budget and shared by all pruners.
pub fn sweep_budgets(
    oracle: &Oracle,
    costs: &[f64],
    full: &[ElementId],
    outputs: &[PrunerOutput],
    budgets: &[f64],
    solver: SolverKind,
) -> Result<Vec<EvalRecord>> {
    let full = distinct(full);
    let prepared: Vec<Vec<ElementId>> = outputs.iter().map(|o| distinct(&o.pruned)).collect();
    for p in &prepared {
        check_subset(&full, p)?;
    }
    let per_budget = budgets
        .par_iter()
        .map(|&b| {
            let h_full = solver.solve(oracle, costs, &full, b)?;
            outputs
                .iter()
                .zip(&prepared)
                .map(|(out, set)| {
                    let h = solver.solve(oracle, costs, set, b)?;
                    let mut rec = record(&out.name, b, &h_full, &h, (full.len(), set.len()));
                    rec.oracle_calls_prune = out.oracle_calls;
                    rec.out_of_range = out.range.is_some_and(|(lo, hi)| {
                        let slack = 1e-9 * hi.abs().max(1.0);
                        b < lo - slack || b > hi + slack
                    });
                    Ok(rec)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_budget.into_iter().flatten().collect())
}

pub fn write_csv<W: Write>(out: W, records: &[EvalRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_jsonl<W: Write>(mut out: W, records: &[EvalRecord]) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}
