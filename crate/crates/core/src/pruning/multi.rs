use std::time::Instant;

use rayon::prelude::*;

use super::params::{check_ladder, LadderParams};
use super::report::PruneReport;
use super::single::{check_stream, SinglePruner};
use crate::error::Result;
use crate::objectives::{ElementId, Oracle};

// Relative slack on the ladder's lower end so that budgets landing exactly on
// (1 - eta) * kappa_min are not lost to rounding in the power.
const LADDER_SLACK: f64 = 1e-12;

/// Budgets `kappa_max (1 - eta)^i`, `i >= 0`, down to `(1 - eta) kappa_min`,
/// in descending order.
pub fn budget_ladder(kappa_min: f64, kappa_max: f64, eta: f64) -> Result<Vec<f64>> {
    check_ladder(kappa_min, kappa_max, eta)?;
    let floor = (1.0 - eta) * kappa_min * (1.0 - LADDER_SLACK);
    let mut ladder = Vec::new();
    for i in 0.. {
        let tau = kappa_max * (1.0 - eta).powi(i);
        if tau < floor {
            break;
        }
        ladder.push(tau);
    }
    Ok(ladder)
}

/// Closed-form ladder length:
/// `floor(ln(kappa_max / ((1 - eta) kappa_min)) / ln(1 / (1 - eta))) + 1`.
pub fn ladder_size(kappa_min: f64, kappa_max: f64, eta: f64) -> Result<usize> {
    check_ladder(kappa_min, kappa_max, eta)?;
    let steps = (kappa_max / ((1.0 - eta) * kappa_min)).ln() / (1.0 / (1.0 - eta)).ln();
    Ok((steps + 1e-9).floor() as usize + 1)
}

/// Runs one single-budget pruner per ladder budget over the same stream and
/// returns the union of their pruned sets (sorted).
///
/// Budgets are processed in parallel; each pruner owns its state and the
/// oracle is shared, so the output does not depend on scheduling.
pub fn quickprune(
    stream: &[ElementId],
    oracle: &Oracle,
    costs: &[f64],
    params: LadderParams,
) -> Result<(Vec<ElementId>, PruneReport)> {
    params.validate()?;
    check_stream(oracle, stream)?;
    let start = Instant::now();
    let calls_before = oracle.calls();
    let ladder = budget_ladder(params.kappa_min, params.kappa_max, params.eta)?;

    let budgets = ladder
        .par_iter()
        .map(|&tau| {
            let mut pruner = SinglePruner::new(oracle, costs, params.at(tau))?;
            for &e in stream {
                pruner.process(e);
            }
            Ok(pruner.budget_report())
        })
        .collect::<Result<Vec<_>>>()?;

    let mut pruned: Vec<ElementId> = budgets.iter().flat_map(|b| b.pruned.iter().copied()).collect();
    pruned.sort_unstable();
    pruned.dedup();

    let report = PruneReport {
        algorithm: "quickprune".into(),
        n: oracle.n(),
        kappa_min: Some(params.kappa_min),
        kappa_max: Some(params.kappa_max),
        eta: Some(params.eta),
        delta: Some(params.delta),
        epsilon: Some(params.epsilon),
        seed: None,
        pruned_size: pruned.len(),
        oracle_calls: oracle.calls() - calls_before,
        deletions: budgets.iter().map(|b| b.deletions.len()).sum(),
        budgets,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok((pruned, report))
}
