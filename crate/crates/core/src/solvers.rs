//! Downstream solvers run on a (pruned) ground set.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objectives::{ElementId, Oracle, TrackedSet};

/// Largest ground set [`brute_force_opt`] accepts.
pub const MAX_BRUTE_FORCE: usize = 22;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    /// Selection order for the greedy solvers, ascending for brute force.
    pub set: Vec<ElementId>,
    pub value: f64,
    pub cost: f64,
    pub oracle_calls: u64,
}

impl Solution {
    fn empty() -> Self {
        Solution {
            set: Vec::new(),
            value: 0.0,
            cost: 0.0,
            oracle_calls: 0,
        }
    }
}

// Max-heap entry: larger key first, then smaller id.
#[derive(Debug, Clone, Copy)]
struct Entry {
    key: f64,
    id: ElementId,
    gain: f64,
    stamp: usize,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Entry {}
impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key
            .total_cmp(&other.key)
            .then_with(|| Reverse(self.id).cmp(&Reverse(other.id)))
    }
}

fn distinct(oracle: &Oracle, ground: &[ElementId]) -> Result<Vec<ElementId>> {
    oracle.check_ids(ground)?;
    let mut u = ground.to_vec();
    u.sort_unstable();
    u.dedup();
    Ok(u)
}

fn check_costs(oracle: &Oracle, costs: &[f64]) -> Result<()> {
    if costs.len() != oracle.n() {
        return Err(Error::input(format!(
            "{} costs for a ground set of size {}",
            costs.len(),
            oracle.n()
        )));
    }
    Ok(())
}

/// Lazy greedy over `ground` under `|S| <= k`.
///
/// Keeps stale marginals in a priority queue and re-evaluates the top before
/// committing. Stops early once the best marginal is not positive.
pub fn greedy_cardinality(oracle: &Oracle, ground: &[ElementId], k: usize) -> Result<Solution> {
    let u = distinct(oracle, ground)?;
    let local = oracle.fork();
    let mut sol = Solution::empty();
    if k > 0 {
        let mut set = local.working_set();
        let mut heap: BinaryHeap<Entry> = u
            .iter()
            .map(|&id| {
                let gain = set.gain(id);
                Entry { key: gain, id, gain, stamp: 0 }
            })
            .collect();
        while set.len() < k {
            let Some(top) = heap.pop() else { break };
            if top.stamp == set.len() {
                if top.gain <= 0.0 {
                    break;
                }
                set.insert(top.id);
                continue;
            }
            let gain = set.gain(top.id);
            heap.push(Entry { key: gain, id: top.id, gain, stamp: set.len() });
        }
        sol.value = set.value();
        sol.cost = set.len() as f64;
        sol.set = set.members().to_vec();
    }
    sol.oracle_calls = local.calls();
    oracle.charge(sol.oracle_calls);
    Ok(sol)
}

/// Cost-benefit greedy under `c(S) <= kappa`, compared against the best
/// feasible singleton; returns whichever is larger.
pub fn greedy_knapsack(
    oracle: &Oracle,
    costs: &[f64],
    ground: &[ElementId],
    kappa: f64,
) -> Result<Solution> {
    check_costs(oracle, costs)?;
    if !(kappa > 0.0) {
        return Err(Error::input(format!("budget must be positive, got {kappa}")));
    }
    let u = distinct(oracle, ground)?;
    let local = oracle.fork();
    let mut set = local.working_set();
    let mut cost = 0.0;
    let mut single: Option<(f64, ElementId)> = None;
    let mut heap = BinaryHeap::new();
    for &id in &u {
        if costs[id] > kappa {
            continue;
        }
        let gain = set.gain(id);
        if single.is_none_or(|(best, _)| gain > best) {
            single = Some((gain, id));
        }
        heap.push(Entry { key: gain / costs[id], id, gain, stamp: 0 });
    }
    while let Some(top) = heap.pop() {
        if cost + costs[top.id] > kappa {
            continue;
        }
        if top.stamp == set.len() {
            if top.gain <= 0.0 {
                break;
            }
            set.insert(top.id);
            cost += costs[top.id];
            continue;
        }
        let gain = set.gain(top.id);
        heap.push(Entry { key: gain / costs[top.id], id: top.id, gain, stamp: set.len() });
    }
    let mut sol = Solution {
        set: set.members().to_vec(),
        value: set.value(),
        cost,
        oracle_calls: 0,
    };
    if let Some((value, id)) = single {
        if value > sol.value {
            sol = Solution { set: vec![id], value, cost: costs[id], oracle_calls: 0 };
        }
    }
    sol.oracle_calls = local.calls();
    oracle.charge(sol.oracle_calls);
    Ok(sol)
}

/// Exact `max f(S)` over `S ⊆ ground`, `c(S) <= kappa`, by enumerating every
/// feasible subset. Ties go to the subset found first.
pub fn brute_force_opt(
    oracle: &Oracle,
    costs: &[f64],
    ground: &[ElementId],
    kappa: f64,
) -> Result<Solution> {
    check_costs(oracle, costs)?;
    let u = distinct(oracle, ground)?;
    if u.len() > MAX_BRUTE_FORCE {
        return Err(Error::input(format!(
            "brute force limited to {MAX_BRUTE_FORCE} elements, got {}",
            u.len()
        )));
    }
    let local = oracle.fork();
    let mut best = (0.0, Vec::new(), 0.0);
    let root = local.working_set();
    search(&u, costs, kappa, 0, &root, 0.0, &mut best);
    let (_, mut set, cost) = best;
    set.sort_unstable();
    let value = local.eval(&set)?;
    let calls = local.calls();
    oracle.charge(calls);
    Ok(Solution { set, value, cost, oracle_calls: calls })
}

fn search(
    u: &[ElementId],
    costs: &[f64],
    kappa: f64,
    from: usize,
    set: &TrackedSet<'_>,
    cost: f64,
    best: &mut (f64, Vec<ElementId>, f64),
) {
    if set.value() > best.0 {
        *best = (set.value(), set.members().to_vec(), cost);
    }
    for j in from..u.len() {
        let c = cost + costs[u[j]];
        if c > kappa {
            continue;
        }
        let mut next = set.clone();
        next.gain(u[j]);
        next.insert(u[j]);
        search(u, costs, kappa, j + 1, &next, c, best);
    }
}
