//! Comparison pruners: degree-to-cost top-k, uniform random, and a
//! submodularity-graph sparsifier (SS).

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphio::Graph;
use crate::objectives::{ElementId, Oracle};

pub const DEFAULT_SS_R: usize = 8;
pub const DEFAULT_SS_C: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaselineKind {
    Ss,
    Topk,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaselineConfig {
    pub kind: BaselineKind,
    /// Output size for top-k and random; ignored by SS.
    pub target_size: usize,
    pub r: usize,
    pub c: usize,
    pub seed: u64,
}

impl BaselineConfig {
    pub fn new(kind: BaselineKind, target_size: usize, seed: u64) -> Self {
        BaselineConfig {
            kind,
            target_size,
            r: DEFAULT_SS_R,
            c: DEFAULT_SS_C,
            seed,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.r == 0 || self.c == 0 {
            return Err(Error::input("SS parameters r and c must be at least 1"));
        }
        if self.kind != BaselineKind::Ss && self.target_size > n {
            return Err(Error::input(format!(
                "target size {} exceeds ground set size {n}",
                self.target_size
            )));
        }
        Ok(())
    }
}

/// The `k` elements with the largest degree / cost, ascending by id.
pub fn top_k_prune(graph: &Graph, costs: &[f64], k: usize) -> Result<Vec<ElementId>> {
    let n = graph.n();
    if costs.len() != n {
        return Err(Error::input(format!("{} costs for {n} nodes", costs.len())));
    }
    if k > n {
        return Err(Error::input(format!("k = {k} exceeds n = {n}")));
    }
    let mut order: Vec<ElementId> = (0..n).collect();
    let ratio = |v: usize| graph.degree(v) as f64 / costs[v];
    order.sort_by(|&a, &b| ratio(b).total_cmp(&ratio(a)).then(a.cmp(&b)));
    order.truncate(k);
    order.sort_unstable();
    Ok(order)
}

/// A uniform `k`-subset of `0..n`, ascending.
pub fn random_prune(n: usize, k: usize, seed: u64) -> Result<Vec<ElementId>> {
    if k > n {
        return Err(Error::input(format!("k = {k} exceeds n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = index::sample(&mut rng, n, k).into_vec();
    picked.sort_unstable();
    Ok(picked)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SsOutcome {
    pub pruned: Vec<ElementId>,
    pub oracle_calls: u64,
    pub rounds: usize,
}

/// Probe count per round and merge threshold: `ceil(r ln |U|)`.
pub fn ss_threshold(size: usize, r: usize) -> usize {
    if size < 2 {
        return 1;
    }
    ((r as f64) * (size as f64).ln()).ceil().max(1.0) as usize
}

/// Submodularity-graph sparsification (an SS-style reconstruction).
///
/// Each round moves `ceil(r ln |U|)` random probes from the pool into the
/// output, scores every remaining `u` by `min_v w(v, u)` with
/// `w(v, u) = f(u | v) - f(v | U - v)`, and keeps the `1/c` highest-scored
/// fraction. Elements with a small score are well covered by some probe.
/// When the pool is no larger than the probe count it is merged into the
/// output.
pub fn ss_prune(oracle: &Oracle, ground: &[ElementId], config: &BaselineConfig) -> Result<SsOutcome> {
    config.validate(oracle.n())?;
    oracle.check_ids(ground)?;
    let mut pool = ground.to_vec();
    pool.sort_unstable();
    pool.dedup();
    let threshold = ss_threshold(pool.len(), config.r);
    let local = oracle.fork();
    let mut kept = Vec::new();
    let mut rounds = 0;
    if pool.len() > threshold {
        let everything = pool.clone();
        let f_all = local.eval(&everything)?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        while pool.len() > threshold {
            rounds += 1;
            let mut picks = index::sample(&mut rng, pool.len(), threshold).into_vec();
            picks.sort_unstable();
            let probes: Vec<ElementId> = picks.iter().map(|&i| pool[i]).collect();
            let mut rest = Vec::with_capacity(pool.len() - probes.len());
            let mut next_pick = picks.iter().peekable();
            for (i, &e) in pool.iter().enumerate() {
                if next_pick.peek() == Some(&&i) {
                    next_pick.next();
                } else {
                    rest.push(e);
                }
            }

            let mut penalty = Vec::with_capacity(probes.len());
            for &v in &probes {
                let without: Vec<ElementId> = everything.iter().copied().filter(|&x| x != v).collect();
                penalty.push(f_all - local.eval(&without)?);
            }
            let mut scored = Vec::with_capacity(rest.len());
            for &u in &rest {
                let mut score = f64::INFINITY;
                for (&v, &pen) in probes.iter().zip(&penalty) {
                    let w = local.eval(&[v, u])? - local.eval(&[v])? - pen;
                    score = score.min(w);
                }
                scored.push((score, u));
            }
            scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
            scored.truncate(scored.len().div_ceil(config.c));

            kept.extend(probes);
            pool = scored.into_iter().map(|(_, u)| u).collect();
        }
    }
    kept.extend(pool);
    kept.sort_unstable();
    let calls = local.calls();
    oracle.charge(calls);
    Ok(SsOutcome { pruned: kept, oracle_calls: calls, rounds })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::graphio::{generate, GraphKind};
    use crate::objectives::Coverage;
    use crate::pruning::{quickprune_single, PruneParams};

    fn star() -> Graph {
        Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)], false).unwrap()
    }

    #[test]
    fn top_k_cases() {
        let g = star();
        let unit = vec![1.0; 6];
        assert_eq!(top_k_prune(&g, &unit, 1).unwrap(), vec![0]);
        assert_eq!(top_k_prune(&g, &unit, 6).unwrap(), (0..6).collect::<Vec<_>>());
        // leaves tie at degree 1, smaller ids win
        assert_eq!(top_k_prune(&g, &unit, 3).unwrap(), vec![0, 1, 2]);
        let mut costs = unit.clone();
        costs[0] = 10.0;
        assert_eq!(top_k_prune(&g, &costs, 1).unwrap(), vec![1]);
        assert!(top_k_prune(&g, &unit, 7).is_err());
    }

    #[test]
    fn random_cases() {
        assert!(random_prune(10, 0, 1).unwrap().is_empty());
        assert_eq!(random_prune(10, 10, 1).unwrap(), (0..10).collect::<Vec<_>>());
        assert_eq!(random_prune(100, 17, 5).unwrap(), random_prune(100, 17, 5).unwrap());
        assert_ne!(random_prune(100, 17, 5).unwrap(), random_prune(100, 17, 6).unwrap());
        assert!(random_prune(3, 4, 0).is_err());
    }

    fn coverage(n: usize, seed: u64) -> Oracle {
        let g = generate(GraphKind::ErdosRenyi { p: 0.05 }, n, seed).unwrap();
        Oracle::new(Coverage::new(Arc::new(g)))
    }

    #[test]
    fn ss_small_pool_is_returned_whole() {
        let o = Oracle::new(Coverage::new(Arc::new(star())));
        let cfg = BaselineConfig::new(BaselineKind::Ss, 0, 3);
        let out = ss_prune(&o, &[0, 1, 2, 3, 4, 5], &cfg).unwrap();
        assert_eq!(out.pruned, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(out.oracle_calls, 0);
        assert_eq!(out.rounds, 0);
    }

    #[test]
    fn ss_counts_and_reproducibility() {
        let o = coverage(200, 9);
        let u: Vec<_> = (0..200).collect();
        let cfg = BaselineConfig::new(BaselineKind::Ss, 0, 42);
        let a = ss_prune(&o, &u, &cfg).unwrap();
        let b = ss_prune(&o, &u, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.pruned.len() < 200);
        assert!(a.pruned.iter().all(|&e| e < 200));
        assert_eq!(o.calls(), a.oracle_calls * 2);

        // one f(U), then per round one f(U - v) per probe and two queries per
        // (probe, pool element) pair
        let t = ss_threshold(200, 8);
        let mut expect = 1u64;
        let mut pool = 200usize;
        while pool > t {
            pool -= t;
            expect += (t + 2 * t * pool) as u64;
            pool = pool.div_ceil(8);
        }
        assert_eq!(a.oracle_calls, expect);
    }

    #[test]
    fn ss_costs_far_more_than_quickprune() {
        let o = coverage(200, 11);
        let u: Vec<_> = (0..200).collect();
        let ss = ss_prune(&o, &u, &BaselineConfig::new(BaselineKind::Ss, 0, 1)).unwrap();
        let (_, qp) =
            quickprune_single(&u, &o, &[1.0; 200], PruneParams::new(10.0, 0.1, 0.1).unwrap()).unwrap();
        assert!(ss.oracle_calls >= 5 * qp.oracle_calls);
    }

    #[test]
    fn config_validation() {
        let mut cfg = BaselineConfig::new(BaselineKind::Topk, 11, 0);
        assert!(cfg.validate(10).is_err());
        cfg.kind = BaselineKind::Ss;
        assert!(cfg.validate(10).is_ok());
        cfg.c = 0;
        assert!(cfg.validate(10).is_err());
    }
}
