use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ElementId, ObjectiveKind, SetFunction, WorkingSet};
use crate::error::{Error, Result};
use crate::graphio::Graph;

pub const DEFAULT_EDGE_PROBABILITY: f64 = 0.01;
pub const DEFAULT_SAMPLES: usize = 100;

/// One live-edge subgraph in compressed form.
#[derive(Debug, Clone)]
struct LiveEdges {
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl LiveEdges {
    fn out(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }
}

/// A frozen pool of independent-cascade live-edge samples.
///
/// Every stored arc of the graph is kept independently with probability `p`
/// in each sample; for undirected graphs the two orientations of an edge are
/// sampled separately.
#[derive(Debug, Clone)]
pub struct LiveEdgeSamplePool {
    n: usize,
    samples: Vec<LiveEdges>,
    p: f64,
    seed: u64,
}

impl LiveEdgeSamplePool {
    pub fn sample(graph: &Graph, p: f64, m: usize, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::input(format!("edge probability {p} outside [0, 1]")));
        }
        if m == 0 {
            return Err(Error::input("sample count must be positive"));
        }
        let n = graph.n();
        if n > u32::MAX as usize || graph.num_edges() > u32::MAX as usize / 2 {
            return Err(Error::input("graph too large for the live-edge pool"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples = (0..m)
            .map(|_| {
                let mut offsets = Vec::with_capacity(n + 1);
                let mut targets = Vec::new();
                offsets.push(0u32);
                for u in 0..n {
                    for &v in graph.neighbors(u) {
                        if rng.gen_bool(p) {
                            targets.push(v as u32);
                        }
                    }
                    offsets.push(targets.len() as u32);
                }
                LiveEdges { offsets, targets }
            })
            .collect();
        Ok(LiveEdgeSamplePool { n, samples, p, seed })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_samples(&self) -> usize {
        self.samples.len()
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Sum over samples of the number of nodes reachable from `set`.
fn total_reach(pool: &LiveEdgeSamplePool, set: &[ElementId]) -> u64 {
    let mut total = 0u64;
    let mut seen = HashSet::new();
    let mut stack = Vec::new();
    for sample in &pool.samples {
        seen.clear();
        stack.clear();
        for &s in set {
            if seen.insert(s as u32) {
                stack.push(s as u32);
            }
        }
        while let Some(u) = stack.pop() {
            for &v in sample.out(u as usize) {
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        total += seen.len() as u64;
    }
    total
}

/// Monte Carlo estimate of the expected independent-cascade spread,
/// averaged over a frozen [`LiveEdgeSamplePool`] so that it is deterministic.
#[derive(Debug, Clone)]
pub struct Influence {
    pool: Arc<LiveEdgeSamplePool>,
}

impl Influence {
    pub fn new(pool: Arc<LiveEdgeSamplePool>) -> Self {
        Influence { pool }
    }

    pub fn pool(&self) -> &LiveEdgeSamplePool {
        &self.pool
    }
}

/// Average reachable-set size over the pool.
pub fn influence_value(pool: &LiveEdgeSamplePool, set: &[ElementId]) -> f64 {
    total_reach(pool, set) as f64 / pool.num_samples() as f64
}

impl SetFunction for Influence {
    fn ground_size(&self) -> usize {
        self.pool.n
    }

    fn value(&self, set: &[ElementId]) -> f64 {
        influence_value(&self.pool, set)
    }

    fn kind(&self) -> ObjectiveKind {
        ObjectiveKind::Influence
    }

    fn working_set(&self) -> Option<Box<dyn WorkingSet>> {
        let n = self.pool.n;
        Some(Box::new(InfluenceSet {
            pool: Arc::clone(&self.pool),
            reached: vec![vec![false; n]; self.pool.num_samples()],
            total: 0,
            stamp: vec![0; n],
            epoch: 0,
            stack: Vec::new(),
        }))
    }
}

#[derive(Clone)]
struct InfluenceSet {
    pool: Arc<LiveEdgeSamplePool>,
    reached: Vec<Vec<bool>>,
    total: u64,
    // scratch marks for gain queries
    stamp: Vec<u32>,
    epoch: u32,
    stack: Vec<u32>,
}

impl InfluenceSet {
    fn next_epoch(&mut self) -> u32 {
        if self.epoch == u32::MAX {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.epoch
    }
}

impl WorkingSet for InfluenceSet {
    fn value(&self) -> f64 {
        self.total as f64 / self.pool.num_samples() as f64
    }

    fn gain(&mut self, e: ElementId) -> f64 {
        let mut fresh = 0u64;
        for i in 0..self.pool.samples.len() {
            if self.reached[i][e] {
                continue;
            }
            let epoch = self.next_epoch();
            let sample = &self.pool.samples[i];
            let reached = &self.reached[i];
            self.stack.clear();
            self.stack.push(e as u32);
            self.stamp[e] = epoch;
            while let Some(u) = self.stack.pop() {
                fresh += 1;
                for &v in sample.out(u as usize) {
                    let vi = v as usize;
                    if !reached[vi] && self.stamp[vi] != epoch {
                        self.stamp[vi] = epoch;
                        self.stack.push(v);
                    }
                }
            }
        }
        fresh as f64 / self.pool.num_samples() as f64
    }

    fn insert(&mut self, e: ElementId) {
        for i in 0..self.pool.samples.len() {
            if self.reached[i][e] {
                continue;
            }
            let sample = &self.pool.samples[i];
            let reached = &mut self.reached[i];
            reached[e] = true;
            self.stack.clear();
            self.stack.push(e as u32);
            while let Some(u) = self.stack.pop() {
                self.total += 1;
                for &v in sample.out(u as usize) {
                    if !reached[v as usize] {
                        reached[v as usize] = true;
                        self.stack.push(v);
                    }
                }
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

    fn oracle(graph: &Graph, p: f64, m: usize) -> Oracle {
        Oracle::new(Influence::new(Arc::new(
            LiveEdgeSamplePool::sample(graph, p, m, 7).unwrap(),
        )))
    }

    #[test]
    fn empty_set_spreads_nowhere() {
        let g = generate(GraphKind::Path, 5, 0).unwrap();
        assert_eq!(oracle(&g, 0.5, 10).eval(&[]).unwrap(), 0.0);
    }

    #[test]
    fn certain_edges_reach_the_component() {
        let g = generate(GraphKind::BarabasiAlbert { m: 2 }, 30, 1).unwrap();
        let o = oracle(&g, 1.0, 5);
        for v in [0, 13, 29] {
            assert_eq!(o.eval(&[v]).unwrap(), 30.0);
        }
    }

    #[test]
    fn dead_edges_reach_only_seeds() {
        let g = generate(GraphKind::BarabasiAlbert { m: 2 }, 30, 1).unwrap();
        let o = oracle(&g, 0.0, 5);
        assert_eq!(o.eval(&[1, 4, 9]).unwrap(), 3.0);
    }

    #[test]
    fn frozen_pool_is_deterministic() {
        let g = generate(GraphKind::ErdosRenyi { p: 0.2 }, 40, 3).unwrap();
        let o = oracle(&g, 0.2, 50);
        let a = o.eval(&[3, 8, 21]).unwrap();
        let b = o.eval(&[21, 3, 8]).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        let again = oracle(&g, 0.2, 50).eval(&[3, 8, 21]).unwrap();
        assert_eq!(a.to_bits(), again.to_bits());
    }

    #[test]
    fn working_set_matches_eval() {
        let g = generate(GraphKind::ErdosRenyi { p: 0.1 }, 60, 2).unwrap();
        let o = oracle(&g, 0.3, 40);
        let mut ws = o.working_set();
        for e in [4, 17, 4, 50, 33, 0] {
            let g = ws.gain(e);
            let before = ws.value();
            ws.insert(e);
            let expect = o.eval(ws.members()).unwrap();
            assert_eq!(ws.value(), expect);
            assert!((before + g - expect).abs() < 1e-9);
        }
    }

    #[test]
    fn invalid_pool_params() {
        let g = generate(GraphKind::Path, 3, 0).unwrap();
        assert!(LiveEdgeSamplePool::sample(&g, -0.1, 10, 0).is_err());
        assert!(LiveEdgeSamplePool::sample(&g, 0.1, 0, 0).is_err());
    }
}
