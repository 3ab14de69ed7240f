//! Value oracles for monotone set functions.
//!
//! Every evaluation made through an [`Oracle`] increments its query counter,
//! including marginal-gain queries issued by a [`TrackedSet`]. The bundled
//! objectives also provide incremental working sets so that a gain query
//! costs time proportional to the element's neighbourhood rather than to the
//! size of the set.

mod coverage;
mod cut;
mod gamma;
mod influence;
mod simcut;

use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use coverage::Coverage;
pub use cut::Cut;
pub use gamma::{estimate_gamma, MAX_GAMMA_GROUND_SET};
pub use influence::{Influence, LiveEdgeSamplePool, DEFAULT_EDGE_PROBABILITY, DEFAULT_SAMPLES};
pub use simcut::{SimGraphCut, SimilarityKernel, DEFAULT_LAMBDA};

/// Index of an element in the ground set `0..n`.
pub type ElementId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveKind {
    Coverage,
    Cut,
    Influence,
    SimGraphCut,
    Custom,
}

impl fmt::Display for ObjectiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ObjectiveKind::Coverage => "coverage",
            ObjectiveKind::Cut => "cut",
            ObjectiveKind::Influence => "influence",
            ObjectiveKind::SimGraphCut => "simgraphcut",
            ObjectiveKind::Custom => "custom",
        };
        f.write_str(s)
    }
}

/// A deterministic set function over the ground set `0..ground_size()`.
///
/// `value` receives distinct, in-range ids in arbitrary order.
pub trait SetFunction: Send + Sync {
    fn ground_size(&self) -> usize;

    fn value(&self, set: &[ElementId]) -> f64;

    fn kind(&self) -> ObjectiveKind {
        ObjectiveKind::Custom
    }

    /// An incremental evaluator for a growing set, starting empty. `None`
    /// falls back to re-evaluating `value` from scratch on every query.
    fn working_set(&self) -> Option<Box<dyn WorkingSet>> {
        None
    }
}

/// Incremental state of `f` on a set that only grows.
pub trait WorkingSet: Send {
    /// Raw `f(S)`.
    fn value(&self) -> f64;

    /// `f(S + e) - f(S)`; zero when `e` is already in the set.
    fn gain(&mut self, e: ElementId) -> f64;

    fn insert(&mut self, e: ElementId);

    fn boxed_clone(&self) -> Box<dyn WorkingSet>;
}

/// Working set for functions without an incremental evaluator.
struct Recompute {
    function: Arc<dyn SetFunction>,
    members: Vec<ElementId>,
    value: f64,
}

impl WorkingSet for Recompute {
    fn value(&self) -> f64 {
        self.value
    }

    fn gain(&mut self, e: ElementId) -> f64 {
        if self.members.contains(&e) {
            return 0.0;
        }
        self.members.push(e);
        let v = self.function.value(&self.members);
        self.members.pop();
        v - self.value
    }

    fn insert(&mut self, e: ElementId) {
        if !self.members.contains(&e) {
            self.members.push(e);
            self.value = self.function.value(&self.members);
        }
    }

    fn boxed_clone(&self) -> Box<dyn WorkingSet> {
        Box::new(Recompute {
            function: Arc::clone(&self.function),
            members: self.members.clone(),
            value: self.value,
        })
    }
}

/// Query-counted access to a set function, normalised so that `f(∅) = 0`.
///
/// The counter is atomic; an oracle can be shared across threads.
pub struct Oracle {
    function: Arc<dyn SetFunction>,
    offset: f64,
    calls: AtomicU64,
}

impl fmt::Debug for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Oracle")
            .field("kind", &self.kind())
            .field("n", &self.n())
            .field("calls", &self.calls())
            .finish()
    }
}

impl Oracle {
    pub fn new<F: SetFunction + 'static>(function: F) -> Self {
        Self::from_arc(Arc::new(function))
    }

    pub fn from_arc(function: Arc<dyn SetFunction>) -> Self {
        let offset = function.value(&[]);
        Oracle {
            function,
            offset,
            calls: AtomicU64::new(0),
        }
    }

    /// Same function, fresh counter. Used to keep instrumentation queries
    /// out of an algorithm's own count.
    pub fn fork(&self) -> Oracle {
        Oracle {
            function: Arc::clone(&self.function),
            offset: self.offset,
            calls: AtomicU64::new(0),
        }
    }

    pub fn n(&self) -> usize {
        self.function.ground_size()
    }

    pub fn kind(&self) -> ObjectiveKind {
        self.function.kind()
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn reset_calls(&self) {
        self.calls.store(0, Ordering::Relaxed);
    }

    fn tick(&self) {
        self.calls.fetch_add(1, Ordering::Relaxed);
    }

    /// Adds queries made on a fork back to this counter.
    pub(crate) fn charge(&self, calls: u64) {
        self.calls.fetch_add(calls, Ordering::Relaxed);
    }

    pub fn check_id(&self, e: ElementId) -> Result<()> {
        if e < self.n() {
            Ok(())
        } else {
            Err(Error::input(format!(
                "element id {e} outside ground set of size {}",
                self.n()
            )))
        }
    }

    pub fn check_ids(&self, ids: &[ElementId]) -> Result<()> {
        ids.iter().try_for_each(|&e| self.check_id(e))
    }

    /// `f(S) - f(∅)`. One query.
    pub fn eval(&self, set: &[ElementId]) -> Result<f64> {
        self.check_ids(set)?;
        self.tick();
        let mut distinct = set.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        Ok(self.function.value(&distinct) - self.offset)
    }

    /// `f(S + e) - f_set` where `f_set` is the caller's cached `f(S)`. One query.
    pub fn marginal(&self, e: ElementId, set: &[ElementId], f_set: f64) -> Result<f64> {
        self.check_id(e)?;
        let mut with = Vec::with_capacity(set.len() + 1);
        with.extend_from_slice(set);
        with.push(e);
        Ok(self.eval(&with)? - f_set)
    }

    /// An empty incrementally evaluated set bound to this oracle's counter.
    pub fn working_set(&self) -> TrackedSet<'_> {
        TrackedSet {
            oracle: self,
            inner: self.fresh_inner(),
            members: Vec::new(),
            lookup: HashSet::new(),
        }
    }

    fn fresh_inner(&self) -> Box<dyn WorkingSet> {
        self.function.working_set().unwrap_or_else(|| {
            Box::new(Recompute {
                function: Arc::clone(&self.function),
                members: Vec::new(),
                value: self.offset,
            })
        })
    }
}

/// A growing set with cached `f` value; gain queries are counted on the
/// owning oracle.
pub struct TrackedSet<'o> {
    oracle: &'o Oracle,
    inner: Box<dyn WorkingSet>,
    members: Vec<ElementId>,
    lookup: HashSet<ElementId>,
}

impl Clone for TrackedSet<'_> {
    fn clone(&self) -> Self {
        TrackedSet {
            oracle: self.oracle,
            inner: self.inner.boxed_clone(),
            members: self.members.clone(),
            lookup: self.lookup.clone(),
        }
    }
}

impl<'o> TrackedSet<'o> {
    /// Cached normalised `f(S)`; no query.
    pub fn value(&self) -> f64 {
        self.inner.value() - self.oracle.offset
    }

    /// `Δ(e | S)`. One query.
    ///
    /// # Panics
    /// If `e` is outside the ground set.
    pub fn gain(&mut self, e: ElementId) -> f64 {
        assert!(e < self.oracle.n(), "element id {e} outside ground set");
        self.oracle.tick();
        self.inner.gain(e)
    }

    /// Adds `e` using the gain already paid for; no query.
    pub fn insert(&mut self, e: ElementId) {
        assert!(e < self.oracle.n(), "element id {e} outside ground set");
        if self.lookup.insert(e) {
            self.inner.insert(e);
            self.members.push(e);
        }
    }

    /// Replaces the contents with `members` and re-evaluates `f`. One query.
    pub fn rebuild(&mut self, members: &[ElementId]) -> f64 {
        self.oracle.tick();
        self.inner = self.oracle.fresh_inner();
        self.members.clear();
        self.lookup.clear();
        for &e in members {
            assert!(e < self.oracle.n(), "element id {e} outside ground set");
            if self.lookup.insert(e) {
                self.inner.insert(e);
                self.members.push(e);
            }
        }
        self.value()
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.lookup.contains(&e)
    }

    /// Members in insertion order.
    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn oracle(&self) -> &'o Oracle {
        self.oracle
    }
}
