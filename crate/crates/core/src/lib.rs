//! Single-pass pruning of large ground sets for knapsack-constrained
//! monotone (weakly) submodular maximization.
//!
//! The crate is organised around a query-counted value [`Oracle`]:
//!
//! * [`objectives`]: coverage, cut, influence and similarity graph-cut
//!   objectives, plus exhaustive estimation of the diminishing-returns ratio.
//! * [`pruning`]: the streaming single-budget pruner, the multi-budget ladder
//!   built on top of it, and closed-form retention and size bounds.
//! * [`solvers`]: lazy greedy heuristics and an exhaustive optimum for
//!   small instances.
//! * [`baselines`]: top-k, random and submodular-sparsification pruners.
//! * [`graphio`]: edge-list ingestion, cost models and synthetic graphs.
//! * [`metrics`]: retention, pruned fraction and their product.

pub mod baselines;
pub mod error;
pub mod graphio;
pub mod metrics;
pub mod objectives;
pub mod pruning;
pub mod solvers;

pub use error::{Error, Result};
pub use objectives::{ElementId, Oracle};
