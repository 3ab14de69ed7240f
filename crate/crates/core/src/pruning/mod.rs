//! Streaming ground-set pruning.
//!
//! [`quickprune_single`] makes one pass over the stream for a single budget,
//! keeping a working set `A` whose members each raised `f(A)` in proportion
//! to their cost, the best singleton `a*`, and a checkpoint `A_s` that is
//! dropped once `f(A)` outgrows it by a factor `n / epsilon`. [`quickprune`]
//! runs one such pruner per rung of a geometric budget ladder and returns the
//! union.

mod bounds;
mod io;
mod multi;
mod params;
mod report;
mod single;

pub use bounds::{alpha_multi, alpha_single, check_nhi, size_bound};
pub use io::{read_ids, read_report, write_ids, write_report};
pub use multi::{budget_ladder, ladder_size, quickprune};
pub use params::{LadderParams, PruneParams};
pub use report::{BudgetReport, PruneReport};
pub use single::{quickprune_single, DeletionEvent, SinglePruner, StepOutcome};
