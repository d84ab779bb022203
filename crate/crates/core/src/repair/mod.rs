//! Optimal-bandwidth repair of the two parity nodes.
//!
//! Every surviving node sends `N/2` symbols: systematic node `j` sends
//! `S f_j` (first parity failed) or `S A_j f_j` (second parity failed), and the
//! other parity sends `S~` times its shard. The repair matrices come from a
//! block recursion that leaves one zero column in the systematic download,
//! so each systematic helper reads `N - 1` symbols and total disk I/O is
//! `kN + N - k`.

mod bound;
mod brute;
mod conditions;
mod matrices;
mod plan;

pub use bound::{io_lower_bound, IoBoundReport};
pub use brute::{brute_force_min_io, canonical_full_rank, BruteForceReport, BRUTE_FORCE_MAX_K};
pub use conditions::{
    io_census, verify_duality, verify_repair_conditions, zero_column_propagation, ChainCheck,
    ConditionReport, DualityReport, IoCensus, PropagationFailure, PropagationReport,
};
pub use matrices::{
    build_helpers, build_repair_pair, swapped_first_parity_pair, HelperMatrices, RepairMatrixPair,
    RepairVariant,
};
pub use plan::{execute_repair, plan_repair, Helper, PlanSummary, RepairPlan};
