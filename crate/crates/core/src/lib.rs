//! Spectral extremal toolkit for K_{2,t}-minor-free graphs.
//!
//! The crate builds the extremal family F_t(n) (a hub joined to disjoint
//! cliques), computes spectral radii both numerically and in exact closed
//! form through the equitable-quotient cubic, tests minor containment with
//! a backtracking engine cross-validated by a delete/contract oracle,
//! searches for spectral maximizers with the structural rewiring moves, and
//! audits the structural inequalities that govern the family.

mod bits;
mod canon;
mod cubic;
pub mod error;
pub mod numfmt;
#[cfg(test)]
mod testutil;
pub mod extremal;
pub mod graph;
pub mod graph6;
pub mod minor;
pub mod search;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use extremal::{build_ft, is_ft, split_params, FtParams};
pub use graph::{Graph, VertexId, MAX_VERTICES};
pub use graph6::{parse_graph6, write_graph6};
pub use minor::{
    has_minor, has_minor_oracle, k2t_minor_test, k2t_minor_test_opts, k2t_subgraph_test,
    validate_witness, MinorOracle, MinorWitness,
};
pub use search::{
    apply_move, enumerate_connected, exhaustive_max, exhaustive_max_jobs, local_search, Move,
    MoveStep, SearchRecord,
};
pub use spectral::{
    bound_lower, bound_lower_in_stated_range, bound_upper, bound_ysh, bounds, edge_weight_sum,
    ft_mu_exact, perron_vector, spectral_radius, BoundSet, SpectralResult, DEFAULT_TOL,
};
pub use verify::{
    audit, lemma1_hub_check, lemma1_order_threshold, theorem2_order_threshold,
    verify_equality_structure, AuditReport, CheckEntry, THEOREM1_MIN_ORDER,
};
