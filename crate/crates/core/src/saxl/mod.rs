//! Reduction machinery and verification campaigns for staircase,
//! chopped-square and caret tensor squares: the select-vector search,
//! strip decomposability, the recursive certificate derivation with its
//! special cases, family verifiers, dominance statistics, and the
//! staircase-like sweep.

mod decompose;
mod families;
mod hard10;
mod reduce;
mod select;
mod staircase_like;
mod stats;

pub use decompose::{decompose, decomposition_candidates, DecompositionStep, LeafJustification, Side};
pub use families::{verify_family, verify_family_with, Family, VerifyOptions};
pub use hard10::hard_case_m10;
pub use reduce::{certify_staircase, reduce_durfee_k, ReduceCtx, ReduceError};
pub use select::{find_select_vector, find_select_vector_in};
pub use staircase_like::{
    self_conjugate_partitions, staircase_envelope, staircase_like, verify_generalized_saxl,
};
pub use stats::{dominance_stats, DominanceStats};
