//! Exact-arithmetic toolkit for symmetric-group representation data:
//! integer partitions, irreducible characters via border-strip recursion,
//! Kronecker coefficients, and machine-checkable positivity certificates
//! for staircase, chopped-square and caret tensor squares.
//!
//! Everything is computed in exact integer arithmetic. All types are
//! immutable values and every operation is a pure function, so the whole
//! API can be used concurrently; the process-wide character cache accepts
//! idempotent concurrent inserts.

pub mod certificates;
pub mod characters;
pub mod kronecker;
pub mod partitions;
pub mod report;
pub mod saxl;

pub use characters::{estimate_cache_len, set_character_cache_cap, CharInt, ColumnStats, CycleType};
pub use certificates::{
    audit_axioms, axiom_leaf, check_certificate, derive_scalar_multiple, leaf_from_oracle,
    AxiomName, Certificate, CheckFailure, Manifest, Rule, RulePolicy,
};
pub use kronecker::{is_positive, kronecker, pair_coefficient, tensor_square_support};
pub use partitions::{
    caret, chopped_square, enumerate_partitions, partition_count, partitions_of, sigma, staircase,
    tau, ArmLegProfile, EnumFilter, Partition, PartitionError, SelectVector,
};
pub use report::{CsvSink, RunTotals, TargetRecord, TargetStatus, VerificationReport};
pub use saxl::{
    decompose, dominance_stats, find_select_vector, find_select_vector_in, hard_case_m10, reduce_durfee_k,
    staircase_like, verify_family, verify_family_with, verify_generalized_saxl,
    DecompositionStep, DominanceStats, Family, LeafJustification, ReduceCtx, ReduceError, Side,
    VerifyOptions,
};
