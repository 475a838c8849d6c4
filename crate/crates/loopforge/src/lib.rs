//! Computational algebra for finite loops given by Cayley tables.
//!
//! The crate covers: validated loop tables and their translation
//! permutations, inner mappings and the groups they generate, the
//! deviation calculus with its vanishing condition, isotopism testing,
//! a theorem-verification harness over all of it, and exhaustive
//! search/enumeration of small-order loops.

pub mod deviation;
pub mod error;
pub mod groups;
pub mod inner;
pub mod perm;
pub mod report;
pub mod search;
pub mod table;
pub mod theorems;

pub use error::{Error, Result};
pub use perm::{MappingTriple, PermGroup, Permutation};
pub use report::{ClassificationReport, ClauseStatus, LoopFlag, TheoremReport};
pub use search::{
    are_isomorphic, canonical_form, count_loops, enumerate_loops, enumerate_loops_parallel,
    find_witnesses, find_witnesses_with_workers, isomorphism_classes, InnerCondition, IsoClass,
    LoopEnumerator, Witness, WitnessQuery, DEFAULT_ENUMERATION_CAP, MAX_ENUMERATION_ORDER,
};
pub use table::{LoopTable, Side};
pub use theorems::{
    analyze_inner_triple, verify_theorem, Arrangement, GradeOptions, InnerLabels, TheoremId,
    TheoremInstance,
};
