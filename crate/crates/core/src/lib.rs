//! Involutory permutation polynomials over finite fields.
//!
//! The crate builds eight families of self-inverse permutation polynomials
//! from closed-form coefficient formulas and verifies every behavioral
//! claim exhaustively:
//!
//! - [`field`]: `F_q` arithmetic on element indices, generators, and
//!   discrete-log tables.
//! - [`poly`]: canonical sparse polynomials with text round-trip, two
//!   independent evaluation routes, and coefficient reversal.
//! - [`construct`]: the family constructors and their parameter recipes.
//! - [`analyze`]: permutation maps, cycle structure, independent behavioral
//!   oracles, and claim verification reports.

pub mod analyze;
pub mod construct;
pub mod field;
pub mod poly;

pub use analyze::{
    behavior_oracle, diff_oracle, mu_subgroup, verify_adhoc, verify_claim, AnalyzeError,
    ClaimReport, CycleType, OracleVerdict, PermutationMap,
};
pub use construct::{
    h1, h2, t1, t2, t3, t7, t7_in_window, t7_params, t8, unit_group_splits, ConstructError,
    Construction, Family, Params, Recipe, T3Variant, T8Case,
};
pub use field::{
    configured_qlimit, factorize, is_prime, DlogTable, Field, FieldElement, FieldError,
    FieldSpec, DEFAULT_QLIMIT,
};
pub use poly::{PolyError, SparsePoly};
