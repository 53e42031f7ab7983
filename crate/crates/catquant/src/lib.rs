//! Finite categories, arrow-field monoids, and Hilbert-presheaf operator
//! representations.
//!
//! This crate builds small categories whose objects are structured sets
//! (causal sets, finite topological spaces, group orbits), forms the monoid
//! of arrow fields over them, and represents the resulting category
//! quantisation monoid by concrete complex matrices on a direct sum of
//! per-object Hilbert spaces. Every algebraic law involved is small enough
//! to check by exhaustive enumeration, and the crate does exactly that:
//! categories, presheaves and representations all come with validators that
//! re-derive the laws case by case and report each counterexample.
//!
//! The modules follow the pipeline:
//!
//! * [`category`] — finite categories with explicit composition tables and
//!   an exhaustive axiom validator;
//! * [`structures`] — finite posets, topologies and group actions, plus the
//!   poset/T0-topology correspondence;
//! * [`generators`] — categories of monotone maps, continuous maps, group
//!   translations, chains, and the built-in worked examples;
//! * [`arrow_field`] — the arrow-field monoid, its object action, and
//!   exhaustive monoid-law checks;
//! * [`presheaf`] — presheaves of finite-dimensional Hilbert spaces,
//!   sections, and the counting inner product;
//! * [`rep`] — operator matrices for arrow fields and configuration
//!   functions, adjoints, momentum decompositions, and irreducibility
//!   diagnostics (separation, connectedness, commutant dimension).

pub mod arrow_field;
pub mod category;
pub mod generators;
pub mod linalg;
pub mod presheaf;
pub mod rep;
pub mod report;
pub mod structures;

pub use arrow_field::{
    combine, delta_field, enumerate_arrow_fields, field_count, identity_field, rho, ArrowField,
};
pub use category::{ArrowId, FiniteCategory, ObjectId, ValidationReport};
pub use linalg::{CMat, C64};
pub use presheaf::{
    inner_product, set_presheaf, trivial_presheaf, validate_presheaf, HilbertPresheaf, Section,
};
pub use rep::{
    a_op, adjoint_formula_check, alpha_op, beta_hat_op, beta_mom_op, commutant_dimension,
    connected_components, cqm_rep, multiplier_check, separation_report, v_op, ConfigFunction,
    CqmElement, OperatorMatrix,
};
pub use report::CheckReport;
