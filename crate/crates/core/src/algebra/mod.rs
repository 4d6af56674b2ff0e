//! Exact carriers for the discrete theory: finite groups as multiplication
//! tables, finitely generated abelian groups in invariant-factor form, their
//! homomorphisms and actions, and Smith-normal-form integer linear algebra.

mod abelian;
mod finite_group;
pub mod snf;

pub use abelian::{hom_decompose, AbelianHom, Element, FgAbelianGroup, GAction, HomDecomposition, HomSpec};
pub use finite_group::{verify_finite_group, FiniteGroup, FiniteGroupSpec, GroupViolation};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("a group must have at least one element")]
    EmptyGroup,
    #[error("table is not a group: {0:?}")]
    NotAGroup(Vec<GroupViolation>),
    #[error("invalid relabelling permutation (must be a bijection fixing 0)")]
    InvalidPermutation,
    #[error("invariant factor {0} must be at least 2")]
    InvalidInvariantFactor(i64),
    #[error("invariant factors {0} and {1} violate the divisibility chain")]
    DivisibilityChain(i64, i64),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("homomorphism is not well defined on torsion generator {0}")]
    IllDefinedHom(usize),
    #[error("mismatched groups in {0}")]
    Mismatch(&'static str),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("operation needs a finite group")]
    Infinite,
    #[error("integer overflow converting an exact result")]
    Overflow,
    #[error("missing {0}")]
    Missing(&'static str),
    #[error("input too large: {0}")]
    TooLarge(String),
}
