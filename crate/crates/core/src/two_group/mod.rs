//! Finite 2-groups as explicit tables: crossed modules, strict and skeletal
//! 2-groups, generalized cocycles, the central-extension 2-group built from
//! a generalized cocycle, morphisms and 2-morphisms between such, skeleton
//! and band extraction.

mod crossed;
mod extension;
mod report;
mod tables;
mod verify;

pub use crossed::{
    discrete_2group, skeletal_2group_from_3cocycle, skeletal_2group_unchecked, strict_2group_from_crossed_module,
    verify_crossed_module, AbelianCrossedModule, CrossedModule, CrossedModuleSpec,
};
pub use extension::{
    cocycle_from_ordinary, extension_from_cocycle, extension_unchecked, morphism_from_pair, morphism_unchecked,
    skeleton_and_band, two_morphism_check, two_morphism_unchecked, Band, CentralExtensionSeq, CocycleMorphism,
    GeneralizedCocycle, GeneralizedCocycleSpec, PairMorphism,
};
pub use report::{AxiomClass, Report, Violation};
pub use tables::{Table, TwoGroup, TwoGroupMorphism};
pub use verify::{hidden_action_check, verify_2group, verify_morphism, verify_two_morphism};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::cohomology::CohomologyError;

/// Largest number of morphisms of a constructed 2-group.
pub const MAX_MORPHISMS: usize = 2048;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TwoGroupError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("invalid crossed module: {0}")]
    InvalidCrossedModule(Report),
    #[error("invalid input: {0}")]
    Invalid(Report),
    #[error("morphisms {0} and {1} are not composable")]
    NotComposable(usize, usize),
    #[error("2-group with {0} morphisms exceeds the limit of {MAX_MORPHISMS}")]
    TooLarge(usize),
    #[error("{0}")]
    Other(String),
}
