//! Generalized group cohomology with values in abelian crossed modules,
//! explicit finite 2-groups and their central extensions, and a numerical
//! engine that integrates Lie algebra 2-cocycles to locally smooth
//! generalized group cocycles on charted Lie groups.

pub mod algebra;
pub mod lie;
pub mod cohomology;
pub mod two_group;
