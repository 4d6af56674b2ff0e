//! Smooth side: charted Lie groups, the integration construction of
//! smooth group cocycles from Lie algebra cocycles, and the finite
//! difference maps back to the algebra.

pub mod algebra;
pub mod bracket;
pub mod covering;
pub mod group;
pub mod integrate;
pub mod matrix;
pub mod quadrature;
pub mod simplex;

use serde::{Deserialize, Serialize};

pub use algebra::{Bilinear, LieAlgebra, LieAlgebraCocycle};
pub use group::{builtin, Additive, AdditiveChart, ChartedLieGroup, Circle, Element, Heisenberg, Su2, U2};
pub use simplex::{alpha, beta, chart_simplices, gamma, SimplexKind, SimplexMap};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LieError {
    #[error("{context}: point {point:?} leaves the chart domain")]
    DomainEscape { context: String, point: Vec<f64> },
    #[error("non-finite value in {0}")]
    NonFinite(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a Lie algebra: {0}")]
    NotALieAlgebra(String),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("sphere boundary is not constant at e (deviation {0:e})")]
    BoundaryNotConstant(f64),
    #[error("resolution too coarse: {0}")]
    ResolutionTooCoarse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Quadrature order per axis and the finite-difference step used for
/// tangent vectors of parametrized simplices.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadSpec {
    pub order: usize,
    pub tangent_step: f64,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec { order: 10, tangent_step: 1e-5 }
    }
}
