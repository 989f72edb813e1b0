//! Exact arithmetic kernel: rationals, linear algebra over the rationals,
//! and univariate/bivariate polynomial arithmetic (gcd, resultants,
//! squarefree and coprime parts, affine substitution, rational roots).

pub mod bipoly;
pub mod matrix;
pub mod rat;
pub mod roots;
pub mod unipoly;

pub use bipoly::{gcd_bi, resultant_y, squarefree_part, substitute_affine, BiPoly};
pub use matrix::{QMatrix, Rref};
pub use rat::{parse_rat, rat, rat_int, Rat};
pub use roots::{rational_roots, RationalRoots};
pub use unipoly::{coprime_part, gcd_uni, squarefree_uni, UniPoly};

use thiserror::Error;

/// Errors raised by kernel operations with explicit preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QpolyError {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("resultant requires both operands nonzero with positive y-degree")]
    ResultantDegree,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("affine change of coordinates must be 2x2, got {rows}x{cols}")]
    ChangeShape { rows: usize, cols: usize },
    #[error("affine change of coordinates is singular")]
    SingularChange,
}
