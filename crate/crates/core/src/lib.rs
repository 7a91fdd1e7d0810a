//! Numerical toolkit for Euclidean Jordan algebras and their symmetric cones.
//!
//! Two concrete simple algebras are implemented: the real symmetric matrices
//! `S_r(R)` under the symmetrized matrix product, and the Lorentz algebra
//! `R x R^n`. On top of the shared [`Element`]/[`Operator`] layer sit the
//! spectral and Peirce decompositions, Frobenius transformations, the
//! triangular (generalized Cholesky) decomposition, principal minors and
//! power functions, and the [`cauchy`] verification lab, which measures
//! residuals of logarithmic Cauchy functional equations under the two
//! standard multiplication algorithms of the cone.

pub mod cauchy;
pub mod descriptor;
pub mod element;
pub mod error;
pub mod json;
mod linalg;
pub mod lorentz;
pub mod operator;
pub mod peirce;
pub mod sym_real;
pub mod tolerance;
pub mod triangular;

pub use descriptor::{AlgebraDescriptor, AlgebraKind};
pub use element::Element;
pub use error::{Error, Result};
pub use operator::Operator;
pub use tolerance::Tolerance;
