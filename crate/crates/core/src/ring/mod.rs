//! Exact arithmetic for graded polynomial rings and their quotients.

mod graded_ring;
mod monomial;
mod poly;
mod scalar;

pub use graded_ring::{GradedRing, PolyOp};
pub use monomial::{monomials_of_degree, Monomial, MonomialOrder};
pub use poly::{PolyDegree, Polynomial};
pub use scalar::{format_scalar, scalar_to_i64, Field, Scalar};
