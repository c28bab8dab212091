//! Free resolutions of differential modules over graded commutative rings.
//!
//! A differential module is a graded module `D` with an endomorphism `∂` of
//! degree `a` and `∂² = 0`. The crate builds free flag resolutions of such
//! modules, deforms the minimal resolution of the homology into one,
//! minimizes free differential modules by unit-pivot elimination and
//! computes differential Betti numbers, all in exact arithmetic.
//!
//! ```
//! use dmres::prelude::*;
//!
//! let r = GradedRing::polynomial(&["x", "y"]);
//! let (x, y) = (r.var(0), r.var(1));
//! let d = GradedMatrix::new(
//!     &r,
//!     FreeModule::new(vec![0, 0]),
//!     FreeModule::new(vec![0, 0]),
//!     2,
//!     vec![
//!         vec![r.mul(&x, &y), r.neg(&r.mul(&x, &x))],
//!         vec![r.mul(&y, &y), r.neg(&r.mul(&x, &y))],
//!     ],
//! )
//! .unwrap();
//! assert!(d.compose(&r, &d).unwrap().is_zero());
//! ```

pub mod cancel;
pub mod cli;
pub mod diffmod;
pub mod error;
pub mod graded;
pub mod groebner;
pub mod linalg;
pub mod random;
pub mod report;
pub mod resolve;
pub mod ring;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::error::{Error, Result};
    pub use crate::graded::{FreeModule, GradedMatrix, HilbertFunction, PresentedModule};
    pub use crate::diffmod::{find_isomorphism, is_contractible, DMorphism, DifferentialModule};
    pub use crate::ring::{Field, GradedRing, Monomial, Polynomial, Scalar};
    pub use crate::resolve::{
        betti_dm, deformation_resolution, flag_resolution_cone, flag_resolution_stai, minimize, BettiMethod,
        FlagResolution, FreeFlag, Minimization,
    };
}
