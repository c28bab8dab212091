use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::scalar::Scalar;

/// Sparse polynomial: terms with nonzero coefficients, monomials strictly
/// decreasing in the owning ring's monomial order.
///
/// A polynomial does not know its ring; arithmetic goes through
/// [`GradedRing`](super::GradedRing), which keeps this invariant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    pub(crate) terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    /// Builds from terms that are already sorted, deduplicated and nonzero.
    pub(crate) fn from_sorted_terms(terms: Vec<(Monomial, Scalar)>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.as_constant(), Some(c) if c.is_one())
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// Part of the polynomial of degree zero (the image in `k = R/m`).
    pub fn constant_term(&self) -> Scalar {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }
}

/// Weighted degree information of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyDegree {
    /// Homogeneous of this degree.
    Degree(i64),
    /// Terms of different degrees.
    Inhomogeneous,
    /// The zero polynomial, homogeneous of any degree.
    Any,
}

impl PolyDegree {
    /// Whether the polynomial may be used as an entry of the given degree.
    pub fn fits(&self, d: i64) -> bool {
        match self {
            PolyDegree::Degree(e) => *e == d,
            PolyDegree::Any => true,
            PolyDegree::Inhomogeneous => false,
        }
    }
}
