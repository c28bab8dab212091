//! Coefficient fields: exact rationals, or a prime field `F_p`.
//!
//! Every coefficient is stored as a [`Scalar`] (an arbitrary precision
//! rational). Over `F_p` the field keeps values canonical as integers in
//! `[0, p)`, so a single representation serves both fields and all
//! arithmetic goes through the [`Field`] descriptor.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// A coefficient. Canonical form is maintained by [`Field`].
pub type Scalar = BigRational;

/// Coefficient field descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[derive(Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}


impl Field {
    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.normalize(Scalar::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Scalar {
        self.normalize(Scalar::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Brings an arbitrary rational into canonical form for this field.
    ///
    /// Over `F_p` the denominator is inverted modulo `p`; a denominator
    /// divisible by `p` is a caller error and panics.
    pub fn normalize(&self, v: Scalar) -> Scalar {
        match self {
            Field::Rational => v,
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let num = v.numer().mod_floor(&p);
                let den = v.denom().mod_floor(&p);
                assert!(!den.is_zero(), "denominator divisible by the characteristic");
                let inv = mod_inverse(&den, &p);
                Scalar::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    pub fn is_canonical(&self, v: &Scalar) -> bool {
        match self {
            Field::Rational => true,
            Field::Prime(p) => v.is_integer() && !v.is_negative() && v.numer() < &BigInt::from(*p),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rational => a + b,
            Field::Prime(_) => self.reduce_int(a.numer() + b.numer()),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rational => a - b,
            Field::Prime(_) => self.reduce_int(a.numer() - b.numer()),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rational => a * b,
            Field::Prime(_) => self.reduce_int(a.numer() * b.numer()),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rational => -a,
            Field::Prime(_) => self.reduce_int(-a.numer()),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        Some(match self {
            Field::Rational => a.recip(),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                Scalar::from_integer(mod_inverse(a.numer(), &p))
            }
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    fn reduce_int(&self, v: BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::from_integer(v),
            Field::Prime(p) => Scalar::from_integer(v.mod_floor(&BigInt::from(*p))),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    assert!(e.gcd.is_one(), "no inverse modulo {p}");
    e.x.mod_floor(p)
}

/// Formats a scalar as `p/q` or `p`.
pub fn format_scalar(v: &Scalar) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Small-integer view of a scalar, used by tests and random generators.
pub fn scalar_to_i64(v: &Scalar) -> Option<i64> {
    if v.is_integer() {
        v.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_canonical() {
        let q = Field::Rational;
        let a = q.from_ratio(2, -4);
        assert_eq!(format_scalar(&a), "-1/2");
        assert_eq!(q.mul(&a, &q.from_i64(-2)), q.one());
    }

    #[test]
    fn prime_field_arith() {
        let f = Field::Prime(7);
        let a = f.from_i64(-1);
        assert_eq!(a, f.from_i64(6));
        let h = f.from_ratio(1, 2);
        assert_eq!(f.mul(&h, &f.from_i64(2)), f.one());
        assert!(f.is_canonical(&h));
        assert_eq!(f.inv(&f.zero()), None);
        assert_eq!(f.add(&f.from_i64(5), &f.from_i64(4)), f.from_i64(2));
    }
}
