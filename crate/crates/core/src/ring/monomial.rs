use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Exponent vector of a monomial. Its length is fixed by the ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn weighted_degree(&self, degrees: &[i64]) -> i64 {
        self.0
            .iter()
            .zip(degrees)
            .map(|(&e, &d)| e as i64 * d)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Monomial order on the polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Weighted degree, ties broken by reverse lexicographic order.
    #[default]
    GRevLex,
    /// Pure lexicographic with `x_1 > x_2 > ...`.
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, degrees: &[i64], a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::GRevLex => {
                let da = a.weighted_degree(degrees);
                let db = b.weighted_degree(degrees);
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.0.iter().zip(&b.0).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
            MonomialOrder::Lex => a.0.cmp(&b.0),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::GRevLex => "grevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

/// All exponent vectors of the given weighted degree, in descending
/// lexicographic order of exponents.
pub fn monomials_of_degree(degrees: &[i64], d: i64) -> Vec<Monomial> {
    fn rec(degrees: &[i64], idx: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if idx == degrees.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(cur));
            }
            return;
        }
        let w = degrees[idx];
        let mut e = left / w;
        loop {
            cur.push(e as u32);
            rec(degrees, idx + 1, left - e * w, cur, out);
            cur.pop();
            if e == 0 {
                break;
            }
            e -= 1;
        }
    }
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    if degrees.is_empty() {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(degrees, 0, d, &mut Vec::with_capacity(degrees.len()), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        let deg = [1, 1, 1];
        let o = MonomialOrder::GRevLex;
        let x = Monomial::from_exponents(&[1, 0, 0]);
        let y = Monomial::from_exponents(&[0, 1, 0]);
        let z = Monomial::from_exponents(&[0, 0, 1]);
        assert_eq!(o.cmp(&deg, &x, &y), Ordering::Greater);
        assert_eq!(o.cmp(&deg, &y, &z), Ordering::Greater);
        // x*z < y^2 in grevlex
        let xz = x.mul(&z);
        let yy = y.mul(&y);
        assert_eq!(o.cmp(&deg, &xz, &yy), Ordering::Less);
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(monomials_of_degree(&[1, 1], 4).len(), 5);
        assert_eq!(monomials_of_degree(&[1, 1, 1], 3).len(), 10);
        assert_eq!(monomials_of_degree(&[1, 2], 4).len(), 3);
        assert!(monomials_of_degree(&[1], -1).is_empty());
        assert_eq!(monomials_of_degree(&[], 0).len(), 1);
    }
}
