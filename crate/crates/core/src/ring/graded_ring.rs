use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use super::monomial::{monomials_of_degree, Monomial, MonomialOrder};
use super::poly::{PolyDegree, Polynomial};
use super::scalar::{format_scalar, Field, Scalar};
use crate::error::{Error, Result};
use crate::groebner::{ModVec, ModuleSpace};

/// `k[x_1..x_n] / I` with positive variable degrees.
///
/// The quotient ideal is stored with its reduced Groebner basis; every
/// polynomial produced by this ring is in normal form with respect to it.
#[derive(Clone, Debug)]
pub struct GradedRing {
    names: Vec<String>,
    degrees: Vec<i64>,
    field: Field,
    order: MonomialOrder,
    quotient_gens: Vec<Polynomial>,
    quotient_gb: Vec<Polynomial>,
}

impl PartialEq for GradedRing {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.degrees == other.degrees
            && self.field == other.field
            && self.order == other.order
            && self.quotient_gb == other.quotient_gb
    }
}

/// The four arithmetic operations exposed by [`GradedRing::poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    /// Multiply `g` by the constant `f`.
    ScalarMul,
}

impl GradedRing {
    pub fn new(
        names: Vec<String>,
        degrees: Vec<i64>,
        field: Field,
        order: MonomialOrder,
    ) -> Result<Self> {
        if names.len() != degrees.len() {
            return Err(Error::Shape(format!(
                "{} variables but {} degrees",
                names.len(),
                degrees.len()
            )));
        }
        if let Some(d) = degrees.iter().find(|&&d| d < 1) {
            return Err(Error::InvalidArgument(format!(
                "variable degrees must be positive, got {d}"
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidArgument(format!("duplicate variable {n}")));
            }
        }
        Ok(GradedRing {
            names,
            degrees,
            field,
            order,
            quotient_gens: Vec::new(),
            quotient_gb: Vec::new(),
        })
    }

    /// Standard graded `Q[names]` with grevlex.
    pub fn polynomial(names: &[&str]) -> Self {
        Self::new(
            names.iter().map(|s| s.to_string()).collect(),
            vec![1; names.len()],
            Field::Rational,
            MonomialOrder::GRevLex,
        )
        .expect("valid ring")
    }

    /// Passes to the quotient by homogeneous generators.
    pub fn with_quotient(&self, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if matches!(self.degree_of(g), PolyDegree::Inhomogeneous) {
                return Err(Error::Inhomogeneous(format!(
                    "quotient generator {}",
                    self.format_poly(g)
                )));
            }
        }
        let base = GradedRing {
            quotient_gens: Vec::new(),
            quotient_gb: Vec::new(),
            ..self.clone()
        };
        let mut out = base.clone();
        let space = ModuleSpace::new(&base, vec![0]);
        let vecs: Vec<ModVec> = gens
            .iter()
            .map(|g| ModVec::from_poly(0, g))
            .collect();
        let gb = crate::groebner::buchberger_vectors(&space, vecs)?;
        out.quotient_gb = gb.into_iter().map(|v| v.into_poly()).collect();
        out.quotient_gens = gens;
        Ok(out)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_quotient(&self) -> bool {
        !self.quotient_gb.is_empty()
    }

    pub fn quotient_generators(&self) -> &[Polynomial] {
        &self.quotient_gens
    }

    /// Reduced Groebner basis of the quotient ideal (monic).
    pub fn quotient_basis(&self) -> &[Polynomial] {
        &self.quotient_gb
    }

    /// Same ring without the quotient.
    pub fn ambient(&self) -> GradedRing {
        GradedRing {
            quotient_gens: Vec::new(),
            quotient_gb: Vec::new(),
            ..self.clone()
        }
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(&self.degrees, a, b)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> i64 {
        m.weighted_degree(&self.degrees)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        let c = self.field.normalize(c);
        if c.is_zero() {
            return Polynomial::zero();
        }
        self.reduce(Polynomial::from_sorted_terms(vec![(
            Monomial::one(self.nvars()),
            c,
        )]))
    }

    pub fn from_i64(&self, v: i64) -> Polynomial {
        self.constant(self.field.from_i64(v))
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.reduce(Polynomial::from_sorted_terms(vec![(
            Monomial::var(self.nvars(), i),
            self.field.one(),
        )]))
    }

    pub fn var_by_name(&self, name: &str) -> Option<Polynomial> {
        self.names.iter().position(|n| n == name).map(|i| self.var(i))
    }

    /// Single term `c * m`, reduced.
    pub fn term(&self, c: Scalar, m: Monomial) -> Polynomial {
        let c = self.field.normalize(c);
        if c.is_zero() {
            return Polynomial::zero();
        }
        self.reduce(Polynomial::from_sorted_terms(vec![(m, c)]))
    }

    /// Builds a polynomial from arbitrary (unsorted, possibly repeated)
    /// terms.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Polynomial {
        let mut v: Vec<(Monomial, Scalar)> = terms.into_iter().collect();
        v.sort_by(|a, b| self.cmp_monomials(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = self.field.add(lc, &c),
                _ => out.push((m, self.field.normalize(c))),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        self.reduce(Polynomial::from_sorted_terms(out))
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.combine(f, g, |a| a.clone(), |b| b.clone(), |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.combine(
            f,
            g,
            |a| a.clone(),
            |b| self.field.neg(b),
            |a, b| self.field.sub(a, b),
        )
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        Polynomial::from_sorted_terms(
            f.terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        )
    }

    pub fn scalar_mul(&self, c: &Scalar, f: &Polynomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial::from_sorted_terms(
            f.terms
                .iter()
                .map(|(m, d)| (m.clone(), self.field.mul(c, d)))
                .collect(),
        )
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        if f.is_zero() || g.is_zero() {
            return Polynomial::zero();
        }
        if f.terms.len() == 1 {
            let (m, c) = &f.terms[0];
            return self.mul_term(c, m, g);
        }
        if g.terms.len() == 1 {
            let (m, c) = &g.terms[0];
            return self.mul_term(c, m, f);
        }
        let mut terms = Vec::with_capacity(f.terms.len() * g.terms.len());
        for (m1, c1) in &f.terms {
            for (m2, c2) in &g.terms {
                terms.push((m1.mul(m2), self.field.mul(c1, c2)));
            }
        }
        self.from_terms(terms)
    }

    /// `c * m * f`, reduced.
    pub fn mul_term(&self, c: &Scalar, m: &Monomial, f: &Polynomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let terms = f
            .terms
            .iter()
            .map(|(n, d)| (n.mul(m), self.field.mul(c, d)))
            .collect();
        self.reduce(Polynomial::from_sorted_terms(terms))
    }

    pub fn pow(&self, f: &Polynomial, e: u32) -> Polynomial {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// Checked arithmetic on polynomials that may come from elsewhere.
    pub fn poly_arith(&self, op: PolyOp, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check_member(f)?;
        self.check_member(g)?;
        let f = self.reduce(f.clone());
        let g = self.reduce(g.clone());
        Ok(match op {
            PolyOp::Add => self.add(&f, &g),
            PolyOp::Sub => self.sub(&f, &g),
            PolyOp::Mul => self.mul(&f, &g),
            PolyOp::ScalarMul => {
                let c = f.as_constant().ok_or_else(|| {
                    Error::InvalidArgument("scalar multiplication by a non-constant".into())
                })?;
                self.scalar_mul(&c, &g)
            }
        })
    }

    /// Verifies that a polynomial is well formed for this ring.
    pub fn check_member(&self, f: &Polynomial) -> Result<()> {
        for (i, (m, c)) in f.terms.iter().enumerate() {
            if m.nvars() != self.nvars() {
                return Err(Error::RingMismatch(format!(
                    "monomial with {} exponents in a ring with {} variables",
                    m.nvars(),
                    self.nvars()
                )));
            }
            if c.is_zero() || !self.field.is_canonical(c) {
                return Err(Error::RingMismatch(format!(
                    "coefficient {} is not canonical over {}",
                    format_scalar(c),
                    self.field
                )));
            }
            if i > 0 && self.cmp_monomials(&f.terms[i - 1].0, m) != Ordering::Greater {
                return Err(Error::RingMismatch("terms out of order".into()));
            }
        }
        Ok(())
    }

    pub fn degree_of(&self, f: &Polynomial) -> PolyDegree {
        let mut it = f.terms.iter().map(|(m, _)| self.monomial_degree(m));
        match it.next() {
            None => PolyDegree::Any,
            Some(d) => {
                if it.all(|e| e == d) {
                    PolyDegree::Degree(d)
                } else {
                    PolyDegree::Inhomogeneous
                }
            }
        }
    }

    /// True iff `f` is a nonzero constant. For homogeneous elements of a
    /// positively graded ring with `R_0 = k` this is exactly unit-ness.
    pub fn is_unit(&self, f: &Polynomial) -> bool {
        matches!(f.as_constant(), Some(c) if !c.is_zero())
    }

    /// Normal form modulo the quotient ideal.
    pub fn reduce(&self, f: Polynomial) -> Polynomial {
        if self.quotient_gb.is_empty() || f.is_zero() {
            return f;
        }
        if !f
            .terms
            .iter()
            .any(|(m, _)| self.quotient_gb.iter().any(|g| g.terms[0].0.divides(m)))
        {
            return f;
        }
        let mut rest = f.terms;
        let mut out: Vec<(Monomial, Scalar)> = Vec::new();
        while !rest.is_empty() {
            let (m, c) = rest[0].clone();
            let divisor = self
                .quotient_gb
                .iter()
                .find(|g| g.terms[0].0.divides(&m));
            match divisor {
                None => {
                    out.push((m, c));
                    rest.remove(0);
                }
                Some(g) => {
                    // g is monic
                    let q = g.terms[0].0.quotient_of(&m);
                    let sub: Vec<(Monomial, Scalar)> = g.terms[1..]
                        .iter()
                        .map(|(n, d)| (n.mul(&q), self.field.neg(&self.field.mul(&c, d))))
                        .collect();
                    let tail = Polynomial::from_sorted_terms(rest.split_off(1));
                    let merged = self.add(&tail, &Polynomial::from_sorted_terms(sub));
                    rest = merged.terms;
                }
            }
        }
        Polynomial::from_sorted_terms(out)
    }

    /// Standard monomials of the quotient in the given degree are not
    /// needed by callers; this enumerates all monomials of `k[x]`.
    pub fn monomials_of_degree(&self, d: i64) -> Vec<Monomial> {
        monomials_of_degree(&self.degrees, d)
    }

    fn combine(
        &self,
        f: &Polynomial,
        g: &Polynomial,
        left: impl Fn(&Scalar) -> Scalar,
        right: impl Fn(&Scalar) -> Scalar,
        both: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Polynomial {
        let (a, b) = (&f.terms, &g.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.cmp_monomials(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push((a[i].0.clone(), left(&a[i].1)));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), right(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = both(&a[i].1, &b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().map(|(m, c)| (m.clone(), left(c))));
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), right(c))));
        Polynomial::from_sorted_terms(out)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exps()
            .iter()
            .zip(&self.names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Canonical text form: `x^2*y - 3/2*x*z + 1`.
    pub fn format_poly(&self, f: &Polynomial) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in f.terms.iter().enumerate() {
            let neg = matches!(self.field, Field::Rational) && c < &Scalar::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let one = abs == Scalar::from_integer(1.into());
            if m.is_one() {
                s.push_str(&format_scalar(&abs));
            } else if one {
                s.push_str(&self.format_monomial(m));
            } else {
                s.push_str(&format_scalar(&abs));
                s.push('*');
                s.push_str(&self.format_monomial(m));
            }
        }
        s
    }

    /// Ring header in the artifact format.
    pub fn describe(&self) -> String {
        let mut s = format!("{}[{}]", self.field, self.names.join(","));
        s.push_str(&format!(
            " degrees [{}]",
            self.degrees
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ));
        if self.order != MonomialOrder::GRevLex {
            s.push_str(&format!(" order {}", self.order.name()));
        }
        if !self.quotient_gens.is_empty() {
            s.push_str(&format!(
                " mod [{}]",
                self.quotient_gens
                    .iter()
                    .map(|g| self.format_poly(g))
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        }
        s
    }
}

impl fmt::Display for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qxy() -> GradedRing {
        GradedRing::polynomial(&["x", "y"])
    }

    #[test]
    fn difference_of_squares() {
        let r = qxy();
        let (x, y) = (r.var(0), r.var(1));
        let p = r.mul(&r.add(&x, &y), &r.sub(&x, &y));
        let expect = r.sub(&r.mul(&x, &x), &r.mul(&y, &y));
        assert_eq!(p, expect);
        assert_eq!(r.format_poly(&p), "x^2 - y^2");
    }

    #[test]
    fn dual_numbers_square_to_zero() {
        let r = GradedRing::polynomial(&["x"]);
        let x = r.var(0);
        let r = r.with_quotient(vec![r.mul(&x, &x)]).unwrap();
        let x = r.var(0);
        assert!(r.mul(&x, &x).is_zero());
        assert_eq!(r.poly_arith(PolyOp::Mul, &x, &x).unwrap(), r.zero());
    }

    #[test]
    fn add_zero_is_identity() {
        let r = qxy();
        let f = r.sub(&r.mul(&r.var(0), &r.var(1)), &r.from_i64(3));
        assert_eq!(r.poly_arith(PolyOp::Add, &f, &r.zero()).unwrap(), f);
    }

    #[test]
    fn degrees_and_units() {
        let r = qxy();
        let (x, y) = (r.var(0), r.var(1));
        let x2y = r.mul(&r.mul(&x, &x), &y);
        assert_eq!(r.degree_of(&x2y), PolyDegree::Degree(3));
        assert_eq!(r.degree_of(&r.add(&x, &r.mul(&y, &y))), PolyDegree::Inhomogeneous);
        assert_eq!(r.degree_of(&r.zero()), PolyDegree::Any);
        assert!(r.is_unit(&r.constant(Field::Rational.from_ratio(3, 2))));
        assert!(!r.is_unit(&x));
        assert!(!r.is_unit(&r.zero()));
    }

    #[test]
    fn ring_mismatch_detected() {
        let r = qxy();
        let other = GradedRing::polynomial(&["x", "y", "z"]);
        let z = other.var(2);
        assert!(matches!(
            r.poly_arith(PolyOp::Add, &z, &r.var(0)),
            Err(Error::RingMismatch(_))
        ));
    }

    #[test]
    fn weighted_degrees() {
        let r = GradedRing::new(
            vec!["x".into(), "y".into()],
            vec![1, 2],
            Field::Rational,
            MonomialOrder::GRevLex,
        )
        .unwrap();
        let f = r.mul(&r.var(0), &r.var(1));
        assert_eq!(r.degree_of(&f), PolyDegree::Degree(3));
        assert!(GradedRing::new(vec!["x".into()], vec![0], Field::Rational, MonomialOrder::Lex).is_err());
    }
}
