use std::cmp::Ordering;

use num_traits::Zero;

use crate::ring::{GradedRing, Monomial, Polynomial, Scalar};

/// One term `coef * mono * e_pos` of a module vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub pos: usize,
    pub mono: Monomial,
    pub coef: Scalar,
}

/// Sparse vector in a graded free module over the polynomial ring, terms
/// strictly decreasing in the module order of its [`ModuleSpace`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ModVec {
    pub(crate) terms: Vec<Term>,
}

impl ModVec {
    pub fn zero() -> Self {
        ModVec { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Polynomial placed in component `pos`. Valid when the space orders
    /// positions only after monomials within a component (always true).
    pub fn from_poly(pos: usize, f: &Polynomial) -> Self {
        ModVec {
            terms: f
                .terms()
                .iter()
                .map(|(m, c)| Term {
                    pos,
                    mono: m.clone(),
                    coef: c.clone(),
                })
                .collect(),
        }
    }

    /// Component 0 as a polynomial (for rank-one spaces).
    pub fn into_poly(self) -> Polynomial {
        Polynomial::from_sorted_terms(self.terms.into_iter().map(|t| (t.mono, t.coef)).collect())
    }

    pub fn max_pos(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.pos).max()
    }
}

/// A graded free module `S(-j_1) + ... + S(-j_r)` over the polynomial ring
/// together with its module monomial order.
///
/// The order compares elimination class first (higher class is bigger),
/// then total degree `deg(m) + twist(pos)`, then the ring's monomial order,
/// then position (lower index is bigger). Within one class this is a
/// degree compatible term-over-position order.
#[derive(Clone, Debug)]
pub struct ModuleSpace<'r> {
    pub(crate) ring: &'r GradedRing,
    pub(crate) twists: Vec<i64>,
    pub(crate) classes: Vec<u32>,
}

impl<'r> ModuleSpace<'r> {
    pub fn new(ring: &'r GradedRing, twists: Vec<i64>) -> Self {
        let classes = vec![0; twists.len()];
        ModuleSpace {
            ring,
            twists,
            classes,
        }
    }

    pub fn with_classes(ring: &'r GradedRing, twists: Vec<i64>, classes: Vec<u32>) -> Self {
        assert_eq!(twists.len(), classes.len());
        ModuleSpace {
            ring,
            twists,
            classes,
        }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn ring(&self) -> &'r GradedRing {
        self.ring
    }

    pub fn term_degree(&self, pos: usize, mono: &Monomial) -> i64 {
        self.ring.monomial_degree(mono) + self.twists[pos]
    }

    pub fn cmp_terms(&self, p1: usize, m1: &Monomial, p2: usize, m2: &Monomial) -> Ordering {
        self.classes[p1]
            .cmp(&self.classes[p2])
            .then_with(|| self.term_degree(p1, m1).cmp(&self.term_degree(p2, m2)))
            .then_with(|| self.ring.cmp_monomials(m1, m2))
            .then_with(|| p2.cmp(&p1))
    }

    /// Degree of a homogeneous vector; `None` for zero.
    pub fn degree(&self, v: &ModVec) -> Option<i64> {
        v.lead().map(|t| self.term_degree(t.pos, &t.mono))
    }

    pub fn is_homogeneous(&self, v: &ModVec) -> bool {
        match self.degree(v) {
            None => true,
            Some(d) => v.terms.iter().all(|t| self.term_degree(t.pos, &t.mono) == d),
        }
    }

    /// Builds a vector from arbitrary terms.
    pub fn from_terms(&self, mut terms: Vec<Term>) -> ModVec {
        terms.sort_by(|a, b| self.cmp_terms(b.pos, &b.mono, a.pos, &a.mono));
        let field = self.ring.field();
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.pos == t.pos && l.mono == t.mono => {
                    l.coef = field.add(&l.coef, &t.coef);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coef.is_zero());
        ModVec { terms: out }
    }

    /// Vector from dense polynomial components.
    pub fn from_polys(&self, comps: &[Polynomial]) -> ModVec {
        let mut terms = Vec::new();
        for (pos, f) in comps.iter().enumerate() {
            for (m, c) in f.terms() {
                terms.push(Term {
                    pos,
                    mono: m.clone(),
                    coef: c.clone(),
                });
            }
        }
        self.from_terms(terms)
    }

    /// Vector from polynomial components placed at `offset..`.
    pub fn from_polys_at(&self, offset: usize, comps: &[Polynomial]) -> ModVec {
        let mut terms = Vec::new();
        for (i, f) in comps.iter().enumerate() {
            for (m, c) in f.terms() {
                terms.push(Term {
                    pos: offset + i,
                    mono: m.clone(),
                    coef: c.clone(),
                });
            }
        }
        self.from_terms(terms)
    }

    /// Dense components `lo..hi`, each sorted in the ring order. No
    /// quotient reduction is applied.
    pub fn to_polys_range(&self, v: &ModVec, lo: usize, hi: usize) -> Vec<Polynomial> {
        let mut comps: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); hi - lo];
        for t in &v.terms {
            if t.pos >= lo && t.pos < hi {
                comps[t.pos - lo].push((t.mono.clone(), t.coef.clone()));
            }
        }
        comps
            .into_iter()
            .map(|mut ts| {
                ts.sort_by(|a, b| self.ring.cmp_monomials(&b.0, &a.0));
                Polynomial::from_sorted_terms(ts)
            })
            .collect()
    }

    pub fn to_polys(&self, v: &ModVec) -> Vec<Polynomial> {
        self.to_polys_range(v, 0, self.rank())
    }

    /// `a + c * m * b`.
    pub fn add_scaled(&self, a: &ModVec, c: &Scalar, m: &Monomial, b: &ModVec) -> ModVec {
        let field = self.ring.field();
        let (x, y) = (&a.terms, &b.terms);
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        let next_b = |j: usize| Term {
            pos: y[j].pos,
            mono: y[j].mono.mul(m),
            coef: field.mul(c, &y[j].coef),
        };
        let mut pending: Option<Term> = if j < y.len() { Some(next_b(j)) } else { None };
        while i < x.len() {
            let Some(tb) = pending.as_ref() else { break };
            match self.cmp_terms(x[i].pos, &x[i].mono, tb.pos, &tb.mono) {
                Ordering::Greater => {
                    out.push(x[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = if j < y.len() { Some(next_b(j)) } else { None };
                }
                Ordering::Equal => {
                    let s = field.add(&x[i].coef, &tb.coef);
                    if !s.is_zero() {
                        out.push(Term {
                            pos: x[i].pos,
                            mono: x[i].mono.clone(),
                            coef: s,
                        });
                    }
                    i += 1;
                    j += 1;
                    pending = if j < y.len() { Some(next_b(j)) } else { None };
                }
            }
        }
        out.extend(x[i..].iter().cloned());
        if let Some(t) = pending {
            out.push(t);
            j += 1;
            while j < y.len() {
                out.push(next_b(j));
                j += 1;
            }
        }
        ModVec { terms: out }
    }

    pub fn add(&self, a: &ModVec, b: &ModVec) -> ModVec {
        let one = self.ring.field().one();
        self.add_scaled(a, &one, &Monomial::one(self.ring.nvars()), b)
    }

    pub fn sub(&self, a: &ModVec, b: &ModVec) -> ModVec {
        let m1 = self.ring.field().from_i64(-1);
        self.add_scaled(a, &m1, &Monomial::one(self.ring.nvars()), b)
    }

    pub fn scale(&self, c: &Scalar, v: &ModVec) -> ModVec {
        if c.is_zero() {
            return ModVec::zero();
        }
        let field = self.ring.field();
        ModVec {
            terms: v
                .terms
                .iter()
                .map(|t| Term {
                    pos: t.pos,
                    mono: t.mono.clone(),
                    coef: field.mul(c, &t.coef),
                })
                .collect(),
        }
    }

    /// `f * v` for a polynomial `f`.
    pub fn mul_poly(&self, f: &Polynomial, v: &ModVec) -> ModVec {
        let mut acc = ModVec::zero();
        for (m, c) in f.terms() {
            acc = self.add_scaled(&acc, c, m, v);
        }
        acc
    }

    /// Scales so the leading coefficient is one.
    pub fn make_monic(&self, v: &ModVec) -> ModVec {
        match v.lead() {
            None => v.clone(),
            Some(t) => {
                let inv = self.ring.field().inv(&t.coef).expect("nonzero lead");
                self.scale(&inv, v)
            }
        }
    }

    /// Re-embeds a vector into another space with the same positions.
    pub fn convert(&self, v: &ModVec) -> ModVec {
        self.from_terms(v.terms.clone())
    }

    /// Re-embeds with positions shifted by `offset`.
    pub fn shifted(&self, v: &ModVec, offset: usize) -> ModVec {
        self.from_terms(
            v.terms
                .iter()
                .map(|t| Term {
                    pos: t.pos + offset,
                    mono: t.mono.clone(),
                    coef: t.coef.clone(),
                })
                .collect(),
        )
    }

    /// Keeps positions in `lo..hi`, shifted down by `lo`.
    pub fn restrict(&self, v: &ModVec, lo: usize, hi: usize) -> ModVec {
        self.from_terms(
            v.terms
                .iter()
                .filter(|t| t.pos >= lo && t.pos < hi)
                .map(|t| Term {
                    pos: t.pos - lo,
                    mono: t.mono.clone(),
                    coef: t.coef.clone(),
                })
                .collect(),
        )
    }
}
