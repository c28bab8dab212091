//! The degreewise oracle: graded pieces as vector spaces on monomial bases.
//!
//! Nothing here uses Groebner bases. A module `coker(N)` over `S/I` is
//! modelled in degree `d` as `S^t_d / (N_d + I S^t_d)`, where `N_d` is
//! spanned by monomial multiples of the relations and `I` enters through
//! its given generators.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::matrix::GradedMatrix;
use super::presented::PresentedModule;
use crate::linalg::{Echelon, SparseRow};
use crate::ring::{GradedRing, Monomial, Polynomial};

/// Dimensions `dim_k M_d` for `d` in `lo..=hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertFunction {
    lo: i64,
    hi: i64,
    values: Vec<i64>,
}

impl HilbertFunction {
    pub fn new(lo: i64, hi: i64, values: Vec<i64>) -> Self {
        assert_eq!(values.len() as i64, (hi - lo + 1).max(0));
        HilbertFunction { lo, hi, values }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Value at `d`; `None` outside the computed range.
    pub fn get(&self, d: i64) -> Option<i64> {
        (self.lo..=self.hi)
            .contains(&d)
            .then(|| self.values[(d - self.lo) as usize])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.lo..=self.hi).zip(self.values.iter().copied())
    }
}

/// Monomial basis of `(S(-t_1) + ... + S(-t_r))_d`.
struct Slice {
    index: HashMap<(usize, Monomial), usize>,
}

impl Slice {
    fn new(ring: &GradedRing, twists: &[i64], d: i64) -> Self {
        let mut index = HashMap::new();
        for (pos, t) in twists.iter().enumerate() {
            for m in ring.monomials_of_degree(d - t) {
                let n = index.len();
                index.insert((pos, m), n);
            }
        }
        Slice { index }
    }

    fn dim(&self) -> usize {
        self.index.len()
    }

    fn row(&self, shift: &Monomial, v: &[Polynomial]) -> SparseRow {
        let mut row = Vec::new();
        for (pos, f) in v.iter().enumerate() {
            for (m, c) in f.terms() {
                let key = (pos, m.mul(shift));
                let col = *self.index.get(&key).expect("homogeneous vector in its degree");
                row.push((col, c.clone()));
            }
        }
        row.sort_by_key(|(c, _)| *c);
        row
    }
}

/// Oracle model of `coker(N)` over `S/I` on a range of degrees.
pub struct Oracle<'r> {
    ring: &'r GradedRing,
    twists: Vec<i64>,
    relations: Vec<(i64, Vec<Polynomial>)>,
    cache: BTreeMap<i64, (Slice, Echelon)>,
}

impl<'r> Oracle<'r> {
    /// `relations` are vectors in the free module with their degrees.
    pub fn new(ring: &'r GradedRing, twists: Vec<i64>, relations: Vec<(i64, Vec<Polynomial>)>) -> Self {
        let mut relations = relations;
        for g in ring.quotient_generators() {
            let Some(e) = degree_of(ring, g) else { continue };
            for (pos, t) in twists.iter().enumerate() {
                let mut v = vec![Polynomial::zero(); twists.len()];
                v[pos] = g.clone();
                relations.push((e + t, v));
            }
        }
        relations.retain(|(_, v)| v.iter().any(|f| !f.is_zero()));
        Oracle {
            ring,
            twists,
            relations,
            cache: BTreeMap::new(),
        }
    }

    pub fn for_module(ring: &'r GradedRing, m: &PresentedModule) -> Self {
        let rel = m.relations();
        let relations = (0..rel.ncols())
            .map(|j| (rel.source().twist(j), rel.column(j)))
            .collect();
        Oracle::new(ring, m.generators().twists().to_vec(), relations)
    }

    fn multiples(&self, slice: &Slice, d: i64, vectors: &[(i64, Vec<Polynomial>)]) -> Vec<SparseRow> {
        let mut rows = Vec::new();
        for (e, v) in vectors {
            for m in self.ring.monomials_of_degree(d - e) {
                rows.push(slice.row(&m, v));
            }
        }
        rows
    }

    fn ensure(&mut self, d: i64) {
        if self.cache.contains_key(&d) {
            return;
        }
        let slice = Slice::new(self.ring, &self.twists, d);
        let mut ech = Echelon::new(self.ring.field().clone());
        for r in self.multiples(&slice, d, &self.relations) {
            ech.insert(&r);
        }
        self.cache.insert(d, (slice, ech));
    }

    /// `dim_k M_d`.
    pub fn dim(&mut self, d: i64) -> i64 {
        self.ensure(d);
        let (slice, ech) = &self.cache[&d];
        slice.dim() as i64 - ech.rank() as i64
    }

    /// Rank of the span of `vectors` (with degrees) in `M_d`.
    pub fn span_rank(&mut self, d: i64, vectors: &[(i64, Vec<Polynomial>)]) -> i64 {
        self.ensure(d);
        let (slice, ech) = &self.cache[&d];
        let mut e = ech.clone();
        let base = e.rank();
        for r in self.multiples(slice, d, vectors) {
            e.insert(&r);
        }
        (e.rank() - base) as i64
    }
}

fn degree_of(ring: &GradedRing, f: &Polynomial) -> Option<i64> {
    f.terms().first().map(|(m, _)| ring.monomial_degree(m))
}

/// Hilbert function of a presented module on `lo..=hi`.
pub fn hilbert_function(ring: &GradedRing, m: &PresentedModule, lo: i64, hi: i64) -> HilbertFunction {
    let mut o = Oracle::for_module(ring, m);
    let values = (lo..=hi).map(|d| o.dim(d)).collect();
    HilbertFunction::new(lo, hi, values)
}

/// Hilbert function of `ker / im` for a degree-`a` endomorphism `diff` of
/// the presented module `m` (generator twists of `m` on both sides).
pub fn dm_homology_hilbert(
    ring: &GradedRing,
    m: &PresentedModule,
    diff: &GradedMatrix,
    lo: i64,
    hi: i64,
) -> HilbertFunction {
    let a = diff.degree();
    let mut o = Oracle::for_module(ring, m);
    let cols: Vec<(i64, Vec<Polynomial>)> = (0..diff.ncols())
        .map(|j| (diff.source().twist(j) + a, diff.column(j)))
        .collect();
    let mut image_rank: BTreeMap<i64, i64> = BTreeMap::new();
    let mut values = Vec::new();
    for d in lo..=hi {
        let dim = o.dim(d);
        // image of D_{d-a} inside D_d, and image of D_d inside D_{d+a}
        let into_d = *image_rank
            .entry(d)
            .or_insert_with(|| o.span_rank(d, &cols));
        let out_of_d = *image_rank
            .entry(d + a)
            .or_insert_with(|| o.span_rank(d + a, &cols));
        values.push(dim - into_d - out_of_d);
    }
    HilbertFunction::new(lo, hi, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::FreeModule;

    #[test]
    fn polynomial_ring_counts() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let m = PresentedModule::free(FreeModule::new(vec![0]));
        let hf = hilbert_function(&r, &m, -1, 4);
        assert_eq!(hf.values(), &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn dual_numbers() {
        let r0 = GradedRing::polynomial(&["x"]);
        let x = r0.var(0);
        let r = r0.with_quotient(vec![r0.mul(&x, &x)]).unwrap();
        let m = PresentedModule::free(FreeModule::new(vec![0]));
        assert_eq!(hilbert_function(&r, &m, -1, 3).values(), &[0, 1, 1, 0, 0]);
    }

    #[test]
    fn example_differential_has_one_dimensional_homology() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let xy = r.mul(&x, &y);
        let d = GradedMatrix::new(
            &r,
            FreeModule::new(vec![0, 0]),
            FreeModule::new(vec![0, 0]),
            2,
            vec![
                vec![xy.clone(), r.neg(&r.mul(&x, &x))],
                vec![r.mul(&y, &y), r.neg(&xy)],
            ],
        )
        .unwrap();
        let m = PresentedModule::free(FreeModule::new(vec![0, 0]));
        let hf = dm_homology_hilbert(&r, &m, &d, -3, 10);
        let expect: Vec<i64> = (-3..=10).map(|d| i64::from(d == 1)).collect();
        assert_eq!(hf.values(), expect.as_slice());
    }
}
