use super::buchberger::{buchberger_vectors, normal_form_vector};
use super::modvec::{ModVec, ModuleSpace};
use crate::error::Result;
use crate::ring::{GradedRing, Polynomial};

/// `g * e_i` for every quotient generator `g` and every position in `lo..hi`.
pub(crate) fn quotient_extras(space: &ModuleSpace<'_>, lo: usize, hi: usize) -> Vec<ModVec> {
    let mut out = Vec::new();
    for g in space.ring().quotient_basis() {
        for i in lo..hi {
            out.push(space.convert(&ModVec::from_poly(i, g)));
        }
    }
    out
}

/// Solver for `A x = v` modulo a submodule of relations, over `R`.
///
/// Target positions `0..t` carry class 1 and the unknowns `t..t+s` class 0,
/// so a Groebner basis of the graph of `A` eliminates the target.
pub(crate) struct LiftSystem<'r> {
    space: ModuleSpace<'r>,
    t: usize,
    s: usize,
    gb: Vec<ModVec>,
}

impl<'r> LiftSystem<'r> {
    /// `cols[j]` has degree `col_degrees[j]` in the target grading.
    pub(crate) fn new(
        ring: &'r GradedRing,
        target_twists: &[i64],
        cols: &[Vec<Polynomial>],
        col_degrees: &[i64],
        relations: &[Vec<Polynomial>],
    ) -> Result<Self> {
        let t = target_twists.len();
        let s = cols.len();
        let mut twists = target_twists.to_vec();
        twists.extend_from_slice(col_degrees);
        let mut classes = vec![1u32; t];
        classes.extend(std::iter::repeat_n(0, s));
        let space = ModuleSpace::with_classes(ring, twists, classes);
        let one = ring.one();
        let mut gens = Vec::with_capacity(s + relations.len());
        for (j, c) in cols.iter().enumerate() {
            let v = space.from_polys(c);
            let e = space.convert(&ModVec::from_poly(t + j, &one));
            gens.push(space.add(&v, &e));
        }
        for r in relations {
            gens.push(space.from_polys(r));
        }
        gens.extend(quotient_extras(&space, 0, t));
        let gb = buchberger_vectors(&space, gens)?;
        Ok(LiftSystem { space, t, s, gb })
    }

    /// Generators of `{x : A x in relations}`, reduced modulo the quotient
    /// ideal, zero vectors dropped. Paired with their degrees in the
    /// target grading.
    pub(crate) fn kernel(&self) -> Vec<(i64, Vec<Polynomial>)> {
        let ring = self.space.ring();
        let mut out = Vec::new();
        for g in &self.gb {
            let lead = g.lead().unwrap();
            if lead.pos < self.t {
                continue;
            }
            let deg = self.space.degree(g).unwrap();
            let comps: Vec<Polynomial> = self
                .space
                .to_polys_range(g, self.t, self.t + self.s)
                .into_iter()
                .map(|f| ring.reduce(f))
                .collect();
            if comps.iter().all(|f| f.is_zero()) {
                continue;
            }
            out.push((deg, comps));
        }
        out
    }

    /// Some `x` with `A x = v` modulo the relations, if it exists.
    pub(crate) fn lift(&self, v: &[Polynomial]) -> Option<Vec<Polynomial>> {
        let ring = self.space.ring();
        let vec = self.space.from_polys(v);
        let nf = normal_form_vector(&self.space, &vec, &self.gb);
        if nf.terms().iter().any(|t| t.pos < self.t) {
            return None;
        }
        Some(
            self.space
                .to_polys_range(&nf, self.t, self.t + self.s)
                .into_iter()
                .map(|f| ring.reduce(ring.neg(&f)))
                .collect(),
        )
    }
}
