//! Groebner bases of submodules of graded free modules, syzygies and
//! minimal free resolutions of graded modules.
//!
//! Everything is computed over the ambient polynomial ring; quotient rings
//! are handled by adding `g * e_i` for each quotient basis element `g`.

mod buchberger;
mod modvec;
mod resolution;
mod syzygy;

pub use buchberger::{buchberger_vectors, is_groebner, normal_form_vector};
pub use modvec::{ModVec, ModuleSpace, Term};
pub use resolution::{min_free_resolution, default_max_steps, FreeResolution};

pub(crate) use syzygy::{quotient_extras, LiftSystem};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graded::{FreeModule, GradedMatrix};
use crate::linalg::Echelon;
use crate::ring::{GradedRing, Polynomial};

/// Module monomial order: generator twists plus elimination classes.
///
/// Terms compare by class, then total degree, then the ring's monomial
/// order, then position (lower index is bigger).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub twists: Vec<i64>,
    pub classes: Vec<u32>,
}

impl ModuleOrder {
    pub fn graded(twists: Vec<i64>) -> Self {
        let classes = vec![0; twists.len()];
        ModuleOrder { twists, classes }
    }

    fn space<'r>(&self, ring: &'r GradedRing) -> ModuleSpace<'r> {
        ModuleSpace::with_classes(ring, self.twists.clone(), self.classes.clone())
    }
}

/// Reduced Groebner basis of a submodule of `R(-j_1) + ... + R(-j_r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: ModuleOrder,
    elements: Vec<ModVec>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn elements(&self) -> &[ModVec] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements as dense polynomial vectors.
    pub fn vectors(&self, ring: &GradedRing) -> Vec<Vec<Polynomial>> {
        let space = self.order.space(ring);
        self.elements.iter().map(|v| space.to_polys(v)).collect()
    }

    /// Whether `v` lies in the submodule.
    pub fn contains(&self, ring: &GradedRing, v: &[Polynomial]) -> bool {
        normal_form(ring, v, self).iter().all(|f| f.is_zero())
    }
}

/// Reduced Groebner basis of the submodule of `R^r` spanned by `gens`
/// (each a vector of length `order.twists.len()`). Over a quotient ring
/// the quotient ideal times each basis vector is included.
pub fn buchberger(
    ring: &GradedRing,
    gens: &[Vec<Polynomial>],
    order: ModuleOrder,
) -> Result<GroebnerBasis> {
    let space = order.space(ring);
    let mut vecs = Vec::with_capacity(gens.len());
    for g in gens {
        if g.len() != space.rank() {
            return Err(Error::Shape(format!(
                "vector of length {} in a module of rank {}",
                g.len(),
                space.rank()
            )));
        }
        vecs.push(space.from_polys(g));
    }
    vecs.extend(quotient_extras(&space, 0, space.rank()));
    let elements = buchberger_vectors(&space, vecs)?;
    Ok(GroebnerBasis { order, elements })
}

/// Remainder of `v` on division by `gb`; reduced modulo the quotient ideal.
pub fn normal_form(ring: &GradedRing, v: &[Polynomial], gb: &GroebnerBasis) -> Vec<Polynomial> {
    let space = gb.order.space(ring);
    let nf = normal_form_vector(&space, &space.from_polys(v), &gb.elements);
    space.to_polys(&nf).into_iter().map(|f| ring.reduce(f)).collect()
}

/// Homogeneous generators of `ker(phi)`, as the columns of a degree-0 map
/// into `phi.source()`. With `target_relations` the target is read as the
/// cokernel of those columns.
pub fn kernel_mod(
    ring: &GradedRing,
    phi: &GradedMatrix,
    target_relations: &[Vec<Polynomial>],
) -> Result<GradedMatrix> {
    let cols = phi.columns();
    let degs: Vec<i64> = phi.source().twists().iter().map(|t| t + phi.degree()).collect();
    let sys = LiftSystem::new(ring, phi.target().twists(), &cols, &degs, target_relations)?;
    let ker = sys.kernel();
    let twists: Vec<i64> = ker.iter().map(|(d, _)| d - phi.degree()).collect();
    let kcols: Vec<Vec<Polynomial>> = ker.into_iter().map(|(_, c)| c).collect();
    let m = GradedMatrix::from_columns(FreeModule::new(twists), phi.source().clone(), 0, kcols)?;
    prune_columns(ring, &m, &[])
}

/// Kernel of a map between free modules.
pub fn kernel(ring: &GradedRing, phi: &GradedMatrix) -> Result<GradedMatrix> {
    kernel_mod(ring, phi, &[])
}

/// Solves `phi x = v` modulo `target_relations`. `v` is homogeneous of
/// degree `d` in the target grading; `x` then has degree `d - deg(phi)`.
pub fn lift(
    ring: &GradedRing,
    phi: &GradedMatrix,
    v: &[Polynomial],
    target_relations: &[Vec<Polynomial>],
) -> Result<Option<Vec<Polynomial>>> {
    let cols = phi.columns();
    let degs: Vec<i64> = phi.source().twists().iter().map(|t| t + phi.degree()).collect();
    let sys = LiftSystem::new(ring, phi.target().twists(), &cols, &degs, target_relations)?;
    Ok(sys.lift(v))
}

/// Reusable solver for many right-hand sides against the same map.
pub struct Lifter<'r> {
    sys: LiftSystem<'r>,
}

impl<'r> Lifter<'r> {
    pub fn new(
        ring: &'r GradedRing,
        phi: &GradedMatrix,
        target_relations: &[Vec<Polynomial>],
    ) -> Result<Self> {
        let cols = phi.columns();
        let degs: Vec<i64> = phi.source().twists().iter().map(|t| t + phi.degree()).collect();
        let sys = LiftSystem::new(ring, phi.target().twists(), &cols, &degs, target_relations)?;
        Ok(Lifter { sys })
    }

    pub fn lift(&self, v: &[Polynomial]) -> Option<Vec<Polynomial>> {
        self.sys.lift(v)
    }

    /// Kernel generators paired with their degrees in the target grading.
    pub fn kernel(&self) -> Vec<(i64, Vec<Polynomial>)> {
        self.sys.kernel()
    }
}

/// Indices of a minimal generating subset of `gens` modulo `background`,
/// over `R`. `degrees[i]` is the degree of `gens[i]`; zero vectors are
/// never selected.
pub fn minimal_generators(
    ring: &GradedRing,
    twists: &[i64],
    gens: &[Vec<Polynomial>],
    degrees: &[i64],
    background: &[Vec<Polynomial>],
) -> Result<Vec<usize>> {
    let space = ModuleSpace::new(ring, twists.to_vec());
    let mut basis: Vec<ModVec> = background.iter().map(|b| space.from_polys(b)).collect();
    basis.extend(quotient_extras(&space, 0, space.rank()));
    let mut gb = buchberger_vectors(&space, basis)?;
    let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, g) in gens.iter().enumerate() {
        if g.iter().any(|f| !f.is_zero()) {
            by_degree.entry(degrees[i]).or_default().push(i);
        }
    }
    let mut chosen = Vec::new();
    for idx in by_degree.values() {
        let mut ech = Echelon::new(ring.field().clone());
        let mut coords: BTreeMap<(usize, crate::ring::Monomial), usize> = BTreeMap::new();
        let mut new_here = Vec::new();
        for &i in idx {
            let nf = normal_form_vector(&space, &space.from_polys(&gens[i]), &gb);
            if nf.is_zero() {
                continue;
            }
            let row: Vec<(usize, crate::ring::Scalar)> = nf
                .terms()
                .iter()
                .map(|t| {
                    let n = coords.len();
                    let c = *coords.entry((t.pos, t.mono.clone())).or_insert(n);
                    (c, t.coef.clone())
                })
                .collect();
            if ech.insert(&row) {
                chosen.push(i);
                new_here.push(nf);
            }
        }
        if !new_here.is_empty() {
            let mut all = gb;
            all.extend(new_here);
            gb = buchberger_vectors(&space, all)?;
        }
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// Keeps a minimal generating subset of the columns of `m` modulo
/// `background` (vectors in the target).
pub fn prune_columns(
    ring: &GradedRing,
    m: &GradedMatrix,
    background: &[Vec<Polynomial>],
) -> Result<GradedMatrix> {
    let cols = m.columns();
    let degs: Vec<i64> = (0..m.ncols()).map(|j| m.source().twist(j) + m.degree()).collect();
    let keep = minimal_generators(ring, m.target().twists(), &cols, &degs, background)?;
    Ok(m.submatrix(&(0..m.nrows()).collect::<Vec<_>>(), &keep))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qxy() -> GradedRing {
        GradedRing::polynomial(&["x", "y"])
    }

    fn p(r: &GradedRing, terms: &[(i64, u32, u32)]) -> Polynomial {
        let mut f = r.zero();
        for &(c, a, b) in terms {
            let m = crate::ring::Monomial::from_exponents(&[a, b]);
            f = r.add(&f, &r.term(r.field().from_i64(c), m));
        }
        f
    }

    #[test]
    fn already_reduced_and_dedup() {
        let r = qxy();
        let xy = p(&r, &[(1, 1, 1)]);
        let y2 = p(&r, &[(1, 0, 2)]);
        let gb = buchberger(&r, &[vec![xy.clone()], vec![y2.clone()]], ModuleOrder::graded(vec![0])).unwrap();
        assert_eq!(gb.vectors(&r), vec![vec![y2], vec![xy]]);
        let x = p(&r, &[(1, 1, 0)]);
        let gb = buchberger(&r, &[vec![x.clone()], vec![x.clone()]], ModuleOrder::graded(vec![0])).unwrap();
        assert_eq!(gb.vectors(&r), vec![vec![x]]);
    }
}
