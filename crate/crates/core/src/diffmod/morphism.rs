use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use num_traits::Zero;
use serde::Serialize;

use super::{cone, DifferentialModule};
use crate::error::{Error, Result};
use crate::graded::GradedMatrix;
use crate::linalg;
use crate::resolve::{minimize, Minimization};
use crate::ring::{GradedRing, Monomial, Polynomial, Scalar};

/// Degree-0 map `f: D -> D'` with `f ∂ = ∂' f`.
#[derive(Clone, Debug)]
pub struct DMorphism {
    source: DifferentialModule,
    target: DifferentialModule,
    map: GradedMatrix,
}

impl DMorphism {
    /// Checks shapes, descent and the commutation relation.
    pub fn new(
        ring: &GradedRing,
        source: DifferentialModule,
        target: DifferentialModule,
        map: GradedMatrix,
    ) -> Result<Self> {
        if source.degree() != target.degree() {
            return Err(Error::DegreeMismatch(format!(
                "source has degree {} and target {}",
                source.degree(),
                target.degree()
            )));
        }
        if map.degree() != 0
            || map.source() != source.generators()
            || map.target() != target.generators()
        {
            return Err(Error::Shape(format!(
                "map from {} to {} of degree {} does not fit {} -> {}",
                map.source(),
                map.target(),
                map.degree(),
                source.generators(),
                target.generators()
            )));
        }
        if let Some(d) = map.homogeneity_defects(ring).first() {
            return Err(Error::Inhomogeneous(format!(
                "morphism entry ({}, {}) should have degree {}, found {}",
                d.row, d.col, d.expected_degree, d.found
            )));
        }
        let f = DMorphism {
            source,
            target,
            map,
        };
        if !f.commutes(ring)? {
            return Err(Error::Hypothesis("the map does not commute with the differentials".into()));
        }
        if !f.descends(ring)? {
            return Err(Error::Hypothesis("the map does not respect the relations".into()));
        }
        Ok(f)
    }

    pub fn new_unchecked(source: DifferentialModule, target: DifferentialModule, map: GradedMatrix) -> Self {
        DMorphism {
            source,
            target,
            map,
        }
    }

    pub fn identity(ring: &GradedRing, d: &DifferentialModule) -> Self {
        DMorphism {
            source: d.clone(),
            target: d.clone(),
            map: GradedMatrix::identity(ring, d.generators()),
        }
    }

    pub fn zero(source: &DifferentialModule, target: &DifferentialModule) -> Self {
        DMorphism {
            source: source.clone(),
            target: target.clone(),
            map: GradedMatrix::zero(source.generators().clone(), target.generators().clone(), 0),
        }
    }

    pub fn source(&self) -> &DifferentialModule {
        &self.source
    }

    pub fn target(&self) -> &DifferentialModule {
        &self.target
    }

    pub fn map(&self) -> &GradedMatrix {
        &self.map
    }

    /// `f ∂ - ∂' f` reduces to zero modulo the target relations.
    pub fn commutes(&self, ring: &GradedRing) -> Result<bool> {
        let lhs = self.map.compose(ring, self.source.differential())?;
        let rhs = self.target.differential().compose(ring, &self.map)?;
        let diff = lhs.sub(ring, &rhs)?;
        columns_vanish(ring, &self.target, &diff)
    }

    fn descends(&self, ring: &GradedRing) -> Result<bool> {
        if self.source.is_free() {
            return Ok(true);
        }
        let img = self.map.compose(ring, self.source.module().relations())?;
        columns_vanish(ring, &self.target, &img)
    }

    /// `g ∘ self`.
    pub fn then(&self, ring: &GradedRing, g: &DMorphism) -> Result<DMorphism> {
        Ok(DMorphism {
            source: self.source.clone(),
            target: g.target.clone(),
            map: g.map.compose(ring, &self.map)?,
        })
    }
}

fn columns_vanish(ring: &GradedRing, target: &DifferentialModule, m: &GradedMatrix) -> Result<bool> {
    if m.is_zero() {
        return Ok(true);
    }
    if target.is_free() {
        return Ok(m.rows().iter().all(|r| r.iter().all(|f| ring.reduce(f.clone()).is_zero())));
    }
    let gb = target.module().relation_basis(ring)?;
    Ok((0..m.ncols()).all(|j| gb.contains(ring, &m.column(j))))
}

/// `h: D -> D'(-a)` witnessing `f - f' = h ∂ + ∂' h`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub map: GradedMatrix,
}

impl Homotopy {
    pub fn new(map: GradedMatrix) -> Self {
        Homotopy { map }
    }

    /// `f - f' - (h ∂ + ∂' h)` vanishes modulo the target relations.
    pub fn verify(&self, ring: &GradedRing, f: &DMorphism, g: &DMorphism) -> Result<bool> {
        let lhs = f.map.sub(ring, &g.map)?;
        let h_d = self.map.compose(ring, f.source.differential())?;
        let d_h = f.target.differential().compose(ring, &self.map)?;
        let rhs = h_d.add(ring, &d_h)?;
        if rhs.degree() != 0 {
            return Err(Error::DegreeMismatch(format!("homotopy has degree {}", self.map.degree())));
        }
        let rhs = rhs.retwisted(lhs.source().clone(), lhs.target().clone(), 0)?;
        columns_vanish(ring, &f.target, &lhs.sub(ring, &rhs)?)
    }
}

/// Outcome of a quasi-isomorphism test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum QuasiIsoVerdict {
    /// The homology of the cone was computed symbolically.
    Symbolic(bool),
    /// Oracle vanishing of the cone homology on a degree range only.
    VerifiedUpTo { lo: i64, hi: i64, vanishes: bool },
}

impl QuasiIsoVerdict {
    pub fn holds(&self) -> bool {
        match self {
            QuasiIsoVerdict::Symbolic(b) => *b,
            QuasiIsoVerdict::VerifiedUpTo { vanishes, .. } => *vanishes,
        }
    }
}

/// Tests whether `f` induces an isomorphism on homology through the
/// exactness of its cone. Falls back to the oracle on `lo..=hi` when the
/// symbolic computation is cancelled.
pub fn is_quasi_iso(ring: &GradedRing, f: &DMorphism, lo: i64, hi: i64) -> Result<QuasiIsoVerdict> {
    let c = cone(ring, f)?;
    match c.homology(ring) {
        Ok(h) => Ok(QuasiIsoVerdict::Symbolic(h.module.is_zero_module(ring)?)),
        Err(Error::Cancelled) => {
            let hf = c.homology_oracle(ring, lo, hi);
            Ok(QuasiIsoVerdict::VerifiedUpTo {
                lo,
                hi,
                vanishes: hf.is_zero(),
            })
        }
        Err(e) => Err(e),
    }
}

/// Result of the contractibility test.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub contractible: bool,
    pub minimization: Minimization,
    /// `h` with `id = h ∂ + ∂ h`, when contractible.
    pub homotopy: Option<Homotopy>,
}

impl Contraction {
    /// The change of basis taking `∂` to a sum of `[[0, 1], [0, 0]]` blocks.
    pub fn standard_form(&self) -> Option<&GradedMatrix> {
        self.contractible.then_some(&self.minimization.change_of_basis)
    }
}

/// Splits off contractible summands; `D` is contractible iff nothing is left.
pub fn is_contractible(ring: &GradedRing, d: &DifferentialModule) -> Result<Contraction> {
    if !d.is_free() {
        return Err(Error::NonFree("contractibility needs a free differential module".into()));
    }
    let m = minimize(ring, d)?;
    let contractible = m.kept.is_empty();
    let homotopy = if contractible {
        let h = Homotopy::new(m.homotopy(ring)?);
        let id = DMorphism::identity(ring, d);
        let z = DMorphism::zero(d, d);
        if !h.verify(ring, &id, &z)? {
            return Err(Error::internal("contracting homotopy failed verification"));
        }
        Some(h)
    } else {
        None
    };
    Ok(Contraction {
        contractible,
        minimization: m,
        homotopy,
    })
}

/// Searches for a degree-0 isomorphism `P: D1 -> D2` of free differential
/// modules with `P ∂1 = ∂2 P`, by solving for the coefficients of `P` and
/// testing random points of the solution space. `None` when no invertible
/// solution was found.
pub fn find_isomorphism(
    ring: &GradedRing,
    d1: &DifferentialModule,
    d2: &DifferentialModule,
    seed: u64,
) -> Result<Option<GradedMatrix>> {
    if !d1.is_free() || !d2.is_free() {
        return Err(Error::NonFree("isomorphism search needs free modules".into()));
    }
    if d1.generators().degree_multiset() != d2.generators().degree_multiset()
        || d1.degree() != d2.degree()
    {
        return Ok(None);
    }
    let (s, t) = (d1.generators().clone(), d2.generators().clone());
    let n = s.rank();
    let field = ring.field();
    // unknowns: (row, col, monomial)
    let mut unknowns: Vec<(usize, usize, Monomial)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for m in ring.monomials_of_degree(s.twist(j) - t.twist(i)) {
                let p = ring.term(field.one(), m.clone());
                if ring.reduce(p.clone()) == p {
                    unknowns.push((i, j, m));
                }
            }
        }
    }
    let k = unknowns.len();
    // P ∂1 - ∂2 P, entry by entry, as linear forms in the unknowns
    let mut eqs: std::collections::BTreeMap<(usize, usize, Monomial), Vec<Scalar>> = Default::default();
    let mut add_term = |key: (usize, usize, Monomial), u: usize, c: Scalar| {
        let row = eqs.entry(key).or_insert_with(|| vec![field.zero(); k]);
        row[u] = field.add(&row[u], &c);
    };
    let (a1, a2) = (d1.differential(), d2.differential());
    for (u, (i, l, m)) in unknowns.iter().enumerate() {
        let mono = ring.term(field.one(), m.clone());
        // (P ∂1)_{i j} gets m * ∂1[l][j]
        for j in 0..n {
            let f = ring.mul(&mono, a1.entry(*l, j));
            for (mm, c) in f.terms() {
                add_term((*i, j, mm.clone()), u, c.clone());
            }
        }
        // (∂2 P)_{r l} gets ∂2[r][i] * m
        for r in 0..n {
            let f = ring.mul(a2.entry(r, *i), &mono);
            for (mm, c) in f.terms() {
                add_term((r, *l, mm.clone()), u, field.neg(c));
            }
        }
    }
    let rows: Vec<Vec<Scalar>> = eqs.into_values().collect();
    let basis = linalg::nullspace(field, &rows, k);
    if basis.is_empty() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let coeffs: Vec<Scalar> = basis.iter().map(|_| field.from_i64(rng.gen_range(-9..=9))).collect();
        let mut p = vec![vec![Polynomial::zero(); n]; n];
        for (b, c) in basis.iter().zip(&coeffs) {
            for (u, v) in b.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let (i, j, m) = &unknowns[u];
                let term = ring.term(field.mul(v, c), m.clone());
                p[*i][*j] = ring.add(&p[*i][*j], &term);
            }
        }
        let pm = GradedMatrix::new(ring, s.clone(), t.clone(), 0, p)?;
        if !linalg::determinant(field, &pm.constant_part()).is_zero() {
            return Ok(Some(pm));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::FreeModule;

    fn standard(r: &GradedRing) -> DifferentialModule {
        DifferentialModule::from_entries(r, vec![0, 0], 0, vec![vec![r.zero(), r.one()], vec![r.zero(), r.zero()]]).unwrap()
    }

    #[test]
    fn standard_form_contracts_with_the_expected_homotopy() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let c = is_contractible(&r, &standard(&r)).unwrap();
        assert!(c.contractible);
        assert_eq!(c.homotopy.unwrap().map.format(&r), "[[0, 0], [1, 0]]");
    }

    #[test]
    fn acyclic_but_not_contractible() {
        let r0 = GradedRing::polynomial(&["x"]);
        let r = r0.with_quotient(vec![r0.mul(&r0.var(0), &r0.var(0))]).unwrap();
        let x = r.var(0);
        let d = DifferentialModule::from_entries(&r, vec![0, 0], 1, vec![vec![x.clone(), r.zero()], vec![r.zero(), x]]).unwrap();
        assert!(d.is_valid(&r).unwrap());
        assert!(!is_contractible(&r, &d).unwrap().contractible);
        assert!(d.homology_oracle(&r, -10, 10).is_zero());
    }

    #[test]
    fn quasi_isomorphism_verdicts() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let k = crate::graded::PresentedModule::cokernel(
            &r,
            GradedMatrix::new(&r, FreeModule::new(vec![1, 1]), FreeModule::new(vec![0]), 0, vec![vec![r.var(0), r.var(1)]]).unwrap(),
        )
        .unwrap();
        let zero = GradedMatrix::zero(FreeModule::new(vec![0]), FreeModule::new(vec![0]), 0);
        let d = DifferentialModule::new(&r, k, zero).unwrap();
        let id = DMorphism::identity(&r, &d);
        assert!(is_quasi_iso(&r, &id, -2, 6).unwrap().holds());
        let z = DMorphism::zero(&d, &d);
        assert!(!is_quasi_iso(&r, &z, -2, 6).unwrap().holds());
    }

    #[test]
    fn commutation_is_checked() {
        let r = GradedRing::polynomial(&["x"]);
        let d = standard(&r);
        let swap = GradedMatrix::new(&r, FreeModule::new(vec![0, 0]), FreeModule::new(vec![0, 0]), 0, vec![vec![r.zero(), r.one()], vec![r.one(), r.zero()]]).unwrap();
        assert!(DMorphism::new(&r, d.clone(), d.clone(), swap).is_err());
    }

    #[test]
    fn isomorphism_search_finds_a_rescaling() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let two = r.from_i64(2);
        let d1 = DifferentialModule::from_entries(&r, vec![0, 1], 0, vec![vec![r.zero(), x.clone()], vec![r.zero(), r.zero()]]).unwrap();
        let d2 = DifferentialModule::from_entries(&r, vec![0, 1], 0, vec![vec![r.zero(), r.mul(&two, &x)], vec![r.zero(), r.zero()]]).unwrap();
        let p = find_isomorphism(&r, &d1, &d2, 7).unwrap().unwrap();
        let f = DMorphism::new(&r, d1.clone(), d2, p);
        assert!(f.is_ok());
        let d3 = DifferentialModule::from_entries(&r, vec![0, 1], 0, vec![vec![r.zero(), y], vec![r.zero(), r.zero()]]).unwrap();
        assert!(find_isomorphism(&r, &d1, &d3, 7).unwrap().is_none());
    }
}
