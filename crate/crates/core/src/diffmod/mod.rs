//! Differential modules: graded modules with a square-zero endomorphism of
//! fixed degree, their morphisms, cones, homology and homotopies.

mod morphism;

pub use morphism::{find_isomorphism, is_contractible, is_quasi_iso, Contraction, DMorphism, Homotopy, QuasiIsoVerdict};
pub use crate::resolve::{lift, Lift};

use crate::error::{Error, Result};
use crate::graded::{
    dm_homology_hilbert, subquotient_presentation, FreeModule, GradedMatrix, HilbertFunction,
    PresentedModule,
};
use crate::groebner::{self, GroebnerBasis, ModuleOrder};
use crate::report::{Check, Report};
use crate::ring::{GradedRing, Polynomial};

/// `(D, ∂)` with `∂: D -> D(a)`. The differential is given on the
/// generators of the underlying presented module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialModule {
    module: PresentedModule,
    differential: GradedMatrix,
}

/// Homology as a presented module, with cycles representing its generators.
#[derive(Clone, Debug)]
pub struct Homology {
    pub module: PresentedModule,
    pub representatives: GradedMatrix,
    pub cycles: GradedMatrix,
}

impl DifferentialModule {
    /// Checks shapes and homogeneity; square-zero and descent are left to
    /// [`DifferentialModule::validate`].
    pub fn new(ring: &GradedRing, module: PresentedModule, differential: GradedMatrix) -> Result<Self> {
        if differential.source() != module.generators() || differential.target() != module.generators() {
            return Err(Error::Shape(format!(
                "differential on {} but module generated in {}",
                differential.source(),
                module.generators()
            )));
        }
        if let Some(d) = differential.homogeneity_defects(ring).first() {
            return Err(Error::Inhomogeneous(format!(
                "differential entry ({}, {}) should have degree {}, found {}",
                d.row, d.col, d.expected_degree, d.found
            )));
        }
        Ok(DifferentialModule {
            module,
            differential,
        })
    }

    pub fn free(ring: &GradedRing, differential: GradedMatrix) -> Result<Self> {
        let module = PresentedModule::free(differential.source().clone());
        Self::new(ring, module, differential)
    }

    /// Free module with the given twists and matrix entries.
    pub fn from_entries(
        ring: &GradedRing,
        twists: Vec<i64>,
        degree: i64,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let f = FreeModule::new(twists);
        let d = GradedMatrix::new(ring, f.clone(), f, degree, entries)?;
        Self::free(ring, d)
    }

    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn generators(&self) -> &FreeModule {
        self.module.generators()
    }

    pub fn differential(&self) -> &GradedMatrix {
        &self.differential
    }

    pub fn degree(&self) -> i64 {
        self.differential.degree()
    }

    pub fn rank(&self) -> usize {
        self.module.rank()
    }

    pub fn is_free(&self) -> bool {
        !self.module.has_relations()
    }

    pub fn relation_columns(&self) -> Vec<Vec<Polynomial>> {
        if self.is_free() {
            Vec::new()
        } else {
            self.module.relation_columns()
        }
    }

    fn relation_basis(&self, ring: &GradedRing) -> Result<GroebnerBasis> {
        groebner::buchberger(
            ring,
            &self.relation_columns(),
            ModuleOrder::graded(self.generators().twists().to_vec()),
        )
    }

    /// `∂²`, as a matrix of degree `2a`.
    pub fn square(&self, ring: &GradedRing) -> GradedMatrix {
        let d = &self.differential;
        d.compose(ring, d).expect("endomorphism")
    }

    /// Square-zero, homogeneity and (for presented modules) descent checks.
    pub fn validate(&self, ring: &GradedRing) -> Result<Report> {
        let mut rep = Report::new("validate");
        let defects = self.differential.homogeneity_defects(ring);
        rep.check(Check::new(
            "homogeneous",
            defects.is_empty(),
            defects
                .first()
                .map(|d| format!("entry ({}, {}) should have degree {}, found {}", d.row, d.col, d.expected_degree, d.found))
                .unwrap_or_default(),
        ));
        let sq = self.square(ring);
        let gb = self.relation_basis(ring)?;
        let mut bad = None;
        for j in 0..sq.ncols() {
            let col = sq.column(j);
            if !gb.contains(ring, &col) {
                let i = col.iter().position(|f| !f.is_zero()).unwrap_or(0);
                bad = Some((i, j, ring.format_poly(&col[i])));
                break;
            }
        }
        rep.check(Check::new(
            "square_zero",
            bad.is_none(),
            bad.map(|(i, j, f)| format!("entry ({i}, {j}) of the square is {f}"))
                .unwrap_or_default(),
        ));
        if self.is_free() {
            rep.check(Check::new("descends", true, "free module"));
        } else {
            let rel = self.module.relations();
            let img = self.differential.compose(ring, rel)?;
            let mut fail = None;
            for j in 0..img.ncols() {
                if !gb.contains(ring, &img.column(j)) {
                    fail = Some(j);
                    break;
                }
            }
            rep.check(Check::new(
                "descends",
                fail.is_none(),
                fail.map(|j| format!("image of relation {j} is not a relation"))
                    .unwrap_or_default(),
            ));
        }
        Ok(rep)
    }

    pub fn is_valid(&self, ring: &GradedRing) -> Result<bool> {
        Ok(self.validate(ring)?.passed())
    }

    /// `D(n)`: generators of degree `j` move to `j - n`.
    pub fn twisted(&self, n: i64) -> DifferentialModule {
        let module = self.module.twisted(n);
        let g = module.generators().clone();
        let differential = self
            .differential
            .retwisted(g.clone(), g, self.degree())
            .expect("same shape");
        DifferentialModule {
            module,
            differential,
        }
    }

    /// Symbolic homology `ker ∂ / im ∂` as a minimal presentation.
    pub fn homology(&self, ring: &GradedRing) -> Result<Homology> {
        let rels = self.relation_columns();
        let cycles = groebner::kernel_mod(ring, &self.differential, &rels)?;
        let sq = subquotient_presentation(ring, &cycles, &self.differential, &rels)?;
        Ok(Homology {
            module: sq.module,
            representatives: sq.representatives,
            cycles,
        })
    }

    /// Hilbert function of the homology by degreewise linear algebra.
    pub fn homology_oracle(&self, ring: &GradedRing, lo: i64, hi: i64) -> HilbertFunction {
        dm_homology_hilbert(ring, &self.module, &self.differential, lo, hi)
    }
}

/// Folds a complex `C_0 <- C_1 <- ...` (maps of degree 0, `maps[i]: C_{i+1} -> C_i`)
/// into `⊕ C_i(ia)` with a differential of degree `a`.
pub fn fold(ring: &GradedRing, modules: &[FreeModule], maps: &[GradedMatrix], a: i64) -> Result<DifferentialModule> {
    if maps.len() + 1 != modules.len() && !(modules.len() <= 1 && maps.is_empty()) {
        return Err(Error::Shape(format!(
            "{} modules need {} maps, got {}",
            modules.len(),
            modules.len().saturating_sub(1),
            maps.len()
        )));
    }
    for (i, m) in maps.iter().enumerate() {
        if m.source() != &modules[i + 1] || m.target() != &modules[i] || m.degree() != 0 {
            return Err(Error::Shape(format!("map {} does not go from C_{} to C_{} in degree 0", i + 1, i + 1, i)));
        }
    }
    for i in 1..maps.len() {
        let c = maps[i - 1].compose(ring, &maps[i])?;
        if !c.is_zero() {
            return Err(Error::NotAComplex(format!("maps {} and {} compose to a nonzero map", i, i + 1)));
        }
    }
    let blocks: Vec<FreeModule> = modules
        .iter()
        .enumerate()
        .map(|(i, m)| m.shift(i as i64 * a))
        .collect();
    let shifted: Vec<GradedMatrix> = maps
        .iter()
        .enumerate()
        .map(|(i, m)| m.retwisted(blocks[i + 1].clone(), blocks[i].clone(), a))
        .collect::<Result<_>>()?;
    let n = blocks.len();
    let grid: Vec<Vec<Option<&GradedMatrix>>> = (0..n)
        .map(|r| (0..n).map(|c| if c == r + 1 { Some(&shifted[r]) } else { None }).collect())
        .collect();
    let d = GradedMatrix::from_blocks(&blocks, &blocks, a, &grid)?;
    DifferentialModule::free(ring, d)
}

/// `cone(f) = D' ⊕ D(a)` with differential `[[∂', f], [0, -∂]]`.
pub fn cone(ring: &GradedRing, f: &DMorphism) -> Result<DifferentialModule> {
    let (src, tgt) = (f.source(), f.target());
    if src.degree() != tgt.degree() {
        return Err(Error::DegreeMismatch(format!(
            "source has degree {} and target {}",
            src.degree(),
            tgt.degree()
        )));
    }
    let a = src.degree();
    let shifted = src.twisted(a);
    let module = PresentedModule::direct_sum(&[tgt.module(), shifted.module()]);
    let blocks = [tgt.generators().clone(), shifted.generators().clone()];
    let fm = f.map().retwisted(blocks[1].clone(), blocks[0].clone(), a)?;
    let neg = shifted.differential().neg(ring);
    let grid = vec![
        vec![Some(tgt.differential()), Some(&fm)],
        vec![None, Some(&neg)],
    ];
    let d = GradedMatrix::from_blocks(&blocks, &blocks, a, &grid)?;
    DifferentialModule::new(ring, module, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_dm(r: &GradedRing) -> DifferentialModule {
        let (x, y) = (r.var(0), r.var(1));
        let xy = r.mul(&x, &y);
        DifferentialModule::from_entries(
            r,
            vec![0, 0],
            2,
            vec![
                vec![xy.clone(), r.neg(&r.mul(&x, &x))],
                vec![r.mul(&y, &y), r.neg(&xy)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn validation_reports() {
        let r = GradedRing::polynomial(&["x", "y"]);
        assert!(example_dm(&r).is_valid(&r).unwrap());
        let std = DifferentialModule::from_entries(&r, vec![0, 0], 0, vec![vec![r.zero(), r.one()], vec![r.zero(), r.zero()]]).unwrap();
        assert!(std.is_valid(&r).unwrap());
        let bad = DifferentialModule::from_entries(&r, vec![1, 0], 0, vec![vec![r.zero(), r.zero()], vec![r.zero(), r.zero()]]).unwrap();
        assert!(bad.is_valid(&r).unwrap());
        let sq = DifferentialModule::from_entries(&r, vec![0, 0], 1, vec![vec![r.var(0), r.zero()], vec![r.zero(), r.zero()]]).unwrap();
        let rep = sq.validate(&r).unwrap();
        assert!(!rep.passed());
        assert!(rep.failures()[0].detail.contains("x^2"));
    }

    #[test]
    fn koszul_fold() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let c0 = FreeModule::new(vec![0]);
        let c1 = FreeModule::new(vec![1, 1]);
        let c2 = FreeModule::new(vec![2]);
        let d1 = GradedMatrix::new(&r, c1.clone(), c0.clone(), 0, vec![vec![x.clone(), y.clone()]]).unwrap();
        let d2 = GradedMatrix::new(&r, c2.clone(), c1.clone(), 0, vec![vec![r.neg(&y)], vec![x.clone()]]).unwrap();
        let a = 3;
        let d = fold(&r, &[c0, c1, c2], &[d1, d2], a).unwrap();
        assert_eq!(d.generators().twists(), &[0, 1 - a, 1 - a, 2 - 2 * a]);
        assert!(d.is_valid(&r).unwrap());
        let h = d.homology_oracle(&r, -8, 6);
        let expect: Vec<i64> = (-8..=6).map(|k| i64::from(k == 0)).collect();
        assert_eq!(h.values(), expect.as_slice());
    }

    #[test]
    fn two_term_fold() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let c0 = FreeModule::new(vec![0]);
        let c1 = FreeModule::new(vec![1]);
        let d1 = GradedMatrix::new(&r, c1.clone(), c0.clone(), 0, vec![vec![r.var(0)]]).unwrap();
        let d = fold(&r, &[c0, c1], &[d1], 0).unwrap();
        assert_eq!(d.differential().format(&r), "[[0, x], [0, 0]]");
    }

    #[test]
    fn example_homology_is_the_residue_field() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let d = example_dm(&r);
        let h = d.homology(&r).unwrap();
        assert_eq!(h.module.generators().twists(), &[1]);
        assert_eq!(
            h.module.hilbert_function(&r, -2, 8),
            d.homology_oracle(&r, -2, 8)
        );
    }

    #[test]
    fn dual_numbers_example() {
        let r0 = GradedRing::polynomial(&["x"]);
        let r = r0.with_quotient(vec![r0.mul(&r0.var(0), &r0.var(0))]).unwrap();
        let a = 3;
        let d = DifferentialModule::from_entries(&r, vec![a, 1], a, vec![vec![r.zero(), r.var(0)], vec![r.zero(), r.zero()]]).unwrap();
        assert!(d.is_valid(&r).unwrap());
        let h = d.homology(&r).unwrap();
        let mut degs = h.module.generators().degree_multiset();
        degs.sort();
        assert_eq!(degs, vec![2, a]);
        let hf = h.module.hilbert_function(&r, 0, 6);
        assert_eq!(hf, d.homology_oracle(&r, 0, 6));
    }
}
