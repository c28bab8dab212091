use serde::Serialize;

use super::hilbert::{hilbert_function, HilbertFunction};
use super::matrix::{FreeModule, GradedMatrix};
use crate::error::{Error, Result};
use crate::groebner::{self, GroebnerBasis, Lifter, ModuleOrder};
use crate::ring::{GradedRing, Polynomial};

/// `coker(relations)` for a degree-0 map `relations` into the free module on
/// the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedModule {
    generators: FreeModule,
    relations: GradedMatrix,
}

/// Summary used by reports.
#[derive(Clone, Debug, Serialize)]
pub struct PresentationSummary {
    pub generator_degrees: Vec<i64>,
    pub relation_degrees: Vec<i64>,
}

impl PresentedModule {
    pub fn free(generators: FreeModule) -> Self {
        let relations = GradedMatrix::zero(FreeModule::zero(), generators.clone(), 0);
        PresentedModule {
            generators,
            relations,
        }
    }

    pub fn cokernel(ring: &GradedRing, relations: GradedMatrix) -> Result<Self> {
        if !relations.homogeneity_defects(ring).is_empty() {
            return Err(Error::Inhomogeneous("relation matrix".into()));
        }
        let relations = if relations.degree() == 0 {
            relations
        } else {
            let src = relations.source().shift(-relations.degree());
            relations.retwisted(src, relations.target().clone(), 0)?
        };
        Ok(PresentedModule {
            generators: relations.target().clone(),
            relations,
        })
    }

    pub fn generators(&self) -> &FreeModule {
        &self.generators
    }

    pub fn relations(&self) -> &GradedMatrix {
        &self.relations
    }

    pub fn relation_columns(&self) -> Vec<Vec<Polynomial>> {
        self.relations.columns()
    }

    pub fn rank(&self) -> usize {
        self.generators.rank()
    }

    pub fn has_relations(&self) -> bool {
        !self.relations.is_zero()
    }

    /// `M(-n)`: every degree moves up by `n`.
    pub fn shift(&self, n: i64) -> PresentedModule {
        PresentedModule {
            generators: self.generators.shift(-n),
            relations: self
                .relations
                .retwisted(
                    self.relations.source().shift(-n),
                    self.generators.shift(-n),
                    0,
                )
                .expect("same shape"),
        }
    }

    /// `M(n)` in the usual notation: generators of degree `j` move to `j - n`.
    pub fn twisted(&self, n: i64) -> PresentedModule {
        self.shift(-n)
    }

    pub fn direct_sum(parts: &[&PresentedModule]) -> PresentedModule {
        let gens: Vec<FreeModule> = parts.iter().map(|p| p.generators.clone()).collect();
        let srcs: Vec<FreeModule> = parts.iter().map(|p| p.relations.source().clone()).collect();
        let blocks: Vec<Vec<Option<&GradedMatrix>>> = (0..parts.len())
            .map(|r| {
                (0..parts.len())
                    .map(|c| (r == c).then_some(&parts[r].relations))
                    .collect()
            })
            .collect();
        let relations = GradedMatrix::from_blocks(&srcs, &gens, 0, &blocks).expect("block shapes");
        PresentedModule {
            generators: FreeModule::direct_sum(&gens.iter().collect::<Vec<_>>()),
            relations,
        }
    }

    /// Groebner basis of the relation submodule (quotient ideal included).
    pub fn relation_basis(&self, ring: &GradedRing) -> Result<GroebnerBasis> {
        groebner::buchberger(
            ring,
            &self.relation_columns(),
            ModuleOrder::graded(self.generators.twists().to_vec()),
        )
    }

    /// Every generator reduces to zero modulo the relations.
    pub fn is_zero_module(&self, ring: &GradedRing) -> Result<bool> {
        let gb = self.relation_basis(ring)?;
        let n = self.rank();
        for i in 0..n {
            let mut e = vec![Polynomial::zero(); n];
            e[i] = ring.one();
            if !gb.contains(ring, &e) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Minimal presentation. Generators hit by a unit entry of a relation are
    /// eliminated, then a minimal subset of relations is kept. Returns the
    /// indices of the surviving generators, which keep their meaning.
    pub fn prune(&self, ring: &GradedRing) -> Result<(PresentedModule, Vec<usize>)> {
        let mut rows: Vec<usize> = (0..self.rank()).collect();
        let mut cols: Vec<Vec<Polynomial>> = self.relation_columns();
        let mut col_degs: Vec<i64> = self.relations.source().twists().to_vec();
        let field = ring.field();
        loop {
            let mut pivot = None;
            'search: for (j, c) in cols.iter().enumerate() {
                for (i, f) in c.iter().enumerate() {
                    if ring.is_unit(f) {
                        pivot = Some((i, j));
                        break 'search;
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            let u = cols[pj][pi].as_constant().unwrap();
            let uinv = field.inv(&u).unwrap();
            let pcol = cols[pj].clone();
            for (j, c) in cols.iter_mut().enumerate() {
                if j == pj || c[pi].is_zero() {
                    continue;
                }
                let factor = ring.scalar_mul(&uinv, &c[pi]);
                for (i, f) in c.iter_mut().enumerate() {
                    if !pcol[i].is_zero() {
                        *f = ring.sub(f, &ring.mul(&factor, &pcol[i]));
                    }
                }
            }
            cols.remove(pj);
            col_degs.remove(pj);
            for c in cols.iter_mut() {
                c.remove(pi);
            }
            rows.remove(pi);
        }
        let gens = self.generators.select(&rows);
        let keep = groebner::minimal_generators(ring, gens.twists(), &cols, &col_degs, &[])?;
        let kept_cols: Vec<Vec<Polynomial>> = keep.iter().map(|&j| cols[j].clone()).collect();
        let kept_degs: Vec<i64> = keep.iter().map(|&j| col_degs[j]).collect();
        let relations = GradedMatrix::from_columns(FreeModule::new(kept_degs), gens.clone(), 0, kept_cols)?;
        Ok((
            PresentedModule {
                generators: gens,
                relations,
            },
            rows,
        ))
    }

    /// Degreewise dimensions by linear algebra on monomial bases.
    pub fn hilbert_function(&self, ring: &GradedRing, lo: i64, hi: i64) -> HilbertFunction {
        hilbert_function(ring, self, lo, hi)
    }

    pub fn summary(&self) -> PresentationSummary {
        PresentationSummary {
            generator_degrees: self.generators.twists().to_vec(),
            relation_degrees: self.relations.source().twists().to_vec(),
        }
    }
}

/// A subquotient `Z / B` with the cycles representing its generators.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub module: PresentedModule,
    /// Degree-0 map whose columns are the cycles chosen as generators.
    pub representatives: GradedMatrix,
}

/// Presentation of `span(cycles) / (span(boundaries) + ambient relations)`.
///
/// `cycles` and `boundaries` are maps into the ambient free module; their
/// columns are the generating vectors, of degree `source twist + degree`.
/// Every boundary must lie in the span of the cycles.
pub fn subquotient_presentation(
    ring: &GradedRing,
    cycles: &GradedMatrix,
    boundaries: &GradedMatrix,
    ambient_relations: &[Vec<Polynomial>],
) -> Result<Subquotient> {
    if cycles.target() != boundaries.target() {
        return Err(Error::Shape("cycles and boundaries live in different modules".into()));
    }
    let zgens = cycles.source().shift(-cycles.degree());
    let z = cycles.retwisted(zgens.clone(), cycles.target().clone(), 0)?;
    let lifter = Lifter::new(ring, &z, ambient_relations)?;
    let mut rel_cols: Vec<Vec<Polynomial>> = Vec::new();
    let mut rel_degs: Vec<i64> = Vec::new();
    for (d, v) in lifter.kernel() {
        rel_cols.push(v);
        rel_degs.push(d);
    }
    for j in 0..boundaries.ncols() {
        let b = boundaries.column(j);
        if b.iter().all(|f| f.is_zero()) {
            continue;
        }
        let x = lifter.lift(&b).ok_or_else(|| {
            Error::BoundaryNotInCycles(format!("boundary generator {j} is not a combination of cycles"))
        })?;
        rel_cols.push(x);
        rel_degs.push(boundaries.source().twist(j) + boundaries.degree());
    }
    let rel = GradedMatrix::from_columns(FreeModule::new(rel_degs), zgens, 0, rel_cols)?;
    let raw = PresentedModule::cokernel(ring, rel)?;
    let (module, kept) = raw.prune(ring)?;
    let representatives = z.submatrix(&(0..z.nrows()).collect::<Vec<_>>(), &kept);
    Ok(Subquotient {
        module,
        representatives,
    })
}
