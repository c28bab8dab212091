//! Flag resolutions grown by killing the homology of the mapping cone of
//! the current augmentation, one block at a time.

use super::flag::{FlagResolution, FreeFlag, Provenance};
use crate::diffmod::{cone, DMorphism, DifferentialModule};
use crate::error::Result;
use crate::graded::{FreeModule, GradedMatrix};
use crate::ring::{GradedRing, Polynomial};

/// A growing free flag `F` with `ε: F -> D`, stored by columns.
struct Grower<'a> {
    ring: &'a GradedRing,
    target: &'a DifferentialModule,
    twists: Vec<i64>,
    sizes: Vec<usize>,
    dcols: Vec<Vec<Polynomial>>,
    ecols: Vec<Vec<Polynomial>>,
}

impl<'a> Grower<'a> {
    fn new(ring: &'a GradedRing, target: &'a DifferentialModule) -> Self {
        Grower {
            ring,
            target,
            twists: Vec::new(),
            sizes: Vec::new(),
            dcols: Vec::new(),
            ecols: Vec::new(),
        }
    }

    fn module(&self) -> FreeModule {
        FreeModule::new(self.twists.clone())
    }

    fn differential(&self) -> Result<GradedMatrix> {
        let n = self.twists.len();
        let cols: Vec<Vec<Polynomial>> = self
            .dcols
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.resize(n, Polynomial::zero());
                c
            })
            .collect();
        let f = self.module();
        GradedMatrix::from_columns(f.clone(), f, self.target.degree(), cols)
    }

    fn augmentation(&self) -> Result<GradedMatrix> {
        GradedMatrix::from_columns(self.module(), self.target.generators().clone(), 0, self.ecols.clone())
    }

    /// Minimal generators of `H(cone(ε))` as `(twist, d-part, f-part)`.
    fn cone_homology(&self) -> Result<Vec<(i64, Vec<Polynomial>, Vec<Polynomial>)>> {
        let ring = self.ring;
        let f = DifferentialModule::free(ring, self.differential()?)?;
        let eps = DMorphism::new_unchecked(f, self.target.clone(), self.augmentation()?);
        let c = cone(ring, &eps)?;
        let h = c.homology(ring)?;
        let nd = self.target.rank();
        Ok((0..h.representatives.ncols())
            .map(|j| {
                let col = h.representatives.column(j);
                let (dpart, fpart) = col.split_at(nd);
                (h.module.generators().twist(j), dpart.to_vec(), fpart.to_vec())
            })
            .collect())
    }

    /// Adds one block killing the given cycles: `ε g = d`, `∂ g = -f`.
    fn push_block(&mut self, cycles: Vec<(i64, Vec<Polynomial>, Vec<Polynomial>)>) {
        self.sizes.push(cycles.len());
        for (t, d, f) in cycles {
            self.twists.push(t);
            self.dcols.push(f.iter().map(|p| self.ring.neg(p)).collect());
            self.ecols.push(d);
        }
    }

    fn finish(self, provenance: Provenance, depth: usize, truncated: bool) -> Result<FlagResolution> {
        let mut blocks = Vec::new();
        let mut start = 0;
        for &s in &self.sizes {
            blocks.push(FreeModule::new(self.twists[start..start + s].to_vec()));
            start += s;
        }
        Ok(FlagResolution {
            flag: FreeFlag::new(blocks, self.differential()?)?,
            augmentation: self.augmentation()?,
            target: self.target.clone(),
            provenance,
            depth,
            truncated,
        })
    }
}

/// `F_0` covers the minimal generators of `H(D)`; each later block covers
/// the minimal generators of the homology of the current cone. Stops once
/// that homology vanishes or `depth + 1` blocks exist.
pub fn flag_resolution_cone(ring: &GradedRing, d: &DifferentialModule, depth: usize) -> Result<FlagResolution> {
    let mut g = Grower::new(ring, d);
    for _ in 0..=depth {
        crate::cancel::check()?;
        let h = g.cone_homology()?;
        if h.is_empty() {
            return g.finish(Provenance::Cone, depth, false);
        }
        g.push_block(h);
    }
    let done = g.cone_homology()?.is_empty();
    g.finish(Provenance::Cone, depth, !done)
}

/// For `a = 0`: each block covers only the lowest-degree minimal generators
/// of the current cone homology, which keeps the flag minimal. `steps`
/// bounds the number of blocks.
pub fn flag_resolution_degreewise(ring: &GradedRing, d: &DifferentialModule, steps: usize) -> Result<FlagResolution> {
    if d.degree() != 0 {
        return Err(crate::Error::Hypothesis(format!(
            "degree-by-degree construction needs a = 0, got a = {}",
            d.degree()
        )));
    }
    let mut g = Grower::new(ring, d);
    for _ in 0..steps {
        crate::cancel::check()?;
        let h = g.cone_homology()?;
        let Some(low) = h.iter().map(|c| c.0).min() else {
            return g.finish(Provenance::MinimalFlag, steps, false);
        };
        g.push_block(h.into_iter().filter(|c| c.0 == low).collect());
    }
    let done = g.cone_homology()?.is_empty();
    g.finish(Provenance::MinimalFlag, steps, !done)
}
