use serde::Serialize;

use super::dense::{self, Mat};
use crate::diffmod::{DMorphism, DifferentialModule};
use crate::error::{Error, Result};
use crate::graded::{FreeModule, GradedMatrix};
use crate::report::{Check, Report};
use crate::ring::GradedRing;

/// How a flag resolution was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Stai,
    Cone,
    Deformation,
    MinimalFlag,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Stai => "stai",
            Provenance::Cone => "cone",
            Provenance::Deformation => "deformation",
            Provenance::MinimalFlag => "minimal-flag",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "stai" => Provenance::Stai,
            "cone" => Provenance::Cone,
            "deformation" => Provenance::Deformation,
            "minimal-flag" => Provenance::MinimalFlag,
            _ => return None,
        })
    }
}

/// Free differential module `F_0 + F_1 + ...` whose differential maps
/// `F_j` into `F_0 + ... + F_{j-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeFlag {
    blocks: Vec<FreeModule>,
    differential: GradedMatrix,
}

impl FreeFlag {
    pub fn new(blocks: Vec<FreeModule>, differential: GradedMatrix) -> Result<Self> {
        let total = FreeModule::direct_sum(&blocks.iter().collect::<Vec<_>>());
        if differential.source() != &total || differential.target() != &total {
            return Err(Error::Shape(format!(
                "flag blocks sum to {total} but the differential acts on {}",
                differential.source()
            )));
        }
        Ok(FreeFlag {
            blocks,
            differential,
        })
    }

    pub fn blocks(&self) -> &[FreeModule] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn differential(&self) -> &GradedMatrix {
        &self.differential
    }

    pub fn degree(&self) -> i64 {
        self.differential.degree()
    }

    pub fn rank(&self) -> usize {
        self.differential.ncols()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.rank()).collect()
    }

    pub fn module(&self) -> FreeModule {
        self.differential.source().clone()
    }

    pub(crate) fn offsets(&self) -> Vec<usize> {
        let mut out = vec![0];
        for b in &self.blocks {
            out.push(out.last().unwrap() + b.rank());
        }
        out
    }

    /// `∂_{i,j}: F_j -> F_i`.
    pub fn block(&self, i: usize, j: usize) -> GradedMatrix {
        let o = self.offsets();
        let rows: Vec<usize> = (o[i]..o[i + 1]).collect();
        let cols: Vec<usize> = (o[j]..o[j + 1]).collect();
        self.differential.submatrix(&rows, &cols)
    }

    pub(crate) fn block_entries(&self, i: usize, j: usize) -> Mat {
        let o = self.offsets();
        dense::block(self.differential.rows(), o[i]..o[i + 1], o[j]..o[j + 1])
    }

    /// Flag index of every generator.
    pub fn block_of(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(i, b)| std::iter::repeat_n(i, b.rank()))
            .collect()
    }

    pub fn is_strictly_upper(&self) -> bool {
        let n = self.blocks.len();
        (0..n).all(|i| (0..=i).all(|j| self.block(i, j).is_zero()))
    }

    pub fn to_dm(&self, ring: &GradedRing) -> Result<DifferentialModule> {
        DifferentialModule::free(ring, self.differential.clone())
    }

    /// Keeps the first `n` blocks; a sub-differential module.
    pub fn truncate(&self, n: usize) -> FreeFlag {
        let n = n.min(self.blocks.len());
        let o = self.offsets();
        let idx: Vec<usize> = (0..o[n]).collect();
        FreeFlag {
            blocks: self.blocks[..n].to_vec(),
            differential: self.differential.submatrix(&idx, &idx),
        }
    }

    /// Drops empty blocks.
    pub fn compact(&self) -> FreeFlag {
        let blocks: Vec<FreeModule> = self.blocks.iter().filter(|b| b.rank() > 0).cloned().collect();
        FreeFlag {
            blocks,
            differential: self.differential.clone(),
        }
    }
}

/// A free flag with a quasi-isomorphism onto `D`.
#[derive(Clone, Debug)]
pub struct FlagResolution {
    pub flag: FreeFlag,
    pub augmentation: GradedMatrix,
    pub target: DifferentialModule,
    pub provenance: Provenance,
    /// Requested depth.
    pub depth: usize,
    /// Set when some ingredient stopped at `depth` before finishing.
    pub truncated: bool,
}

impl FlagResolution {
    pub fn dm(&self, ring: &GradedRing) -> Result<DifferentialModule> {
        self.flag.to_dm(ring)
    }

    pub fn morphism(&self, ring: &GradedRing) -> Result<DMorphism> {
        DMorphism::new(ring, self.dm(ring)?, self.target.clone(), self.augmentation.clone())
    }

    /// Shape, square-zero and morphism checks, plus exactness of the cone
    /// of the augmentation by the oracle on `lo..=hi`.
    pub fn verify(&self, ring: &GradedRing, lo: i64, hi: i64) -> Result<Report> {
        let mut rep = Report::new("verify-flag");
        rep.check(Check::new("strictly_upper", self.flag.is_strictly_upper(), ""));
        let dm = self.dm(ring)?;
        let sq = dm.square(ring);
        rep.check(Check::new("square_zero", sq.is_zero(), ""));
        let f = DMorphism::new_unchecked(dm, self.target.clone(), self.augmentation.clone());
        let commutes = f.commutes(ring)?;
        rep.check(Check::new("augmentation_is_morphism", commutes, ""));
        let cone = crate::diffmod::cone(ring, &f)?;
        let h = cone.homology_oracle(ring, lo, hi);
        let bad: Vec<i64> = h.iter().filter(|(_, v)| *v != 0).map(|(d, _)| d).collect();
        rep.check(Check::new(
            "cone_exact",
            bad.is_empty(),
            if bad.is_empty() {
                format!("oracle homology vanishes on [{lo}, {hi}]")
            } else {
                format!("cone homology nonzero in degrees {bad:?}")
            },
        ));
        if self.truncated {
            rep.notice(format!("truncated at depth {}", self.depth));
        }
        Ok(rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_flag_blocks() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let blocks = vec![FreeModule::new(vec![0]), FreeModule::new(vec![1, 1]), FreeModule::new(vec![2])];
        let f = FreeModule::new(vec![0, 1, 1, 2]);
        let z = r.zero();
        let d = GradedMatrix::new(
            &r,
            f.clone(),
            f,
            0,
            vec![
                vec![z.clone(), x.clone(), y.clone(), z.clone()],
                vec![z.clone(), z.clone(), z.clone(), r.neg(&y)],
                vec![z.clone(), z.clone(), z.clone(), x.clone()],
                vec![z.clone(), z.clone(), z.clone(), z.clone()],
            ],
        )
        .unwrap();
        let flag = FreeFlag::new(blocks, d).unwrap();
        assert!(flag.is_strictly_upper());
        assert_eq!(flag.block(1, 2).format(&r), "[[-y], [x]]");
        assert_eq!(flag.truncate(2).rank(), 3);
        assert_eq!(flag.block_of(), vec![0, 1, 1, 2]);
    }
}
