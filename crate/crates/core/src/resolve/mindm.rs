//! Minimal free resolutions of differential modules.

use serde::Serialize;

use super::cone_flag::flag_resolution_degreewise;
use super::deform::deformation_resolution;
use super::flag::{FlagResolution, FreeFlag};
use super::minimize::{minimize, Minimization};
use crate::diffmod::DifferentialModule;
use crate::error::Result;
use crate::graded::{FreeModule, GradedMatrix};
use crate::ring::GradedRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinimalMethod {
    ViaDeformation,
    DirectDegreewise,
}

impl MinimalMethod {
    pub fn name(self) -> &'static str {
        match self {
            MinimalMethod::ViaDeformation => "via-deformation",
            MinimalMethod::DirectDegreewise => "direct-degreewise",
        }
    }
}

/// A minimal free differential module `M` with `M -> D`, split off the
/// flag resolution `flag`.
#[derive(Clone, Debug)]
pub struct MinimalDM {
    pub module: DifferentialModule,
    /// `M -> D`.
    pub augmentation: GradedMatrix,
    pub flag: FlagResolution,
    /// Embedding `M -> F`, projection `F -> M` and the change of basis.
    pub split: Minimization,
    /// Flag blocks on `M` itself, when the splitting left a flag.
    pub flag_blocks: Option<Vec<FreeModule>>,
    pub method: MinimalMethod,
}

impl MinimalDM {
    pub fn rank(&self) -> usize {
        self.module.rank()
    }

    pub fn truncated(&self) -> bool {
        self.flag.truncated
    }

    /// `M` with its flag structure, when it has one.
    pub fn as_flag(&self) -> Option<FreeFlag> {
        let blocks = self.flag_blocks.clone()?;
        FreeFlag::new(blocks, self.module.differential().clone()).ok()
    }

    /// Generator degrees, sorted.
    pub fn degrees(&self) -> Vec<i64> {
        self.module.generators().degree_multiset()
    }
}

/// Either `minimize(deformation_resolution(D))` or, for `a = 0`, the
/// degree-by-degree cone construction, which is minimal and a flag at once.
/// `depth` bounds the flag length.
pub fn minimal_free_resolution_dm(
    ring: &GradedRing,
    d: &DifferentialModule,
    method: MinimalMethod,
    depth: usize,
) -> Result<MinimalDM> {
    let flag = match method {
        MinimalMethod::ViaDeformation => deformation_resolution(ring, d, depth)?.resolution,
        MinimalMethod::DirectDegreewise => flag_resolution_degreewise(ring, d, depth + 1)?,
    };
    from_flag(ring, flag, method)
}

pub(crate) fn from_flag(ring: &GradedRing, flag: FlagResolution, method: MinimalMethod) -> Result<MinimalDM> {
    let split = minimize(ring, &flag.dm(ring)?)?;
    let augmentation = flag.augmentation.compose(ring, &split.embedding)?;
    let flag_blocks = split.pairs.is_empty().then(|| flag.flag.blocks().to_vec());
    Ok(MinimalDM {
        module: split.minimal.clone(),
        augmentation,
        flag,
        split,
        flag_blocks,
        method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_is_its_own_minimal_resolution() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let xy = r.mul(&x, &y);
        let d = DifferentialModule::from_entries(
            &r,
            vec![0, 0],
            2,
            vec![vec![xy.clone(), r.neg(&r.mul(&x, &x))], vec![r.mul(&y, &y), r.neg(&xy)]],
        )
        .unwrap();
        let m = minimal_free_resolution_dm(&r, &d, MinimalMethod::ViaDeformation, 4).unwrap();
        assert_eq!(m.degrees(), vec![0, 0]);
        assert!(m.module.differential().is_minimal(&r));
        assert!(crate::diffmod::find_isomorphism(&r, &m.module, &d, 1).unwrap().is_some());
    }

    #[test]
    fn both_methods_agree_on_a_degree_zero_fold() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let x = r.var(0);
        let z = r.zero();
        let d = DifferentialModule::from_entries(
            &r,
            vec![0, 1, 2],
            0,
            vec![vec![z.clone(), x.clone(), z.clone()], vec![z.clone(), z.clone(), z.clone()], vec![z.clone(), z.clone(), z.clone()]],
        )
        .unwrap();
        let a = minimal_free_resolution_dm(&r, &d, MinimalMethod::ViaDeformation, 4).unwrap();
        let b = minimal_free_resolution_dm(&r, &d, MinimalMethod::DirectDegreewise, 6).unwrap();
        assert_eq!(a.degrees(), vec![0, 1, 2]);
        assert_eq!(a.degrees(), b.degrees());
        assert!(b.flag_blocks.is_some());
    }
}
