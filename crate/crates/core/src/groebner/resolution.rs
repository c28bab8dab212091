use crate::error::Result;
use crate::graded::{FreeModule, GradedMatrix, PresentedModule};
use crate::ring::GradedRing;

/// `F_0 <- F_1 <- ... ` with `maps[i]: F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub modules: Vec<FreeModule>,
    pub maps: Vec<GradedMatrix>,
    /// Input generators that survive as the basis of `F_0`.
    pub kept: Vec<usize>,
    /// Set when the computation stopped at the step bound with a nonzero
    /// kernel still to resolve.
    pub truncated: bool,
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `beta_{i,j}` as `(i, j, count)` triples with positive count.
    pub fn betti(&self) -> Vec<(usize, i64, usize)> {
        let mut out = Vec::new();
        for (i, m) in self.modules.iter().enumerate() {
            let mut degs = m.degree_multiset();
            degs.dedup();
            for j in degs {
                let n = m.twists().iter().filter(|&&t| t == j).count();
                out.push((i, j, n));
            }
        }
        out
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }
}

/// Hilbert's bound plus two over polynomial rings, 20 over quotients.
pub fn default_max_steps(ring: &GradedRing) -> usize {
    if ring.is_quotient() {
        20
    } else {
        ring.nvars() + 2
    }
}

/// Minimal graded free resolution of `m`, with at most `max_steps` maps.
pub fn min_free_resolution(
    ring: &GradedRing,
    m: &PresentedModule,
    max_steps: usize,
) -> Result<FreeResolution> {
    let (pruned, kept) = m.prune(ring)?;
    let mut modules = vec![pruned.generators().clone()];
    let mut maps: Vec<GradedMatrix> = Vec::new();
    let first = pruned.relations().clone();
    if first.ncols() == 0 {
        return Ok(FreeResolution {
            modules,
            maps,
            kept,
            truncated: false,
        });
    }
    if max_steps == 0 {
        return Ok(FreeResolution {
            modules,
            maps,
            kept,
            truncated: true,
        });
    }
    modules.push(first.source().clone());
    maps.push(first);
    let mut truncated = false;
    loop {
        let k = super::kernel(ring, maps.last().unwrap())?;
        if k.ncols() == 0 {
            break;
        }
        if maps.len() == max_steps {
            truncated = true;
            break;
        }
        modules.push(k.source().clone());
        maps.push(k);
    }
    Ok(FreeResolution {
        modules,
        maps,
        kept,
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Polynomial;

    fn ideal_quotient(r: &GradedRing, gens: Vec<Polynomial>) -> PresentedModule {
        let twists: Vec<i64> = gens
            .iter()
            .map(|g| r.monomial_degree(&g.terms()[0].0))
            .collect();
        let rel = GradedMatrix::new(r, FreeModule::new(twists), FreeModule::new(vec![0]), 0, vec![gens]).unwrap();
        PresentedModule::cokernel(r, rel).unwrap()
    }

    #[test]
    fn koszul_resolution_of_the_residue_field() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let k = ideal_quotient(&r, vec![r.var(0), r.var(1)]);
        let res = min_free_resolution(&r, &k, 4).unwrap();
        assert_eq!(res.ranks(), vec![1, 2, 1]);
        assert!(!res.truncated);
        let prod = res.maps[0].compose(&r, &res.maps[1]).unwrap();
        assert!(prod.is_zero());
        assert!(res.maps.iter().all(|m| m.is_minimal(&r)));
    }

    #[test]
    fn square_of_the_maximal_ideal() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let m = ideal_quotient(&r, vec![r.mul(&x, &x), r.mul(&x, &y), r.mul(&y, &y)]);
        let res = min_free_resolution(&r, &m, 4).unwrap();
        assert_eq!(res.ranks(), vec![1, 3, 2]);
        assert_eq!(res.modules[2].twists(), &[3, 3]);
    }

    #[test]
    fn free_module_has_no_maps() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let m = PresentedModule::free(FreeModule::new(vec![0, 2]));
        let res = min_free_resolution(&r, &m, 4).unwrap();
        assert!(res.maps.is_empty());
    }

    #[test]
    fn residue_field_of_dual_numbers_is_truncated() {
        let r0 = GradedRing::polynomial(&["x"]);
        let x = r0.var(0);
        let r = r0.with_quotient(vec![r0.mul(&x, &x)]).unwrap();
        let k = ideal_quotient(&r, vec![r.var(0)]);
        let res = min_free_resolution(&r, &k, 5).unwrap();
        assert!(res.truncated);
        assert_eq!(res.ranks(), vec![1; 6]);
        assert_eq!(res.modules[5].twists(), &[5]);
    }
}
