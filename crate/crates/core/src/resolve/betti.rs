//! Differential Betti numbers and the comparison with the Betti numbers of
//! the homology.

use std::collections::BTreeMap;

use serde::Serialize;

use super::deform::deformation_resolution;
use super::flag::FlagResolution;
use super::minimize::minimize;
use crate::diffmod::DifferentialModule;
use crate::error::{Error, Result};
use crate::groebner::min_free_resolution;
use crate::linalg;
use crate::report::{Check, Report};
use crate::ring::GradedRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BettiMethod {
    /// Generator degrees of the minimal resolution.
    Minres,
    /// `dim H(F ⊗ k)_j` from the constant part of a flag resolution.
    Tor,
}

impl BettiMethod {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "minres" => Some(BettiMethod::Minres),
            "tor" => Some(BettiMethod::Tor),
            _ => None,
        }
    }
}

/// `β_j` on `lo..=hi`. `None` marks a degree where the count keeps changing
/// with the truncation depth, so no finite value is claimed.
#[derive(Clone, Debug, Serialize)]
pub struct BettiTable {
    pub degree: i64,
    pub lo: i64,
    pub hi: i64,
    pub values: Vec<Option<u64>>,
    /// Entries that cannot change at larger depth.
    pub certified: Vec<bool>,
    pub depth: usize,
    pub truncated: bool,
    pub notices: Vec<String>,
}

impl BettiTable {
    pub fn get(&self, j: i64) -> Option<u64> {
        if j < self.lo || j > self.hi {
            return None;
        }
        self.values[(j - self.lo) as usize]
    }

    pub fn rows(&self) -> impl Iterator<Item = (i64, Option<u64>, bool)> + '_ {
        (self.lo..=self.hi).map(move |j| {
            let k = (j - self.lo) as usize;
            (j, self.values[k], self.certified[k])
        })
    }

    pub fn all_certified(&self) -> bool {
        self.certified.iter().all(|&c| c)
    }

    pub fn to_report(&self, command: &str) -> Report {
        let mut rep = Report::new(command);
        let rows = self.rows().map(|(j, v, _)| (j, v.map(|v| v as i64))).collect();
        rep.partial_table("betti", "j", "beta", rows);
        for n in &self.notices {
            rep.notice(n.clone());
        }
        rep
    }
}

/// `β_j` for every degree that carries a generator of the flag.
pub fn betti_counts(ring: &GradedRing, flag: &FlagResolution, method: BettiMethod) -> Result<BTreeMap<i64, u64>> {
    let f = flag.flag.module();
    match method {
        BettiMethod::Minres => {
            let m = minimize(ring, &flag.dm(ring)?)?;
            let mut out = BTreeMap::new();
            for t in m.minimal.generators().twists() {
                *out.entry(*t).or_insert(0) += 1;
            }
            Ok(out)
        }
        BettiMethod::Tor => {
            let a = flag.flag.degree();
            let c = flag.flag.differential().constant_part();
            let field = ring.field();
            let idx = |j: i64| -> Vec<usize> { (0..f.rank()).filter(|&i| f.twist(i) == j).collect() };
            let rank = |src: i64| -> usize {
                let (rows, cols) = (idx(src + a), idx(src));
                if rows.is_empty() || cols.is_empty() {
                    return 0;
                }
                let m: Vec<Vec<_>> = rows.iter().map(|&r| cols.iter().map(|&c2| c[r][c2].clone()).collect()).collect();
                linalg::dense_rank(field, &m)
            };
            let mut degs: Vec<i64> = f.twists().to_vec();
            degs.sort_unstable();
            degs.dedup();
            let mut out = BTreeMap::new();
            for j in degs {
                let b = idx(j).len();
                let v = b - rank(j) - rank(j - a);
                if v > 0 {
                    out.insert(j, v as u64);
                }
            }
            Ok(out)
        }
    }
}

/// Degrees `j` with `j < bound` are unaffected by blocks past `depth`, or
/// `None` when no such bound follows from the degrees alone (`a > 0`).
fn certified_bound(flag: &FlagResolution, depth: usize) -> Option<i64> {
    let a = flag.flag.degree();
    if a > 0 {
        return None;
    }
    let h_min = flag.flag.blocks().first().and_then(|b| b.twists().iter().min().copied())?;
    Some(h_min + (depth as i64 + 1) * (1 - a) + a)
}

/// Differential Betti numbers from the deformation resolution truncated at
/// `depth`. When truncation matters, entries are compared against depth
/// `depth + 2`; entries that differ are reported as `None`.
pub fn betti_dm(
    ring: &GradedRing,
    d: &DifferentialModule,
    lo: i64,
    hi: i64,
    method: BettiMethod,
    depth: usize,
) -> Result<BettiTable> {
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty range {lo}..{hi}")));
    }
    let flag = deformation_resolution(ring, d, depth)?.resolution;
    let counts = betti_counts(ring, &flag, method)?;
    let n = (hi - lo + 1) as usize;
    let at = |m: &BTreeMap<i64, u64>, j: i64| m.get(&j).copied().unwrap_or(0);
    let mut values: Vec<Option<u64>> = (lo..=hi).map(|j| Some(at(&counts, j))).collect();
    let mut certified = vec![true; n];
    let mut notices = Vec::new();
    if flag.truncated {
        let bound = certified_bound(&flag, depth);
        for (k, j) in (lo..=hi).enumerate() {
            certified[k] = bound.is_some_and(|b| j < b);
        }
        if certified.iter().any(|c| !c) {
            let deeper = deformation_resolution(ring, d, depth + 2)?.resolution;
            let more = betti_counts(ring, &deeper, method)?;
            let mut growing = Vec::new();
            for (k, j) in (lo..=hi).enumerate() {
                if certified[k] {
                    continue;
                }
                let (u, v) = (at(&counts, j), at(&more, j));
                if u != v {
                    values[k] = None;
                    growing.push(format!("beta_{j}: {u} at depth {depth}, {v} at depth {}", depth + 2));
                }
            }
            notices.push(match bound {
                Some(b) => format!("truncated at depth {depth}: entries with j >= {b} are depth-stable only, not certified"),
                None => format!("truncated at depth {depth} with a > 0: entries are depth-stable only, not certified"),
            });
            if !growing.is_empty() {
                notices.push(format!(
                    "no convergence: counts change with depth, no finite value is claimed ({})",
                    growing.join("; ")
                ));
            }
        }
    }
    Ok(BettiTable {
        degree: d.degree(),
        lo,
        hi,
        values,
        certified,
        depth,
        truncated: flag.truncated,
        notices,
    })
}

/// `Σ_i β_{i, j + i a}(H(D))` on `lo..=hi`, with the truncation flag of the
/// resolution of the homology.
pub fn homology_bound(ring: &GradedRing, d: &DifferentialModule, lo: i64, hi: i64, depth: usize) -> Result<(Vec<u64>, bool)> {
    let h = d.homology(ring)?;
    let res = min_free_resolution(ring, &h.module, depth)?;
    let a = d.degree();
    let mut out = vec![0u64; (hi - lo + 1) as usize];
    for (i, j, n) in res.betti() {
        let target = j - i as i64 * a;
        if (lo..=hi).contains(&target) {
            out[(target - lo) as usize] += n as u64;
        }
    }
    Ok((out, res.truncated))
}

/// `β_j(D) <= Σ_i β_{i, j + i a}(H(D))` on the range, and for `a = 0` the
/// two sides agree mod 2.
pub fn check_semicontinuity(ring: &GradedRing, d: &DifferentialModule, lo: i64, hi: i64, depth: usize) -> Result<Report> {
    let mut rep = Report::new("semicontinuity");
    let table = betti_dm(ring, d, lo, hi, BettiMethod::Minres, depth)?;
    let (bound, htrunc) = homology_bound(ring, d, lo, hi, depth)?;
    let mut ineq_fail = Vec::new();
    let mut parity_fail = Vec::new();
    for (k, (j, v, _)) in table.rows().enumerate() {
        let Some(v) = v else { continue };
        if v > bound[k] {
            ineq_fail.push(j);
        }
        if d.degree() == 0 && (v % 2) != (bound[k] % 2) {
            parity_fail.push(j);
        }
    }
    rep.check(Check::new(
        "inequality",
        ineq_fail.is_empty(),
        if ineq_fail.is_empty() { String::new() } else { format!("fails at j in {ineq_fail:?}") },
    ));
    if d.degree() == 0 {
        rep.check(Check::new(
            "parity",
            parity_fail.is_empty(),
            if parity_fail.is_empty() { String::new() } else { format!("fails at j in {parity_fail:?}") },
        ));
    }
    let rows = |v: &[u64]| (lo..=hi).zip(v).map(|(j, &x)| (j, x as i64)).collect::<Vec<_>>();
    rep.partial_table("betti_dm", "j", "beta", table.rows().map(|(j, v, _)| (j, v.map(|v| v as i64))).collect());
    rep.table("homology_bound", "j", "sum_i beta_i,j+ia", rows(&bound));
    for n in table.notices {
        rep.notice(n);
    }
    if htrunc {
        rep.notice(format!("resolution of the homology truncated at depth {depth}: right-hand sides are partial sums"));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{FreeModule, GradedMatrix, PresentedModule};

    fn dual_numbers_residue(a: i64) -> (GradedRing, DifferentialModule) {
        let p = GradedRing::polynomial(&["x"]);
        let r = p.with_quotient(vec![p.pow(&p.var(0), 2)]).unwrap();
        let rel = GradedMatrix::new(&r, FreeModule::new(vec![1]), FreeModule::new(vec![0]), 0, vec![vec![r.var(0)]]).unwrap();
        let k = PresentedModule::cokernel(&r, rel).unwrap();
        let g = FreeModule::new(vec![0]);
        let d = DifferentialModule::new(&r, k, GradedMatrix::zero(g.clone(), g, a)).unwrap();
        (r, d)
    }

    #[test]
    fn residue_field_of_dual_numbers() {
        let (r, d) = dual_numbers_residue(0);
        let t = betti_dm(&r, &d, -3, 8, BettiMethod::Tor, 8).unwrap();
        for (j, v, c) in t.rows() {
            assert_eq!(v, Some(u64::from(j >= 0)));
            assert!(c);
        }
    }

    #[test]
    fn degree_one_does_not_converge() {
        let (r, d) = dual_numbers_residue(1);
        let t = betti_dm(&r, &d, -2, 2, BettiMethod::Minres, 6).unwrap();
        assert_eq!(t.get(0), None);
        assert_eq!(t.get(1), Some(0));
        assert!(t.notices.iter().any(|n| n.contains("no convergence")));
    }

    #[test]
    fn zero_differential_is_tight() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let rel = GradedMatrix::new(&r, FreeModule::new(vec![1, 1]), FreeModule::new(vec![0]), 0, vec![vec![r.var(0), r.var(1)]]).unwrap();
        let k = PresentedModule::cokernel(&r, rel).unwrap();
        let g = FreeModule::new(vec![0]);
        let d = DifferentialModule::new(&r, k, GradedMatrix::zero(g.clone(), g, 0)).unwrap();
        let t = betti_dm(&r, &d, 0, 4, BettiMethod::Minres, 4).unwrap();
        let (b, _) = homology_bound(&r, &d, 0, 4, 4).unwrap();
        assert_eq!(t.values, b.iter().map(|&v| Some(v)).collect::<Vec<_>>());
        assert!(check_semicontinuity(&r, &d, 0, 4, 4).unwrap().passed());
    }
}
