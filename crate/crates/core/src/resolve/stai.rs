//! Flag resolutions from resolutions of the boundaries and the homology,
//! glued by two applications of the Horseshoe Lemma.
//!
//! With `Z`, `B`, `H` the cycles, boundaries and homology of `D` there are
//! exact sequences `0 -> B -> Z -> H -> 0` and `0 -> Z -> D -> B(a) -> 0`
//! (the second map is `∂`). Resolving `B` and `H` minimally, the first
//! sequence gives a resolution `F^Z = F^B + F^H` with differential
//! `[[d^B, α], [0, d^H]]`, and the second gives a resolution of `D` on
//! `F^Z + F^B(a)` with differential `[[d^Z, γ], [0, -d^B]]`.

use super::dense::{self, Blocks, Mat};
use super::flag::{FlagResolution, FreeFlag, Provenance};
use crate::diffmod::DifferentialModule;
use crate::error::{Error, Result};
use crate::graded::{subquotient_presentation, FreeModule, GradedMatrix};
use crate::groebner::{min_free_resolution, FreeResolution, Lifter};
use crate::ring::{GradedRing, Polynomial};

/// Resolutions of `B` and `H` with the two families of comparison maps.
#[derive(Clone, Debug)]
pub struct Horseshoe {
    pub degree: i64,
    pub boundaries: FreeResolution,
    pub homology: FreeResolution,
    /// `F^B_0 -> D`, onto the boundaries.
    pub eps_b: Mat,
    /// `F^H_0 -> D`, cycles lifting the homology generators.
    pub eps_h: Mat,
    /// `F^B(a)_0 -> D` with `∂ eps_t = eps_b`.
    pub eps_t: Mat,
    /// `alpha[i - 1]: F^H_i -> F^B_{i-1}`.
    pub alpha: Vec<Mat>,
    /// `gamma_b[i - 1]: F^B(a)_i -> F^B_{i-1}`.
    pub gamma_b: Vec<Mat>,
    /// `gamma_h[i - 1]: F^B(a)_i -> F^H_{i-1}`.
    pub gamma_h: Vec<Mat>,
    pub truncated: bool,
}

fn rank_at(r: &FreeResolution, i: usize) -> usize {
    r.modules.get(i).map_or(0, |m| m.rank())
}

fn module_at(r: &FreeResolution, i: usize) -> FreeModule {
    r.modules.get(i).cloned().unwrap_or_else(FreeModule::zero)
}

/// `d_i: F_i -> F_{i-1}` as entries, zero-sized when absent.
fn map_at(r: &FreeResolution, i: usize) -> Mat {
    match r.maps.get(i.wrapping_sub(1)) {
        Some(m) if i >= 1 => m.rows().to_vec(),
        _ => dense::zeros(rank_at(r, i - 1), rank_at(r, i)),
    }
}

fn cols(m: &Mat, nrows: usize, j: usize) -> Vec<Polynomial> {
    (0..nrows).map(|i| m[i][j].clone()).collect()
}

fn from_cols(columns: Vec<Vec<Polynomial>>, nrows: usize) -> Mat {
    let mut out = dense::zeros(nrows, columns.len());
    for (j, c) in columns.into_iter().enumerate() {
        for (i, f) in c.into_iter().enumerate() {
            out[i][j] = f;
        }
    }
    out
}

/// Solves `phi X = rhs` column by column.
fn lift_all(
    ring: &GradedRing,
    phi: &GradedMatrix,
    relations: &[Vec<Polynomial>],
    rhs: &Mat,
    ncols: usize,
    what: &str,
) -> Result<Mat> {
    let n = phi.ncols();
    if ncols == 0 {
        return Ok(dense::zeros(n, 0));
    }
    let lifter = Lifter::new(ring, phi, relations)?;
    let mut out = Vec::with_capacity(ncols);
    for j in 0..ncols {
        let v = cols(rhs, phi.nrows(), j);
        if v.iter().all(|f| f.is_zero()) {
            out.push(vec![Polynomial::zero(); n]);
            continue;
        }
        let x = lifter
            .lift(&v)
            .ok_or_else(|| Error::internal(format!("{what}: column {j} does not lift")))?;
        out.push(x);
    }
    Ok(from_cols(out, n))
}

impl Horseshoe {
    pub fn new(ring: &GradedRing, d: &DifferentialModule, depth: usize) -> Result<Self> {
        let a = d.degree();
        let rels = d.relation_columns();
        let diff = d.differential();
        let tw = d.generators().clone();
        let nd = tw.rank();

        let h = d.homology(ring)?;
        let fh = min_free_resolution(ring, &h.module, depth)?;
        let eps_h: Mat = dense::block(h.representatives.rows(), 0..nd, 0..h.representatives.ncols());
        let eps_h: Mat = eps_h
            .iter()
            .map(|row| fh.kept.iter().map(|&k| row[k].clone()).collect())
            .collect();

        let nonzero: Vec<usize> = (0..nd)
            .filter(|&j| (0..nd).any(|i| !diff.entry(i, j).is_zero()))
            .collect();
        let bcols = diff.submatrix(&(0..nd).collect::<Vec<_>>(), &nonzero);
        let none = GradedMatrix::zero(FreeModule::zero(), tw.clone(), 0);
        let bq = subquotient_presentation(ring, &bcols, &none, &rels)?;
        let fb = min_free_resolution(ring, &bq.module, depth)?;
        let reps = bq.representatives.columns();
        let mut origin = Vec::new();
        for &k in &fb.kept {
            let j = (0..nd)
                .find(|&j| diff.column(j) == reps[k])
                .ok_or_else(|| Error::internal("boundary generator is not a column of the differential"))?;
            origin.push(j);
        }
        let eps_b = from_cols(origin.iter().map(|&j| diff.column(j)).collect(), nd);
        let mut eps_t = dense::zeros(nd, origin.len());
        for (k, &j) in origin.iter().enumerate() {
            eps_t[j][k] = ring.one();
        }

        let fb0 = module_at(&fb, 0);
        let fh0 = module_at(&fh, 0);
        let eps_b_m = GradedMatrix::from_parts(fb0.clone(), tw.clone(), 0, eps_b.clone())?;

        // first horseshoe: α
        let mut alpha: Vec<Mat> = Vec::new();
        for i in 1..fh.modules.len() {
            let dh = map_at(&fh, i);
            let nh = rank_at(&fh, i);
            let a_i = if i == 1 {
                let rhs = dense::neg(ring, &dense::mul(ring, &eps_h, &dh, rank_at(&fh, 0), nh));
                lift_all(ring, &eps_b_m, &rels, &rhs, nh, "alpha_1")?
            } else if i - 1 < fb.modules.len() && i > 1 {
                let prev = &alpha[i - 2];
                let rhs = dense::neg(ring, &dense::mul(ring, prev, &dh, rank_at(&fh, i - 1), nh));
                let db = &fb.maps[i - 2];
                lift_all(ring, db, &[], &rhs, nh, "alpha")?
            } else {
                dense::zeros(rank_at(&fb, i - 1), nh)
            };
            alpha.push(a_i);
        }

        // second horseshoe: γ, with d^B(a) = -d^B
        let mut gamma_b: Vec<Mat> = Vec::new();
        let mut gamma_h: Vec<Mat> = Vec::new();
        for i in 1..fb.modules.len() {
            let db = map_at(&fb, i);
            let nbi = rank_at(&fb, i);
            let (nb_prev, nh_prev) = (rank_at(&fb, i - 1), rank_at(&fh, i - 1));
            let z = if i == 1 {
                let mut ez = eps_b.clone();
                for (row, hrow) in ez.iter_mut().zip(&eps_h) {
                    row.extend(hrow.iter().cloned());
                }
                let src = FreeModule::direct_sum(&[&fb0, &fh0]);
                let ez_m = GradedMatrix::from_parts(src, tw.clone(), 0, ez)?;
                let rhs = dense::mul(ring, &eps_t, &db, rank_at(&fb, 0), nbi);
                lift_all(ring, &ez_m, &rels, &rhs, nbi, "gamma_1")?
            } else {
                let dz = Self::dz_matrix(&fb, &fh, &alpha, i - 1)?;
                let gb = &gamma_b[i - 2];
                let gh = &gamma_h[i - 2];
                let mut prev = gb.clone();
                prev.extend(gh.iter().cloned());
                let rhs = dense::mul(ring, &prev, &db, rank_at(&fb, i - 1), nbi);
                lift_all(ring, &dz, &[], &rhs, nbi, "gamma")?
            };
            gamma_b.push(z[..nb_prev].to_vec());
            gamma_h.push(z[nb_prev..nb_prev + nh_prev].to_vec());
        }

        Ok(Horseshoe {
            degree: a,
            truncated: fb.truncated || fh.truncated,
            boundaries: fb,
            homology: fh,
            eps_b,
            eps_h,
            eps_t,
            alpha,
            gamma_b,
            gamma_h,
        })
    }

    /// `d^Z_i: F^Z_i -> F^Z_{i-1}` for `i >= 1`.
    fn dz_matrix(fb: &FreeResolution, fh: &FreeResolution, alpha: &[Mat], i: usize) -> Result<GradedMatrix> {
        let src = FreeModule::direct_sum(&[&module_at(fb, i), &module_at(fh, i)]);
        let tgt = FreeModule::direct_sum(&[&module_at(fb, i - 1), &module_at(fh, i - 1)]);
        let (nb, nh) = (rank_at(fb, i), rank_at(fh, i));
        let (pb, ph) = (rank_at(fb, i - 1), rank_at(fh, i - 1));
        let mut m = dense::zeros(pb + ph, nb + nh);
        let db = map_at(fb, i);
        let dh = map_at(fh, i);
        let al = alpha.get(i - 1).cloned().unwrap_or_else(|| dense::zeros(pb, nh));
        for r in 0..pb {
            for c in 0..nb {
                m[r][c] = db[r][c].clone();
            }
            for c in 0..nh {
                m[r][nb + c] = al[r][c].clone();
            }
        }
        for r in 0..ph {
            for c in 0..nh {
                m[pb + r][nb + c] = dh[r][c].clone();
            }
        }
        GradedMatrix::from_parts(src, tgt, 0, m)
    }

    pub fn b_len(&self) -> usize {
        self.boundaries.modules.len()
    }

    pub fn h_len(&self) -> usize {
        self.homology.modules.len()
    }

    /// `G^B_i`, `G^H_i` and `G^B(a)_i`: the resolutions folded with degree `a`.
    pub fn gb(&self, i: usize) -> FreeModule {
        module_at(&self.boundaries, i).shift(i as i64 * self.degree)
    }

    pub fn gh(&self, i: usize) -> FreeModule {
        module_at(&self.homology, i).shift(i as i64 * self.degree)
    }

    pub fn gba(&self, i: usize) -> FreeModule {
        module_at(&self.boundaries, i).shift((i as i64 + 1) * self.degree)
    }

    pub(crate) fn d_b(&self, i: usize) -> Mat {
        map_at(&self.boundaries, i)
    }

    pub(crate) fn d_h(&self, i: usize) -> Mat {
        map_at(&self.homology, i)
    }
}

/// The flag with blocks `G_k = G^B_k + G^H_k + G^B(a)_{k-1}`, differential the
/// folded resolution of `D` plus the identity `G^B(a)_k -> G^B_k`, and
/// augmentation `(eps_b, eps_h, eps_t)` on `G_0 + G^B(a)_0`.
pub fn flag_resolution_stai(ring: &GradedRing, d: &DifferentialModule, depth: usize) -> Result<FlagResolution> {
    let hs = Horseshoe::new(ring, d, depth)?;
    let nblocks = hs.h_len().max(hs.b_len() + 1);
    let idx_b = |i: usize| 3 * i;
    let idx_h = |i: usize| 3 * i + 1;
    let idx_ba = |i: usize| 3 * (i + 1) + 2;
    let mut modules = Vec::new();
    for k in 0..nblocks {
        modules.push(hs.gb(k));
        modules.push(hs.gh(k));
        modules.push(if k == 0 { FreeModule::zero() } else { hs.gba(k - 1) });
    }
    let mut g = Blocks::new(modules.clone());
    let one = |n: usize| dense::identity(ring, n);
    for i in 0..hs.b_len() {
        if i >= 1 {
            g.put(idx_b(i - 1), idx_b(i), &hs.d_b(i));
            g.put(idx_ba(i - 1), idx_ba(i), &dense::neg(ring, &hs.d_b(i)));
            g.put(idx_b(i - 1), idx_ba(i), &hs.gamma_b[i - 1]);
            g.put(idx_h(i - 1), idx_ba(i), &hs.gamma_h[i - 1]);
        }
        g.put(idx_b(i), idx_ba(i), &one(hs.gb(i).rank()));
    }
    for i in 1..hs.h_len() {
        g.put(idx_h(i - 1), idx_h(i), &hs.d_h(i));
        g.put(idx_b(i - 1), idx_h(i), &hs.alpha[i - 1]);
    }
    let diff = g.finish(ring, d.degree())?;
    if !diff.compose(ring, &diff)?.is_zero() {
        return Err(Error::internal("assembled flag differential does not square to zero"));
    }
    let nd = d.rank();
    let mut eps = dense::zeros(nd, g.rank());
    let place = |eps: &mut Mat, block: usize, m: &Mat| {
        let r = g.range(block);
        for i in 0..nd {
            for (k, c) in r.clone().enumerate() {
                eps[i][c] = m[i][k].clone();
            }
        }
    };
    place(&mut eps, idx_b(0), &hs.eps_b);
    place(&mut eps, idx_h(0), &hs.eps_h);
    if hs.b_len() > 0 {
        place(&mut eps, idx_ba(0), &hs.eps_t);
    }
    let augmentation = GradedMatrix::new(ring, g.module(), d.generators().clone(), 0, eps)?;
    let blocks: Vec<FreeModule> = (0..nblocks)
        .map(|k| FreeModule::direct_sum(&[&modules[3 * k], &modules[3 * k + 1], &modules[3 * k + 2]]))
        .collect();
    Ok(FlagResolution {
        flag: FreeFlag::new(blocks, diff)?,
        augmentation,
        target: d.clone(),
        provenance: Provenance::Stai,
        depth,
        truncated: hs.truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example(r: &GradedRing) -> DifferentialModule {
        let (x, y) = (r.var(0), r.var(1));
        let xy = r.mul(&x, &y);
        DifferentialModule::from_entries(
            r,
            vec![0, 0],
            2,
            vec![vec![xy.clone(), r.neg(&r.mul(&x, &x))], vec![r.mul(&y, &y), r.neg(&xy)]],
        )
        .unwrap()
    }

    #[test]
    fn rank_ten_flag_for_the_example() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let d = example(&r);
        let f = flag_resolution_stai(&r, &d, 4).unwrap();
        assert_eq!(f.flag.rank(), 10);
        assert!(!f.truncated);
        let rep = f.verify(&r, -4, 10).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
    }

    #[test]
    fn zero_differential_gives_the_folded_resolution() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let rel = GradedMatrix::new(&r, FreeModule::new(vec![1, 1]), FreeModule::new(vec![0]), 0, vec![vec![r.var(0), r.var(1)]]).unwrap();
        let k = crate::graded::PresentedModule::cokernel(&r, rel).unwrap();
        let d = DifferentialModule::new(&r, k, GradedMatrix::zero(FreeModule::new(vec![0]), FreeModule::new(vec![0]), 0)).unwrap();
        let f = flag_resolution_stai(&r, &d, 4).unwrap();
        assert_eq!(f.flag.compact().ranks(), vec![1, 2, 1]);
        assert!(f.verify(&r, -2, 8).unwrap().passed());
    }

    #[test]
    fn contractible_input_has_no_homology_part() {
        let r = GradedRing::polynomial(&["x"]);
        let d = DifferentialModule::from_entries(&r, vec![0, 0], 0, vec![vec![r.zero(), r.one()], vec![r.zero(), r.zero()]]).unwrap();
        let f = flag_resolution_stai(&r, &d, 3).unwrap();
        let hs = Horseshoe::new(&r, &d, 3).unwrap();
        assert_eq!(hs.homology.modules[0].rank(), 0);
        assert_eq!(f.flag.rank(), 2);
        assert!(f.verify(&r, -3, 3).unwrap().passed());
    }
}
