//! The flag resolution supported on the minimal free resolution of `H(D)`.
//!
//! Group the Horseshoe flag as `G^B + G^H + G^B(a)` with differential
//! `[[X, α, τ], [0, Y, β], [0, 0, W]]`, where `τ = 1 + Γ` and `Γ` lowers
//! the resolution index. Conjugating by `P = diag(1, 1, τ⁻¹)` and then by
//! `Q = [[1, 0, 0], [c, 1, 0], [w, -α, 1]]` with `c = βτ⁻¹` and `w = τWτ⁻¹`
//! splits off the contractible `G^B + G^B(a)` and leaves
//! `Y - βτ⁻¹α` on `G^H`.

use super::dense::{self, Blocks, Mat};
use super::flag::{FlagResolution, FreeFlag, Provenance};
use super::stai::Horseshoe;
use crate::diffmod::DifferentialModule;
use crate::error::{Error, Result};
use crate::graded::{FreeModule, GradedMatrix};
use crate::ring::GradedRing;

/// Deformation resolution together with its ingredients.
#[derive(Clone, Debug)]
pub struct Deformation {
    pub resolution: FlagResolution,
    pub horseshoe: Horseshoe,
    /// Number of blocks minus one: an upper bound for the free class of `D`.
    pub free_class_bound: usize,
}

struct Grouped {
    hb: Vec<usize>,
    hh: Vec<usize>,
    nb: usize,
    nh: usize,
}

impl Grouped {
    fn new(hs: &Horseshoe) -> Self {
        let mut hb = vec![0];
        for i in 0..hs.b_len() {
            hb.push(hb[i] + hs.gb(i).rank());
        }
        let mut hh = vec![0];
        for i in 0..hs.h_len() {
            hh.push(hh[i] + hs.gh(i).rank());
        }
        let nb = *hb.last().unwrap();
        hb.resize(hb.len().max(hh.len()), nb);
        Grouped {
            nb,
            nh: *hh.last().unwrap(),
            hb,
            hh,
        }
    }
}

fn put(m: &mut Mat, r0: usize, c0: usize, b: &Mat) {
    for (i, row) in b.iter().enumerate() {
        for (j, f) in row.iter().enumerate() {
            m[r0 + i][c0 + j] = f.clone();
        }
    }
}

fn pad(rows: usize, cols: usize, parts: &[(usize, usize, &Mat)]) -> Mat {
    let mut m = dense::zeros(rows, cols);
    for (r0, c0, b) in parts {
        put(&mut m, *r0, *c0, b);
    }
    m
}

/// `Σ_k (-n)^k` for nilpotent `n`.
fn unipotent_inverse(ring: &GradedRing, n: &Mat, size: usize) -> Mat {
    let mut out = dense::identity(ring, size);
    let mut term = dense::identity(ring, size);
    let neg = dense::neg(ring, n);
    for _ in 0..=size {
        term = dense::mul(ring, &term, &neg, size, size);
        if dense::is_zero(&term) {
            break;
        }
        out = dense::add(ring, &out, &term);
    }
    out
}

pub fn deformation_resolution(ring: &GradedRing, d: &DifferentialModule, depth: usize) -> Result<Deformation> {
    let hs = Horseshoe::new(ring, d, depth)?;
    let g = Grouped::new(&hs);
    let (nb, nh) = (g.nb, g.nh);

    let mut x = dense::zeros(nb, nb);
    let mut w = dense::zeros(nb, nb);
    let mut gam = dense::zeros(nb, nb);
    let mut beta = dense::zeros(nh, nb);
    let mut alpha = dense::zeros(nb, nh);
    let mut y = dense::zeros(nh, nh);
    for i in 1..hs.b_len() {
        let db = hs.d_b(i);
        put(&mut x, g.hb[i - 1], g.hb[i], &db);
        put(&mut w, g.hb[i - 1], g.hb[i], &dense::neg(ring, &db));
        put(&mut gam, g.hb[i - 1], g.hb[i], &hs.gamma_b[i - 1]);
        put(&mut beta, g.hh[i - 1], g.hb[i], &hs.gamma_h[i - 1]);
    }
    for i in 1..hs.h_len() {
        put(&mut y, g.hh[i - 1], g.hh[i], &hs.d_h(i));
        put(&mut alpha, g.hb[i - 1], g.hh[i], &hs.alpha[i - 1]);
    }
    let id_b = dense::identity(ring, nb);
    let tau = dense::add(ring, &id_b, &gam);
    let tau_inv = unipotent_inverse(ring, &gam, nb);
    let n = 2 * nb + nh;
    let (ob, oh, oa) = (0, nb, nb + nh);

    let m = pad(n, n, &[(ob, ob, &x), (ob, oh, &alpha), (ob, oa, &tau), (oh, oh, &y), (oh, oa, &beta), (oa, oa, &w)]);
    if !dense::is_zero(&dense::mul(ring, &m, &m, n, n)) {
        return Err(Error::internal("grouped Horseshoe differential does not square to zero"));
    }
    let c = dense::mul(ring, &beta, &tau_inv, nb, nb);
    let wt = dense::mul(ring, &dense::mul(ring, &tau, &w, nb, nb), &tau_inv, nb, nb);
    let p = pad(n, n, &[(ob, ob, &id_b), (oh, oh, &dense::identity(ring, nh)), (oa, oa, &tau_inv)]);
    let p_inv = pad(n, n, &[(ob, ob, &id_b), (oh, oh, &dense::identity(ring, nh)), (oa, oa, &tau)]);
    let l = pad(n, n, &[(oh, ob, &c), (oa, ob, &wt), (oa, oh, &dense::neg(ring, &alpha))]);
    let q = dense::add(ring, &dense::identity(ring, n), &l);
    let q_inv = unipotent_inverse(ring, &l, n);
    let s = dense::mul(ring, &p, &q, n, n);
    let s_inv = dense::mul(ring, &q_inv, &p_inv, n, n);
    let conj = dense::mul(ring, &s_inv, &dense::mul(ring, &m, &s, n, n), n, n);

    let y_hat = dense::block(&conj, oh..oh + nh, oh..oh + nh);
    let expected = pad(n, n, &[(ob, oa, &id_b), (oh, oh, &y_hat)]);
    if conj != expected {
        return Err(Error::internal("conjugated differential is not split"));
    }

    // augmentation (eps_b, eps_h, eps_t) on the 0-th pieces, moved by S
    let nd = d.rank();
    let mut eps = dense::zeros(nd, n);
    put(&mut eps, 0, ob + g.hb[0], &hs.eps_b);
    put(&mut eps, 0, oh + g.hh[0], &hs.eps_h);
    put(&mut eps, 0, oa + g.hb[0], &hs.eps_t);
    let eps_s = dense::mul(ring, &eps, &s, n, n);
    let eps_h = dense::block(&eps_s, 0..nd, oh..oh + nh);

    let blocks: Vec<FreeModule> = (0..hs.h_len()).map(|i| hs.gh(i)).collect();
    let mut bl = Blocks::new(blocks.clone());
    bl.entries = y_hat;
    let diff = bl.finish(ring, d.degree())?;
    let augmentation = GradedMatrix::new(ring, bl.module(), d.generators().clone(), 0, eps_h)?;
    let free_class_bound = blocks.iter().rposition(|b| b.rank() > 0).unwrap_or(0);
    Ok(Deformation {
        resolution: FlagResolution {
            flag: FreeFlag::new(blocks, diff)?,
            augmentation,
            target: d.clone(),
            provenance: Provenance::Deformation,
            depth,
            truncated: hs.truncated,
        },
        horseshoe: hs,
        free_class_bound,
    })
}

/// `∂_{i,j}` for `j - i >= 2` by the closed formula
/// `(-1)^{j-i-1} β_{i+1} γ_{i+2} ⋯ γ_{j-1} α_j`, read off the Horseshoe data.
pub fn closed_form_block(ring: &GradedRing, hs: &Horseshoe, i: usize, j: usize) -> Mat {
    assert!(j >= i + 2);
    // α_j: H_j -> B_{j-1}; then Γ down to B_{i}; then β: B(a)_{i+1} -> H_i
    let mut acc = hs.alpha[j - 1].clone();
    let mut level = j - 1;
    while level > i + 1 {
        let gb = &hs.gamma_b[level - 1];
        acc = dense::mul(ring, gb, &acc, gb.first().map_or(0, |r| r.len()), dense::ncols(&acc, 0));
        level -= 1;
    }
    let bh = &hs.gamma_h[i];
    let out = dense::mul(ring, bh, &acc, bh.first().map_or(0, |r| r.len()), dense::ncols(&acc, 0));
    if (j - i - 1) % 2 == 1 {
        dense::neg(ring, &out)
    } else {
        out
    }
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
    fn example_gives_a_non_minimal_rank_four_flag() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let d = example(&r);
        let def = deformation_resolution(&r, &d, 4).unwrap();
        let f = &def.resolution;
        assert_eq!(f.flag.ranks(), vec![1, 2, 1]);
        assert_eq!(f.flag.module().twists(), &[1, 0, 0, -1]);
        assert!(!f.flag.block(0, 2).is_minimal(&r));
        assert!(f.verify(&r, -5, 12).unwrap().passed());
        assert_eq!(def.free_class_bound, 2);
    }

    #[test]
    fn long_blocks_match_the_closed_form() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let d = example(&r);
        let def = deformation_resolution(&r, &d, 4).unwrap();
        let got = def.resolution.flag.block_entries(0, 2);
        assert_eq!(got, closed_form_block(&r, &def.horseshoe, 0, 2));
    }
}
