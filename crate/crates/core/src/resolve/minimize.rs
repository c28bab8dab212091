//! Splitting contractible summands off a free differential module by
//! conjugating away unit entries.

use super::dense::{self, Mat};
use crate::diffmod::DifferentialModule;
use crate::error::{Error, Result};
use crate::graded::{FreeModule, GradedMatrix};
use crate::ring::{GradedRing, Polynomial};

/// `F = M + T` with `T` contractible, and the change of basis exhibiting it.
///
/// `conjugated = A ∂ A⁻¹` is block diagonal: `∂_M` on `kept`, and on each
/// pair `(c, r)` the standard block sending `e_c` to `e_r`.
#[derive(Clone, Debug)]
pub struct Minimization {
    pub minimal: DifferentialModule,
    pub kept: Vec<usize>,
    /// `(c, r)` with `∂' e_c = e_r`, in the order they were split.
    pub pairs: Vec<(usize, usize)>,
    pub change_of_basis: GradedMatrix,
    pub inverse: GradedMatrix,
    pub conjugated: GradedMatrix,
    /// `M -> F`, columns of `A⁻¹` on `kept`.
    pub embedding: GradedMatrix,
    /// `F -> M`, rows of `A` on `kept`.
    pub projection: GradedMatrix,
    /// Generators of the input that took part (all of them in finite mode).
    pub support: Vec<usize>,
}

impl Minimization {
    pub fn rank(&self) -> usize {
        self.kept.len()
    }

    /// `A⁻¹ h' A` where `h'` sends `e_r` to `e_c` for every split pair: a
    /// contracting homotopy of the complement, of degree `-a`.
    pub fn homotopy(&self, ring: &GradedRing) -> Result<GradedMatrix> {
        let f = self.change_of_basis.source().clone();
        let a = self.conjugated.degree();
        let mut h = GradedMatrix::zero(f.clone(), f.clone(), -a);
        for &(c, r) in &self.pairs {
            h.set(c, r, ring.one());
        }
        let ha = h.compose(ring, &self.change_of_basis)?;
        self.inverse.compose(ring, &ha)
    }

    /// `A ∂ A⁻¹ = conjugated` and `A A⁻¹ = id`, exactly.
    pub fn verify(&self, ring: &GradedRing, d: &GradedMatrix) -> Result<bool> {
        let f = self.change_of_basis.source();
        let id = GradedMatrix::identity(ring, f);
        let prod = self.change_of_basis.compose(ring, &self.inverse)?;
        let conj = self
            .change_of_basis
            .compose(ring, &d.compose(ring, &self.inverse)?)?;
        Ok(prod == id && conj.same_entries(&self.conjugated))
    }
}

fn field_div(ring: &GradedRing, f: &Polynomial, u: &crate::ring::Scalar) -> Polynomial {
    let inv = ring.field().inv(u).expect("unit");
    ring.scalar_mul(&inv, f)
}

/// Finite-rank minimization of a free differential module.
///
/// Pivots are off-diagonal unit entries, taken by lowest target twist and
/// then by `(row, col)`.
pub fn minimize(ring: &GradedRing, d: &DifferentialModule) -> Result<Minimization> {
    if !d.is_free() {
        return Err(Error::NonFree("minimization needs a free differential module".into()));
    }
    let support: Vec<usize> = (0..d.rank()).collect();
    minimize_matrix(ring, d.differential(), support)
}

/// Degreewise minimization for degree-0 differentials: only generators of
/// degree at most `max_degree` take part, which is a sub-differential module
/// when `a = 0`.
pub fn minimize_degreewise(ring: &GradedRing, d: &DifferentialModule, max_degree: i64) -> Result<Minimization> {
    if !d.is_free() {
        return Err(Error::NonFree("minimization needs a free differential module".into()));
    }
    if d.degree() != 0 {
        return Err(Error::Hypothesis(format!(
            "degreewise minimization needs a = 0, got a = {}",
            d.degree()
        )));
    }
    let support: Vec<usize> = (0..d.rank())
        .filter(|&i| d.generators().twist(i) <= max_degree)
        .collect();
    let sub = d.differential().submatrix(&support, &support);
    minimize_matrix(ring, &sub, support)
}

fn minimize_matrix(ring: &GradedRing, d0: &GradedMatrix, support: Vec<usize>) -> Result<Minimization> {
    let f = d0.source().clone();
    let n = f.rank();
    let tw = f.twists().to_vec();
    let deg = d0.degree();
    let mut d: Mat = d0.rows().to_vec();
    let mut a = dense::identity(ring, n);
    let mut ainv = dense::identity(ring, n);
    let mut active = vec![true; n];
    let mut pairs = Vec::new();
    loop {
        crate::cancel::check()?;
        let mut best: Option<(i64, usize, usize)> = None;
        for r in (0..n).filter(|&r| active[r]) {
            for c in (0..n).filter(|&c| active[c] && c != r) {
                if ring.is_unit(&d[r][c]) {
                    let key = (tw[r], r, c);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
            }
        }
        let Some((_, r, c)) = best else { break };
        let u = d[r][c].as_constant().unwrap();
        // clear column c: row_i -= f row_r, then col_r += f col_i
        for i in 0..n {
            if i == r || d[i][c].is_zero() {
                continue;
            }
            let fac = field_div(ring, &d[i][c], &u);
            row_axpy(ring, &mut d, i, r, &fac, true);
            col_axpy(ring, &mut d, r, i, &fac, false);
            row_axpy(ring, &mut a, i, r, &fac, true);
            col_axpy(ring, &mut ainv, r, i, &fac, false);
        }
        // clear row r: col_j -= g col_c, then row_c += g row_j
        for j in 0..n {
            if j == c || d[r][j].is_zero() {
                continue;
            }
            let g = field_div(ring, &d[r][j], &u);
            col_axpy(ring, &mut d, j, c, &g, true);
            row_axpy(ring, &mut d, c, j, &g, false);
            row_axpy(ring, &mut a, c, j, &g, false);
            col_axpy(ring, &mut ainv, j, c, &g, true);
        }
        let col_r_zero = (0..n).all(|i| d[i][r].is_zero());
        let row_c_zero = d[c].iter().all(|x| x.is_zero());
        let col_c_clean = (0..n).all(|i| i == r || d[i][c].is_zero());
        let row_r_clean = (0..n).all(|j| j == c || d[r][j].is_zero());
        if !(col_r_zero && row_c_zero && col_c_clean && row_r_clean) {
            return Err(Error::internal(format!(
                "pivot ({r}, {c}) did not split off a standard block; is the differential square-zero?"
            )));
        }
        // rescale e_r so the pivot becomes 1
        let uinv = ring.field().inv(&u).unwrap();
        for x in d[r].iter_mut() {
            *x = ring.scalar_mul(&uinv, x);
        }
        for x in a[r].iter_mut() {
            *x = ring.scalar_mul(&uinv, x);
        }
        for row in ainv.iter_mut() {
            row[r] = ring.scalar_mul(&u, &row[r]);
        }
        active[r] = false;
        active[c] = false;
        pairs.push((c, r));
    }
    let kept: Vec<usize> = (0..n).filter(|&i| active[i]).collect();
    let conjugated = GradedMatrix::from_parts(f.clone(), f.clone(), deg, d)?;
    let change_of_basis = GradedMatrix::from_parts(f.clone(), f.clone(), 0, a)?;
    let inverse = GradedMatrix::from_parts(f.clone(), f.clone(), 0, ainv)?;
    let mdiff = conjugated.submatrix(&kept, &kept);
    let minimal = DifferentialModule::free(ring, mdiff)?;
    let mf: FreeModule = f.select(&kept);
    let all: Vec<usize> = (0..n).collect();
    let embedding = inverse.submatrix(&all, &kept).retwisted(mf.clone(), f.clone(), 0)?;
    let projection = change_of_basis.submatrix(&kept, &all).retwisted(f, mf, 0)?;
    Ok(Minimization {
        minimal,
        kept,
        pairs,
        change_of_basis,
        inverse,
        conjugated,
        embedding,
        projection,
        support,
    })
}

/// `row_dst += s * fac * row_src` with `s = -1` when `subtract`.
fn row_axpy(ring: &GradedRing, m: &mut Mat, dst: usize, src: usize, fac: &Polynomial, subtract: bool) {
    let srow = m[src].clone();
    for (j, x) in srow.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let p = ring.mul(fac, x);
        m[dst][j] = if subtract { ring.sub(&m[dst][j], &p) } else { ring.add(&m[dst][j], &p) };
    }
}

/// `col_dst += s * col_src * fac`.
fn col_axpy(ring: &GradedRing, m: &mut Mat, dst: usize, src: usize, fac: &Polynomial, subtract: bool) {
    for row in m.iter_mut() {
        if row[src].is_zero() {
            continue;
        }
        let p = ring.mul(&row[src], fac);
        row[dst] = if subtract { ring.sub(&row[dst], &p) } else { ring.add(&row[dst], &p) };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_flag(r: &GradedRing) -> DifferentialModule {
        let (x, y) = (r.var(0), r.var(1));
        let z = r.zero();
        let m1 = r.from_i64(-1);
        DifferentialModule::from_entries(
            r,
            vec![1, 0, 0, -1],
            2,
            vec![
                vec![z.clone(), r.neg(&y), r.neg(&x), m1],
                vec![z.clone(), z.clone(), z.clone(), r.neg(&x)],
                vec![z.clone(), z.clone(), z.clone(), y.clone()],
                vec![z.clone(), z.clone(), z.clone(), z],
            ],
        )
        .unwrap()
    }

    #[test]
    fn splits_one_standard_block() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let f = example_flag(&r);
        let m = minimize(&r, &f).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.pairs, vec![(3, 0)]);
        assert!(m.verify(&r, f.differential()).unwrap());
        assert!(m.minimal.differential().is_minimal(&r));
        assert!(m.minimal.is_valid(&r).unwrap());
        assert_eq!(m.minimal.generators().degree_multiset(), vec![0, 0]);
    }

    #[test]
    fn minimal_input_is_untouched() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let x = r.var(0);
        let d = DifferentialModule::from_entries(&r, vec![0, 1], 0, vec![vec![r.zero(), x], vec![r.zero(), r.zero()]]).unwrap();
        let m = minimize(&r, &d).unwrap();
        assert!(m.pairs.is_empty());
        assert_eq!(m.minimal.differential(), d.differential());
    }

    #[test]
    fn scaled_standard_block() {
        let r = GradedRing::polynomial(&["x"]);
        let d = DifferentialModule::from_entries(&r, vec![0, 0], 0, vec![vec![r.zero(), r.from_i64(3)], vec![r.zero(), r.zero()]]).unwrap();
        let m = minimize(&r, &d).unwrap();
        assert_eq!(m.rank(), 0);
        assert_eq!(m.conjugated.format(&r), "[[0, 1], [0, 0]]");
        assert!(m.verify(&r, d.differential()).unwrap());
    }

    #[test]
    fn degreewise_needs_degree_zero() {
        let r = GradedRing::polynomial(&["x", "y"]);
        assert!(matches!(minimize_degreewise(&r, &example_flag(&r), 3), Err(Error::Hypothesis(_))));
    }
}
