//! Raw entry matrices for the block algebra of the flag constructions,
//! where twist bookkeeping is done once at assembly time.

use crate::error::{Error, Result};
use crate::graded::{FreeModule, GradedMatrix};
use crate::ring::{GradedRing, Polynomial};

pub(crate) type Mat = Vec<Vec<Polynomial>>;

pub(crate) fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![Polynomial::zero(); cols]; rows]
}

pub(crate) fn identity(ring: &GradedRing, n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ring.one();
    }
    m
}

pub(crate) fn ncols(m: &Mat, rows_hint: usize) -> usize {
    m.first().map(|r| r.len()).unwrap_or(rows_hint)
}

pub(crate) fn mul(ring: &GradedRing, a: &Mat, b: &Mat, inner: usize, cols: usize) -> Mat {
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, f) in row.iter().enumerate().take(inner) {
            if f.is_zero() {
                continue;
            }
            for j in 0..cols {
                let g = &b[k][j];
                if !g.is_zero() {
                    out[i][j] = ring.add(&out[i][j], &ring.mul(f, g));
                }
            }
        }
    }
    out
}

pub(crate) fn add(ring: &GradedRing, a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(f, g)| ring.add(f, g)).collect())
        .collect()
}

#[cfg(test)]
pub(crate) fn sub(ring: &GradedRing, a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(f, g)| ring.sub(f, g)).collect())
        .collect()
}

pub(crate) fn neg(ring: &GradedRing, a: &Mat) -> Mat {
    a.iter().map(|r| r.iter().map(|f| ring.neg(f)).collect()).collect()
}

pub(crate) fn is_zero(a: &Mat) -> bool {
    a.iter().all(|r| r.iter().all(|f| f.is_zero()))
}

pub(crate) fn block(a: &[Vec<Polynomial>], rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
    a[rows].iter().map(|r| r[cols.clone()].to_vec()).collect()
}

/// Block matrix on a fixed list of summands, filled block by block.
pub(crate) struct Blocks {
    pub modules: Vec<FreeModule>,
    offsets: Vec<usize>,
    pub entries: Mat,
}

impl Blocks {
    pub(crate) fn new(modules: Vec<FreeModule>) -> Self {
        let mut offsets = Vec::with_capacity(modules.len() + 1);
        let mut n = 0;
        for m in &modules {
            offsets.push(n);
            n += m.rank();
        }
        offsets.push(n);
        Blocks {
            modules,
            offsets,
            entries: zeros(n, n),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub(crate) fn range(&self, b: usize) -> std::ops::Range<usize> {
        self.offsets[b]..self.offsets[b + 1]
    }

    pub(crate) fn put(&mut self, target: usize, source: usize, m: &Mat) {
        let (r0, c0) = (self.offsets[target], self.offsets[source]);
        for (i, row) in m.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                self.entries[r0 + i][c0 + j] = f.clone();
            }
        }
    }

    pub(crate) fn module(&self) -> FreeModule {
        FreeModule::direct_sum(&self.modules.iter().collect::<Vec<_>>())
    }

    /// Endomorphism of the given degree, homogeneity checked.
    pub(crate) fn finish(&self, ring: &GradedRing, degree: i64) -> Result<GradedMatrix> {
        let f = self.module();
        let m = GradedMatrix::from_parts(f.clone(), f, degree, self.entries.clone())?;
        if let Some(d) = m.homogeneity_defects(ring).first() {
            return Err(Error::internal(format!(
                "assembled entry ({}, {}) should have degree {}, found {}",
                d.row, d.col, d.expected_degree, d.found
            )));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotent_inverse() {
        let r = GradedRing::polynomial(&["x"]);
        let mut n = zeros(2, 2);
        n[0][1] = r.var(0);
        let id = identity(&r, 2);
        let t = add(&r, &id, &n);
        let tinv = sub(&r, &id, &n);
        assert_eq!(mul(&r, &t, &tinv, 2, 2), id);
        let mut b = Blocks::new(vec![FreeModule::new(vec![0]), FreeModule::new(vec![1])]);
        b.put(0, 1, &vec![vec![r.var(0)]]);
        assert!(b.finish(&r, 0).is_ok());
        assert!(b.finish(&r, 1).is_err());
    }
}
