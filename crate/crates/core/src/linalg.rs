//! Exact linear algebra over the coefficient field.
//!
//! Rows are sparse `(column, value)` lists. [`Echelon`] maintains a
//! reduced basis incrementally, which is all the oracle and the
//! degreewise solvers need: ranks, membership and nullspaces.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::ring::{Field, Scalar};

pub type SparseRow = Vec<(usize, Scalar)>;

/// Incrementally built row echelon form. Each stored row is monic at its
/// pivot, and no stored row has a nonzero entry in another row's pivot
/// column to the left of ... (semi-reduced: pivots are eliminated from rows
/// inserted later only).
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    rows: Vec<BTreeMap<usize, Scalar>>,
    pivot_of: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(field: Field) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            pivot_of: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_map(&self, mut row: BTreeMap<usize, Scalar>) -> BTreeMap<usize, Scalar> {
        let mut cursor = 0usize;
        loop {
            let next = row
                .range(cursor..)
                .find(|(c, _)| self.pivot_of.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((col, val)) = next else { break };
            let prow = &self.rows[self.pivot_of[&col]];
            for (c, v) in prow {
                let cur = row.remove(c).unwrap_or_else(Scalar::zero);
                let nv = self.field.sub(&cur, &self.field.mul(&val, v));
                if !nv.is_zero() {
                    row.insert(*c, nv);
                }
            }
            cursor = col + 1;
        }
        row
    }

    /// Reduces a row against the stored basis.
    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        let map: BTreeMap<usize, Scalar> = row
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .cloned()
            .collect();
        self.reduce_map(map).into_iter().collect()
    }

    /// Inserts a row; returns true when it increased the rank.
    pub fn insert(&mut self, row: &SparseRow) -> bool {
        let map: BTreeMap<usize, Scalar> = row
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .cloned()
            .collect();
        let red = self.reduce_map(map);
        let Some((&pc, pv)) = red.iter().next() else {
            return false;
        };
        let inv = self.field.inv(pv).expect("nonzero pivot");
        let red: BTreeMap<usize, Scalar> = red
            .iter()
            .map(|(c, v)| (*c, self.field.mul(&inv, v)))
            .collect();
        self.pivot_of.insert(pc, self.rows.len());
        self.rows.push(red);
        true
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row).is_empty()
    }
}

/// Rank of a list of sparse rows.
pub fn rank(field: &Field, rows: &[SparseRow]) -> usize {
    let mut e = Echelon::new(field.clone());
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Dense rank.
pub fn dense_rank(field: &Field, rows: &[Vec<Scalar>]) -> usize {
    let sparse: Vec<SparseRow> = rows.iter().map(|r| to_sparse(r)).collect();
    rank(field, &sparse)
}

pub fn to_sparse(row: &[Scalar]) -> SparseRow {
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// Basis of `{x : A x = 0}` for a dense `rows x ncols` matrix `A`.
pub fn nullspace(field: &Field, rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(&m[r][c]).unwrap();
        for k in 0..ncols {
            m[r][k] = field.mul(&m[r][k], &inv);
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..ncols {
                    let v = field.sub(&m[i][k], &field.mul(&f, &m[r][k]));
                    m[i][k] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); ncols];
            v[f] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(&m[row][f]);
            }
            v
        })
        .collect()
}

/// One solution of `A x = b`, if any.
pub fn solve(field: &Field, rows: &[Vec<Scalar>], b: &[Scalar], ncols: usize) -> Option<Vec<Scalar>> {
    let aug: Vec<Vec<Scalar>> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(field.neg(bi));
            r
        })
        .collect();
    let ns = nullspace(field, &aug, ncols + 1);
    let v = ns.into_iter().find(|v| !v[ncols].is_zero())?;
    let inv = field.inv(&v[ncols]).unwrap();
    Some(v[..ncols].iter().map(|x| field.mul(x, &inv)).collect())
}

/// Determinant by elimination.
pub fn determinant(field: &Field, m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            a.swap(p, c);
            det = field.neg(&det);
        }
        det = field.mul(&det, &a[c][c]);
        let inv = field.inv(&a[c][c]).unwrap();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = field.mul(&a[i][c], &inv);
            for k in c..n {
                let v = field.sub(&a[i][k], &field.mul(&f, &a[c][k]));
                a[i][k] = v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Field::Rational.from_i64(v)
    }

    #[test]
    fn rank_and_nullspace() {
        let f = Field::Rational;
        let a = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]];
        assert_eq!(dense_rank(&f, &a), 2);
        let ns = nullspace(&f, &a, 3);
        assert_eq!(ns.len(), 1);
        for r in &a {
            let s = r
                .iter()
                .zip(&ns[0])
                .fold(Scalar::zero(), |acc, (x, y)| acc + x * y);
            assert!(s.is_zero());
        }
    }

    #[test]
    fn solve_and_det() {
        let f = Field::Rational;
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve(&f, &a, &[q(3), q(4)], 2).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        assert_eq!(determinant(&f, &a), q(5));
        let sing = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert!(solve(&f, &sing, &[q(1), q(2)], 2).is_none());
    }

    #[test]
    fn echelon_membership() {
        let f = Field::Rational;
        let mut e = Echelon::new(f);
        assert!(e.insert(&vec![(0, q(1)), (2, q(1))]));
        assert!(e.insert(&vec![(1, q(1)), (2, q(-1))]));
        assert!(e.contains(&vec![(0, q(1)), (1, q(1))]));
        assert!(!e.insert(&vec![(0, q(2)), (1, q(2))]));
        assert_eq!(e.rank(), 2);
    }
}
