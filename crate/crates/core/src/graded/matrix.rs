use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{GradedRing, PolyDegree, Polynomial, Scalar};

/// `R(-j_1) + ... + R(-j_r)`: generator `i` lives in degree `twists[i]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeModule {
    twists: Vec<i64>,
}

impl FreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        FreeModule { twists }
    }

    pub fn zero() -> Self {
        FreeModule { twists: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn twist(&self, i: usize) -> i64 {
        self.twists[i]
    }

    /// `M(n)`: every generator moves down by `n`.
    pub fn shift(&self, n: i64) -> FreeModule {
        FreeModule {
            twists: self.twists.iter().map(|j| j - n).collect(),
        }
    }

    pub fn direct_sum(parts: &[&FreeModule]) -> FreeModule {
        FreeModule {
            twists: parts.iter().flat_map(|p| p.twists.iter().copied()).collect(),
        }
    }

    pub fn select(&self, idx: &[usize]) -> FreeModule {
        FreeModule {
            twists: idx.iter().map(|&i| self.twists[i]).collect(),
        }
    }

    /// Generator degrees with multiplicity, sorted.
    pub fn degree_multiset(&self) -> Vec<i64> {
        let mut v = self.twists.clone();
        v.sort_unstable();
        v
    }
}

/// Homogeneous map of declared degree between twisted free modules.
///
/// Entry `(i, j)` is the coefficient of target generator `i` in the image of
/// source generator `j`; it is homogeneous of degree
/// `source.twist(j) + degree - target.twist(i)` or zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMatrix {
    source: FreeModule,
    target: FreeModule,
    degree: i64,
    entries: Vec<Vec<Polynomial>>,
}

/// Location and nature of a homogeneity violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDefect {
    pub row: usize,
    pub col: usize,
    pub expected_degree: i64,
    pub found: String,
}

impl GradedMatrix {
    /// Checked constructor: shape and per-entry degrees are validated.
    pub fn new(
        ring: &GradedRing,
        source: FreeModule,
        target: FreeModule,
        degree: i64,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let m = GradedMatrix::from_parts(source, target, degree, entries)?;
        let defects = m.homogeneity_defects(ring);
        if let Some(d) = defects.first() {
            return Err(Error::Inhomogeneous(format!(
                "entry ({}, {}) should have degree {}, found {}",
                d.row, d.col, d.expected_degree, d.found
            )));
        }
        Ok(m)
    }

    /// Shape-checked constructor without degree validation.
    pub fn from_parts(
        source: FreeModule,
        target: FreeModule,
        degree: i64,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if entries.len() != target.rank() {
            return Err(Error::Shape(format!(
                "{} rows for a target of rank {}",
                entries.len(),
                target.rank()
            )));
        }
        if let Some(r) = entries.iter().find(|r| r.len() != source.rank()) {
            return Err(Error::Shape(format!(
                "row of length {} for a source of rank {}",
                r.len(),
                source.rank()
            )));
        }
        Ok(GradedMatrix {
            source,
            target,
            degree,
            entries,
        })
    }

    pub fn zero(source: FreeModule, target: FreeModule, degree: i64) -> Self {
        let entries = vec![vec![Polynomial::zero(); source.rank()]; target.rank()];
        GradedMatrix {
            source,
            target,
            degree,
            entries,
        }
    }

    pub fn identity(ring: &GradedRing, module: &FreeModule) -> Self {
        let mut m = Self::zero(module.clone(), module.clone(), 0);
        for i in 0..module.rank() {
            m.entries[i][i] = ring.one();
        }
        m
    }

    /// Builds from columns (images of source generators).
    pub fn from_columns(
        source: FreeModule,
        target: FreeModule,
        degree: i64,
        cols: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if cols.len() != source.rank() {
            return Err(Error::Shape(format!(
                "{} columns for a source of rank {}",
                cols.len(),
                source.rank()
            )));
        }
        let mut entries = vec![vec![Polynomial::zero(); source.rank()]; target.rank()];
        for (j, c) in cols.into_iter().enumerate() {
            if c.len() != target.rank() {
                return Err(Error::Shape(format!(
                    "column of length {} for a target of rank {}",
                    c.len(),
                    target.rank()
                )));
            }
            for (i, f) in c.into_iter().enumerate() {
                entries[i][j] = f;
            }
        }
        Ok(GradedMatrix {
            source,
            target,
            degree,
            entries,
        })
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: Polynomial) {
        self.entries[i][j] = f;
    }

    pub fn rows(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.ncols()).map(|j| self.column(j)).collect()
    }

    /// Required degree of entry `(i, j)`.
    pub fn entry_degree(&self, i: usize, j: usize) -> i64 {
        self.source.twist(j) + self.degree - self.target.twist(i)
    }

    /// Degree of the image of source generator `j`.
    pub fn column_degree(&self, j: usize) -> i64 {
        self.source.twist(j) + self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|f| f.is_zero()))
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    pub fn homogeneity_defects(&self, ring: &GradedRing) -> Vec<EntryDefect> {
        let mut out = Vec::new();
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                let want = self.entry_degree(i, j);
                let got = ring.degree_of(&self.entries[i][j]);
                if !got.fits(want) {
                    out.push(EntryDefect {
                        row: i,
                        col: j,
                        expected_degree: want,
                        found: match got {
                            PolyDegree::Degree(d) => format!("degree {d}"),
                            PolyDegree::Inhomogeneous => "an inhomogeneous polynomial".into(),
                            PolyDegree::Any => unreachable!(),
                        },
                    });
                }
            }
        }
        out
    }

    /// `self ∘ f`. The target of `f` must be the source of `self`.
    pub fn compose(&self, ring: &GradedRing, f: &GradedMatrix) -> Result<GradedMatrix> {
        if f.target != self.source {
            return Err(Error::Shape(format!(
                "cannot compose: target twists {:?} vs source twists {:?}",
                f.target.twists(),
                self.source.twists()
            )));
        }
        let mut entries = vec![vec![Polynomial::zero(); f.ncols()]; self.nrows()];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                let mut acc = Polynomial::zero();
                for k in 0..self.ncols() {
                    let a = &self.entries[i][k];
                    let b = &f.entries[k][j];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = ring.add(&acc, &ring.mul(a, b));
                }
                *out = acc;
            }
        }
        Ok(GradedMatrix {
            source: f.source.clone(),
            target: self.target.clone(),
            degree: self.degree + f.degree,
            entries,
        })
    }

    fn check_same_shape(&self, other: &GradedMatrix) -> Result<()> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree
        {
            return Err(Error::Shape("matrices live in different Hom spaces".into()));
        }
        Ok(())
    }

    pub fn add(&self, ring: &GradedRing, other: &GradedMatrix) -> Result<GradedMatrix> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| ring.add(a, b)))
    }

    pub fn sub(&self, ring: &GradedRing, other: &GradedMatrix) -> Result<GradedMatrix> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| ring.sub(a, b)))
    }

    pub fn neg(&self, ring: &GradedRing) -> GradedMatrix {
        self.map_entries(|f| ring.neg(f))
    }

    pub fn scale(&self, ring: &GradedRing, c: &Scalar) -> GradedMatrix {
        self.map_entries(|f| ring.scalar_mul(c, f))
    }

    pub fn map_entries(&self, mut op: impl FnMut(&Polynomial) -> Polynomial) -> GradedMatrix {
        GradedMatrix {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(&mut op).collect())
                .collect(),
        }
    }

    pub fn map_entries_indexed(&self, mut op: impl FnMut(usize, usize, &Polynomial) -> Polynomial) -> GradedMatrix {
        GradedMatrix {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            entries: self
                .entries
                .iter()
                .enumerate()
                .map(|(i, r)| r.iter().enumerate().map(|(j, f)| op(i, j, f)).collect())
                .collect(),
        }
    }

    fn zip_with(
        &self,
        other: &GradedMatrix,
        op: impl Fn(&Polynomial, &Polynomial) -> Polynomial,
    ) -> GradedMatrix {
        GradedMatrix {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| op(a, b)).collect())
                .collect(),
        }
    }

    /// Same entries regarded with new source/target/degree bookkeeping.
    pub fn retwisted(&self, source: FreeModule, target: FreeModule, degree: i64) -> Result<Self> {
        GradedMatrix::from_parts(source, target, degree, self.entries.clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> GradedMatrix {
        GradedMatrix {
            source: self.source.select(cols),
            target: self.target.select(rows),
            degree: self.degree,
            entries: rows
                .iter()
                .map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect())
                .collect(),
        }
    }

    /// Assembles a block matrix. `blocks[r][c]` maps source block `c` to
    /// target block `r`; `None` means zero.
    pub fn from_blocks(
        sources: &[FreeModule],
        targets: &[FreeModule],
        degree: i64,
        blocks: &[Vec<Option<&GradedMatrix>>],
    ) -> Result<GradedMatrix> {
        let source = FreeModule::direct_sum(&sources.iter().collect::<Vec<_>>());
        let target = FreeModule::direct_sum(&targets.iter().collect::<Vec<_>>());
        let mut out = GradedMatrix::zero(source, target, degree);
        let mut r0 = 0;
        for (r, t) in targets.iter().enumerate() {
            let mut c0 = 0;
            for (c, s) in sources.iter().enumerate() {
                if let Some(b) = blocks[r][c] {
                    if b.nrows() != t.rank() || b.ncols() != s.rank() {
                        return Err(Error::Shape(format!(
                            "block ({r}, {c}) is {}x{}, expected {}x{}",
                            b.nrows(),
                            b.ncols(),
                            t.rank(),
                            s.rank()
                        )));
                    }
                    for i in 0..t.rank() {
                        for j in 0..s.rank() {
                            out.entries[r0 + i][c0 + j] = b.entries[i][j].clone();
                        }
                    }
                }
                c0 += s.rank();
            }
            r0 += t.rank();
        }
        Ok(out)
    }

    /// Positions of unit (nonzero constant) entries.
    pub fn unit_entries(&self, ring: &GradedRing) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                if ring.is_unit(&self.entries[i][j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// No entry is a unit, i.e. the image lies in `m` times the target.
    pub fn is_minimal(&self, ring: &GradedRing) -> bool {
        self.unit_entries(ring).is_empty()
    }

    /// Reduction modulo the maximal ideal, as a scalar matrix.
    pub fn constant_part(&self) -> Vec<Vec<Scalar>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|f| f.constant_term()).collect())
            .collect()
    }

    pub fn transpose_entries(&self) -> Vec<Vec<Polynomial>> {
        (0..self.ncols()).map(|j| self.column(j)).collect()
    }

    pub fn format(&self, ring: &GradedRing) -> String {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter()
                        .map(|f| ring.format_poly(f))
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }

    /// Equality of entries, ignoring twists.
    pub fn same_entries(&self, other: &GradedMatrix) -> bool {
        self.entries == other.entries
    }

    pub fn scalar_is_zero(c: &Scalar) -> bool {
        c.is_zero()
    }
}

impl fmt::Display for FreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.twists
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex12(r: &GradedRing) -> GradedMatrix {
        let (x, y) = (r.var(0), r.var(1));
        let e = vec![
            vec![r.mul(&x, &y), r.neg(&r.mul(&x, &x))],
            vec![r.mul(&y, &y), r.neg(&r.mul(&x, &y))],
        ];
        let f = FreeModule::new(vec![0, 0]);
        GradedMatrix::new(r, f.clone(), f, 2, e).unwrap()
    }

    #[test]
    fn square_of_example_differential_vanishes() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let d = ex12(&r);
        let dd = d.compose(&r, &d).unwrap();
        assert!(dd.is_zero());
        assert_eq!(dd.degree(), 4);
    }

    #[test]
    fn identity_composition() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let d = ex12(&r);
        let id = GradedMatrix::identity(&r, d.target());
        assert_eq!(id.compose(&r, &d).unwrap(), d);
    }

    #[test]
    fn koszul_relation() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let d1 = GradedMatrix::new(
            &r,
            FreeModule::new(vec![1, 1]),
            FreeModule::new(vec![0]),
            0,
            vec![vec![x.clone(), y.clone()]],
        )
        .unwrap();
        let d2 = GradedMatrix::new(
            &r,
            FreeModule::new(vec![2]),
            FreeModule::new(vec![1, 1]),
            0,
            vec![vec![r.neg(&y)], vec![x]],
        )
        .unwrap();
        assert!(d1.compose(&r, &d2).unwrap().is_zero());
        assert!(matches!(d2.compose(&r, &d1), Err(Error::Shape(_))));
    }

    #[test]
    fn degree_check_rejects_wrong_entry() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let x = r.var(0);
        let bad = GradedMatrix::new(
            &r,
            FreeModule::new(vec![0]),
            FreeModule::new(vec![0]),
            0,
            vec![vec![r.add(&x, &r.one())]],
        );
        assert!(matches!(bad, Err(Error::Inhomogeneous(_))));
    }
}
