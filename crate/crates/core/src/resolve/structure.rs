//! Checks for the Hilbert–Burch and Pfaffian shapes of short minimal flags.

use super::flag::FreeFlag;
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::ring::{format_scalar, GradedRing, Polynomial, Scalar};

type PMat = Vec<Vec<Polynomial>>;

fn without(m: &PMat, rows: &[usize], cols: &[usize]) -> PMat {
    m.iter()
        .enumerate()
        .filter(|(i, _)| !rows.contains(i))
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| !cols.contains(j)).map(|(_, f)| f.clone()).collect())
        .collect()
}

/// Laplace expansion along the first row.
pub fn determinant(ring: &GradedRing, m: &PMat) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    let mut acc = ring.zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let t = ring.mul(&m[0][j], &determinant(ring, &without(m, &[0], &[j])));
        acc = if j % 2 == 0 { ring.add(&acc, &t) } else { ring.sub(&acc, &t) };
    }
    acc
}

/// Pfaffian of a skew-symmetric matrix of even size, by expansion along
/// the first row.
pub fn pfaffian(ring: &GradedRing, m: &PMat) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    if n % 2 == 1 {
        return ring.zero();
    }
    let mut acc = ring.zero();
    for j in 1..n {
        if m[0][j].is_zero() {
            continue;
        }
        let t = ring.mul(&m[0][j], &pfaffian(ring, &without(m, &[0, j], &[0, j])));
        acc = if j % 2 == 1 { ring.add(&acc, &t) } else { ring.sub(&acc, &t) };
    }
    acc
}

/// The scalar `c != 0` with `got = c * expected`, if there is one.
fn unit_ratio(ring: &GradedRing, got: &[Polynomial], expected: &[Polynomial]) -> Option<Scalar> {
    let field = ring.field();
    let k = expected.iter().position(|f| !f.is_zero())?;
    let (m1, c1) = got[k].leading()?;
    let (m2, c2) = expected[k].leading()?;
    if m1 != m2 {
        return None;
    }
    let c = field.div(c1, c2)?;
    got.iter()
        .zip(expected)
        .all(|(g, e)| *g == ring.scalar_mul(&c, e))
        .then_some(c)
}

fn signed(ring: &GradedRing, v: Vec<Polynomial>) -> Vec<Polynomial> {
    v.into_iter()
        .enumerate()
        .map(|(k, f)| if k % 2 == 0 { f } else { ring.neg(&f) })
        .collect()
}

fn fmt_list(ring: &GradedRing, v: &[Polynomial]) -> String {
    let s: Vec<String> = v.iter().map(|f| ring.format_poly(f)).collect();
    format!("[{}]", s.join(", "))
}

/// Three blocks `R, F_1, F_2` with `rank F_1 = rank F_2 + 1` and
/// `∂_{1,0}` the signed maximal minors of `∂_{2,1}` up to a unit.
pub fn check_hilbert_burch(ring: &GradedRing, flag: &FreeFlag) -> Result<Report> {
    let ranks = flag.ranks();
    if ranks.len() != 3 || ranks[0] != 1 {
        return Err(Error::Shape(format!("expected blocks of ranks 1, r + 1, r, got {ranks:?}")));
    }
    let mut rep = Report::new("check hilbert-burch");
    let r = ranks[2];
    rep.check(Check::new(
        "rank_condition",
        ranks[1] == r + 1,
        format!("rank F1 = {}, rank F2 = {r}", ranks[1]),
    ));
    if ranks[1] != r + 1 {
        return Ok(rep);
    }
    let d21 = flag.block_entries(1, 2);
    let d10 = flag.block_entries(0, 1).remove(0);
    let minors: Vec<Polynomial> = (0..=r).map(|k| determinant(ring, &without(&d21, &[k], &[]))).collect();
    let expected = signed(ring, minors.clone());
    let ratio = unit_ratio(ring, &d10, &expected);
    rep.check(Check::new(
        "minors_match",
        ratio.is_some(),
        format!("d10 = {}, minors = {}", fmt_list(ring, &d10), fmt_list(ring, &minors)),
    ));
    if let Some(c) = ratio {
        rep.certificate("unit", format_scalar(&c));
    }
    Ok(rep)
}

/// Four blocks `R, F_1, F_2, R(-e)` with `∂_{2,1}` skew-symmetric of odd
/// size, `∂_{1,0}` its signed principal Pfaffians, `∂_{3,2}` the transpose
/// of `∂_{1,0}` up to a unit and `∂_{3,1} = -∂_{2,0}^T`.
pub fn check_pfaffian_structure(ring: &GradedRing, flag: &FreeFlag) -> Result<Report> {
    let ranks = flag.ranks();
    if ranks.len() != 4 || ranks[0] != 1 || ranks[3] != 1 || ranks[1] != ranks[2] {
        return Err(Error::Shape(format!("expected blocks of ranks 1, n, n, 1, got {ranks:?}")));
    }
    let n = ranks[1];
    if n.is_multiple_of(2) {
        return Err(Error::Shape(format!("skew-symmetric block of even size {n}")));
    }
    let mut rep = Report::new("check pfaffian");
    let d21 = flag.block_entries(1, 2);
    let skew = (0..n).all(|i| (0..n).all(|j| d21[i][j] == ring.neg(&d21[j][i])));
    rep.check(Check::new("skew_symmetric", skew, if skew { String::new() } else { "d21 is not skew-symmetric".into() }));
    let sq = flag.differential().compose(ring, flag.differential())?;
    rep.check(Check::new("square_zero", sq.is_zero(), ""));
    if !skew {
        return Ok(rep);
    }
    let d10 = flag.block_entries(0, 1).remove(0);
    let pf: Vec<Polynomial> = (0..n).map(|k| pfaffian(ring, &without(&d21, &[k], &[k]))).collect();
    let expected = signed(ring, pf.clone());
    let ratio = if n == 1 { Some(ring.field().one()) } else { unit_ratio(ring, &d10, &expected) };
    rep.check(Check::new(
        "pfaffians_match",
        ratio.is_some(),
        format!("d10 = {}, pfaffians = {}", fmt_list(ring, &d10), fmt_list(ring, &pf)),
    ));
    let d32: Vec<Polynomial> = flag.block_entries(2, 3).into_iter().map(|mut r| r.remove(0)).collect();
    let tr = if n == 1 { Some(ring.field().one()) } else { unit_ratio(ring, &d32, &d10) };
    rep.check(Check::new("transpose", tr.is_some(), format!("d32 = {}", fmt_list(ring, &d32))));
    let d20 = flag.block_entries(0, 2).remove(0);
    let d31: Vec<Polynomial> = flag.block_entries(1, 3).into_iter().map(|mut r| r.remove(0)).collect();
    let compat = d31.iter().zip(&d20).all(|(a, b)| *a == ring.neg(b));
    rep.check(Check::new("negative_transpose", compat, format!("d31 = {}, d20 = {}", fmt_list(ring, &d31), fmt_list(ring, &d20))));
    if let (Some(c), Some(u)) = (ratio, tr) {
        rep.certificate("unit", format_scalar(&c));
        rep.certificate("transpose_unit", format_scalar(&u));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{FreeModule, GradedMatrix};

    fn flag(r: &GradedRing, twists: Vec<Vec<i64>>, entries: PMat) -> FreeFlag {
        let blocks: Vec<FreeModule> = twists.into_iter().map(FreeModule::new).collect();
        let f = FreeModule::direct_sum(&blocks.iter().collect::<Vec<_>>());
        let d = GradedMatrix::new(r, f.clone(), f, 0, entries).unwrap();
        FreeFlag::new(blocks, d).unwrap()
    }

    #[test]
    fn koszul_is_hilbert_burch() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let (x, y, z) = (r.var(0), r.var(1), r.zero());
        let f = flag(
            &r,
            vec![vec![0], vec![1, 1], vec![2]],
            vec![
                vec![z.clone(), x.clone(), y.clone(), z.clone()],
                vec![z.clone(), z.clone(), z.clone(), r.neg(&y)],
                vec![z.clone(), z.clone(), z.clone(), x.clone()],
                vec![z.clone(), z.clone(), z.clone(), z.clone()],
            ],
        );
        let rep = check_hilbert_burch(&r, &f).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
    }

    #[test]
    fn pfaffians_of_a_three_by_three() {
        let r = GradedRing::polynomial(&["x", "y", "z"]);
        let (x, y, w) = (r.var(0), r.var(1), r.var(2));
        let m = vec![
            vec![r.zero(), x.clone(), y.clone()],
            vec![r.neg(&x), r.zero(), w.clone()],
            vec![r.neg(&y), r.neg(&w), r.zero()],
        ];
        let pf: Vec<Polynomial> = (0..3).map(|k| pfaffian(&r, &without(&m, &[k], &[k]))).collect();
        assert_eq!(signed(&r, pf), vec![w.clone(), r.neg(&y), x.clone()]);
        assert_eq!(determinant(&r, &m), r.zero());
    }
}
