//! Seeded random instances: homogeneous forms, complexes and their folds,
//! and disguised contractible modules.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diffmod::{fold, DifferentialModule};
use crate::error::Result;
use crate::graded::{FreeModule, GradedMatrix};
use crate::groebner;
use crate::ring::{GradedRing, Polynomial};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sparse form of degree `d` with small integer coefficients; may be zero.
pub fn random_form(ring: &GradedRing, d: i64, rng: &mut impl Rng) -> Polynomial {
    if d < 0 {
        return ring.zero();
    }
    let monos = ring.monomials_of_degree(d);
    let mut f = ring.zero();
    for m in monos {
        if rng.gen_bool(0.5) {
            let c = rng.gen_range(-3..=3);
            if c != 0 {
                f = ring.add(&f, &ring.term(ring.field().from_i64(c), m));
            }
        }
    }
    ring.reduce(f)
}

/// Degree-0 map with entries of degree `1..=max_degree` where the twists allow.
pub fn random_map(ring: &GradedRing, source: &FreeModule, target: &FreeModule, max_degree: i64, rng: &mut impl Rng) -> Result<GradedMatrix> {
    let entries: Vec<Vec<Polynomial>> = (0..target.rank())
        .map(|i| {
            (0..source.rank())
                .map(|j| {
                    let e = source.twist(j) - target.twist(i);
                    if (1..=max_degree).contains(&e) {
                        random_form(ring, e, rng)
                    } else {
                        ring.zero()
                    }
                })
                .collect()
        })
        .collect();
    GradedMatrix::new(ring, source.clone(), target.clone(), 0, entries)
}

fn random_twists(base: i64, n: usize, spread: i64, rng: &mut impl Rng) -> FreeModule {
    let mut t: Vec<i64> = (0..n).map(|_| base + rng.gen_range(0..=spread)).collect();
    t.sort_unstable();
    FreeModule::new(t)
}

/// `C_0 <- C_1` or `C_0 <- C_1 <- C_2` with entries of degree at most
/// `max_degree`; the second map is drawn from the syzygies of the first.
pub fn random_complex(ring: &GradedRing, terms: usize, max_degree: i64, rng: &mut impl Rng) -> Result<(Vec<FreeModule>, Vec<GradedMatrix>)> {
    let c0 = random_twists(0, rng.gen_range(1..=2), 1, rng);
    let c1 = random_twists(1, rng.gen_range(1..=3), max_degree.min(2) - 1, rng);
    let d1 = random_map(ring, &c1, &c0, max_degree, rng)?;
    let mut modules = vec![c0, c1.clone()];
    let mut maps = vec![d1.clone()];
    if terms >= 3 {
        let syz = groebner::kernel(ring, &d1)?;
        let mut cols: Vec<usize> = (0..syz.ncols())
            .filter(|&j| (0..syz.nrows()).all(|i| syz.entry(i, j).is_zero() || syz.entry_degree(i, j) <= max_degree))
            .collect();
        cols.shuffle(rng);
        cols.truncate(rng.gen_range(1..=2));
        cols.sort_unstable();
        if !cols.is_empty() {
            let d2 = syz.submatrix(&(0..syz.nrows()).collect::<Vec<_>>(), &cols);
            modules.push(d2.source().clone());
            maps.push(d2);
        }
    }
    Ok((modules, maps))
}

/// Fold of a random complex with `terms` terms, degree `a`.
pub fn random_fold(ring: &GradedRing, terms: usize, a: i64, seed: u64) -> Result<DifferentialModule> {
    let mut r = rng(seed);
    let (m, f) = random_complex(ring, terms, 3, &mut r)?;
    fold(ring, &m, &f, a)
}

/// `A S A⁻¹` with `S` a sum of `[[0, 1], [0, 0]]` blocks and `A` a random
/// homogeneous unipotent change of basis.
pub fn random_standard_form(ring: &GradedRing, pairs: usize, a: i64, seed: u64) -> Result<DifferentialModule> {
    let mut r = rng(seed);
    let mut twists = Vec::new();
    for _ in 0..pairs {
        let t = r.gen_range(0..=2);
        twists.push(t);
        twists.push(t + a);
    }
    let n = twists.len();
    let f = FreeModule::new(twists.clone());
    let mut s = vec![vec![ring.zero(); n]; n];
    for p in 0..pairs {
        s[2 * p + 1][2 * p] = ring.one();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut r);
    let mut nil = vec![vec![ring.zero(); n]; n];
    for (x, &i) in order.iter().enumerate() {
        for &j in &order[x + 1..] {
            let e = twists[j] - twists[i];
            if e >= 0 && r.gen_bool(0.5) {
                nil[i][j] = if e == 0 { ring.from_i64(r.gen_range(-2..=2)) } else { random_form(ring, e, &mut r) };
            }
        }
    }
    let mul = |x: &Vec<Vec<Polynomial>>, y: &Vec<Vec<Polynomial>>| -> Vec<Vec<Polynomial>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(ring.zero(), |acc, k| ring.add(&acc, &ring.mul(&x[i][k], &y[k][j]))))
                    .collect()
            })
            .collect()
    };
    let id: Vec<Vec<Polynomial>> = (0..n).map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect();
    let a_mat: Vec<Vec<Polynomial>> = (0..n).map(|i| (0..n).map(|j| ring.add(&id[i][j], &nil[i][j])).collect()).collect();
    let neg: Vec<Vec<Polynomial>> = nil.iter().map(|row| row.iter().map(|p| ring.neg(p)).collect()).collect();
    let mut inv = id.clone();
    let mut term = id;
    for _ in 0..n {
        term = mul(&term, &neg);
        inv = (0..n).map(|i| (0..n).map(|j| ring.add(&inv[i][j], &term[i][j])).collect()).collect();
    }
    let d = mul(&mul(&a_mat, &s), &inv);
    let m = GradedMatrix::new(ring, f.clone(), f, a, d)?;
    DifferentialModule::free(ring, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_instances_are_valid_and_repeatable() {
        let r = GradedRing::polynomial(&["x", "y", "z"]);
        for seed in 0..5 {
            let d = random_fold(&r, 3, 0, seed).unwrap();
            assert!(d.is_valid(&r).unwrap());
            assert_eq!(d, random_fold(&r, 3, 0, seed).unwrap());
            let s = random_standard_form(&r, 3, 1, seed).unwrap();
            assert!(s.is_valid(&r).unwrap());
            assert!(crate::diffmod::is_contractible(&r, &s).unwrap().contractible);
        }
    }
}
