use super::modvec::{ModVec, ModuleSpace, Term};
use crate::cancel;
use crate::error::{Error, Result};
use crate::ring::Monomial;

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    pos: usize,
    lcm: Monomial,
    degree: i64,
}

/// Reduced Groebner basis of the submodule generated by homogeneous
/// vectors, in the order of `space`.
///
/// Pairs are processed by increasing degree with the Gebauer-Moeller
/// criteria; the output is interreduced, monic and sorted by increasing
/// leading term, so it depends only on the submodule and the order.
pub fn buchberger_vectors(space: &ModuleSpace<'_>, gens: Vec<ModVec>) -> Result<Vec<ModVec>> {
    let mut pending: Vec<(i64, ModVec)> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        if !space.is_homogeneous(&g) {
            return Err(Error::Inhomogeneous(
                "Groebner basis input must be homogeneous".into(),
            ));
        }
        let d = space.degree(&g).unwrap();
        pending.push((d, g));
    }
    pending.sort_by_key(|(d, _)| *d);
    pending.reverse(); // pop from the back in increasing degree

    let mut basis: Vec<ModVec> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    loop {
        cancel::check()?;
        let next_gen = pending.last().map(|(d, _)| *d);
        let next_pair = pairs.iter().map(|p| p.degree).min();
        let d = match (next_gen, next_pair) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        let mut batch: Vec<ModVec> = Vec::new();
        let (now, later): (Vec<Pair>, Vec<Pair>) = pairs.drain(..).partition(|p| p.degree == d);
        pairs = later;
        for p in now {
            batch.push(s_vector(space, &basis[p.i], &basis[p.j], &p.lcm));
        }
        while matches!(pending.last(), Some((e, _)) if *e == d) {
            batch.push(pending.pop().unwrap().1);
        }
        for v in batch {
            let r = top_reduce(space, v, &basis);
            if r.is_zero() {
                continue;
            }
            let h = space.make_monic(&r);
            add_with_update(space, &mut basis, &mut pairs, h);
        }
    }
    Ok(interreduce(space, basis))
}

fn s_vector(space: &ModuleSpace<'_>, f: &ModVec, g: &ModVec, lcm: &Monomial) -> ModVec {
    let lf = f.lead().unwrap();
    let lg = g.lead().unwrap();
    let field = space.ring.field();
    let a = lf.mono.quotient_of(lcm);
    let b = lg.mono.quotient_of(lcm);
    let scaled = space.add_scaled(&ModVec::zero(), &field.one(), &a, f);
    space.add_scaled(&scaled, &field.from_i64(-1), &b, g)
}

fn add_with_update(space: &ModuleSpace<'_>, basis: &mut Vec<ModVec>, pairs: &mut Vec<Pair>, h: ModVec) {
    let k = basis.len();
    let (hp, hm) = {
        let t = h.lead().unwrap();
        (t.pos, t.mono.clone())
    };
    // chain criterion on existing pairs
    pairs.retain(|p| {
        if p.pos != hp || !hm.divides(&p.lcm) {
            return true;
        }
        let li = basis[p.i].lead().unwrap().mono.lcm(&hm);
        let lj = basis[p.j].lead().unwrap().mono.lcm(&hm);
        li == p.lcm || lj == p.lcm
    });
    let mut cands: Vec<Pair> = basis
        .iter()
        .enumerate()
        .filter(|(_, g)| g.lead().unwrap().pos == hp)
        .map(|(i, g)| {
            let lcm = g.lead().unwrap().mono.lcm(&hm);
            let degree = space.term_degree(hp, &lcm);
            Pair {
                i,
                j: k,
                pos: hp,
                lcm,
                degree,
            }
        })
        .collect();
    // keep one pair per lcm, drop pairs whose lcm is a proper multiple of another's
    let mut keep = vec![true; cands.len()];
    for a in 0..cands.len() {
        for b in 0..cands.len() {
            if a == b || !keep[b] {
                continue;
            }
            if cands[b].lcm.divides(&cands[a].lcm) && (cands[b].lcm != cands[a].lcm || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    let mut idx = 0;
    cands.retain(|_| {
        idx += 1;
        keep[idx - 1]
    });
    pairs.extend(cands);
    basis.push(h);
}

fn find_divisor<'a>(basis: &'a [ModVec], t: &Term) -> Option<&'a ModVec> {
    basis.iter().find(|g| {
        let l = g.lead().unwrap();
        l.pos == t.pos && l.mono.divides(&t.mono)
    })
}

/// Reduces until the leading term is not divisible by any leading term
/// of `basis` (whose elements must be monic).
pub(crate) fn top_reduce(space: &ModuleSpace<'_>, mut v: ModVec, basis: &[ModVec]) -> ModVec {
    let field = space.ring.field();
    while let Some(t) = v.lead() {
        let Some(g) = find_divisor(basis, t) else { break };
        let q = g.lead().unwrap().mono.quotient_of(&t.mono);
        let c = field.neg(&t.coef);
        v = space.add_scaled(&v, &c, &q, g);
    }
    v
}

/// Full normal form: no term is divisible by a leading term of `basis`
/// (monic elements).
pub fn normal_form_vector(space: &ModuleSpace<'_>, v: &ModVec, basis: &[ModVec]) -> ModVec {
    let field = space.ring.field();
    let mut rest = v.clone();
    let mut out: Vec<Term> = Vec::new();
    while let Some(t) = rest.lead() {
        match find_divisor(basis, t) {
            Some(g) => {
                let q = g.lead().unwrap().mono.quotient_of(&t.mono);
                let c = field.neg(&t.coef);
                rest = space.add_scaled(&rest, &c, &q, g);
            }
            None => {
                out.push(rest.terms.remove(0));
            }
        }
    }
    ModVec { terms: out }
}

fn interreduce(space: &ModuleSpace<'_>, basis: Vec<ModVec>) -> Vec<ModVec> {
    let mut minimal: Vec<ModVec> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lg = g.lead().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            if i == j {
                return false;
            }
            let lh = h.lead().unwrap();
            lh.pos == lg.pos
                && lh.mono.divides(&lg.mono)
                && (lh.mono != lg.mono || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let g = &minimal[i];
        let lead = ModVec {
            terms: vec![g.terms[0].clone()],
        };
        let tail = ModVec {
            terms: g.terms[1..].to_vec(),
        };
        let others: Vec<ModVec> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let tail = normal_form_vector(space, &tail, &others);
        reduced.push(space.add(&lead, &tail));
    }
    reduced.sort_by(|a, b| {
        let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
        space.cmp_terms(x.pos, &x.mono, y.pos, &y.mono)
    });
    reduced
}

/// Whether every element of `basis` has a leading term not divisible by
/// another's and every S-vector reduces to zero. Used by tests.
pub fn is_groebner(space: &ModuleSpace<'_>, basis: &[ModVec]) -> bool {
    for (i, f) in basis.iter().enumerate() {
        for g in &basis[i + 1..] {
            let (lf, lg) = (f.lead().unwrap(), g.lead().unwrap());
            if lf.pos != lg.pos {
                continue;
            }
            let lcm = lf.mono.lcm(&lg.mono);
            let s = s_vector(space, &space.make_monic(f), &space.make_monic(g), &lcm);
            let monic: Vec<ModVec> = basis.iter().map(|b| space.make_monic(b)).collect();
            if !normal_form_vector(space, &s, &monic).is_zero() {
                return false;
            }
        }
    }
    true
}
