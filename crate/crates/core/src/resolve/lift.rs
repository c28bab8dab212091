//! Lifting morphisms along flag resolutions, and comparison maps between
//! minimal resolutions of the same differential module.

use super::flag::FlagResolution;
use super::minimize::Minimization;
use crate::diffmod::{cone, DMorphism};
use crate::error::{Error, Result};
use crate::graded::GradedMatrix;
use crate::groebner::Lifter;
use crate::ring::{GradedRing, Polynomial};

/// `f̃: F -> F'` with `ε' f̃ - f ε = ∂ h + h ∂`.
#[derive(Clone, Debug)]
pub struct Lift {
    pub map: DMorphism,
    /// Degree `-a` map `F -> D'`.
    pub homotopy: GradedMatrix,
}

fn combine(ring: &GradedRing, coeffs: &[Polynomial], cols: &[Vec<Polynomial>], len: usize) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::zero(); len];
    for (c, col) in coeffs.iter().zip(cols) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(col) {
            if !x.is_zero() {
                *o = ring.add(o, &ring.mul(c, x));
            }
        }
    }
    out
}

impl Lift {
    /// `ε' f̃ - f ε = ∂ h + h ∂` exactly, with `f` the lifted morphism.
    pub fn verify(&self, ring: &GradedRing, source: &FlagResolution, f: &DMorphism, target: &FlagResolution) -> Result<bool> {
        let lhs = target
            .augmentation
            .compose(ring, self.map.map())?
            .sub(ring, &f.map().compose(ring, &source.augmentation)?)?;
        let dh = f.target().differential().compose(ring, &self.homotopy)?;
        let hd = self.homotopy.compose(ring, source.flag.differential())?;
        let rhs = dh.add(ring, &hd)?;
        let rels = f.target().relation_columns();
        let diff = lhs.sub(ring, &rhs.retwisted(lhs.source().clone(), lhs.target().clone(), lhs.degree())?)?;
        if rels.is_empty() {
            return Ok(diff.is_zero());
        }
        let gb = f.target().module().relation_basis(ring)?;
        Ok(diff.columns().iter().all(|c| gb.contains(ring, c)))
    }
}

/// Lifts `f: D -> D'` to the flags of `source` and `target`, generator by
/// generator in flag order. The source flag must be finite.
pub fn lift(ring: &GradedRing, source: &FlagResolution, f: &DMorphism, target: &FlagResolution) -> Result<Lift> {
    if source.truncated {
        return Err(Error::Hypothesis("lifting needs a finite source flag".into()));
    }
    if f.map().source() != source.target.generators() || f.map().target() != target.target.generators() {
        return Err(Error::Shape("morphism does not connect the two resolved modules".into()));
    }
    let a = source.flag.degree();
    let fdm = source.dm(ring)?;
    let tdm = target.dm(ring)?;
    let eps_t = DMorphism::new_unchecked(tdm.clone(), target.target.clone(), target.augmentation.clone());
    let c = cone(ring, &eps_t)?;
    let lifter = Lifter::new(ring, c.differential(), &c.relation_columns())?;
    let nd = target.target.rank();
    let nt = tdm.rank();
    let d = fdm.differential();
    let eps = &source.augmentation;
    let mut fcols: Vec<Vec<Polynomial>> = Vec::new();
    let mut hcols: Vec<Vec<Polynomial>> = Vec::new();
    for g in 0..fdm.rank() {
        crate::cancel::check()?;
        let dg = d.column(g);
        let r1 = combine(ring, &dg[..g], &fcols, nt);
        let fe = combine(ring, &eps.column(g), &f.map().columns(), nd);
        let hd = combine(ring, &dg[..g], &hcols, nd);
        let r2: Vec<Polynomial> = fe.iter().zip(&hd).map(|(p, q)| ring.add(p, q)).collect();
        let mut v = r2;
        v.extend(r1.iter().map(|p| ring.neg(p)));
        if v.iter().all(|p| p.is_zero()) {
            fcols.push(vec![Polynomial::zero(); nt]);
            hcols.push(vec![Polynomial::zero(); nd]);
            continue;
        }
        let u = lifter
            .lift(&v)
            .ok_or_else(|| Error::LiftFailure(format!("generator {g} has no lift; is the target augmentation a quasi-isomorphism?")))?;
        hcols.push(u[..nd].iter().map(|p| ring.neg(p)).collect());
        fcols.push(u[nd..].to_vec());
    }
    let map = GradedMatrix::from_columns(fdm.generators().clone(), tdm.generators().clone(), 0, fcols)?;
    let homotopy = GradedMatrix::from_columns(fdm.generators().clone(), target.target.generators().clone(), -a, hcols)?;
    Ok(Lift {
        map: DMorphism::new(ring, fdm, tdm, map)?,
        homotopy,
    })
}

/// Maps between two minimal resolutions of one module, through lifts of the
/// identity along the flags they were split from.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub forward: GradedMatrix,
    pub backward: GradedMatrix,
    /// Both round trips have identity constant part.
    pub identity_mod_maximal_ideal: bool,
}

pub fn compare_minimal(
    ring: &GradedRing,
    f1: &FlagResolution,
    m1: &Minimization,
    f2: &FlagResolution,
    m2: &Minimization,
) -> Result<Comparison> {
    let id = DMorphism::identity(ring, &f1.target);
    let l12 = lift(ring, f1, &id, f2)?;
    let l21 = lift(ring, f2, &id, f1)?;
    let forward = m2.projection.compose(ring, &l12.map.map().compose(ring, &m1.embedding)?)?;
    let backward = m1.projection.compose(ring, &l21.map.map().compose(ring, &m2.embedding)?)?;
    let round1 = backward.compose(ring, &forward)?;
    let round2 = forward.compose(ring, &backward)?;
    let is_id = |m: &GradedMatrix| {
        let c = m.constant_part();
        let field = ring.field();
        c.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, x)| {
                if i == j {
                    *x == field.one()
                } else {
                    GradedMatrix::scalar_is_zero(x)
                }
            })
        })
    };
    let ok = round1.nrows() == round1.ncols() && is_id(&round1) && is_id(&round2);
    Ok(Comparison {
        forward,
        backward,
        identity_mod_maximal_ideal: ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffmod::DifferentialModule;
    use crate::resolve::{flag_resolution_cone, flag_resolution_stai, minimize};

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
    fn identity_lifts_between_two_flags() {
        let r = GradedRing::polynomial(&["x", "y"]);
        let d = example(&r);
        let s = flag_resolution_stai(&r, &d, 4).unwrap();
        let c = flag_resolution_cone(&r, &d, 4).unwrap();
        let id = DMorphism::identity(&r, &d);
        let l = lift(&r, &s, &id, &c).unwrap();
        assert!(l.map.commutes(&r).unwrap());
        assert!(l.verify(&r, &s, &id, &c).unwrap());
        let ms = minimize(&r, &s.dm(&r).unwrap()).unwrap();
        let mc = minimize(&r, &c.dm(&r).unwrap()).unwrap();
        assert_eq!(ms.minimal.generators().degree_multiset(), mc.minimal.generators().degree_multiset());
        let cmp = compare_minimal(&r, &s, &ms, &c, &mc).unwrap();
        assert!(cmp.identity_mod_maximal_ideal);
    }
}
