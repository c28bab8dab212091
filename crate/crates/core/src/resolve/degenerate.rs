//! The one-parameter family scaling `∂_{i,j}` by `t^{j-i-1}`.
//!
//! The parameter has internal degree 0, so the family is stored as its
//! coefficients: `∂(t) = Σ_k t^k C_k` where `C_k` keeps the blocks with
//! `j - i - 1 = k`.

use serde::Serialize;

use super::flag::FreeFlag;
use crate::diffmod::DifferentialModule;
use crate::error::Result;
use crate::graded::GradedMatrix;
use crate::ring::{GradedRing, Scalar};

#[derive(Clone, Debug)]
pub struct DeformationFamily {
    pub flag: FreeFlag,
    /// `C_0, C_1, ...`.
    pub coefficients: Vec<GradedMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TValue {
    Symbolic,
    Value(i64),
}

impl TValue {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "sym" => Some(TValue::Symbolic),
            _ => s.parse().ok().map(TValue::Value),
        }
    }
}

pub enum Degeneration {
    Family(DeformationFamily),
    Module(DifferentialModule),
}

impl DeformationFamily {
    pub fn new(flag: &FreeFlag) -> Self {
        let n = flag.len();
        let block_of = flag.block_of();
        let d = flag.differential();
        let mut coefficients = Vec::new();
        for k in 0..n.saturating_sub(1) {
            let c = d.map_entries_indexed(|i, j, f| {
                if block_of[j] == block_of[i] + k + 1 {
                    f.clone()
                } else {
                    crate::ring::Polynomial::zero()
                }
            });
            coefficients.push(c);
        }
        DeformationFamily {
            flag: flag.clone(),
            coefficients,
        }
    }

    /// `Σ_{k + l = n} C_k C_l = 0` for every `n`: square-zero as a
    /// polynomial identity in `t`.
    pub fn is_square_zero(&self, ring: &GradedRing) -> Result<bool> {
        let m = self.coefficients.len();
        for n in 0..(2 * m).saturating_sub(1) {
            let mut acc: Option<GradedMatrix> = None;
            for k in 0..m {
                if n < k || n - k >= m {
                    continue;
                }
                let p = self.coefficients[k].compose(ring, &self.coefficients[n - k])?;
                acc = Some(match acc {
                    None => p,
                    Some(s) => s.add(ring, &p)?,
                });
            }
            if acc.is_some_and(|s| !s.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn evaluate(&self, ring: &GradedRing, t: &Scalar) -> Result<DifferentialModule> {
        let f = self.flag.module();
        let mut d = GradedMatrix::zero(f.clone(), f, self.flag.degree());
        let mut power = ring.field().one();
        for c in &self.coefficients {
            d = d.add(ring, &c.scale(ring, &power))?;
            power = ring.field().mul(&power, t);
        }
        DifferentialModule::free(ring, d)
    }

    /// `∂(t)` written out with powers of `t`.
    pub fn format(&self, ring: &GradedRing) -> String {
        let d = self.flag.differential();
        let block_of = self.flag.block_of();
        let rows: Vec<String> = (0..d.nrows())
            .map(|i| {
                let cells: Vec<String> = (0..d.ncols())
                    .map(|j| {
                        let f = d.entry(i, j);
                        if f.is_zero() {
                            return "0".into();
                        }
                        let k = block_of[j] - block_of[i] - 1;
                        let p = ring.format_poly(f);
                        match k {
                            0 => p,
                            1 => format!("t*({p})"),
                            _ => format!("t^{k}*({p})"),
                        }
                    })
                    .collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

pub fn degenerate(ring: &GradedRing, flag: &FreeFlag, t: &TValue) -> Result<Degeneration> {
    let fam = DeformationFamily::new(flag);
    Ok(match t {
        TValue::Symbolic => Degeneration::Family(fam),
        TValue::Value(v) => Degeneration::Module(fam.evaluate(ring, &ring.field().from_i64(*v))?),
    })
}
