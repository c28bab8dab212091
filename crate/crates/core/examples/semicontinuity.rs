//! Betti numbers of a folded complex against those of its homology.
use dmres::random::random_fold;
use dmres::resolve::check_semicontinuity;
use dmres::prelude::*;

fn main() -> Result<()> {
    let r = GradedRing::polynomial(&["x", "y"]);
    for seed in 0..4 {
        let d = random_fold(&r, 3, 0, seed)?;
        let report = check_semicontinuity(&r, &d, 0, 8, 3)?;
        let t = betti_dm(&r, &d, 0, 8, BettiMethod::Tor, 3)?;
        println!("seed {seed}: rank {}, betti {:?}, holds {}", d.rank(), t.values, report.passed());
    }
    Ok(())
}
