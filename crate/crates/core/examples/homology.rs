//! Homology of a differential module, checked against linear algebra.
use dmres::cli::parse;
use dmres::prelude::*;

fn main() -> Result<()> {
    let a = parse(include_str!("../data/rank_two.dm"))?;
    let (r, d) = (&a.ring, a.dm("D")?);
    println!("d = {}", d.differential().format(r));
    let h = d.homology(r)?;
    println!("generators in degrees {:?}", h.module.generators().degree_multiset());
    println!("representatives {}", h.representatives.format(r));
    let hf = h.module.hilbert_function(r, -2, 6);
    let oracle = d.homology_oracle(r, -2, 6);
    println!("hilbert function {:?}, oracle agrees: {}", hf.values(), hf == oracle);
    Ok(())
}
