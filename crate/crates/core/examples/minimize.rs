//! Minimizing a free differential module by unit pivots.
use dmres::cli::parse;
use dmres::prelude::*;

fn main() -> Result<()> {
    let a = parse(include_str!("../data/nonminimal_rank_four.dm"))?;
    let r = &a.ring;
    let f = a.dm("F")?;
    let m = minimize(r, &f)?;
    println!("rank {} -> {}", f.rank(), m.rank());
    println!("A = {}", m.change_of_basis.format(r));
    println!("A d A^-1 = {}", m.conjugated.format(r));
    println!("minimal = {}", m.minimal.differential().format(r));
    println!("certificate holds: {}", m.verify(r, f.differential())?);
    let iso = find_isomorphism(r, &m.minimal, &a.dm("D")?, 7)?;
    println!("isomorphic to D: {}", iso.is_some());
    Ok(())
}
