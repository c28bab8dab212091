//! Contracting homotopies, and an acyclic module that has none.
use dmres::cli::parse;
use dmres::random::random_standard_form;
use dmres::prelude::*;

fn main() -> Result<()> {
    let r = GradedRing::polynomial(&["x", "y"]);
    let d = random_standard_form(&r, 2, 1, 7)?;
    let c = is_contractible(&r, &d)?;
    println!("standard form of rank {}: contractible {}", d.rank(), c.contractible);
    if let Some(h) = c.homotopy {
        println!("h = {}", h.map.format(&r));
    }

    let a = parse(include_str!("../data/acyclic_not_contractible.dm"))?;
    let (q, n) = (&a.ring, a.dm(&a.objects[0].name)?);
    println!("{} over {}", n.differential().format(q), q.describe());
    println!("homology on [-4, 4]: {:?}", n.homology_oracle(q, -4, 4).values());
    println!("contractible {}", is_contractible(q, &n)?.contractible);
    Ok(())
}
