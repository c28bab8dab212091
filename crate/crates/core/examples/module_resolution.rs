//! Minimal free resolution of R/(x,y)^2 and its graded Betti numbers.
use dmres::groebner::min_free_resolution;
use dmres::prelude::*;

fn main() -> Result<()> {
    let r = GradedRing::polynomial(&["x", "y"]);
    let (x, y) = (r.var(0), r.var(1));
    let gens = vec![vec![r.mul(&x, &x), r.mul(&x, &y), r.mul(&y, &y)]];
    let rel = GradedMatrix::new(&r, FreeModule::new(vec![2, 2, 2]), FreeModule::new(vec![0]), 0, gens)?;
    let m = PresentedModule::cokernel(&r, rel)?;
    let res = min_free_resolution(&r, &m, 4)?;
    for (i, map) in res.maps.iter().enumerate() {
        println!("d{} = {}", i + 1, map.format(&r));
    }
    for (i, j, b) in res.betti() {
        println!("beta_{{{i},{j}}} = {b}");
    }
    println!("hilbert function on [0, 5]: {:?}", m.hilbert_function(&r, 0, 5).values());
    Ok(())
}
