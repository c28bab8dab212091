//! Reading and writing the text format.
use dmres::cli::{parse, print, Object};
use dmres::prelude::*;

fn main() -> Result<()> {
    let src = "ring GF(7)[x,y] mod [x^2]\n\ndm D\n  degree 1\n  gens [0, 1]\n  matrix [[0, y^2], [0, 0]]\nend\n";
    let mut a = parse(src)?;
    let d = a.dm("D")?;
    let m = minimize(&a.ring, &d)?;
    a.push("D_min", Object::Dm(m.minimal));
    print!("{}", print(&a));
    match parse("ring Q[x]\ndm E\n degree 0\n gens [0]\n matrix [[x + 1]]\nend\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => println!("accepted"),
    }
    Ok(())
}
