//! The one-parameter family joining a flag resolution to its t = 0 fibre.
use dmres::cli::parse;
use dmres::resolve::{degenerate, Degeneration, TValue};
use dmres::prelude::*;

fn main() -> Result<()> {
    let a = parse(include_str!("../data/rank_two.dm"))?;
    let (r, d) = (&a.ring, a.dm("D")?);
    let flag = deformation_resolution(r, &d, 4)?.resolution.flag;
    if let Degeneration::Family(fam) = degenerate(r, &flag, &TValue::Symbolic)? {
        println!("family {}", fam.format(r));
        println!("square zero in t: {}", fam.is_square_zero(r)?);
    }
    for t in [0, 1, 5] {
        if let Degeneration::Module(m) = degenerate(r, &flag, &TValue::Value(t))? {
            println!("t = {t}: homology {:?}", m.homology_oracle(r, 0, 4).values());
        }
    }
    Ok(())
}
