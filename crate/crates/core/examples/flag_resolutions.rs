//! The three flag resolution constructions on the same module.
use dmres::cli::parse;
use dmres::prelude::*;

fn main() -> Result<()> {
    let a = parse(include_str!("../data/rank_two.dm"))?;
    let (r, d) = (&a.ring, a.dm("D")?);
    let stai = flag_resolution_stai(r, &d, 4)?;
    let cone = flag_resolution_cone(r, &d, 4)?;
    let deform = deformation_resolution(r, &d, 4)?;
    for (name, res) in [("stai", &stai), ("cone", &cone), ("deform", &deform.resolution)] {
        let report = res.verify(r, -5, 12)?;
        println!("{name}: ranks {:?}, verified {}", res.flag.ranks(), report.passed());
    }
    println!("deformed differential {}", deform.resolution.flag.differential().format(r));
    println!("free class at most {}", deform.free_class_bound);
    Ok(())
}
