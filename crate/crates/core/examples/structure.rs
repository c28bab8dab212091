//! Hilbert-Burch and Pfaffian shapes of small flag resolutions.
use dmres::cli::parse;
use dmres::resolve::{check_hilbert_burch, check_pfaffian_structure};
use dmres::prelude::*;

fn main() -> Result<()> {
    let hb = parse(include_str!("../data/hilbert_burch.dm"))?;
    let (name, flag) = (&hb.objects[0].name, hb.flag(&hb.objects[0].name)?);
    println!("{name}:\n{}", check_hilbert_burch(&hb.ring, &flag.flag)?.to_text());

    let pf = parse(include_str!("../data/pfaffian.dm"))?;
    let flag = pf.flag("G")?;
    println!("G:\n{}", check_pfaffian_structure(&pf.ring, &flag.flag)?.to_text());
    Ok(())
}
