//! Minimal free resolution of a differential module with relations.
use dmres::cli::parse;
use dmres::resolve::{minimal_free_resolution_dm, MinimalMethod};
use dmres::prelude::*;

fn main() -> Result<()> {
    let a = parse(include_str!("../data/residue_field_a0.dm"))?;
    let (r, k) = (&a.ring, a.dm("K")?);
    for method in [MinimalMethod::ViaDeformation, MinimalMethod::DirectDegreewise] {
        let m = minimal_free_resolution_dm(r, &k, method, 4)?;
        println!("{method:?}: degrees {:?}", m.degrees());
        println!("  differential {}", m.module.differential().format(r));
        println!("  augmentation {}", m.augmentation.format(r));
    }
    Ok(())
}
