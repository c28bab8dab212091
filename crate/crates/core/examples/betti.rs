//! Differential Betti numbers of k with differential of degree a over k[x]/(x^2).
use dmres::cli::parse;
use dmres::prelude::*;

fn main() -> Result<()> {
    let files = [
        (0, include_str!("../data/residue_field_a0.dm"), (-2, 6)),
        (1, include_str!("../data/residue_field_a1.dm"), (-2, 2)),
        (2, include_str!("../data/residue_field_a2.dm"), (-6, 2)),
    ];
    for (a, src, (lo, hi)) in files {
        let art = parse(src)?;
        let t = betti_dm(&art.ring, &art.dm("K")?, lo, hi, BettiMethod::Minres, 9)?;
        let row: Vec<String> = t.rows().map(|(j, v, _)| format!("{j}:{}", v.map_or("-".into(), |v| v.to_string()))).collect();
        println!("a = {a}: {}", row.join(" "));
        for n in &t.notices {
            println!("  {n}");
        }
    }
    Ok(())
}
