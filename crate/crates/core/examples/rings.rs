//! Polynomial arithmetic, quotient rings and a Groebner basis.
use dmres::groebner::{buchberger, normal_form, ModuleOrder};
use dmres::prelude::*;

fn main() -> Result<()> {
    let r = GradedRing::polynomial(&["x", "y", "z"]);
    let (x, y, z) = (r.var(0), r.var(1), r.var(2));
    let f = r.add(&r.mul(&x, &y), &r.neg(&r.mul(&z, &z)));
    println!("f = {}", r.format_poly(&f));
    println!("f^2 = {}", r.format_poly(&r.pow(&f, 2)));

    let gb = buchberger(&r, &[vec![r.mul(&x, &x)], vec![r.mul(&x, &y)], vec![f.clone()]], ModuleOrder::graded(vec![0]))?;
    for v in gb.vectors(&r) {
        println!("basis element {}", r.format_poly(&v[0]));
    }
    let rem = normal_form(&r, &[r.mul(&r.mul(&x, &z), &z)], &gb);
    println!("x*z^2 reduces to {}", r.format_poly(&rem[0]));

    let q = r.with_quotient(vec![r.mul(&x, &x)])?;
    println!("{}: x^3 = {}", q.describe(), q.format_poly(&q.pow(&q.var(0), 3)));
    Ok(())
}
