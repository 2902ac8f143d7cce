//! Hom and Ext inside a tube, plus the AR translate.

use tametilt::{RegPoint, TubeRegistry};

fn pt(s: &str) -> RegPoint {
    s.parse().expect("valid point")
}

pub fn run() -> tametilt::Result<()> {
    let reg = TubeRegistry::custom(&[("a", 3)], true)?;
    let x = pt("a:1[2]");
    println!("tau {x} = {}", reg.tau(&x)?);
    println!("tau^-1 {x} = {}", reg.tau_inv(&x)?);

    for (p, q) in [
        ("a:1[1]", "a:1[4]"),
        ("a:1[3]", "a:3[1]"),
        ("a:2[2]", "a:3[inf]"),
    ] {
        println!("hom({p}, {q}) = {:?}", reg.hom_dim(&pt(p), &pt(q))?);
    }
    // Ext(x, y) = D Hom(y, tau x)
    println!(
        "ext(a:2[1], a:1[1]) = {:?}",
        reg.ext_dim(&pt("a:2[1]"), &pt("a:1[1]"))?
    );
    println!(
        "ext(a:1[inf], a:2[-inf]) = {:?}",
        reg.ext_dim(&pt("a:1[inf]"), &pt("a:2[-inf]"))?
    );

    let v = "a:1[2]".parse()?;
    let wing: Vec<String> = reg.wing(&v)?.iter().map(ToString::to_string).collect();
    println!("wing of {v}: {}", wing.join(" "));
    Ok(())
}

#[allow(dead_code)]
fn main() -> tametilt::Result<()> {
    run()
}
