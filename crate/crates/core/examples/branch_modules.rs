//! Enumerating branch modules and completing exceptional modules to one.

use std::collections::BTreeSet;

use tametilt::{Finite, TubeRegistry};

pub fn run() -> tametilt::Result<()> {
    let reg = TubeRegistry::custom(&[("a", 4)], true)?;
    let all = reg.enumerate_branch_modules();
    println!("{} branch modules in a rank-4 tube", all.len());
    for y in all.iter().filter(|y| y.len() == 3) {
        let vertices: Vec<String> = reg.vertices(y).iter().map(ToString::to_string).collect();
        println!("  {y:?} with vertices {}", vertices.join(" "));
    }

    let z: BTreeSet<Finite> = ["a:2[2]".parse()?].into();
    for y in reg.complete_to_branch(&z)? {
        println!("completion of a:2[2]: {y:?}");
    }
    if let Err(e) = reg.branch_module(z) {
        println!("a:2[2] alone: {e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tametilt::Result<()> {
    run()
}
