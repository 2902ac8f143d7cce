//! Canonical descriptors and their per-tube structure.

use tametilt::{LambdaSet, TubeRegistry};

pub fn run() -> tametilt::Result<()> {
    let reg = TubeRegistry::preset("e_6")?;
    println!("{} classes over e_6", reg.enumerate_descriptors().len());

    let b = reg.tube_id("b")?;
    let y = reg.branch_module(["b:1[1]".parse()?, "b:1[2]".parse()?].into())?;
    let d = reg.descriptor_from_pair(&y, &LambdaSet::named([&b]))?;
    println!(
        "{}",
        serde_json::to_string_pretty(&d.to_json()).expect("serializable")
    );
    for t in d.decompose()?.tubes {
        println!(
            "tube {} (rank {}): {:?}, {} classes",
            t.tube,
            t.rank,
            t.case,
            t.classes()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tametilt::Result<()> {
    run()
}
