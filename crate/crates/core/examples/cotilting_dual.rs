//! The dual cotilting module has exactly rank-many classes in each tube.

use tametilt::TubeRegistry;

pub fn run() -> tametilt::Result<()> {
    let reg = TubeRegistry::custom(&[("a", 2), ("b", 4)], true)?;
    let mut shown = 0;
    for d in reg.enumerate_descriptors() {
        let dual = d.cotilting_dual();
        for (id, r) in reg.nonhomogeneous() {
            assert_eq!(dual.tubes[id].classes(), r as usize);
        }
        if !d.branch().is_empty() && shown < 3 {
            shown += 1;
            println!("{:?} -> {}", d.pair(), dual.to_json());
        }
    }
    println!(
        "rank identity holds for all {} classes",
        reg.enumerate_descriptors().len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> tametilt::Result<()> {
    run()
}
