//! Over the Kronecker algebra the classes are the subsets of the tubes.

use tametilt::TubeRegistry;

pub fn run() -> tametilt::Result<()> {
    let reg = TubeRegistry::preset("kronecker")?
        .with_homogeneous("h1")?
        .with_homogeneous("h2")?;
    for d in reg.enumerate_descriptors() {
        let named: Vec<&str> = d.lambda().named.iter().map(|t| t.as_str()).collect();
        let p = d.predicates();
        println!(
            "Λ = {{{}}}{}: noetherian {}, Σ-pure-injective {}",
            named.join(", "),
            if d.lambda().include_rest {
                " + rest"
            } else {
                ""
            },
            p.noetherian_over_endo,
            p.sigma_pure_injective,
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tametilt::Result<()> {
    run()
}
