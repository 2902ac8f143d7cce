//! Universal localization: new tube ranks, R_U/R and the tilting module R_U ⊕ R_U/R.

use tametilt::{LocalizationTilting, MultiplicityMap, QuasiSimpleSet, TubeRegistry};

pub fn run() -> tametilt::Result<()> {
    let reg = TubeRegistry::preset("d_5")?;
    let keys = |ks: &[&str]| ks.iter().map(|s| s.to_string()).collect::<Vec<_>>();

    let u = QuasiSimpleSet::from_keys(&reg, &keys(&["c:1", "c:2"]))?;
    let loc = reg.localize_registry(&u)?;
    println!("{}", loc.to_json());
    println!(
        "R_U/R = {}",
        reg.quotient_decomposition(&u, &MultiplicityMap::default())?
            .to_json()
    );
    println!(
        "large: {}",
        matches!(reg.localization_tilting(&u)?, LocalizationTilting::Large(_))
    );

    let u = QuasiSimpleSet::from_keys(&reg, &keys(&["clique:a", "c:1"]))?;
    if let LocalizationTilting::Large(d) = reg.localization_tilting(&u)? {
        println!("T_U is the class of {:?}", d.pair());
        println!(
            "localization form found: {:?}",
            d.predicates().localization_form.map(|s| s.to_keys(&reg))
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tametilt::Result<()> {
    run()
}
