//! Resolving subcategories, the summands of T they determine, and their pairs.

use serde_json::json;
use tametilt::{ResolvingFilter, TubeRegistry};

pub fn run() -> tametilt::Result<()> {
    let reg = TubeRegistry::custom(&[("a", 3)], true)?;
    let filters = [
        json!({}),
        json!({"a": {"rays": [], "region": ["1[1]", "1[2]", "2[1]"]}}),
        json!({"a": {"rays": [1], "region": []}}),
        json!({"a": {"rays": [1, 2, 3], "region": []}, "*": {"rays": [1], "region": []}}),
    ];
    for v in &filters {
        let f = reg.validate_filter(&ResolvingFilter::from_value(v)?)?;
        let addt = reg.addt_from_filter(&f)?;
        let (y, l) = reg.pair_from_resolving(&f)?;
        println!("{v}");
        for (id, p) in &addt.tubes {
            let finite: Vec<String> = p.finite.iter().map(|c| format!("{id}:{c}")).collect();
            println!(
                "  Add T in {id}: finite [{}], pruefer {:?}, adics in the class {:?}",
                finite.join(" "),
                p.pruefer,
                p.adics
            );
        }
        println!(
            "  pair: {y:?}, {}",
            serde_json::to_string(&l).expect("serializable")
        );
    }

    let bad = ResolvingFilter::from_value(&json!({"a": {"rays": [], "region": ["1[2]"]}}))?;
    if let Err(e) = reg.validate_filter(&bad) {
        println!("rejected [{}]: {e}", e.check_id());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> tametilt::Result<()> {
    run()
}
