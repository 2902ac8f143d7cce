mod common;

use common::*;
use tametilt::oracle::{verify_suite_with, ClosedForm, HomSource};
use tametilt::{verify_suite, Cell, Error, Tube, TubeRegistry, VerifyBounds};

/// Closed form with one entry off by one.
struct Corrupted;

impl HomSource for Corrupted {
    fn hom(&self, t: Tube, x: Cell, y: Cell) -> u32 {
        let d = t.hom(x, y);
        if t.rank() == 3 && x == Cell::new(2, 2) && y == Cell::new(3, 4) {
            d + 1
        } else {
            d
        }
    }
}

#[test]
fn rank_three_suite_passes() {
    let report = verify_suite(&one_tube(3), VerifyBounds { rank_max: 3 }).unwrap();
    assert!(report.passed(), "{}", report.to_json_lines());
    assert!(report.instances_of("resolving.filter_instances") >= 500);
}

#[test]
fn kronecker_with_named_tube_counts_power_set() {
    let reg = TubeRegistry::preset("kronecker")
        .unwrap()
        .with_homogeneous("h1")
        .unwrap();
    let report = verify_suite(&reg, VerifyBounds { rank_max: 2 }).unwrap();
    assert!(report.passed(), "{}", report.to_json_lines());
    assert!(report.checks.iter().any(|c| c.id == "classify.class_count"));
}

#[test]
fn corrupted_hom_table_is_caught() {
    let report = verify_suite_with(&one_tube(3), VerifyBounds { rank_max: 3 }, &Corrupted).unwrap();
    assert!(!report.passed());
    let bad: Vec<_> = report.failing().collect();
    assert!(bad.iter().any(|c| c.id == "tube.hom_oracle"));
    let witness = bad
        .iter()
        .find(|c| c.id == "tube.hom_oracle")
        .unwrap()
        .witness
        .clone()
        .unwrap();
    assert!(
        witness.contains("2[2]") && witness.contains("3[4]"),
        "{witness}"
    );

    let clean = verify_suite_with(&one_tube(3), VerifyBounds { rank_max: 3 }, &ClosedForm).unwrap();
    assert!(clean.passed());
}

#[test]
fn bounds_are_enforced() {
    assert!(matches!(
        verify_suite(&one_tube(3), VerifyBounds { rank_max: 7 }),
        Err(Error::RankBound { rank: 7, .. })
    ));
    assert!(matches!(
        verify_suite(&one_tube(4), VerifyBounds { rank_max: 3 }),
        Err(Error::RankBound { rank: 4, max: 3 })
    ));
}

#[test]
fn json_lines_end_with_totals() {
    let report = verify_suite(&one_tube(2), VerifyBounds { rank_max: 2 }).unwrap();
    let lines: Vec<serde_json::Value> = report
        .to_json_lines()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(lines.iter().all(|v| v["schema"] == "tametilt/1"));
    let totals = &lines.last().unwrap()["totals"];
    assert_eq!(totals["failures"], 0);
    assert_eq!(totals["checks"], lines.len() - 1);
}
