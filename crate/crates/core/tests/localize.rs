mod common;

use std::collections::BTreeMap;

use common::*;
use tametilt::localize::LocalizedTube;
use tametilt::{
    LambdaSet, LocalizationTilting, MultiplicityMap, QuasiSimpleSet, RegPoint, TensorImage,
    TubeRegistry,
};

fn set(items: &[&str]) -> QuasiSimpleSet {
    QuasiSimpleSet::new(qss(items), false)
}

#[test]
fn tensor_images() {
    let reg = one_tube(3);
    let y = set(&["a:2"]);
    assert_eq!(
        reg.tensor_qs(&qs("a:1"), &y).unwrap(),
        TensorImage::Module(fin("a:1[2]"))
    );
    assert_eq!(
        reg.tensor_qs(&qs("a:3"), &y).unwrap(),
        TensorImage::Module(fin("a:3[1]"))
    );
    assert_eq!(reg.tensor_qs(&qs("a:2"), &y).unwrap(), TensorImage::Zero);
}

#[test]
fn localized_rank_and_order() {
    let reg = one_tube(3);
    let loc = reg.localize_registry(&set(&["a:2"])).unwrap();
    let a = reg.tube_id("a").unwrap();
    assert_eq!(loc.tube(&a).unwrap().new_rank(), Some(2));
    assert!(!loc.order_flag());
    // τ⁻ of the image of U_1 is the image of U_3
    let one = loc.image(&qs("a:1")).unwrap();
    let three = loc.image(&qs("a:3")).unwrap();
    assert_eq!(three.index(), one.index() % 2 + 1);
    assert_eq!(loc.image(&qs("a:2")), None);
    assert_eq!(loc.preimage(&three).unwrap(), qs("a:3"));
}

#[test]
fn full_clique_gives_order() {
    let reg = TubeRegistry::custom(&[("a", 2), ("b", 3)], true).unwrap();
    let loc = reg.localize_registry(&set(&["a:1", "a:2", "b:1"])).unwrap();
    assert!(loc.order_flag());
    assert!(matches!(loc.tubes()[0], LocalizedTube::Removed { .. }));
    assert_eq!(loc.tubes()[1].new_rank(), Some(2));
    let after = loc.registry();
    assert_eq!(
        after.nonhomogeneous().map(|(_, r)| r).collect::<Vec<_>>(),
        vec![2]
    );
}

#[test]
fn composition() {
    let reg = one_tube(4);
    let u = set(&["a:1"]);
    let v = set(&["a:3"]);
    let first = reg.localize_registry(&u).unwrap();
    let v_img = QuasiSimpleSet::new(v.members().iter().filter_map(|q| first.image(q)), false);
    let second = first.registry().localize_registry(&v_img).unwrap();
    let direct = reg.localize_registry(&u.union(&v)).unwrap();
    assert_eq!(first.then(&second), direct);
}

#[test]
fn quotient_clique_and_segment() {
    let reg = one_tube(2);
    let q = reg
        .quotient_decomposition(&set(&["a:1", "a:2"]), &MultiplicityMap::default())
        .unwrap();
    let expected: BTreeMap<RegPoint, u32> = [(pt("a:1[inf]"), 1), (pt("a:2[inf]"), 1)].into();
    assert_eq!(q.summands, expected);
    assert_eq!(q.generic, None);

    let reg = one_tube(4);
    let q = reg
        .quotient_decomposition(&set(&["a:1", "a:2"]), &MultiplicityMap::default())
        .unwrap();
    let expected: BTreeMap<RegPoint, u32> = [(pt("a:1[2]"), 1), (pt("a:2[1]"), 1)].into();
    assert_eq!(q.summands, expected);
}

#[test]
fn quotient_with_multiplicities() {
    let reg = one_tube(3);
    let alpha = MultiplicityMap::new([(qs("a:2"), 3)].into(), 5).unwrap();
    let q = reg
        .quotient_decomposition(&QuasiSimpleSet::everything(&reg), &alpha)
        .unwrap();
    let expected: BTreeMap<RegPoint, u32> = [
        (pt("a:1[inf]"), 1),
        (pt("a:2[inf]"), 3),
        (pt("a:3[inf]"), 1),
    ]
    .into();
    assert_eq!(q.summands, expected);
    assert!(q.rest_pruefer);
    assert_eq!(q.generic, Some(5));
}

#[test]
fn localization_tilting_cases() {
    let reg = one_tube(3);
    match reg
        .localization_tilting(&QuasiSimpleSet::everything(&reg))
        .unwrap()
    {
        LocalizationTilting::Large(d) => {
            assert!(d.branch().is_empty());
            assert_eq!(d.lambda(), &reg.full_lambda());
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(
        reg.localization_tilting(&set(&["a:2", "a:3"])).unwrap(),
        LocalizationTilting::FiniteDimensional
    );

    let reg = TubeRegistry::preset("kronecker")
        .unwrap()
        .with_homogeneous("h")
        .unwrap();
    let h = reg.tube_id("h").unwrap();
    match reg.localization_tilting(&set(&["h:1"])).unwrap() {
        LocalizationTilting::Large(d) => assert_eq!(d.lambda(), &LambdaSet::named([&h])),
        other => panic!("{other:?}"),
    }
}

#[test]
fn qs_set_keys() {
    let reg = TubeRegistry::custom(&[("a", 2)], true)
        .unwrap()
        .with_homogeneous("h")
        .unwrap();
    let keys: Vec<String> = ["a:1", "clique:h", "clique:*"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let u = QuasiSimpleSet::from_keys(&reg, &keys).unwrap();
    assert!(u.includes_rest() && u.contains(&qs("h:1")) && u.contains(&qs("a:1")));
    assert_eq!(
        QuasiSimpleSet::from_keys(&reg, &u.to_keys(&reg)).unwrap(),
        u
    );
    assert!(QuasiSimpleSet::from_keys(&reg, &["z:1".to_string()]).is_err());
}
