use proptest::prelude::*;
use tametilt::oracle::brute_hom_cells;
use tametilt::{Cell, Config, Finite, RegPoint, Tube, TubeRegistry};

fn registry() -> impl Strategy<Value = TubeRegistry> {
    (
        proptest::collection::vec(2u32..=6, 0..=3),
        any::<bool>(),
        0usize..3,
    )
        .prop_map(|(ranks, rest, named)| {
            let ids = ["a", "b", "c"];
            let tubes: Vec<(&str, u32)> = ids.iter().copied().zip(ranks).collect();
            let mut reg = TubeRegistry::custom(&tubes, rest).unwrap();
            for k in 0..named {
                reg = reg.with_homogeneous(&format!("h{k}")).unwrap();
            }
            reg
        })
}

fn point(rank: u32) -> impl Strategy<Value = RegPoint> {
    let id = tametilt::TubeId::new("a").unwrap();
    (1..=rank, 1u32..20, 0u8..3).prop_map(move |(i, l, kind)| {
        let q = tametilt::QuasiSimpleRef::new(id.clone(), i);
        match kind {
            0 => RegPoint::Finite(Finite::new(id.clone(), Cell::new(i, l))),
            1 => RegPoint::Pruefer(q),
            _ => RegPoint::Adic(q),
        }
    })
}

proptest! {
    #[test]
    fn tau_round_trip(p in point(6)) {
        let reg = TubeRegistry::custom(&[("a", 6)], true).unwrap();
        let back = reg.tau_inv(&reg.tau(&p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn text_round_trip(p in point(6)) {
        let s = p.to_string();
        prop_assert_eq!(s.parse::<RegPoint>().unwrap(), p);
    }

    #[test]
    fn config_round_trip(reg in registry()) {
        let cfg = Config::new(reg);
        let again = Config::from_json(&cfg.to_json()).unwrap();
        prop_assert_eq!(again.to_json(), cfg.to_json());
        prop_assert_eq!(again.registry, cfg.registry);
    }

    #[test]
    fn hom_is_tau_invariant(r in 1u32..=6, i in 1u32..=6, l in 1u32..15, j in 1u32..=6, m in 1u32..15) {
        let t = Tube::new(r);
        let x = t.cell(i as i64, l);
        let y = t.cell(j as i64, m);
        prop_assert_eq!(t.hom(t.tau(x), t.tau(y)), t.hom(x, y));
        prop_assert_eq!(t.hom(x, y), brute_hom_cells(r, x, y));
    }

    #[test]
    fn ext_periodic_in_rank(r in 1u32..=5, i in 1u32..=5, l in 1u32..8, j in 1u32..=5, m in 1u32..8) {
        let t = Tube::new(r);
        let x = t.cell(i as i64, l);
        let y = t.cell(j as i64, m);
        prop_assert_eq!(t.ext(x, y), t.hom(y, t.tau(x)));
        prop_assert_eq!(t.middle_terms(x, y).len() as u32, t.ext(x, y));
    }
}
