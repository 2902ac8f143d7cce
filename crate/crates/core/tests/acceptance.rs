//! One line per acceptance criterion; exits non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use serde_json::json;
use tametilt::branch::tube_vertices;
use tametilt::oracle::{
    branch_count_recursive, brute_addt, brute_exceptional_sets, brute_hom, brute_hom_cells,
    brute_valid_filters,
};
use tametilt::resolving::addt_tube;
use tametilt::{
    Cell, Finite, HomResult, LambdaSet, MultiplicityMap, QuasiSimpleRef, QuasiSimpleSet, RegPoint,
    ResolvingFilter, TorsionFreeLabel, Tube, TubeId, TubeRegistry,
};

type Outcome = Result<String, String>;

/// Per tube: optional segment (start, length) and whether the clique is inverted.
type Choice = (TubeId, Option<(u32, u32)>, bool);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn one_tube(r: u32) -> TubeRegistry {
    TubeRegistry::custom(&[("a", r)], true).unwrap()
}

fn homogeneous(n: usize) -> TubeRegistry {
    (1..=n).fold(TubeRegistry::preset("kronecker").unwrap(), |reg, k| {
        reg.with_homogeneous(&format!("h{k}")).unwrap()
    })
}

/// Registries with non-homogeneous ranks up to `r_max` used for exhaustive sweeps.
fn sweep(r_max: u32) -> Vec<TubeRegistry> {
    let mut out = vec![homogeneous(1)];
    out.extend((2..=r_max).map(one_tube));
    out.push(TubeRegistry::custom(&[("a", 2), ("b", 3)], true).unwrap());
    out
}

fn qs(id: &TubeId, i: u32) -> QuasiSimpleRef {
    QuasiSimpleRef::new(id.clone(), i)
}

fn c1_hom_oracle() -> Outcome {
    let mut n = 0;
    for r in 1..=5 {
        let t = Tube::new(r);
        for x in t.cells(3 * r) {
            for y in t.cells(3 * r) {
                ensure!(
                    t.hom(x, y) == brute_hom_cells(r, x, y),
                    "rank {r}: {x} -> {y}"
                );
                n += 1;
            }
        }
    }
    let reg = TubeRegistry::custom(&[("a", 5)], true).unwrap();
    let a = reg.tube_id("a").unwrap();
    for x in Tube::new(5).cells(15) {
        for y in Tube::new(5).cells(15) {
            let (fx, fy) = (Finite::new(a.clone(), x), Finite::new(a.clone(), y));
            let d = reg
                .hom_dim(&RegPoint::Finite(fx.clone()), &RegPoint::Finite(fy.clone()))
                .unwrap();
            ensure!(
                d == HomResult::Dim(brute_hom(&reg, &fx, &fy).unwrap()),
                "{fx} -> {fy}"
            );
            n += 1;
        }
    }
    Ok(format!("{n} pairs"))
}

fn c2_anchor() -> Outcome {
    let mut n = 0;
    for r in 1..=5 {
        let t = Tube::new(r);
        for i in 1..=r {
            for len in 1..=3 * r {
                ensure!(
                    t.hom(Cell::new(i, 1), Cell::new(i, len)) == 1,
                    "rank {r}: U_{i}[{len}]"
                );
                n += 1;
            }
        }
    }
    Ok(format!("{n} pairs"))
}

fn c3_ar_symmetry() -> Outcome {
    let mut n = 0;
    for r in 1..=5 {
        let t = Tube::new(r);
        for x in t.cells(3 * r) {
            for y in t.cells(3 * r) {
                let e = t.ext(x, y);
                ensure!(e == t.hom(y, t.tau(x)), "rank {r}: {x}, {y}");
                ensure!(
                    e == brute_hom_cells(r, y, t.tau(x)),
                    "rank {r}: brute {x}, {y}"
                );
                n += 1;
            }
        }
    }
    Ok(format!("{n} pairs"))
}

fn c4_summand_bounds() -> Outcome {
    let mut n = 0;
    for r in 1..=4 {
        let t = Tube::new(r);
        for f in brute_valid_filters(r) {
            let p = addt_tube(t, &f);
            ensure!(
                (p.finite.len() as u32) < r,
                "rank {r}, {f}: {} finite",
                p.finite.len()
            );
            if !f.rays.is_empty() {
                ensure!(
                    p.finite.len() + p.pruefer.len() == r as usize,
                    "rank {r}, {f}: classes"
                );
            }
            let vertices: Vec<Cell> = tube_vertices(t, &p.finite).into_iter().collect();
            for (k, v) in vertices.iter().enumerate() {
                for w in &vertices[k + 1..] {
                    let wv: BTreeSet<Cell> = t.wing(*v).unwrap().into_iter().collect();
                    ensure!(
                        t.wing(*w).unwrap().iter().all(|c| !wv.contains(c)),
                        "rank {r}, {f}: wings of {v} and {w} meet"
                    );
                }
            }
            let qs: BTreeSet<u32> = p.finite.iter().flat_map(|c| t.factors(*c)).collect();
            ensure!(
                r == 1 || (qs.len() as u32) < r,
                "rank {r}, {f}: full clique"
            );
            n += 1;
        }
    }
    Ok(format!("{n} valid filters"))
}

fn c5_addt_oracle() -> Outcome {
    let mut n = 0;
    for reg in sweep(4).into_iter().take(4) {
        let (id, r) = reg.tubes().next().map(|(id, r)| (id.clone(), r)).unwrap();
        for f in brute_valid_filters(r) {
            let rf = ResolvingFilter::empty().with_tube(id.clone(), f.clone());
            let fast = reg.addt_from_filter(&rf).map_err(|e| e.to_string())?;
            let slow = brute_addt(&reg, &rf, &id).map_err(|e| e.to_string())?;
            ensure!(fast.tubes[&id] == slow, "rank {r}, {f}");
            n += 1;
        }
    }
    Ok(format!("{n} filters"))
}

fn c6_round_trip() -> Outcome {
    let mut n = 0;
    for reg in sweep(4).into_iter().take(4) {
        for y in reg.enumerate_branch_modules() {
            for l in reg.all_lambdas() {
                let f = reg.resolving_from_pair(&y, &l).map_err(|e| e.to_string())?;
                let back = reg.pair_from_resolving(&f).map_err(|e| e.to_string())?;
                ensure!(back == (y.clone(), l.clone()), "{y:?}, {l:?}");
                n += 1;
            }
        }
    }
    Ok(format!("{n} pairs"))
}

fn c7_kronecker() -> Outcome {
    for n in 0..=3usize {
        let reg = homogeneous(n);
        let all = reg.enumerate_descriptors();
        let supports: BTreeSet<_> = all.iter().map(|d| d.lambda().named.clone()).collect();
        ensure!(
            supports.len() == 1 << n,
            "n={n}: {} supports",
            supports.len()
        );
        ensure!(all.len() == 1 << (n + 1), "n={n}: {} classes", all.len());
        for (k, d) in all.iter().enumerate() {
            for e in &all[k + 1..] {
                ensure!(!d.equivalent(e).unwrap(), "n={n}: duplicate class");
            }
        }
        let lukas = reg
            .descriptor_from_pair(&Default::default(), &LambdaSet::empty())
            .unwrap();
        ensure!(
            *lukas.label() == TorsionFreeLabel::LukasOver(QuasiSimpleSet::empty()),
            "n={n}: (∅,∅) is not Lukas"
        );
        ensure!(
            lukas.torsion().finite.is_empty() && lukas.torsion().pruefer.is_empty(),
            "n={n}"
        );
    }
    Ok("n = 0..3".into())
}

fn c8_cotilting_rank() -> Outcome {
    let mut n = 0;
    for reg in sweep(4) {
        for d in reg.enumerate_descriptors() {
            let dual = d.cotilting_dual();
            for (id, r) in reg.nonhomogeneous() {
                let classes = dual.tubes[id].classes();
                ensure!(
                    classes == r as usize,
                    "{:?}: tube {id} has {classes}",
                    d.pair()
                );
            }
            n += 1;
        }
    }
    Ok(format!("{n} descriptors"))
}

fn subsets<T: Clone>(items: &[T]) -> impl Iterator<Item = Vec<T>> + '_ {
    (0u32..1 << items.len()).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, x)| x.clone())
            .collect()
    })
}

fn all_qs(reg: &TubeRegistry) -> Vec<QuasiSimpleRef> {
    reg.tubes()
        .flat_map(|(id, r)| (1..=r).map(move |i| qs(id, i)))
        .collect()
}

fn c9_localization() -> Outcome {
    let mut n = 0;
    for reg in sweep(4).into_iter().skip(1) {
        let universe = all_qs(&reg);
        for u in subsets(&universe) {
            let u = QuasiSimpleSet::new(u, false);
            if u.has_full_clique(&reg) {
                continue;
            }
            let loc = reg.localize_registry(&u).unwrap();
            for (id, r) in reg.tubes() {
                let inside = u.in_tube(id);
                let t = loc.tube(id).unwrap();
                ensure!(
                    t.new_rank() == Some(r - inside.len() as u32),
                    "rank of {id}"
                );
                let new_rank = r - inside.len() as u32;
                for i in (1..=r).filter(|i| !inside.contains(i)) {
                    // next survivor along τ⁻
                    let next = (1..=r)
                        .map(|k| (i + k - 1) % r + 1)
                        .find(|j| !inside.contains(j))
                        .unwrap();
                    let img = loc.image(&qs(id, i)).unwrap();
                    let want = Tube::new(new_rank).tau_inv_qs(img.index());
                    ensure!(
                        loc.image(&qs(id, next)).unwrap().index() == want,
                        "order at {id}:{i}"
                    );
                }
            }
            let members: Vec<_> = u.members().iter().cloned().collect();
            for v in subsets(&members) {
                let v = QuasiSimpleSet::new(v, false);
                let w =
                    QuasiSimpleSet::new(members.iter().filter(|q| !v.contains(q)).cloned(), false);
                let first = reg.localize_registry(&v).unwrap();
                let w_img =
                    QuasiSimpleSet::new(w.members().iter().filter_map(|q| first.image(q)), false);
                let second = first.registry().localize_registry(&w_img).unwrap();
                ensure!(first.then(&second) == loc, "split {v:?} | {w:?}");
                n += 1;
            }
        }
    }
    Ok(format!("{n} splits"))
}

fn c10_quotient() -> Outcome {
    let mut n = 0;
    for reg in sweep(4) {
        let mixed = MultiplicityMap::new(
            all_qs(&reg)
                .into_iter()
                .map(|q| (q.clone(), q.index() + 1))
                .collect(),
            3,
        )
        .unwrap();
        for alpha in [MultiplicityMap::default(), mixed] {
            // per tube: nothing, a full clique, or one segment (start, length)
            let mut choices: Vec<Vec<Choice>> = vec![vec![]];
            for (id, r) in reg.tubes() {
                let mut here = vec![(id.clone(), None, false), (id.clone(), None, true)];
                if r > 1 {
                    for i in 1..=r {
                        for m in 1..r {
                            here.push((id.clone(), Some((i, m)), false));
                        }
                    }
                }
                choices = choices
                    .into_iter()
                    .flat_map(|c| {
                        here.iter()
                            .map(move |h| [c.clone(), vec![h.clone()]].concat())
                    })
                    .collect();
            }
            for choice in choices {
                let mut u = Vec::new();
                let mut want: BTreeMap<RegPoint, u32> = BTreeMap::new();
                for (id, seg, clique) in &choice {
                    let r = reg.rank(id).unwrap();
                    if *clique {
                        for i in 1..=r {
                            u.push(qs(id, i));
                            want.insert(RegPoint::Pruefer(qs(id, i)), alpha.alpha(&qs(id, i)));
                        }
                    } else if let Some((i, m)) = seg {
                        for k in 0..*m {
                            let at = (i + k - 1) % r + 1;
                            u.push(qs(id, at));
                            let x = Finite::new(id.clone(), Cell::new(at, m - k));
                            want.insert(RegPoint::Finite(x), alpha.alpha(&qs(id, at)));
                        }
                    }
                }
                let got = reg
                    .quotient_decomposition(&QuasiSimpleSet::new(u, false), &alpha)
                    .map_err(|e| e.to_string())?;
                ensure!(got.summands == want, "{choice:?}: {:?}", got.summands);
                n += 1;
            }
        }
    }
    Ok(format!("{n} sets"))
}

fn c11_ray2() -> Outcome {
    let reg = one_tube(3);
    let a = reg.tube_id("a").unwrap();
    let f = ResolvingFilter::from_value(&json!({"a": {"rays": [1], "region": []}})).unwrap();
    let (y, l) = reg.pair_from_resolving(&f).map_err(|e| e.to_string())?;
    let d = reg
        .descriptor_from_pair(&y, &l)
        .map_err(|e| e.to_string())?;
    let finite: BTreeSet<String> = d.torsion().finite.iter().map(|x| x.to_string()).collect();
    ensure!(
        finite == BTreeSet::from(["a:1[1]".into(), "a:1[2]".into()]),
        "finite {finite:?}"
    );
    ensure!(
        d.torsion().pruefer == BTreeSet::from([qs(&a, 1)]),
        "pruefer {:?}",
        d.torsion().pruefer
    );
    let clique = QuasiSimpleSet::new((1..=3).map(|i| qs(&a, i)), false);
    ensure!(
        *d.label() == TorsionFreeLabel::ProjGenOver(clique),
        "label {:?}",
        d.label()
    );
    Ok("{a:1[1], a:1[2], a:1[inf]} over clique:a".into())
}

fn c12_predicates() -> Outcome {
    let mut n = 0;
    for reg in sweep(3) {
        let descriptors = reg.enumerate_descriptors();
        for d in &descriptors {
            let p = d.predicates();
            ensure!(
                p.noetherian_over_endo == d.lambda().is_empty(),
                "{:?}",
                d.pair()
            );
            ensure!(
                p.sigma_pure_injective == (*d.lambda() == reg.full_lambda()),
                "{:?}",
                d.pair()
            );
        }
        // exceptional sets of the whole registry, tube by tube
        let mut zs: Vec<BTreeSet<Finite>> = vec![BTreeSet::new()];
        for (id, r) in reg.nonhomogeneous() {
            let here = brute_exceptional_sets(r);
            zs = zs
                .into_iter()
                .flat_map(|z| {
                    here.iter().map(move |s| {
                        let mut z = z.clone();
                        z.extend(s.iter().map(|c| Finite::new(id.clone(), *c)));
                        z
                    })
                })
                .collect();
        }
        let universe = all_qs(&reg);
        for z in &zs {
            let shifted: BTreeSet<QuasiSimpleRef> = z
                .iter()
                .flat_map(|x| {
                    let t = Tube::new(reg.rank(x.tube()).unwrap());
                    t.factors(t.tau_inv(x.cell()))
                        .map(|i| qs(x.tube(), i))
                        .collect::<Vec<_>>()
                })
                .collect();
            for delta in subsets(&universe) {
                let delta: BTreeSet<_> = delta.into_iter().collect();
                let brute = descriptors.iter().any(|d| {
                    z.is_subset(&d.torsion().finite) && delta.is_subset(&d.torsion().pruefer)
                });
                let criterion = delta.is_disjoint(&shifted);
                let got = reg
                    .summand_realizability(&delta, z)
                    .map_err(|e| e.to_string())?;
                ensure!(brute == criterion, "criterion vs search: {z:?} {delta:?}");
                ensure!(got.is_some() == brute, "realizability: {z:?} {delta:?}");
                if let Some((y, l)) = got {
                    let d = reg.descriptor_from_pair(&y, &l).unwrap();
                    ensure!(z.is_subset(&d.torsion().finite), "witness misses {z:?}");
                    ensure!(
                        delta.is_subset(&d.torsion().pruefer),
                        "witness misses {delta:?}"
                    );
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} (z, δ) queries"))
}

fn c13_branch_counts() -> Outcome {
    let reg = one_tube(5);
    let a = reg.tube_id("a").unwrap();
    let all = reg.enumerate_branch_modules();
    let mut counts = Vec::new();
    for m in 1..=4 {
        let expected = branch_count_recursive(m);
        for i in 1..=5 {
            let vertex = BTreeSet::from([Finite::new(a.clone(), Cell::new(i, m))]);
            let got = all.iter().filter(|y| reg.vertices(y) == vertex).count() as u64;
            ensure!(
                got == expected,
                "vertex {i}[{m}]: {got} vs oracle {expected}"
            );
        }
        counts.push(expected);
    }
    Ok(format!("counts {counts:?}"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 13] = [
        ("hom oracle equivalence", c1_hom_oracle),
        ("hom anchor", c2_anchor),
        ("AR symmetry", c3_ar_symmetry),
        ("per-tube summand bounds", c4_summand_bounds),
        ("addt oracle", c5_addt_oracle),
        ("round trip", c6_round_trip),
        ("Kronecker classification", c7_kronecker),
        ("cotilting rank identity", c8_cotilting_rank),
        ("localization bookkeeping", c9_localization),
        ("quotient decomposition", c10_quotient),
        ("ray example end-to-end", c11_ray2),
        ("predicates and realizability", c12_predicates),
        ("branch count oracle", c13_branch_counts),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match result {
            Ok(detail) => println!("PASS {:>2}. {name} ({detail}; {ms} ms)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}. {name}: {why}", k + 1);
            }
        }
    }
    println!(
        "{} of 13 criteria passed in {:.1} s",
        13 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
