//! Brute-force re-derivations of the per-tube statements and the verification suite.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::branch::{check_tube, tube_branches, tube_factor_set, tube_vertices, BranchModule};
use crate::classify::{TiltingDescriptor, TorsionFreeLabel, TubeCase};
use crate::error::{Error, Result};
use crate::localize::{LocalizationTilting, LocalizedTube, QuasiSimpleSet};
use crate::registry::{LambdaSet, MultiplicityMap, TubeId, TubeRegistry};
use crate::resolving::{
    addt_tube, closure_tube, validate_tube, ResolvingFilter, TubeFilter, TubeProfile,
};
use crate::tube::{wrap, Cell, Finite, QuasiSimpleRef, RegPoint, Tube};
use crate::SCHEMA;

/// Largest rank the oracles accept.
pub const MAX_ORACLE_RANK: u32 = 6;

/// Brute-force searches over subsets of quasi-simples stop beyond this many.
const BRUTE_QS_LIMIT: u32 = 7;

fn tau_cell(r: u32, c: Cell) -> Cell {
    Cell::new(wrap(r, c.index as i64 - 1), c.len)
}

fn factor_list(r: u32, c: Cell) -> Vec<u32> {
    (0..c.len).map(|k| wrap(r, (c.index + k) as i64)).collect()
}

/// Counts pairs (quotient of x, submodule of y) that coincide.
pub fn brute_hom_cells(r: u32, x: Cell, y: Cell) -> u32 {
    let xf = factor_list(r, x);
    let yf = factor_list(r, y);
    let quotients = (0..xf.len()).map(|s| &xf[s..]);
    quotients
        .map(|q| (1..=yf.len()).filter(|&k| yf[..k] == *q).count() as u32)
        .sum()
}

fn brute_ext_cells(r: u32, x: Cell, y: Cell) -> u32 {
    brute_hom_cells(r, y, tau_cell(r, x))
}

/// Whether some submodule of `y` has regular top `s`.
fn brute_adic_maps(r: u32, s: u32, y: Cell) -> bool {
    let yf = factor_list(r, y);
    (1..=yf.len()).any(|k| yf[k - 1] == s)
}

pub fn brute_hom(reg: &TubeRegistry, x: &Finite, y: &Finite) -> Result<u32> {
    let x = reg.normalize_finite(x)?;
    let y = reg.normalize_finite(y)?;
    for p in [&x, &y] {
        let r = reg.rank(p.tube())?;
        if p.len() > 3 * r {
            return Err(Error::OracleLength {
                len: p.len(),
                max: 3 * r,
            });
        }
    }
    if x.tube() != y.tube() {
        return Ok(0);
    }
    Ok(brute_hom_cells(reg.rank(x.tube())?, x.cell(), y.cell()))
}

/// Definition-level Add T ∩ t_λ for a tube filter.
pub fn brute_addt_tube(r: u32, f: &TubeFilter) -> Result<TubeProfile> {
    if r > MAX_ORACLE_RANK {
        return Err(Error::RankBound {
            rank: r,
            max: MAX_ORACLE_RANK,
        });
    }
    let members: Vec<Cell> = f.members(2 * r);
    let finite = (1..=r)
        .flat_map(|i| (1..r).map(move |l| Cell::new(i, l)))
        .filter(|&x| f.contains(x))
        .filter(|&x| members.iter().all(|&a| brute_ext_cells(r, a, x) == 0))
        .collect();
    let adics = (1..=r)
        .filter(|&s| {
            members
                .iter()
                .all(|&a| !brute_adic_maps(r, s, tau_cell(r, a)))
        })
        .collect();
    Ok(TubeProfile {
        finite,
        pruefer: f.rays.clone(),
        adics,
    })
}

pub fn brute_addt(reg: &TubeRegistry, f: &ResolvingFilter, tube: &TubeId) -> Result<TubeProfile> {
    let f = reg.validate_filter(f)?;
    brute_addt_tube(reg.rank(tube)?, &f.tube(tube))
}

/// Multiplicity-free exceptional subsets of one tube, by backtracking.
pub fn brute_exceptional_sets(r: u32) -> Vec<BTreeSet<Cell>> {
    let cells: Vec<Cell> = (1..=r)
        .flat_map(|i| (1..=r).map(move |l| Cell::new(i, l)))
        .filter(|&c| brute_ext_cells(r, c, c) == 0)
        .collect();
    fn go(r: u32, cells: &[Cell], k: usize, chosen: &mut Vec<Cell>, out: &mut Vec<BTreeSet<Cell>>) {
        if k == cells.len() {
            out.push(chosen.iter().copied().collect());
            return;
        }
        go(r, cells, k + 1, chosen, out);
        let c = cells[k];
        if chosen
            .iter()
            .all(|&d| brute_ext_cells(r, c, d) == 0 && brute_ext_cells(r, d, c) == 0)
        {
            chosen.push(c);
            go(r, cells, k + 1, chosen, out);
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    go(r, &cells, 0, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn brute_wing(r: u32, v: Cell) -> BTreeSet<Cell> {
    (1..=v.len)
        .flat_map(|j| {
            (1..=v.len - j + 1).map(move |k| Cell::new(wrap(r, (v.index + j - 1) as i64), k))
        })
        .collect()
}

/// Exceptional subsets satisfying condition (B).
pub fn brute_tube_branches(r: u32) -> Vec<BTreeSet<Cell>> {
    brute_exceptional_sets(r)
        .into_iter()
        .filter(|s| {
            s.iter().all(|&v| {
                let w = brute_wing(r, v);
                s.iter().filter(|c| w.contains(c)).count() as u32 == v.len
            })
        })
        .collect()
}

/// Branch sets with a fixed vertex of size m, counted by the case split of the wing recursion.
pub fn branch_count_recursive(m: u32) -> u64 {
    let mut c = vec![1u64];
    for n in 1..=m as usize {
        c.push((1..=n).map(|i| c[i - 1] * c[n - i]).sum());
    }
    c[m as usize]
}

/// Submodule-closed candidate filters: each ray is absent, a prefix shorter than 2·rank, or whole.
pub fn filter_candidates(r: u32) -> Vec<TubeFilter> {
    let mut acc = vec![TubeFilter::default()];
    for i in 1..=r {
        let mut next = Vec::new();
        for f in &acc {
            let mut with_ray = f.clone();
            with_ray.rays.insert(i);
            next.push(with_ray);
            for p in 0..2 * r {
                let mut g = f.clone();
                g.region.extend((1..=p).map(|l| Cell::new(i, l)));
                next.push(g);
            }
        }
        acc = next;
    }
    acc
}

/// Valid tube filters found by exhaustive validation of all candidates.
pub fn brute_valid_filters(r: u32) -> Vec<TubeFilter> {
    let t = Tube::new(r);
    filter_candidates(r)
        .into_iter()
        .filter(|f| validate_tube(t, f).is_ok())
        .collect()
}

/// Source of Hom dimensions checked by the suite.
pub trait HomSource {
    fn hom(&self, t: Tube, x: Cell, y: Cell) -> u32;
}

/// The library closed form.
pub struct ClosedForm;

impl HomSource for ClosedForm {
    fn hom(&self, t: Tube, x: Cell, y: Cell) -> u32 {
        t.hom(x, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyBounds {
    pub rank_max: u32,
}

impl Default for VerifyBounds {
    fn default() -> Self {
        VerifyBounds { rank_max: 4 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub id: String,
    pub params: Value,
    pub instances: u64,
    pub failures: u64,
    pub witness: Option<String>,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub checks: Vec<CheckRecord>,
}

impl OracleReport {
    pub fn instances(&self) -> u64 {
        self.checks.iter().map(|c| c.instances).sum()
    }

    pub fn failures(&self) -> u64 {
        self.checks.iter().map(|c| c.failures).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    /// Instances of checks whose id starts with `prefix`.
    pub fn instances_of(&self, prefix: &str) -> u64 {
        self.checks
            .iter()
            .filter(|c| c.id.starts_with(prefix))
            .map(|c| c.instances)
            .sum()
    }

    pub fn failing(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// One JSON document per check, then a totals line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let line = json!({
                "schema": SCHEMA,
                "check": c.id,
                "params": c.params,
                "instances": c.instances,
                "failures": c.failures,
                "pass": c.passed(),
                "witness": c.witness,
            });
            out.push_str(&line.to_string());
            out.push('\n');
        }
        let totals = json!({
            "schema": SCHEMA,
            "totals": {
                "checks": self.checks.len(),
                "instances": self.instances(),
                "failures": self.failures(),
                "pass": self.passed(),
            }
        });
        out.push_str(&totals.to_string());
        out.push('\n');
        out
    }
}

#[derive(Default)]
struct Recorder {
    report: OracleReport,
    index: BTreeMap<String, usize>,
}

impl Recorder {
    fn check(&mut self, id: &str, params: Value, ok: bool, witness: impl FnOnce() -> String) {
        let key = format!("{id}{params}");
        let k = *self.index.entry(key).or_insert_with(|| {
            self.report.checks.push(CheckRecord {
                id: id.to_string(),
                params,
                instances: 0,
                failures: 0,
                witness: None,
            });
            self.report.checks.len() - 1
        });
        let rec = &mut self.report.checks[k];
        rec.instances += 1;
        if !ok {
            rec.failures += 1;
            if rec.witness.is_none() {
                rec.witness = Some(witness());
            }
        }
    }
}

pub fn verify_suite(reg: &TubeRegistry, bounds: VerifyBounds) -> Result<OracleReport> {
    verify_suite_with(reg, bounds, &ClosedForm)
}

/// Runs every check with Hom dimensions taken from `hom`.
pub fn verify_suite_with(
    reg: &TubeRegistry,
    bounds: VerifyBounds,
    hom: &dyn HomSource,
) -> Result<OracleReport> {
    if bounds.rank_max > MAX_ORACLE_RANK || bounds.rank_max == 0 {
        return Err(Error::RankBound {
            rank: bounds.rank_max,
            max: MAX_ORACLE_RANK,
        });
    }
    if let Some((_, r)) = reg.tubes().find(|(_, r)| *r > bounds.rank_max) {
        return Err(Error::RankBound {
            rank: r,
            max: bounds.rank_max,
        });
    }
    let mut rec = Recorder::default();
    for r in 1..=bounds.rank_max {
        tube_checks(&mut rec, r, hom);
        resolving_checks(&mut rec, r);
        if r >= 2 {
            branch_checks(&mut rec, r);
        }
    }
    registry_checks(&mut rec, reg)?;
    Ok(rec.report)
}

fn tube_checks(rec: &mut Recorder, r: u32, hom: &dyn HomSource) {
    let t = Tube::new(r);
    let p = json!({ "rank": r });
    let cells: Vec<Cell> = t.cells(3 * r).collect();
    for &x in &cells {
        for &y in &cells {
            let (h, b) = (hom.hom(t, x, y), brute_hom_cells(r, x, y));
            rec.check("tube.hom_oracle", p.clone(), h == b, || {
                format!("hom({x}, {y}) = {h}, brute force gives {b}")
            });
            let e = t.ext(x, y);
            let via = hom.hom(t, y, t.tau(x));
            let brute = brute_hom_cells(r, y, tau_cell(r, x));
            rec.check(
                "tube.ar_symmetry",
                p.clone(),
                e == via && via == brute,
                || format!("ext({x}, {y}) = {e}, hom(y, τx) = {via}, brute force gives {brute}"),
            );
            let middles = t.middle_terms(x, y);
            let ok = middles.len() as u32 == e
                && middles.iter().all(|m| {
                    let mut fs: Vec<u32> = m.iter().flat_map(|&c| factor_list(r, c)).collect();
                    let mut want: Vec<u32> = factor_list(r, x)
                        .into_iter()
                        .chain(factor_list(r, y))
                        .collect();
                    fs.sort();
                    want.sort();
                    fs == want
                });
            rec.check("tube.extension_basis", p.clone(), ok, || {
                format!("extensions of {x} by {y}: {middles:?} against ext = {e}")
            });
        }
        let back = t.tau_inv(t.tau(x));
        let fs = factor_list(r, x);
        let ok = back == x
            && fs.len() as u32 == x.len
            && fs[0] == x.index
            && *fs.last().expect("non-empty") == t.top(x)
            && t.factors(x).collect::<Vec<_>>() == fs;
        rec.check("tube.coordinates", p.clone(), ok, || format!("{x}"));
    }
    for i in 1..=r {
        for n in 1..=3 * r {
            let d = hom.hom(t, Cell::new(i, 1), Cell::new(i, n));
            rec.check("tube.hom_anchor", p.clone(), d == 1, || {
                format!("hom(U_{i}, U_{i}[{n}]) = {d}")
            });
        }
    }
    for x in t.cells(r - 1) {
        for i in 1..=r {
            for n in x.len..=2 * r {
                let a = t.ext(Cell::new(i, n), x);
                let b = t.ext(Cell::new(i, n + r), x);
                rec.check("tube.ext_periodicity", p.clone(), a == b, || {
                    format!(
                        "ext(U_{i}[{n}], {x}) = {a} but ext(U_{i}[{}], {x}) = {b}",
                        n + r
                    )
                });
            }
        }
    }
}

fn branch_checks(rec: &mut Recorder, r: u32) {
    let t = Tube::new(r);
    let p = json!({ "rank": r });
    let lib = tube_branches(t);
    let brute = brute_tube_branches(r);
    rec.check("branch.enumeration", p.clone(), lib == brute, || {
        format!(
            "{} enumerated against {} by brute force",
            lib.len(),
            brute.len()
        )
    });
    for b in &lib {
        let vs = tube_vertices(t, b);
        let qs = tube_factor_set(t, b, false);
        let disjoint = vs.iter().all(|&v| {
            vs.iter().all(|&w| {
                v == w
                    || tube_factor_set(t, &[v].into(), false).is_disjoint(&tube_factor_set(
                        t,
                        &[w].into(),
                        false,
                    ))
            })
        });
        let ok =
            check_tube(t, b).is_ok() && b.len() == qs.len() && (qs.len() as u32) < r && disjoint;
        rec.check("branch.shape", p.clone(), ok, || format!("{b:?}"));
    }
    for m in 1..r {
        let v = Cell::new(1, m);
        let count = lib
            .iter()
            .filter(|b| tube_vertices(t, b) == BTreeSet::from([v]))
            .count() as u64;
        let want = branch_count_recursive(m);
        rec.check(
            "branch.vertex_count",
            json!({ "rank": r, "m": m }),
            count == want,
            || format!("{count} branch sets with vertex {v}, recursion gives {want}"),
        );
    }
}

fn resolving_checks(rec: &mut Recorder, r: u32) {
    let t = Tube::new(r);
    let p = json!({ "rank": r });
    let valid = brute_valid_filters(r);
    let from_pairs: BTreeSet<TubeFilter> = if r == 1 {
        [TubeFilter::default(), TubeFilter::new([1], [])].into()
    } else {
        tube_branches(t)
            .iter()
            .flat_map(|b| {
                let shifted = tube_factor_set(t, b, true);
                let rays: BTreeSet<u32> = (1..=r).filter(|i| !shifted.contains(i)).collect();
                [
                    closure_tube(t, b, &BTreeSet::new()),
                    closure_tube(t, b, &rays),
                ]
            })
            .collect()
    };
    let valid_set: BTreeSet<TubeFilter> = valid.iter().cloned().collect();
    rec.check(
        "resolving.bijection",
        p.clone(),
        valid_set == from_pairs,
        || {
            format!(
                "{} valid filters, {} from pairs",
                valid_set.len(),
                from_pairs.len()
            )
        },
    );
    for f in &valid {
        let lib = addt_tube(t, f);
        let brute = brute_addt_tube(r, f).expect("rank within oracle bound");
        rec.check("resolving.addt_oracle", p.clone(), lib == brute, || {
            format!("filter {f}: closed form {lib:?}, brute force {brute:?}")
        });
        let vs = tube_vertices(t, &lib.finite);
        let wing_qs = tube_factor_set(t, &vs, false);
        let mut ok = (lib.finite.len() as u32) < r.max(2)
            && wing_qs.len() == lib.finite.len()
            && (wing_qs.len() as u32) < r.max(2);
        if r >= 2 {
            ok &= check_tube(t, &lib.finite).is_ok();
        }
        if !f.rays.is_empty() {
            ok &= (lib.finite.len() + lib.pruefer.len()) as u32 == r && lib.adics.is_empty();
        } else if !f.is_empty() {
            ok &= lib.adics.len() + wing_qs.len() == r as usize;
        }
        rec.check("resolving.summand_bounds", p.clone(), ok, || {
            format!("filter {f}: {lib:?}")
        });
    }
}

fn pair_label(y: &BranchModule, l: &LambdaSet) -> String {
    format!("Y = {y:?}, Λ = {:?} rest {}", l.named, l.include_rest)
}

fn registry_checks(rec: &mut Recorder, reg: &TubeRegistry) -> Result<()> {
    let p = json!({ "registry": crate::registry::Config::new(reg.clone()).to_value() });
    // Candidate filters of one tube at a time, the others empty.
    for (id, r) in reg.tubes() {
        let valid: BTreeSet<TubeFilter> = brute_valid_filters(r).into_iter().collect();
        let rests: &[bool] = if reg.has_rest() {
            &[false, true]
        } else {
            &[false]
        };
        for f in filter_candidates(r) {
            for &rest in rests {
                let rf = ResolvingFilter::empty().with_tube(id.clone(), f.clone());
                let rf = ResolvingFilter { rest, ..rf };
                let ok = reg.validate_filter(&rf).is_ok() == valid.contains(&f);
                rec.check("resolving.filter_instances", p.clone(), ok, || {
                    format!("{id}: {f}")
                });
            }
        }
    }
    let descriptors = reg.enumerate_descriptors();
    let branches = reg.enumerate_branch_modules();
    let lambdas = reg.all_lambdas();
    rec.check(
        "classify.class_count",
        p.clone(),
        descriptors.len() == branches.len() * lambdas.len(),
        || format!("{} descriptors", descriptors.len()),
    );
    let distinct: BTreeSet<String> = descriptors
        .iter()
        .map(|d| d.to_json().to_string())
        .collect();
    rec.check(
        "classify.injective",
        p.clone(),
        distinct.len() == descriptors.len(),
        || format!("{} distinct of {}", distinct.len(), descriptors.len()),
    );
    let full = reg.full_lambda();
    for d in &descriptors {
        let (y, l) = d.pair();
        let f = reg.resolving_from_pair(y, l)?;
        let back = reg.pair_from_resolving(&f)?;
        rec.check(
            "resolving.roundtrip",
            p.clone(),
            back == (y.clone(), l.clone()),
            || {
                format!(
                    "{} came back as {}",
                    pair_label(y, l),
                    pair_label(&back.0, &back.1)
                )
            },
        );
        let profile = reg.addt_from_filter(&f)?;
        let pruefer: BTreeSet<QuasiSimpleRef> = profile
            .tubes
            .iter()
            .flat_map(|(id, p)| {
                p.pruefer
                    .iter()
                    .map(move |&i| QuasiSimpleRef::new(id.clone(), i))
            })
            .collect();
        let ok = d.torsion().finite == profile.finite_summands()
            && d.torsion().pruefer == pruefer
            && d.torsion().rest_pruefer == profile.rest_pruefer;
        rec.check("classify.torsion_matches_filter", p.clone(), ok, || {
            pair_label(y, l)
        });
        let lukas = matches!(d.label(), TorsionFreeLabel::LukasOver(_));
        let r_ok = reg
            .tubes()
            .all(|(id, _)| d.r_set().in_tube(id).is_empty() != l.contains(id));
        rec.check(
            "classify.label",
            p.clone(),
            lukas == l.is_empty() && r_ok,
            || pair_label(y, l),
        );
        let dec = d.decompose()?;
        let ok = dec.tubes.iter().all(|t| match t.case {
            TubeCase::Rays => t.classes() as u32 == t.rank,
            TubeCase::Finite => {
                (t.classes() as u32) < t.rank
                    && t.profile.adics.len() + t.profile.finite.len() == t.rank as usize
            }
            TubeCase::Empty => t.classes() == 0 && t.profile.adics.len() as u32 == t.rank,
        });
        rec.check("classify.structure", p.clone(), ok, || pair_label(y, l));
        let dual = d.cotilting_dual();
        let ok = dual.has_generic
            && reg
                .tubes()
                .all(|(id, r)| dual.tubes[id].classes() as u32 == r);
        rec.check("classify.cotilting_rank", p.clone(), ok, || {
            pair_label(y, l)
        });
        let pr = d.predicates();
        let mut ok =
            pr.noetherian_over_endo == l.is_empty() && pr.sigma_pure_injective == (*l == full);
        if let Some(u) = &pr.localization_form {
            ok &= matches!(reg.localization_tilting(u)?, LocalizationTilting::Large(e) if e.equivalent(d)?);
        }
        ok &= !(l.is_empty() && pr.localization_form.is_some());
        rec.check("classify.predicates", p.clone(), ok, || pair_label(y, l));
    }
    let total_qs: u32 = reg.tubes().map(|(_, r)| r).sum();
    if total_qs <= BRUTE_QS_LIMIT {
        localization_form_brute(rec, reg, &p, &descriptors)?;
        realizability_brute(rec, reg, &p, &descriptors)?;
    }
    localize_checks(rec, reg, &p)?;
    Ok(())
}

fn all_qs(reg: &TubeRegistry) -> Vec<QuasiSimpleRef> {
    reg.tubes()
        .flat_map(|(id, r)| (1..=r).map(move |i| QuasiSimpleRef::new(id.clone(), i)))
        .collect()
}

fn subsets<T: Clone>(items: &[T]) -> impl Iterator<Item = Vec<T>> + '_ {
    (0u64..1 << items.len()).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, x)| x.clone())
            .collect()
    })
}

fn rest_options(reg: &TubeRegistry) -> &'static [bool] {
    if reg.has_rest() {
        &[false, true]
    } else {
        &[false]
    }
}

fn localization_form_brute(
    rec: &mut Recorder,
    reg: &TubeRegistry,
    p: &Value,
    descriptors: &[TiltingDescriptor],
) -> Result<()> {
    let qs = all_qs(reg);
    let mut realized: Vec<TiltingDescriptor> = Vec::new();
    for members in subsets(&qs) {
        for &rest in rest_options(reg) {
            if let LocalizationTilting::Large(d) =
                reg.localization_tilting(&QuasiSimpleSet::new(members.clone(), rest))?
            {
                realized.push(*d);
            }
        }
    }
    for d in descriptors {
        let brute = realized.iter().any(|e| e.equivalent(d).unwrap_or(false));
        let lib = d.predicates().localization_form.is_some();
        rec.check(
            "classify.localization_form",
            p.clone(),
            brute == lib,
            || {
                format!(
                    "{}: search {lib}, brute force {brute}",
                    pair_label(d.branch(), d.lambda())
                )
            },
        );
    }
    Ok(())
}

fn realizability_brute(
    rec: &mut Recorder,
    reg: &TubeRegistry,
    p: &Value,
    descriptors: &[TiltingDescriptor],
) -> Result<()> {
    let mut zs: Vec<BTreeSet<Finite>> = vec![BTreeSet::new()];
    for (id, r) in reg.nonhomogeneous() {
        let sets = brute_exceptional_sets(r);
        zs = zs
            .iter()
            .flat_map(|z| {
                sets.iter().map(move |s| {
                    let mut z = z.clone();
                    z.extend(s.iter().map(|&c| Finite::new(id.clone(), c)));
                    z
                })
            })
            .collect();
    }
    let qs = all_qs(reg);
    for z in &zs {
        for delta in subsets(&qs) {
            let delta: BTreeSet<QuasiSimpleRef> = delta.into_iter().collect();
            let brute = descriptors
                .iter()
                .any(|d| z.is_subset(&d.torsion().finite) && delta.is_subset(&d.torsion().pruefer));
            let lib = reg.summand_realizability(&delta, z)?;
            let witness_ok = match &lib {
                Some((y, l)) => {
                    let d = reg.descriptor_from_pair(y, l)?;
                    z.is_subset(&d.torsion().finite) && delta.is_subset(&d.torsion().pruefer)
                }
                None => true,
            };
            rec.check(
                "classify.realizability",
                p.clone(),
                brute == lib.is_some() && witness_ok,
                || {
                    format!(
                        "Δ = {delta:?}, Z = {z:?}: brute force {brute}, criterion {}",
                        lib.is_some()
                    )
                },
            );
        }
    }
    Ok(())
}

/// Quotient decomposition straight from the segment/clique formula.
fn quotient_formula(
    reg: &TubeRegistry,
    u: &QuasiSimpleSet,
    alpha: &MultiplicityMap,
) -> BTreeMap<RegPoint, u32> {
    let mut out = BTreeMap::new();
    for (id, r) in reg.tubes() {
        let inside = u.in_tube(id);
        if inside.len() as u32 == r {
            for i in 1..=r {
                let q = QuasiSimpleRef::new(id.clone(), i);
                out.insert(RegPoint::Pruefer(q.clone()), alpha.alpha(&q));
            }
            continue;
        }
        for &i in &inside {
            if inside.contains(&wrap(r, i as i64 - 1)) {
                continue;
            }
            let m = (0..r)
                .take_while(|k| inside.contains(&wrap(r, (i + k) as i64)))
                .count() as u32;
            for k in 0..m {
                let s = wrap(r, (i + k) as i64);
                let q = QuasiSimpleRef::new(id.clone(), s);
                out.insert(
                    RegPoint::Finite(Finite::new(id.clone(), Cell::new(s, m - k))),
                    alpha.alpha(&q),
                );
            }
        }
    }
    out
}

fn localize_checks(rec: &mut Recorder, reg: &TubeRegistry, p: &Value) -> Result<()> {
    let qs = all_qs(reg);
    if qs.len() > 10 {
        return Ok(());
    }
    let mixed = MultiplicityMap::new(qs.iter().map(|q| (q.clone(), q.index())).collect(), 3)?;
    let plain = MultiplicityMap::default();
    for members in subsets(&qs) {
        for &rest in rest_options(reg) {
            let u = QuasiSimpleSet::new(members.clone(), rest);
            let loc = reg.localize_registry(&u)?;
            let clique_free = !u.has_full_clique(reg);
            let mut ok = loc.order_flag() == !clique_free;
            for t in loc.tubes() {
                let r = reg.rank(t.id())?;
                let inside = u.in_tube(t.id());
                match t {
                    LocalizedTube::Removed { .. } => ok &= inside.len() as u32 == r,
                    LocalizedTube::Kept { survivors, .. } => {
                        ok &= survivors.len() as u32 == r - inside.len() as u32;
                        // Tensor images tile the mouth and the next survivor follows each image.
                        let mut total = 0;
                        for (k, &s) in survivors.iter().enumerate() {
                            let next = survivors[(k + 1) % survivors.len()];
                            match reg.tensor_qs(&QuasiSimpleRef::new(t.id().clone(), s), &u)? {
                                crate::localize::TensorImage::Module(m) => {
                                    total += m.len();
                                    ok &= wrap(r, (s + m.len()) as i64) == next;
                                }
                                crate::localize::TensorImage::Zero => ok = false,
                            }
                        }
                        ok &= total == r;
                    }
                }
            }
            if clique_free {
                let old: u32 = reg.tubes().map(|(_, r)| r).sum();
                let new: u32 = loc.tubes().iter().filter_map(LocalizedTube::new_rank).sum();
                ok &= new + u.members().len() as u32 == old;
            }
            rec.check("localize.bookkeeping", p.clone(), ok, || {
                format!("{:?}", u.to_keys(reg))
            });
            for alpha in [&plain, &mixed] {
                let q = reg.quotient_decomposition(&u, alpha)?;
                let want = quotient_formula(reg, &u, alpha);
                let generic_ok = q.generic
                    == (u == QuasiSimpleSet::everything(reg)).then_some(alpha.alpha_generic());
                rec.check(
                    "localize.quotient",
                    p.clone(),
                    q.summands == want && generic_ok && q.rest_pruefer == rest,
                    || format!("{:?}: {:?} against {:?}", u.to_keys(reg), q.summands, want),
                );
            }
            let lt = reg.localization_tilting(&u)?;
            let ok = match &lt {
                LocalizationTilting::FiniteDimensional => clique_free,
                LocalizationTilting::Large(d) => {
                    !clique_free
                        && reg
                            .tubes()
                            .all(|(id, _)| d.lambda().contains(id) == u.full_clique(reg, id))
                        && d.lambda().include_rest == rest
                }
            };
            rec.check("localize.tilting", p.clone(), ok, || {
                format!("{:?}", u.to_keys(reg))
            });
        }
    }
    // Composition over every ordered split into disjoint u and v.
    let n = qs.len() as u32;
    for code in 0..3u64.pow(n) {
        let (mut u, mut v) = (Vec::new(), Vec::new());
        let mut c = code;
        for q in &qs {
            match c % 3 {
                1 => u.push(q.clone()),
                2 => v.push(q.clone()),
                _ => {}
            }
            c /= 3;
        }
        for &(ru, rv) in if reg.has_rest() {
            &[(false, false), (true, false), (false, true)][..]
        } else {
            &[(false, false)][..]
        } {
            let u = QuasiSimpleSet::new(u.clone(), ru);
            let v = QuasiSimpleSet::new(v.clone(), rv);
            let first = reg.localize_registry(&u)?;
            let image = QuasiSimpleSet::new(v.members().iter().filter_map(|q| first.image(q)), rv);
            let second = first.registry().localize_registry(&image)?;
            let direct = reg.localize_registry(&u.union(&v))?;
            let composed = first.then(&second);
            rec.check(
                "localize.composition",
                p.clone(),
                composed == direct,
                || format!("u = {:?}, v = {:?}", u.to_keys(reg), v.to_keys(reg)),
            );
        }
    }
    Ok(())
}
