//! Resolving subcategories as per-tube filters and the summands they determine.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::branch::{tube_factor_set, BranchModule};
use crate::error::{Error, Result};
use crate::registry::{LambdaSet, TubeId, TubeRegistry};
use crate::tube::{Cell, Finite, Tube};

/// JSON key standing for every unnamed homogeneous tube.
pub const REST_KEY: &str = "*";

/// The part of a resolving subcategory inside one tube.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TubeFilter {
    #[serde(default)]
    pub rays: BTreeSet<u32>,
    #[serde(default)]
    pub region: BTreeSet<Cell>,
}

impl TubeFilter {
    pub fn new(
        rays: impl IntoIterator<Item = u32>,
        region: impl IntoIterator<Item = Cell>,
    ) -> Self {
        TubeFilter {
            rays: rays.into_iter().collect(),
            region: region.into_iter().collect(),
        }
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.rays.contains(&c.index) || self.region.contains(&c)
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty() && self.region.is_empty()
    }

    /// Members of length at most `bound`.
    pub fn members(&self, bound: u32) -> Vec<Cell> {
        self.rays
            .iter()
            .flat_map(|&i| (1..=bound).map(move |l| Cell::new(i, l)))
            .chain(self.region.iter().copied())
            .collect()
    }

    /// Longest member on the ray of `index`, if that ray is not included.
    pub fn prefix(&self, index: u32) -> u32 {
        self.region
            .iter()
            .filter(|c| c.index == index)
            .map(|c| c.len)
            .max()
            .unwrap_or(0)
    }
}

/// The regular part `t′` of a resolving subcategory `add(p ∪ t′)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResolvingFilter {
    pub tubes: BTreeMap<TubeId, TubeFilter>,
    /// All unnamed homogeneous tubes belong to the filter.
    pub rest: bool,
}

impl ResolvingFilter {
    pub fn empty() -> Self {
        ResolvingFilter::default()
    }

    pub fn tube(&self, id: &TubeId) -> TubeFilter {
        self.tubes.get(id).cloned().unwrap_or_default()
    }

    pub fn with_tube(mut self, id: TubeId, f: TubeFilter) -> Self {
        if f.is_empty() {
            self.tubes.remove(&id);
        } else {
            self.tubes.insert(id, f);
        }
        self
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        for (id, f) in &self.tubes {
            m.insert(
                id.to_string(),
                serde_json::to_value(f).expect("filter serializes"),
            );
        }
        if self.rest {
            m.insert(
                REST_KEY.into(),
                serde_json::to_value(TubeFilter::new([1], [])).expect("filter serializes"),
            );
        }
        Value::Object(m)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("filter must be a JSON object".into()))?;
        let mut out = ResolvingFilter::empty();
        for (k, f) in obj {
            let f: TubeFilter = serde_json::from_value(f.clone())
                .map_err(|e| Error::Parse(format!("filter for `{k}`: {e}")))?;
            if k == REST_KEY {
                if !f.region.is_empty() || f.rays.iter().any(|&i| i != 1) {
                    return Err(Error::Parse("the rest entry takes only the ray 1".into()));
                }
                out.rest = !f.rays.is_empty();
            } else {
                out = out.with_tube(TubeId::new(k)?, f);
            }
        }
        Ok(out)
    }
}

/// A failing closure requirement.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureViolation {
    #[error("tube `{tube}`: {cell} breaks the normal form ({reason})")]
    NormalForm {
        tube: String,
        cell: String,
        reason: &'static str,
    },
    #[error("tube `{tube}`: {member} is present but its submodule {missing} is not")]
    Submodule {
        tube: String,
        member: Cell,
        missing: Cell,
    },
    #[error(
        "tube `{tube}`: an extension of {x} by {y} has the summand {missing} outside the filter"
    )]
    Extension {
        tube: String,
        x: Cell,
        y: Cell,
        missing: Cell,
    },
}

impl ClosureViolation {
    pub fn check_id(&self) -> &'static str {
        match self {
            ClosureViolation::NormalForm { .. } => "resolving.normal_form",
            ClosureViolation::Submodule { .. } => "resolving.submodule_closure",
            ClosureViolation::Extension { .. } => "resolving.extension_closure",
        }
    }
}

/// Closure failure in local coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TubeClosure {
    NormalForm(Cell, &'static str),
    Submodule(Cell, Cell),
    /// Extension `0 → y → E → x → 0` with a summand of `E` missing.
    Extension(Cell, Cell, Cell),
}

impl TubeClosure {
    fn named(self, tube: &TubeId) -> ClosureViolation {
        let tube = tube.to_string();
        match self {
            TubeClosure::NormalForm(c, reason) => ClosureViolation::NormalForm {
                tube,
                cell: c.to_string(),
                reason,
            },
            TubeClosure::Submodule(member, missing) => ClosureViolation::Submodule {
                tube,
                member,
                missing,
            },
            TubeClosure::Extension(x, y, missing) => ClosureViolation::Extension {
                tube,
                x,
                y,
                missing,
            },
        }
    }
}

/// Checks normal form, submodule closure and extension closure up to length 2·rank.
pub fn validate_tube(t: Tube, f: &TubeFilter) -> std::result::Result<(), TubeClosure> {
    let r = t.rank();
    if let Some(&i) = f.rays.iter().find(|&&i| i == 0 || i > r) {
        return Err(TubeClosure::NormalForm(
            Cell::new(i, 1),
            "ray index out of range",
        ));
    }
    for &c in &f.region {
        let reason = if c.index == 0 || c.index > r {
            Some("index out of range")
        } else if r == 1 {
            Some("homogeneous tubes hold whole rays only")
        } else if c.len >= 2 * r {
            Some("length not below twice the rank")
        } else if f.rays.contains(&c.index) {
            Some("lies on an included ray")
        } else {
            None
        };
        if let Some(reason) = reason {
            return Err(TubeClosure::NormalForm(c, reason));
        }
    }
    for &c in &f.region {
        if c.len > 1 {
            let sub = Cell::new(c.index, c.len - 1);
            if !f.contains(sub) {
                return Err(TubeClosure::Submodule(c, sub));
            }
        }
    }
    let members = f.members(2 * r);
    for &x in &members {
        for &y in &members {
            for e in t.middle_terms(x, y) {
                if let Some(&z) = e.iter().find(|&&z| !f.contains(z)) {
                    return Err(TubeClosure::Extension(x, y, z));
                }
            }
        }
    }
    Ok(())
}

/// Smallest valid filter containing `seeds` and the given rays.
pub fn closure_tube(t: Tube, seeds: &BTreeSet<Cell>, rays: &BTreeSet<u32>) -> TubeFilter {
    let r = t.rank();
    let mut f = TubeFilter {
        rays: rays.clone(),
        region: seeds.clone(),
    };
    loop {
        let mut grown: BTreeSet<Cell> = BTreeSet::new();
        for &c in &f.region {
            grown.extend((1..c.len).map(|l| Cell::new(c.index, l)));
        }
        let members = f.members(2 * r);
        for &x in &members {
            for &y in &members {
                for e in t.middle_terms(x, y) {
                    grown.extend(e);
                }
            }
        }
        let before = f.clone();
        for c in grown {
            if c.len >= r {
                f.rays.insert(c.index);
            } else if !f.contains(c) {
                f.region.insert(c);
            }
        }
        let rays = f.rays.clone();
        f.region.retain(|c| !rays.contains(&c.index) && c.len < r);
        if f == before {
            return f;
        }
    }
}

/// Summands of the tilting module inside one tube.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TubeProfile {
    pub finite: BTreeSet<Cell>,
    pub pruefer: BTreeSet<u32>,
    /// Adic modules belonging to the tilting class.
    pub adics: BTreeSet<u32>,
}

fn resolve_wing(t: Tube, f: &TubeFilter, a: i64, m: u32, out: &mut BTreeSet<Cell>) {
    if m == 0 {
        return;
    }
    out.insert(t.cell(a, m));
    match (1..m).find(|&i| f.contains(t.cell(a + i as i64, m - i))) {
        Some(i) => {
            resolve_wing(t, f, a + i as i64, m - i, out);
            resolve_wing(t, f, a, i - 1, out);
        }
        None => resolve_wing(t, f, a, m - 1, out),
    }
}

/// Closed-form summand profile of a valid tube filter.
pub fn addt_tube(t: Tube, f: &TubeFilter) -> TubeProfile {
    let r = t.rank();
    let all: BTreeSet<u32> = (1..=r).collect();
    let mut p = TubeProfile::default();
    if f.is_empty() {
        p.adics = all;
    } else if f.rays.len() as u32 == r {
        p.pruefer = all;
    } else if f.rays.is_empty() {
        let tops: BTreeSet<Cell> = (1..=r)
            .map(|i| Cell::new(i, f.prefix(i)))
            .filter(|c| c.len > 0)
            .collect();
        let vertices = crate::branch::tube_vertices(t, &tops);
        for v in &vertices {
            resolve_wing(t, f, v.index as i64, v.len, &mut p.finite);
        }
        let wing_qs = tube_factor_set(t, &vertices, false);
        p.adics = all
            .into_iter()
            .filter(|&i| !wing_qs.contains(&t.tau_inv_qs(i)))
            .collect();
    } else {
        for &a in &f.rays {
            let dist = (1..=r)
                .find(|&d| f.rays.contains(&t.wrap(a as i64 + d as i64)))
                .expect("a ray reaches itself after rank steps");
            if dist >= 2 {
                resolve_wing(t, f, a as i64, dist - 1, &mut p.finite);
            }
        }
        p.pruefer = f.rays.clone();
    }
    p
}

/// Summand profile of a resolving filter over the whole registry.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AddTProfile {
    pub tubes: BTreeMap<TubeId, TubeProfile>,
    /// Unnamed homogeneous tubes carry their Prüfer module (else their adic lies in the class).
    pub rest_pruefer: bool,
}

impl AddTProfile {
    pub fn finite_summands(&self) -> BTreeSet<Finite> {
        self.tubes
            .iter()
            .flat_map(|(id, p)| p.finite.iter().map(move |&c| Finite::new(id.clone(), c)))
            .collect()
    }
}

impl TubeRegistry {
    pub fn validate_filter(&self, f: &ResolvingFilter) -> Result<ResolvingFilter> {
        if f.rest && !self.has_rest() {
            return Err(Error::RestFlagMismatch);
        }
        let mut out = ResolvingFilter {
            tubes: BTreeMap::new(),
            rest: f.rest,
        };
        for (id, tf) in &f.tubes {
            let t = self.shape(id)?;
            validate_tube(t, tf).map_err(|c| Error::Closure(c.named(id)))?;
            out = out.with_tube(id.clone(), tf.clone());
        }
        Ok(out)
    }

    pub fn addt_from_filter(&self, f: &ResolvingFilter) -> Result<AddTProfile> {
        let f = self.validate_filter(f)?;
        Ok(AddTProfile {
            tubes: self
                .tubes()
                .map(|(id, r)| (id.clone(), addt_tube(Tube::new(r), &f.tube(id))))
                .collect(),
            rest_pruefer: f.rest,
        })
    }

    pub fn pair_from_resolving(&self, f: &ResolvingFilter) -> Result<(BranchModule, LambdaSet)> {
        let profile = self.addt_from_filter(f)?;
        let y = BranchModule::from_parts(profile.finite_summands());
        let lambda = LambdaSet {
            named: profile
                .tubes
                .iter()
                .filter(|(_, p)| !p.pruefer.is_empty())
                .map(|(id, _)| id.clone())
                .collect(),
            include_rest: profile.rest_pruefer,
        };
        Ok((y, lambda))
    }

    pub fn resolving_from_pair(&self, y: &BranchModule, l: &LambdaSet) -> Result<ResolvingFilter> {
        self.check_branch(y.summands()).map_err(Error::NotBranch)?;
        let l = self.validate_lambda(l)?;
        let mut out = ResolvingFilter {
            tubes: BTreeMap::new(),
            rest: l.include_rest,
        };
        for (id, r) in self.tubes() {
            let t = Tube::new(r);
            let seeds: BTreeSet<Cell> = y.cells_in(id).collect();
            let rays: BTreeSet<u32> = if l.contains(id) {
                let shifted = tube_factor_set(t, &seeds, true);
                (1..=r).filter(|i| !shifted.contains(i)).collect()
            } else {
                BTreeSet::new()
            };
            out = out.with_tube(id.clone(), closure_tube(t, &seeds, &rays));
        }
        Ok(out)
    }
}

impl fmt::Display for TubeFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rays {:?} region [", self.rays)?;
        for (k, c) in self.region.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}
