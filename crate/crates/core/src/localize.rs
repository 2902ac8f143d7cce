//! Universal localization at sets of quasi-simples.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::branch::runs;
use crate::classify::TiltingDescriptor;
use crate::error::{Error, Result};
use crate::registry::{LambdaSet, MultiplicityMap, TubeId, TubeRegistry};
use crate::tube::{Cell, Finite, QuasiSimpleRef, RegPoint, Tube};

/// Prefix of the JSON shorthand for a whole clique.
pub const CLIQUE_PREFIX: &str = "clique:";
/// Clique key of the unnamed homogeneous rest.
pub const REST_CLIQUE: &str = "clique:*";

/// A set of quasi-simples, possibly containing every unnamed homogeneous one.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuasiSimpleSet {
    members: BTreeSet<QuasiSimpleRef>,
    rest: bool,
}

impl QuasiSimpleSet {
    pub fn new(members: impl IntoIterator<Item = QuasiSimpleRef>, rest: bool) -> Self {
        QuasiSimpleSet {
            members: members.into_iter().collect(),
            rest,
        }
    }

    pub fn empty() -> Self {
        QuasiSimpleSet::default()
    }

    /// 𝕌: every quasi-simple of the family.
    pub fn everything(reg: &TubeRegistry) -> Self {
        let members = reg
            .tubes()
            .flat_map(|(id, r)| (1..=r).map(move |i| QuasiSimpleRef::new(id.clone(), i)))
            .collect();
        QuasiSimpleSet {
            members,
            rest: reg.has_rest(),
        }
    }

    pub fn members(&self) -> &BTreeSet<QuasiSimpleRef> {
        &self.members
    }

    pub fn includes_rest(&self) -> bool {
        self.rest
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty() && !self.rest
    }

    pub fn contains(&self, q: &QuasiSimpleRef) -> bool {
        self.members.contains(q)
    }

    pub fn union(&self, other: &QuasiSimpleSet) -> QuasiSimpleSet {
        QuasiSimpleSet {
            members: self.members.union(&other.members).cloned().collect(),
            rest: self.rest || other.rest,
        }
    }

    pub fn is_disjoint(&self, other: &QuasiSimpleSet) -> bool {
        self.members.is_disjoint(&other.members) && !(self.rest && other.rest)
    }

    /// Indices of the members lying in `tube`.
    pub fn in_tube(&self, tube: &TubeId) -> BTreeSet<u32> {
        self.members
            .iter()
            .filter(|q| q.tube() == tube)
            .map(QuasiSimpleRef::index)
            .collect()
    }

    pub fn full_clique(&self, reg: &TubeRegistry, tube: &TubeId) -> bool {
        reg.rank(tube)
            .map(|r| self.in_tube(tube).len() as u32 == r)
            .unwrap_or(false)
    }

    pub fn has_full_clique(&self, reg: &TubeRegistry) -> bool {
        self.rest || reg.tubes().any(|(id, _)| self.full_clique(reg, id))
    }

    pub fn from_keys(reg: &TubeRegistry, keys: &[String]) -> Result<Self> {
        let mut out = QuasiSimpleSet::empty();
        for k in keys {
            if k == REST_CLIQUE {
                if !reg.has_rest() {
                    return Err(Error::RestFlagMismatch);
                }
                out.rest = true;
            } else if let Some(t) = k.strip_prefix(CLIQUE_PREFIX) {
                let id = reg.tube_id(t)?;
                out.members.extend(reg.quasi_simples(&id)?);
            } else {
                out.members.insert(reg.normalize_qs(&k.parse()?)?);
            }
        }
        Ok(out)
    }

    /// Keys with full cliques abbreviated.
    pub fn to_keys(&self, reg: &TubeRegistry) -> Vec<String> {
        let mut keys = Vec::new();
        let tubes: BTreeSet<&TubeId> = self.members.iter().map(QuasiSimpleRef::tube).collect();
        for id in tubes {
            if self.full_clique(reg, id) {
                keys.push(format!("{CLIQUE_PREFIX}{id}"));
            } else {
                keys.extend(self.in_tube(id).iter().map(|i| format!("{id}:{i}")));
            }
        }
        if self.rest {
            keys.push(REST_CLIQUE.to_string());
        }
        keys
    }
}

/// `s ⊗ R_𝒴` as a module over R.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TensorImage {
    Zero,
    Module(Finite),
}

impl TubeRegistry {
    pub fn tensor_qs(&self, s: &QuasiSimpleRef, y: &QuasiSimpleSet) -> Result<TensorImage> {
        let s = self.normalize_qs(s)?;
        if y.contains(&s) {
            return Ok(TensorImage::Zero);
        }
        let t = self.shape(s.tube())?;
        let inside = y.in_tube(s.tube());
        let extra = (1..t.rank())
            .take_while(|k| inside.contains(&t.wrap(s.index() as i64 + *k as i64)))
            .count() as u32;
        Ok(TensorImage::Module(Finite::new(
            s.tube().clone(),
            Cell::new(s.index(), extra + 1),
        )))
    }
}

/// Fate of one tube under localization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalizedTube {
    /// A complete clique was inverted.
    Removed { id: TubeId, old_rank: u32 },
    /// Survivors listed in the new τ⁻-order; new index k+1 is `survivors[k]`.
    Kept {
        id: TubeId,
        old_rank: u32,
        survivors: Vec<u32>,
    },
}

impl LocalizedTube {
    pub fn id(&self) -> &TubeId {
        match self {
            LocalizedTube::Removed { id, .. } | LocalizedTube::Kept { id, .. } => id,
        }
    }

    pub fn new_rank(&self) -> Option<u32> {
        match self {
            LocalizedTube::Removed { .. } => None,
            LocalizedTube::Kept { survivors, .. } => Some(survivors.len() as u32),
        }
    }
}

/// Tube data of R_𝒰.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedRegistry {
    base: TubeRegistry,
    at: QuasiSimpleSet,
    tubes: Vec<LocalizedTube>,
    order_flag: bool,
}

impl LocalizedRegistry {
    pub fn base(&self) -> &TubeRegistry {
        &self.base
    }

    pub fn at(&self) -> &QuasiSimpleSet {
        &self.at
    }

    pub fn tubes(&self) -> &[LocalizedTube] {
        &self.tubes
    }

    /// R_𝒰 is a hereditary order rather than tame hereditary.
    pub fn order_flag(&self) -> bool {
        self.order_flag
    }

    pub fn tube(&self, id: &TubeId) -> Option<&LocalizedTube> {
        self.tubes.iter().find(|t| t.id() == id)
    }

    /// New coordinates of a surviving quasi-simple.
    pub fn image(&self, q: &QuasiSimpleRef) -> Option<QuasiSimpleRef> {
        match self.tube(q.tube())? {
            LocalizedTube::Kept { survivors, .. } => survivors
                .iter()
                .position(|&i| i == q.index())
                .map(|k| QuasiSimpleRef::new(q.tube().clone(), k as u32 + 1)),
            LocalizedTube::Removed { .. } => None,
        }
    }

    /// Old coordinates of a new quasi-simple.
    pub fn preimage(&self, q: &QuasiSimpleRef) -> Option<QuasiSimpleRef> {
        match self.tube(q.tube())? {
            LocalizedTube::Kept { survivors, .. } => survivors
                .get(q.index() as usize - 1)
                .map(|&i| QuasiSimpleRef::new(q.tube().clone(), i)),
            LocalizedTube::Removed { .. } => None,
        }
    }

    /// The tube family of R_𝒰 (tubes of new rank 1 become named homogeneous ones).
    pub fn registry(&self) -> TubeRegistry {
        let mut nonhom = Vec::new();
        let mut hom = Vec::new();
        for t in &self.tubes {
            match t.new_rank() {
                Some(r) if r >= 2 => nonhom.push((t.id().clone(), r)),
                Some(_) => hom.push(t.id().clone()),
                None => {}
            }
        }
        TubeRegistry::new(
            nonhom,
            hom,
            self.base.has_rest() && !self.at.includes_rest(),
        )
        .expect("localization keeps registry invariants")
    }

    /// Localizing first here and then at `next` (a localization of [`Self::registry`]).
    pub fn then(&self, next: &LocalizedRegistry) -> LocalizedRegistry {
        let mut at = self.at.clone();
        for q in next.at.members() {
            at.members.insert(
                self.preimage(q)
                    .expect("next lives on the localized registry"),
            );
        }
        at.rest |= next.at.rest;
        let tubes = self
            .tubes
            .iter()
            .map(|t| match (t, next.tube(t.id())) {
                (
                    LocalizedTube::Kept {
                        id,
                        old_rank,
                        survivors,
                    },
                    Some(LocalizedTube::Kept { survivors: s2, .. }),
                ) => LocalizedTube::Kept {
                    id: id.clone(),
                    old_rank: *old_rank,
                    survivors: s2.iter().map(|&k| survivors[k as usize - 1]).collect(),
                },
                (t, _) => LocalizedTube::Removed {
                    id: t.id().clone(),
                    old_rank: match t {
                        LocalizedTube::Removed { old_rank, .. }
                        | LocalizedTube::Kept { old_rank, .. } => *old_rank,
                    },
                },
            })
            .collect();
        LocalizedRegistry {
            base: self.base.clone(),
            at,
            tubes,
            order_flag: self.order_flag || next.order_flag,
        }
    }

    pub fn to_json(&self) -> Value {
        let tubes: Vec<Value> = self
            .tubes
            .iter()
            .map(|t| match t {
                LocalizedTube::Removed { id, old_rank } => json!({
                    "id": id, "old_rank": old_rank, "removed": true,
                }),
                LocalizedTube::Kept { id, old_rank, survivors } => json!({
                    "id": id,
                    "old_rank": old_rank,
                    "new_rank": survivors.len(),
                    "survivors": survivors
                        .iter()
                        .enumerate()
                        .map(|(k, i)| json!({"old": format!("{id}:{i}"), "new": format!("{id}:{}", k + 1)}))
                        .collect::<Vec<_>>(),
                }),
            })
            .collect();
        json!({
            "at": self.at.to_keys(&self.base),
            "tubes": tubes,
            "order": self.order_flag,
            "rest": self.registry().has_rest(),
        })
    }
}

/// Multiset of indecomposable summands of R_𝒰/R.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuotientDecomposition {
    pub summands: BTreeMap<RegPoint, u32>,
    /// Prüfer modules of every unnamed homogeneous tube occur.
    pub rest_pruefer: bool,
    /// Size α of the matrix ring R_𝕌 ≅ M_α(End G), when 𝒰 = 𝕌.
    pub generic: Option<u32>,
}

impl QuotientDecomposition {
    pub fn to_json(&self) -> Value {
        json!({
            "summands": self
                .summands
                .iter()
                .map(|(p, m)| json!({"point": p.to_string(), "multiplicity": m}))
                .collect::<Vec<_>>(),
            "rest_pruefer": self.rest_pruefer,
            "generic_matrix_size": self.generic,
        })
    }
}

/// Result of [`TubeRegistry::localization_tilting`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalizationTilting {
    FiniteDimensional,
    Large(Box<TiltingDescriptor>),
}

impl TubeRegistry {
    pub fn localize_registry(&self, u: &QuasiSimpleSet) -> Result<LocalizedRegistry> {
        if u.includes_rest() && !self.has_rest() {
            return Err(Error::RestFlagMismatch);
        }
        let u = QuasiSimpleSet {
            members: u
                .members()
                .iter()
                .map(|q| self.normalize_qs(q))
                .collect::<Result<_>>()?,
            rest: u.rest,
        };
        let mut order_flag = u.rest;
        let tubes = self
            .tubes()
            .map(|(id, r)| {
                let inside = u.in_tube(id);
                if inside.len() as u32 == r {
                    order_flag = true;
                    LocalizedTube::Removed {
                        id: id.clone(),
                        old_rank: r,
                    }
                } else {
                    LocalizedTube::Kept {
                        id: id.clone(),
                        old_rank: r,
                        survivors: (1..=r).filter(|i| !inside.contains(i)).collect(),
                    }
                }
            })
            .collect();
        Ok(LocalizedRegistry {
            base: self.clone(),
            at: u,
            tubes,
            order_flag,
        })
    }

    /// Coray modules of the maximal segments of `u` in tubes without a full clique.
    fn segment_summands(&self, u: &QuasiSimpleSet) -> Result<Vec<Finite>> {
        let mut out = Vec::new();
        for (id, r) in self.nonhomogeneous() {
            let t = Tube::new(r);
            let inside = u.in_tube(id);
            if inside.len() as u32 == r {
                continue;
            }
            let mut done = QuasiSimpleSet::empty();
            for seg in runs(t, &inside) {
                let loc = self.localize_registry(&done)?;
                let first = loc
                    .image(&QuasiSimpleRef::new(id.clone(), seg.index))
                    .ok_or_else(|| Error::SegmentShape(format!("segment at {id}:{}", seg.index)))?;
                for k in 0..seg.len {
                    let cell = Cell::new(first.index() + k, seg.len - k);
                    out.push(lift(self, &loc, &done, id, cell)?);
                }
                done.members
                    .extend(t.factors(seg).map(|i| QuasiSimpleRef::new(id.clone(), i)));
            }
        }
        Ok(out)
    }

    pub fn quotient_decomposition(
        &self,
        u: &QuasiSimpleSet,
        alpha: &MultiplicityMap,
    ) -> Result<QuotientDecomposition> {
        let loc = self.localize_registry(u)?;
        let u = loc.at().clone();
        let mut out = QuotientDecomposition {
            rest_pruefer: u.includes_rest(),
            ..Default::default()
        };
        for t in loc.tubes() {
            if let LocalizedTube::Removed { id, .. } = t {
                for q in self.quasi_simples(id)? {
                    let a = alpha.alpha(&q);
                    out.summands.insert(RegPoint::Pruefer(q), a);
                }
            }
        }
        for x in self.segment_summands(&u)? {
            let a = alpha.alpha(&x.qs());
            out.summands.insert(RegPoint::Finite(x), a);
        }
        if u == QuasiSimpleSet::everything(self) {
            out.generic = Some(alpha.alpha_generic());
        }
        Ok(out)
    }

    pub fn localization_tilting(&self, u: &QuasiSimpleSet) -> Result<LocalizationTilting> {
        let loc = self.localize_registry(u)?;
        if !loc.order_flag() {
            return Ok(LocalizationTilting::FiniteDimensional);
        }
        let y: BTreeSet<Finite> = self.segment_summands(loc.at())?.into_iter().collect();
        let lambda = LambdaSet {
            named: loc
                .tubes()
                .iter()
                .filter(|t| t.new_rank().is_none())
                .map(|t| t.id().clone())
                .collect(),
            include_rest: loc.at().includes_rest(),
        };
        let y = self
            .branch_module(y)
            .map_err(|e| Error::SegmentShape(e.to_string()))?;
        Ok(LocalizationTilting::Large(Box::new(
            self.descriptor_from_pair(&y, &lambda)?,
        )))
    }
}

/// The R-module underlying a finite module of a localized tube.
fn lift(
    reg: &TubeRegistry,
    loc: &LocalizedRegistry,
    done: &QuasiSimpleSet,
    id: &TubeId,
    cell: Cell,
) -> Result<Finite> {
    let new_rank = loc
        .tube(id)
        .and_then(LocalizedTube::new_rank)
        .ok_or_else(|| Error::SegmentShape(format!("tube {id} was removed")))?;
    let t = Tube::new(new_rank);
    let mut socle = None;
    let mut len = 0;
    for i in t.factors(cell) {
        let old = loc
            .preimage(&QuasiSimpleRef::new(id.clone(), i))
            .expect("survivor");
        match reg.tensor_qs(&old, done)? {
            TensorImage::Module(m) => {
                socle.get_or_insert(old.index());
                len += m.len();
            }
            TensorImage::Zero => unreachable!("survivors have non-zero images"),
        }
    }
    Ok(Finite::new(
        id.clone(),
        Cell::new(socle.expect("non-empty cell"), len),
    ))
}
