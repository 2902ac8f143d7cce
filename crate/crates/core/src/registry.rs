//! Tube families, Λ-sets and multiplicity data.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tube::{Cell, Finite, QuasiSimpleRef};

/// Maximal number of non-homogeneous tubes of a tame hereditary algebra.
pub const MAX_NONHOMOGENEOUS: usize = 3;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TubeId(Arc<str>);

impl TubeId {
    pub fn new(id: &str) -> Result<Self> {
        let ok = !id.is_empty()
            && id
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
        if ok {
            Ok(TubeId(Arc::from(id)))
        } else {
            Err(Error::InvalidTubeId(id.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for TubeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for TubeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl Serialize for TubeId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for TubeId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        TubeId::new(&s).map_err(serde::de::Error::custom)
    }
}

/// The tube family of a tame hereditary algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TubeRegistry {
    nonhomogeneous: Vec<(TubeId, u32)>,
    homogeneous_named: BTreeSet<TubeId>,
    rest: bool,
}

impl TubeRegistry {
    pub fn new(
        nonhomogeneous: Vec<(TubeId, u32)>,
        homogeneous_named: impl IntoIterator<Item = TubeId>,
        rest: bool,
    ) -> Result<Self> {
        if nonhomogeneous.len() > MAX_NONHOMOGENEOUS {
            return Err(Error::InvalidRegistry(format!(
                "{} non-homogeneous tubes, at most {MAX_NONHOMOGENEOUS} allowed",
                nonhomogeneous.len()
            )));
        }
        let homogeneous_named: BTreeSet<TubeId> = homogeneous_named.into_iter().collect();
        let mut seen = BTreeSet::new();
        for (id, rank) in &nonhomogeneous {
            if *rank < 2 {
                return Err(Error::InvalidRegistry(format!(
                    "tube `{id}` has rank {rank}, non-homogeneous tubes need rank at least 2"
                )));
            }
            if !seen.insert(id.clone()) {
                return Err(Error::InvalidRegistry(format!("duplicate tube id `{id}`")));
            }
        }
        if let Some(id) = homogeneous_named.iter().find(|id| seen.contains(*id)) {
            return Err(Error::InvalidRegistry(format!("duplicate tube id `{id}`")));
        }
        Ok(TubeRegistry {
            nonhomogeneous,
            homogeneous_named,
            rest,
        })
    }

    /// Registry with explicit non-homogeneous ranks.
    pub fn custom(tubes: &[(&str, u32)], rest: bool) -> Result<Self> {
        let tubes = tubes
            .iter()
            .map(|(id, r)| Ok((TubeId::new(id)?, *r)))
            .collect::<Result<Vec<_>>>()?;
        TubeRegistry::new(tubes, [], rest)
    }

    pub fn preset(name: &str) -> Result<Self> {
        PRESETS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, src)| Config::from_json(src).map(|c| c.registry))
            .unwrap_or_else(|| Err(Error::UnknownPreset(name.to_string())))
    }

    pub fn preset_names() -> impl Iterator<Item = &'static str> {
        PRESETS.iter().map(|(n, _)| *n)
    }

    /// Registers a further named homogeneous tube.
    pub fn with_homogeneous(mut self, id: &str) -> Result<Self> {
        let id = TubeId::new(id)?;
        if self.nonhomogeneous.iter().any(|(t, _)| *t == id) || self.homogeneous_named.contains(&id)
        {
            return Err(Error::InvalidRegistry(format!("duplicate tube id `{id}`")));
        }
        self.homogeneous_named.insert(id);
        Ok(self)
    }

    pub fn nonhomogeneous(&self) -> impl Iterator<Item = (&TubeId, u32)> + '_ {
        self.nonhomogeneous.iter().map(|(id, r)| (id, *r))
    }

    pub fn homogeneous_named(&self) -> &BTreeSet<TubeId> {
        &self.homogeneous_named
    }

    pub fn has_rest(&self) -> bool {
        self.rest
    }

    /// All named tubes: non-homogeneous ones first, then named homogeneous ones.
    pub fn tubes(&self) -> impl Iterator<Item = (&TubeId, u32)> + '_ {
        self.nonhomogeneous()
            .chain(self.homogeneous_named.iter().map(|id| (id, 1)))
    }

    pub fn tube_id(&self, id: &str) -> Result<TubeId> {
        self.tubes()
            .find(|(t, _)| t.as_str() == id)
            .map(|(t, _)| t.clone())
            .ok_or_else(|| Error::UnknownTube(id.to_string()))
    }

    pub fn rank(&self, id: &TubeId) -> Result<u32> {
        self.tubes()
            .find(|(t, _)| *t == id)
            .map(|(_, r)| r)
            .ok_or_else(|| Error::UnknownTube(id.to_string()))
    }

    /// The quasi-simple `U_index` of tube `tube`, index taken mod rank.
    pub fn qs(&self, tube: &str, index: i64) -> Result<QuasiSimpleRef> {
        let id = self.tube_id(tube)?;
        let rank = self.rank(&id)?;
        Ok(QuasiSimpleRef::new(id, crate::tube::wrap(rank, index)))
    }

    /// The finite point `U_index[len]`.
    pub fn finite(&self, tube: &str, index: i64, len: u32) -> Result<Finite> {
        if len == 0 {
            return Err(Error::Parse("regular length must be at least 1".into()));
        }
        let qs = self.qs(tube, index)?;
        Ok(Finite::new(qs.tube().clone(), Cell::new(qs.index(), len)))
    }

    /// Reduces the index of `qs` and checks that its tube exists.
    pub fn normalize_qs(&self, qs: &QuasiSimpleRef) -> Result<QuasiSimpleRef> {
        let rank = self.rank(qs.tube())?;
        Ok(QuasiSimpleRef::new(
            qs.tube().clone(),
            crate::tube::wrap(rank, qs.index() as i64),
        ))
    }

    pub fn normalize_finite(&self, x: &Finite) -> Result<Finite> {
        let qs = self.normalize_qs(&x.qs())?;
        Ok(Finite::new(
            qs.tube().clone(),
            Cell::new(qs.index(), x.len()),
        ))
    }

    pub fn quasi_simples(&self, id: &TubeId) -> Result<Vec<QuasiSimpleRef>> {
        let rank = self.rank(id)?;
        Ok((1..=rank)
            .map(|i| QuasiSimpleRef::new(id.clone(), i))
            .collect())
    }

    pub fn is_homogeneous(&self, id: &TubeId) -> bool {
        self.homogeneous_named.contains(id)
    }

    pub fn validate_lambda(&self, l: &LambdaSet) -> Result<LambdaSet> {
        for id in &l.named {
            self.rank(id)?;
        }
        if l.include_rest && !self.rest {
            return Err(Error::RestFlagMismatch);
        }
        Ok(l.clone())
    }

    /// Λ = 𝔗: every tube of the family.
    pub fn full_lambda(&self) -> LambdaSet {
        LambdaSet {
            named: self.tubes().map(|(id, _)| id.clone()).collect(),
            include_rest: self.rest,
        }
    }

    /// Every Λ representable over this registry.
    pub fn all_lambdas(&self) -> Vec<LambdaSet> {
        let ids: Vec<TubeId> = self.tubes().map(|(id, _)| id.clone()).collect();
        let rest_options: &[bool] = if self.rest { &[false, true] } else { &[false] };
        let mut out = Vec::new();
        for mask in 0u32..(1 << ids.len()) {
            let named: BTreeSet<TubeId> = ids
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, id)| id.clone())
                .collect();
            for &include_rest in rest_options {
                out.push(LambdaSet {
                    named: named.clone(),
                    include_rest,
                });
            }
        }
        out
    }
}

/// Λ ⊆ 𝔗: finitely many named tubes, optionally all unnamed homogeneous ones.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LambdaSet {
    pub named: BTreeSet<TubeId>,
    #[serde(rename = "rest", default)]
    pub include_rest: bool,
}

impl LambdaSet {
    pub fn empty() -> Self {
        LambdaSet::default()
    }

    pub fn named<'a>(ids: impl IntoIterator<Item = &'a TubeId>) -> Self {
        LambdaSet {
            named: ids.into_iter().cloned().collect(),
            include_rest: false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.named.is_empty() && !self.include_rest
    }

    pub fn contains(&self, id: &TubeId) -> bool {
        self.named.contains(id)
    }
}

/// α-data attached to quasi-simples and to the generic module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityMap {
    alpha: BTreeMap<QuasiSimpleRef, u32>,
    alpha_generic: u32,
}

impl Default for MultiplicityMap {
    fn default() -> Self {
        MultiplicityMap {
            alpha: BTreeMap::new(),
            alpha_generic: 1,
        }
    }
}

impl MultiplicityMap {
    pub fn new(alpha: BTreeMap<QuasiSimpleRef, u32>, alpha_generic: u32) -> Result<Self> {
        if alpha_generic == 0 || alpha.values().any(|&a| a == 0) {
            return Err(Error::InvalidRegistry(
                "multiplicities must be positive".into(),
            ));
        }
        Ok(MultiplicityMap {
            alpha,
            alpha_generic,
        })
    }

    pub fn alpha(&self, qs: &QuasiSimpleRef) -> u32 {
        self.alpha.get(qs).copied().unwrap_or(1)
    }

    pub fn alpha_generic(&self) -> u32 {
        self.alpha_generic
    }

    pub fn entries(&self) -> &BTreeMap<QuasiSimpleRef, u32> {
        &self.alpha
    }
}

/// Registry plus multiplicities, as read from a JSON config.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub registry: TubeRegistry,
    pub alpha: MultiplicityMap,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTube {
    id: TubeId,
    rank: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    tubes: Vec<RawTube>,
    #[serde(default)]
    homogeneous_named: Vec<TubeId>,
    #[serde(default)]
    rest: bool,
    #[serde(default)]
    alpha: BTreeMap<String, u32>,
    #[serde(default = "one")]
    alpha_generic: u32,
}

fn one() -> u32 {
    1
}

impl Config {
    pub fn new(registry: TubeRegistry) -> Self {
        Config {
            registry,
            alpha: MultiplicityMap::default(),
        }
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let raw: RawConfig =
            serde_json::from_str(src).map_err(|e| Error::Parse(format!("config: {e}")))?;
        let registry = TubeRegistry::new(
            raw.tubes.into_iter().map(|t| (t.id, t.rank)).collect(),
            raw.homogeneous_named,
            raw.rest,
        )?;
        let alpha = parse_alpha(&registry, &raw.alpha, raw.alpha_generic)?;
        Ok(Config { registry, alpha })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("config serializes")
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_raw()).expect("config serializes")
    }

    fn to_raw(&self) -> RawConfig {
        RawConfig {
            tubes: self
                .registry
                .nonhomogeneous()
                .map(|(id, rank)| RawTube {
                    id: id.clone(),
                    rank,
                })
                .collect(),
            homogeneous_named: self.registry.homogeneous_named.iter().cloned().collect(),
            rest: self.registry.rest,
            alpha: self
                .alpha
                .alpha
                .iter()
                .map(|(qs, a)| (qs.key(), *a))
                .collect(),
            alpha_generic: self.alpha.alpha_generic,
        }
    }
}

/// Parses an α-map keyed by "tube:index".
pub fn parse_alpha(
    reg: &TubeRegistry,
    raw: &BTreeMap<String, u32>,
    alpha_generic: u32,
) -> Result<MultiplicityMap> {
    let alpha = raw
        .iter()
        .map(|(k, v)| Ok((reg.normalize_qs(&k.parse::<QuasiSimpleRef>()?)?, *v)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    MultiplicityMap::new(alpha, alpha_generic)
}

const PRESETS: &[(&str, &str)] = &[
    ("kronecker", include_str!("../presets/kronecker.json")),
    ("a_2_1", include_str!("../presets/a_2_1.json")),
    ("a_3_1", include_str!("../presets/a_3_1.json")),
    ("a_2_2", include_str!("../presets/a_2_2.json")),
    ("d_4", include_str!("../presets/d_4.json")),
    ("d_5", include_str!("../presets/d_5.json")),
    ("e_6", include_str!("../presets/e_6.json")),
    ("e_7", include_str!("../presets/e_7.json")),
    ("e_8", include_str!("../presets/e_8.json")),
];
