//! Large tilting modules up to equivalence, their duals and predicates.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::branch::{factor_set, tube_factor_set, BranchModule};
use crate::error::{Error, Result};
use crate::localize::{LocalizationTilting, QuasiSimpleSet};
use crate::registry::{LambdaSet, TubeId, TubeRegistry};
use crate::resolving::TubeProfile;
use crate::tube::{Cell, Finite, QuasiSimpleRef, Tube};
use crate::SCHEMA;

/// Torsion-free part of T: a Lukas module or a projective generator over a localization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorsionFreeLabel {
    LukasOver(QuasiSimpleSet),
    ProjGenOver(QuasiSimpleSet),
}

/// Torsion summands `Y ⊕ ⊕_{S∈ℛ} S[∞]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TorsionSummands {
    pub finite: BTreeSet<Finite>,
    pub pruefer: BTreeSet<QuasiSimpleRef>,
    /// Prüfer modules of all unnamed homogeneous tubes.
    pub rest_pruefer: bool,
}

/// The canonical representative T_(Y,Λ) of a class of large tilting modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TiltingDescriptor {
    registry: TubeRegistry,
    branch: BranchModule,
    lambda: LambdaSet,
    torsion: TorsionSummands,
    label: TorsionFreeLabel,
    u_set: QuasiSimpleSet,
    v_set: QuasiSimpleSet,
    r_set: QuasiSimpleSet,
}

impl TiltingDescriptor {
    pub fn registry(&self) -> &TubeRegistry {
        &self.registry
    }

    pub fn branch(&self) -> &BranchModule {
        &self.branch
    }

    pub fn lambda(&self) -> &LambdaSet {
        &self.lambda
    }

    pub fn pair(&self) -> (&BranchModule, &LambdaSet) {
        (&self.branch, &self.lambda)
    }

    pub fn torsion(&self) -> &TorsionSummands {
        &self.torsion
    }

    pub fn label(&self) -> &TorsionFreeLabel {
        &self.label
    }

    pub fn u_set(&self) -> &QuasiSimpleSet {
        &self.u_set
    }

    pub fn v_set(&self) -> &QuasiSimpleSet {
        &self.v_set
    }

    pub fn r_set(&self) -> &QuasiSimpleSet {
        &self.r_set
    }

    pub fn to_json(&self) -> Value {
        let reg = &self.registry;
        let (kind, locset) = match &self.label {
            TorsionFreeLabel::LukasOver(u) => ("LukasOver", u),
            TorsionFreeLabel::ProjGenOver(v) => ("ProjGenOver", v),
        };
        json!({
            "schema": SCHEMA,
            "kind": "tilting",
            "branch": self.branch,
            "lambda": self.lambda,
            "torsion": {
                "finite": self.torsion.finite,
                "pruefer": self.torsion.pruefer.iter().map(|q| format!("{q}[inf]")).collect::<Vec<_>>(),
                "rest_pruefer": self.torsion.rest_pruefer,
            },
            "torsion_free": {"kind": kind, "locset": locset.to_keys(reg)},
            "u_set": self.u_set.to_keys(reg),
            "v_set": self.v_set.to_keys(reg),
            "r_set": self.r_set.to_keys(reg),
        })
    }
}

/// Shape of the resolving subcategory inside one tube.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TubeCase {
    /// Some finite members, no ray: fewer than rank classes, adics in the class.
    Finite,
    /// Some rays: exactly rank classes.
    Rays,
    /// Nothing of the tube lies in the resolving subcategory.
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TubeReport {
    pub tube: TubeId,
    pub rank: u32,
    pub case: TubeCase,
    pub profile: TubeProfile,
}

impl TubeReport {
    /// Distinct indecomposable summand classes in this tube.
    pub fn classes(&self) -> usize {
        self.profile.finite.len() + self.profile.pruefer.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub tubes: Vec<TubeReport>,
    pub rest_pruefer: bool,
    pub torsion_free: TorsionFreeLabel,
}

impl Decomposition {
    pub fn to_json(&self, reg: &TubeRegistry) -> Value {
        let tubes: Vec<Value> = self
            .tubes
            .iter()
            .map(|t| {
                let case = match t.case {
                    TubeCase::Finite => "finite",
                    TubeCase::Rays => "rays",
                    TubeCase::Empty => "empty",
                };
                json!({
                    "id": t.tube,
                    "rank": t.rank,
                    "case": case,
                    "finite": t.profile.finite.iter().map(|c| format!("{}:{c}", t.tube)).collect::<Vec<_>>(),
                    "pruefer": t.profile.pruefer.iter().map(|i| format!("{}:{i}[inf]", t.tube)).collect::<Vec<_>>(),
                    "adics_in_class": t.profile.adics.iter().map(|i| format!("{}:{i}[-inf]", t.tube)).collect::<Vec<_>>(),
                    "classes": t.classes(),
                })
            })
            .collect();
        let (kind, locset) = match &self.torsion_free {
            TorsionFreeLabel::LukasOver(u) => ("LukasOver", u),
            TorsionFreeLabel::ProjGenOver(v) => ("ProjGenOver", v),
        };
        json!({
            "schema": SCHEMA,
            "tubes": tubes,
            "rest_pruefer": self.rest_pruefer,
            "torsion_free": {"kind": kind, "locset": locset.to_keys(reg)},
        })
    }
}

/// Per-tube summands of the dual cotilting module, in left-module coordinates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CotiltingTube {
    pub finite: BTreeSet<Cell>,
    pub adics: BTreeSet<u32>,
    pub pruefer: BTreeSet<u32>,
}

impl CotiltingTube {
    pub fn classes(&self) -> usize {
        self.finite.len() + self.adics.len() + self.pruefer.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotiltingDescriptor {
    pub tubes: BTreeMap<TubeId, CotiltingTube>,
    /// Unnamed homogeneous tubes contribute their adic (else their Prüfer) module.
    pub rest_adic: bool,
    pub has_generic: bool,
}

impl CotiltingDescriptor {
    pub fn to_json(&self) -> Value {
        let tubes: BTreeMap<String, Value> = self
            .tubes
            .iter()
            .map(|(id, t)| {
                (
                    id.to_string(),
                    json!({
                        "finite": t.finite.iter().map(|c| format!("{id}:{c}")).collect::<Vec<_>>(),
                        "adic": t.adics.iter().map(|i| format!("{id}:{i}[-inf]")).collect::<Vec<_>>(),
                        "pruefer": t.pruefer.iter().map(|i| format!("{id}:{i}[inf]")).collect::<Vec<_>>(),
                    }),
                )
            })
            .collect();
        json!({
            "schema": SCHEMA,
            "kind": "cotilting",
            "tubes": tubes,
            "rest": if self.rest_adic { "adic" } else { "pruefer" },
            "generic": self.has_generic,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Predicates {
    pub noetherian_over_endo: bool,
    pub sigma_pure_injective: bool,
    pub localization_form: Option<QuasiSimpleSet>,
}

impl Predicates {
    pub fn to_json(&self, reg: &TubeRegistry) -> Value {
        json!({
            "schema": SCHEMA,
            "noetherian_over_endo": self.noetherian_over_endo,
            "sigma_pure_injective": self.sigma_pure_injective,
            "localization_form": self.localization_form.as_ref().map(|u| u.to_keys(reg)),
        })
    }
}

fn qs_in<I: IntoIterator<Item = u32>>(id: &TubeId, idx: I) -> impl Iterator<Item = QuasiSimpleRef> {
    let id = id.clone();
    idx.into_iter()
        .map(move |i| QuasiSimpleRef::new(id.clone(), i))
}

impl TubeRegistry {
    pub fn descriptor_from_pair(
        &self,
        y: &BranchModule,
        l: &LambdaSet,
    ) -> Result<TiltingDescriptor> {
        let y = self.branch_module(y.summands().clone())?;
        let l = self.validate_lambda(l)?;
        let shifted = factor_set(self, y.summands(), true);
        let plain = factor_set(self, y.summands(), false);
        let mut r_set = QuasiSimpleSet::new([], l.include_rest);
        let mut members = Vec::new();
        for (id, r) in self.tubes() {
            if l.contains(id) {
                members.extend(qs_in(id, 1..=r).filter(|q| !shifted.contains(q)));
            }
        }
        r_set = r_set.union(&QuasiSimpleSet::new(members, false));
        let (u_set, v_set, label) = if l.is_empty() {
            let u = QuasiSimpleSet::new(plain, false);
            (u.clone(), u.clone(), TorsionFreeLabel::LukasOver(u))
        } else {
            let mut u = Vec::new();
            let mut v = Vec::new();
            for (id, r) in self.tubes() {
                if l.contains(id) {
                    v.extend(qs_in(id, 1..=r));
                    u.extend(shifted.iter().filter(|q| q.tube() == id).cloned());
                } else {
                    let here = plain.iter().filter(|q| q.tube() == id).cloned();
                    v.extend(here.clone());
                    u.extend(here);
                }
            }
            let v = QuasiSimpleSet::new(v, l.include_rest);
            (
                QuasiSimpleSet::new(u, false),
                v.clone(),
                TorsionFreeLabel::ProjGenOver(v),
            )
        };
        let torsion = TorsionSummands {
            finite: y.summands().clone(),
            pruefer: r_set.members().clone(),
            rest_pruefer: l.include_rest,
        };
        Ok(TiltingDescriptor {
            registry: self.clone(),
            branch: y,
            lambda: l,
            torsion,
            label,
            u_set,
            v_set,
            r_set,
        })
    }

    /// Every class of large tilting modules over this registry.
    pub fn enumerate_descriptors(&self) -> Vec<TiltingDescriptor> {
        let lambdas = self.all_lambdas();
        self.enumerate_branch_modules()
            .iter()
            .flat_map(|y| {
                lambdas.iter().map(move |l| {
                    self.descriptor_from_pair(y, l)
                        .expect("enumerated pairs are valid")
                })
            })
            .collect()
    }
}

impl TiltingDescriptor {
    pub fn decompose(&self) -> Result<Decomposition> {
        let reg = &self.registry;
        let f = reg.resolving_from_pair(&self.branch, &self.lambda)?;
        let profile = reg.addt_from_filter(&f)?;
        let tubes = reg
            .tubes()
            .map(|(id, r)| {
                let tf = f.tube(id);
                let case = if tf.is_empty() {
                    TubeCase::Empty
                } else if tf.rays.is_empty() {
                    TubeCase::Finite
                } else {
                    TubeCase::Rays
                };
                TubeReport {
                    tube: id.clone(),
                    rank: r,
                    case,
                    profile: profile.tubes[id].clone(),
                }
            })
            .collect();
        Ok(Decomposition {
            tubes,
            rest_pruefer: profile.rest_pruefer,
            torsion_free: self.label.clone(),
        })
    }

    pub fn equivalent(&self, other: &TiltingDescriptor) -> Result<bool> {
        if self.registry != other.registry {
            return Err(Error::RegistryMismatch);
        }
        Ok(self.pair() == other.pair())
    }

    pub fn cotilting_dual(&self) -> CotiltingDescriptor {
        let reg = &self.registry;
        let tubes = reg
            .tubes()
            .map(|(id, r)| {
                let t = Tube::new(r);
                let cells: BTreeSet<Cell> = self.branch.cells_in(id).collect();
                let mut out = CotiltingTube {
                    finite: cells.iter().map(|&c| Cell::new(t.top(c), c.len)).collect(),
                    ..Default::default()
                };
                if self.lambda.contains(id) {
                    out.adics = self.r_set.in_tube(id);
                } else {
                    let wing_qs = tube_factor_set(t, &cells, false);
                    out.pruefer = (1..=r)
                        .filter(|&i| !wing_qs.contains(&t.tau_inv_qs(i)))
                        .collect();
                }
                (id.clone(), out)
            })
            .collect();
        CotiltingDescriptor {
            tubes,
            rest_adic: self.lambda.include_rest,
            has_generic: true,
        }
    }

    pub fn predicates(&self) -> Predicates {
        let reg = &self.registry;
        Predicates {
            noetherian_over_endo: self.lambda.is_empty(),
            sigma_pure_injective: self.lambda == reg.full_lambda(),
            localization_form: self.localization_form(),
        }
    }

    /// Searches a set 𝒰′ with T_𝒰′ equivalent to this descriptor.
    fn localization_form(&self) -> Option<QuasiSimpleSet> {
        let reg = &self.registry;
        if self.lambda.is_empty() {
            return None;
        }
        let mut members = Vec::new();
        for (id, r) in reg.tubes() {
            let target: BTreeSet<Cell> = self.branch.cells_in(id).collect();
            if self.lambda.contains(id) {
                if !target.is_empty() {
                    return None;
                }
                members.extend(qs_in(id, 1..=r));
                continue;
            }
            if target.is_empty() {
                continue;
            }
            let found = (1u32..(1 << r) - 1).find_map(|mask| {
                let cand = QuasiSimpleSet::new(
                    qs_in(id, (1..=r).filter(|i| mask & (1 << (i - 1)) != 0)),
                    false,
                );
                let quotient = reg
                    .quotient_decomposition(&cand, &Default::default())
                    .ok()?;
                let cells: BTreeSet<Cell> = quotient
                    .summands
                    .keys()
                    .filter_map(|p| match p {
                        crate::tube::RegPoint::Finite(x) => Some(x.cell()),
                        _ => None,
                    })
                    .collect();
                (cells == target).then_some(cand)
            })?;
            members.extend(found.members().iter().cloned());
        }
        let u = QuasiSimpleSet::new(members, self.lambda.include_rest);
        match reg.localization_tilting(&u).ok()? {
            LocalizationTilting::Large(d) if self.equivalent(&d).ok()? => Some(u),
            _ => None,
        }
    }
}

impl TubeRegistry {
    /// A class containing `⊕_{S∈Δ} S[∞] ⊕ Z` as a summand, if any.
    pub fn summand_realizability(
        &self,
        delta: &BTreeSet<QuasiSimpleRef>,
        z: &BTreeSet<Finite>,
    ) -> Result<Option<(BranchModule, LambdaSet)>> {
        let z = self.check_exceptional(z)?;
        let delta = delta
            .iter()
            .map(|q| self.normalize_qs(q))
            .collect::<Result<BTreeSet<_>>>()?;
        let shifted = factor_set(self, &z, true);
        if delta.iter().any(|q| shifted.contains(q)) {
            return Ok(None);
        }
        let y = self
            .complete_to_branch(&z)?
            .into_iter()
            .next()
            .expect("exceptional modules complete to branch modules");
        let lambda = LambdaSet::named(delta.iter().map(QuasiSimpleRef::tube));
        Ok(Some((y, lambda)))
    }
}
