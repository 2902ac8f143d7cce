//! Branch modules, their vertices and completions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::registry::{TubeId, TubeRegistry};
use crate::tube::{Cell, Finite, QuasiSimpleRef, Tube};

/// A multiplicity-free exceptional regular module satisfying condition (B).
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BranchModule(BTreeSet<Finite>);

impl BranchModule {
    pub fn empty() -> Self {
        BranchModule::default()
    }

    pub fn summands(&self) -> &BTreeSet<Finite> {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Local coordinates of the summands lying in `tube`.
    pub fn cells_in<'a>(&'a self, tube: &'a TubeId) -> impl Iterator<Item = Cell> + 'a {
        self.0
            .iter()
            .filter(move |x| x.tube() == tube)
            .map(Finite::cell)
    }

    pub(crate) fn from_parts(parts: impl IntoIterator<Item = Finite>) -> Self {
        BranchModule(parts.into_iter().collect())
    }
}

impl fmt::Debug for BranchModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.0).finish()
    }
}

/// Wing-maximal summands of a branch module.
pub type VertexSet = BTreeSet<Finite>;

/// The clause of the branch-module definition that fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BranchViolation {
    #[error("{0} lies in a homogeneous or unknown tube")]
    Homogeneous(Finite),
    #[error("{0} has length not below the rank")]
    Length(Finite),
    #[error("Ext({0}, {1}) does not vanish")]
    NotExceptional(Finite, Finite),
    #[error("wing of {vertex} holds {inside} summands")]
    ConditionB { vertex: Finite, inside: u32 },
}

impl BranchViolation {
    pub fn check_id(&self) -> &'static str {
        match self {
            BranchViolation::Homogeneous(_) => "branch.nonhomogeneous",
            BranchViolation::Length(_) => "branch.length_bound",
            BranchViolation::NotExceptional(..) => "branch.exceptional",
            BranchViolation::ConditionB { .. } => "branch.condition_b",
        }
    }
}

/// Branch sets inside the wing of `v` containing `v`.
pub fn wing_branches(t: Tube, v: Cell) -> Vec<BTreeSet<Cell>> {
    fn fill(t: Tube, a: i64, m: u32, out: &mut Vec<Vec<Cell>>) {
        if m == 0 {
            out.push(Vec::new());
            return;
        }
        for i in 1..=m {
            let mut left = Vec::new();
            fill(t, a + i as i64, m - i, &mut left);
            let mut right = Vec::new();
            fill(t, a, i - 1, &mut right);
            for l in &left {
                for r in &right {
                    let mut b = vec![t.cell(a, m)];
                    b.extend(l.iter().copied());
                    b.extend(r.iter().copied());
                    out.push(b);
                }
            }
        }
    }
    let mut raw = Vec::new();
    fill(t, v.index as i64, v.len, &mut raw);
    raw.into_iter().map(|b| b.into_iter().collect()).collect()
}

/// Maximal cyclic runs of a proper subset of quasi-simples, as cells.
pub fn runs(t: Tube, members: &BTreeSet<u32>) -> Vec<Cell> {
    let r = t.rank();
    if members.len() as u32 >= r {
        return Vec::new();
    }
    members
        .iter()
        .filter(|&&i| !members.contains(&t.tau_qs(i)))
        .map(|&i| {
            let len = (0..r)
                .take_while(|k| members.contains(&t.wrap(i as i64 + *k as i64)))
                .count() as u32;
            Cell::new(i, len)
        })
        .collect()
}

/// Every branch set of one non-homogeneous tube, sorted.
pub fn tube_branches(t: Tube) -> Vec<BTreeSet<Cell>> {
    let r = t.rank();
    let mut out = Vec::new();
    for mask in 0u32..(1 << r) - 1 {
        let covered: BTreeSet<u32> = (1..=r).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        let mut acc = vec![BTreeSet::new()];
        for v in runs(t, &covered) {
            let wb = wing_branches(t, v);
            acc = acc
                .iter()
                .flat_map(|a| {
                    wb.iter()
                        .map(move |b| a.union(b).copied().collect::<BTreeSet<Cell>>())
                })
                .collect();
        }
        out.extend(acc);
    }
    out.sort();
    out
}

/// Summands of `set` not contained in the wing of another summand.
pub fn tube_vertices(t: Tube, set: &BTreeSet<Cell>) -> BTreeSet<Cell> {
    set.iter()
        .filter(|&&x| !set.iter().any(|&v| v != x && t.in_wing(x, v)))
        .copied()
        .collect()
}

/// Union of the regular composition factors, optionally after τ⁻.
pub fn tube_factor_set(t: Tube, set: &BTreeSet<Cell>, shifted: bool) -> BTreeSet<u32> {
    set.iter()
        .flat_map(|&c| t.factors(if shifted { t.tau_inv(c) } else { c }))
        .collect()
}

/// Checks the branch-module clauses inside a single tube.
pub fn check_tube(t: Tube, set: &BTreeSet<Cell>) -> std::result::Result<(), TubeClause> {
    if let Some(&c) = set.iter().find(|c| c.len >= t.rank()) {
        return Err(TubeClause::Length(c));
    }
    for &x in set {
        for &y in set {
            if t.ext(x, y) != 0 {
                return Err(TubeClause::NotExceptional(x, y));
            }
        }
    }
    for &v in set {
        let inside = set.iter().filter(|&&x| t.in_wing(x, v)).count() as u32;
        if inside != v.len {
            return Err(TubeClause::ConditionB(v, inside));
        }
    }
    Ok(())
}

/// Failing clause in local coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TubeClause {
    Length(Cell),
    NotExceptional(Cell, Cell),
    ConditionB(Cell, u32),
}

fn group(set: &BTreeSet<Finite>) -> BTreeMap<TubeId, BTreeSet<Cell>> {
    let mut by_tube: BTreeMap<TubeId, BTreeSet<Cell>> = BTreeMap::new();
    for x in set {
        by_tube
            .entry(x.tube().clone())
            .or_default()
            .insert(x.cell());
    }
    by_tube
}

fn product(parts: Vec<(TubeId, Vec<BTreeSet<Cell>>)>) -> Vec<BranchModule> {
    let mut acc = vec![Vec::new()];
    for (id, options) in parts {
        acc = acc
            .iter()
            .flat_map(|a: &Vec<Finite>| {
                let id = id.clone();
                options.iter().map(move |o| {
                    let mut next = a.clone();
                    next.extend(o.iter().map(|&c| Finite::new(id.clone(), c)));
                    next
                })
            })
            .collect();
    }
    let mut out: Vec<BranchModule> = acc.into_iter().map(BranchModule::from_parts).collect();
    out.sort();
    out
}

impl TubeRegistry {
    fn nonhomogeneous_shape(&self, x: &Finite) -> std::result::Result<Tube, BranchViolation> {
        self.nonhomogeneous()
            .find(|(id, _)| *id == x.tube())
            .map(|(_, r)| Tube::new(r))
            .ok_or_else(|| BranchViolation::Homogeneous(x.clone()))
    }

    /// Diagnostic variant of [`TubeRegistry::is_branch_module`].
    pub fn check_branch(&self, set: &BTreeSet<Finite>) -> std::result::Result<(), BranchViolation> {
        for x in set {
            self.nonhomogeneous_shape(x)?;
        }
        for (id, cells) in group(set) {
            let t = self.shape(&id).expect("tube checked above");
            let lift = |c: Cell| Finite::new(id.clone(), c);
            check_tube(t, &cells).map_err(|clause| match clause {
                TubeClause::Length(c) => BranchViolation::Length(lift(c)),
                TubeClause::NotExceptional(x, y) => {
                    BranchViolation::NotExceptional(lift(x), lift(y))
                }
                TubeClause::ConditionB(v, n) => BranchViolation::ConditionB {
                    vertex: lift(v),
                    inside: n,
                },
            })?;
        }
        Ok(())
    }

    pub fn is_branch_module(&self, set: &BTreeSet<Finite>) -> bool {
        self.check_branch(set).is_ok()
    }

    pub fn branch_module(&self, set: BTreeSet<Finite>) -> Result<BranchModule> {
        let set = set
            .iter()
            .map(|x| self.normalize_finite(x))
            .collect::<Result<BTreeSet<_>>>()?;
        self.check_branch(&set).map_err(Error::NotBranch)?;
        Ok(BranchModule(set))
    }

    pub fn enumerate_branch_modules(&self) -> Vec<BranchModule> {
        product(
            self.nonhomogeneous()
                .map(|(id, r)| (id.clone(), tube_branches(Tube::new(r))))
                .collect(),
        )
    }

    pub fn vertices(&self, y: &BranchModule) -> VertexSet {
        group(&y.0)
            .into_iter()
            .flat_map(|(id, cells)| {
                let t = self.shape(&id).expect("branch module tubes are registered");
                tube_vertices(t, &cells)
                    .into_iter()
                    .map(move |c| Finite::new(id.clone(), c))
            })
            .collect()
    }

    pub fn reg_comp_factor_set(&self, y: &BranchModule, shifted: bool) -> BTreeSet<QuasiSimpleRef> {
        factor_set(self, &y.0, shifted)
    }

    /// Checks that `z` is a multiplicity-free exceptional module in non-homogeneous tubes.
    pub fn check_exceptional(&self, z: &BTreeSet<Finite>) -> Result<BTreeSet<Finite>> {
        let z = z
            .iter()
            .map(|x| self.normalize_finite(x))
            .collect::<Result<BTreeSet<_>>>()?;
        for x in &z {
            let t = self
                .nonhomogeneous_shape(x)
                .map_err(|_| Error::NotExceptional(format!("{x} lies in a homogeneous tube")))?;
            if x.len() >= t.rank() {
                return Err(Error::LengthBound {
                    len: x.len(),
                    rank: t.rank(),
                });
            }
        }
        for (id, cells) in group(&z) {
            let t = self.shape(&id)?;
            for &x in &cells {
                for &y in &cells {
                    if t.ext(x, y) != 0 {
                        return Err(Error::NotExceptional(format!(
                            "Ext({}, {}) does not vanish",
                            Finite::new(id.clone(), x),
                            Finite::new(id.clone(), y)
                        )));
                    }
                }
            }
        }
        Ok(z)
    }

    /// Branch modules containing `z` with the same regular composition factors.
    pub fn complete_to_branch(&self, z: &BTreeSet<Finite>) -> Result<Vec<BranchModule>> {
        let z = self.check_exceptional(z)?;
        let parts = group(&z)
            .into_iter()
            .map(|(id, cells)| {
                let t = self.shape(&id).expect("checked");
                let target = tube_factor_set(t, &cells, false);
                let options = tube_branches(t)
                    .into_iter()
                    .filter(|b| b.is_superset(&cells) && tube_factor_set(t, b, false) == target)
                    .collect();
                (id, options)
            })
            .collect();
        Ok(product(parts))
    }
}

pub(crate) fn factor_set(
    reg: &TubeRegistry,
    set: &BTreeSet<Finite>,
    shifted: bool,
) -> BTreeSet<QuasiSimpleRef> {
    group(set)
        .into_iter()
        .flat_map(|(id, cells)| {
            let t = reg.shape(&id).expect("registered tube");
            tube_factor_set(t, &cells, shifted)
                .into_iter()
                .map(move |i| QuasiSimpleRef::new(id.clone(), i))
        })
        .collect()
}
