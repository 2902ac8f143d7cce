//! Coordinates, AR-translation and Hom/Ext counting inside stable tubes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::registry::{TubeId, TubeRegistry};

/// Reduces `index` into `1..=rank`.
pub fn wrap(rank: u32, index: i64) -> u32 {
    ((index - 1).rem_euclid(rank as i64) + 1) as u32
}

/// A finite indecomposable `U_index[len]` in local coordinates of one tube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub index: u32,
    pub len: u32,
}

impl Cell {
    pub const fn new(index: u32, len: u32) -> Self {
        Cell { index, len }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.index, self.len)
    }
}

impl FromStr for Cell {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected `index[length]`, got `{s}`"));
        let (i, rest) = s.split_once('[').ok_or_else(bad)?;
        let l = rest.strip_suffix(']').ok_or_else(bad)?;
        let index: u32 = i.trim().parse().map_err(|_| bad())?;
        let len: u32 = l.trim().parse().map_err(|_| bad())?;
        if index == 0 || len == 0 {
            return Err(bad());
        }
        Ok(Cell { index, len })
    }
}

/// Number of `s` in `lo..=hi` with `s ≡ t (mod r)`.
fn count_congruent(lo: i64, hi: i64, t: i64, r: i64) -> u32 {
    if lo > hi {
        return 0;
    }
    let first = lo + (t - lo).rem_euclid(r);
    if first > hi {
        0
    } else {
        ((hi - first) / r + 1) as u32
    }
}

/// The combinatorics of a single tube of fixed rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tube {
    rank: u32,
}

impl Tube {
    pub fn new(rank: u32) -> Self {
        assert!(rank >= 1, "tube rank must be positive");
        Tube { rank }
    }

    pub fn rank(self) -> u32 {
        self.rank
    }

    pub fn wrap(self, index: i64) -> u32 {
        wrap(self.rank, index)
    }

    pub fn cell(self, index: i64, len: u32) -> Cell {
        Cell::new(self.wrap(index), len)
    }

    pub fn tau_qs(self, i: u32) -> u32 {
        self.wrap(i as i64 - 1)
    }

    pub fn tau_inv_qs(self, i: u32) -> u32 {
        self.wrap(i as i64 + 1)
    }

    pub fn tau(self, c: Cell) -> Cell {
        Cell::new(self.tau_qs(c.index), c.len)
    }

    pub fn tau_inv(self, c: Cell) -> Cell {
        Cell::new(self.tau_inv_qs(c.index), c.len)
    }

    pub fn top(self, c: Cell) -> u32 {
        self.wrap(c.index as i64 + c.len as i64 - 1)
    }

    /// Regular composition factors from socle to top.
    pub fn factors(self, c: Cell) -> impl Iterator<Item = u32> {
        (0..c.len as i64).map(move |k| wrap(self.rank, c.index as i64 + k))
    }

    /// Whether `x` lies in the wing of `v`.
    pub fn in_wing(self, x: Cell, v: Cell) -> bool {
        if v.len >= self.rank {
            return false;
        }
        let offset = (x.index as i64 - v.index as i64).rem_euclid(self.rank as i64) as u32;
        offset + x.len <= v.len
    }

    pub fn wing(self, v: Cell) -> Result<Vec<Cell>> {
        if v.len >= self.rank {
            return Err(Error::LengthBound {
                len: v.len,
                rank: self.rank,
            });
        }
        Ok((1..=v.len)
            .flat_map(|j| {
                (1..=v.len - j + 1).map(move |k| self.cell(v.index as i64 + j as i64 - 1, k))
            })
            .collect())
    }

    /// Cells of length at most `max_len`, ordered by (index, length).
    pub fn cells(self, max_len: u32) -> impl Iterator<Item = Cell> {
        (1..=self.rank).flat_map(move |i| (1..=max_len).map(move |l| Cell::new(i, l)))
    }

    /// dim Hom(x, y) over the common endomorphism ring.
    pub fn hom(self, x: Cell, y: Cell) -> u32 {
        let (l, m) = (x.len as i64, y.len as i64);
        let t = y.index as i64 - x.index as i64;
        count_congruent((l - m).max(0), l - 1, t, self.rank as i64)
    }

    /// dim Hom(x, U_j[∞]).
    pub fn hom_to_pruefer(self, x: Cell, j: u32) -> u32 {
        let t = j as i64 - x.index as i64;
        count_congruent(0, x.len as i64 - 1, t, self.rank as i64)
    }

    /// Whether Hom(U_s[−∞], y) is non-zero.
    pub fn adic_maps_to(self, s: u32, y: Cell) -> bool {
        self.factors(y).any(|f| f == s)
    }

    /// dim Ext¹(x, y) = dim Hom(y, τx).
    pub fn ext(self, x: Cell, y: Cell) -> u32 {
        self.hom(y, self.tau(x))
    }

    /// Middle terms of a basis of extensions `0 → y → E → x → 0`, one per lift.
    pub fn middle_terms(self, x: Cell, y: Cell) -> Vec<Vec<Cell>> {
        let r = self.rank as i64;
        let a = y.index as i64 - 1;
        let (l, k) = (y.len as i64, x.len as i64);
        let c0 = x.index as i64 - 1;
        let lo = a + 1 + (l - k).max(0);
        let first = lo + (c0 - lo).rem_euclid(r);
        (0..)
            .map(|n| first + n * r)
            .take_while(|&c| c <= a + l)
            .map(|c| {
                let mut e = vec![Cell::new(y.index, (c + k - a) as u32)];
                if a + l - c > 0 {
                    e.push(Cell::new(x.index, (a + l - c) as u32));
                }
                e
            })
            .collect()
    }
}

/// The quasi-simple `U_index` of a named tube.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuasiSimpleRef {
    tube: TubeId,
    index: u32,
}

impl QuasiSimpleRef {
    /// Unchecked constructor; use [`TubeRegistry::qs`] to reduce the index.
    pub fn new(tube: TubeId, index: u32) -> Self {
        QuasiSimpleRef { tube, index }
    }

    pub fn tube(&self) -> &TubeId {
        &self.tube
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// The "tube:index" key.
    pub fn key(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for QuasiSimpleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.tube, self.index)
    }
}

impl fmt::Debug for QuasiSimpleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for QuasiSimpleRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected `tube:index`, got `{s}`"));
        let (t, i) = s.split_once(':').ok_or_else(bad)?;
        let index: u32 = i.trim().parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(QuasiSimpleRef::new(TubeId::new(t.trim())?, index))
    }
}

/// A finite indecomposable regular module `U_i[l]` of a named tube.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Finite {
    tube: TubeId,
    cell: Cell,
}

impl Finite {
    pub fn new(tube: TubeId, cell: Cell) -> Self {
        Finite { tube, cell }
    }

    pub fn tube(&self) -> &TubeId {
        &self.tube
    }

    pub fn cell(&self) -> Cell {
        self.cell
    }

    /// Regular length; never zero.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> u32 {
        self.cell.len
    }

    /// Regular socle.
    pub fn qs(&self) -> QuasiSimpleRef {
        QuasiSimpleRef::new(self.tube.clone(), self.cell.index)
    }
}

impl fmt::Display for Finite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.tube, self.cell)
    }
}

impl fmt::Debug for Finite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Finite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<RegPoint>()? {
            RegPoint::Finite(x) => Ok(x),
            _ => Err(Error::Parse(format!("expected a finite point, got `{s}`"))),
        }
    }
}

/// Points of the regular part relevant for classification.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RegPoint {
    Finite(Finite),
    Pruefer(QuasiSimpleRef),
    Adic(QuasiSimpleRef),
    Generic,
}

impl RegPoint {
    pub fn tube(&self) -> Option<&TubeId> {
        match self {
            RegPoint::Finite(x) => Some(x.tube()),
            RegPoint::Pruefer(q) | RegPoint::Adic(q) => Some(q.tube()),
            RegPoint::Generic => None,
        }
    }
}

impl From<Finite> for RegPoint {
    fn from(x: Finite) -> Self {
        RegPoint::Finite(x)
    }
}

impl fmt::Display for RegPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegPoint::Finite(x) => write!(f, "{x}"),
            RegPoint::Pruefer(q) => write!(f, "{q}[inf]"),
            RegPoint::Adic(q) => write!(f, "{q}[-inf]"),
            RegPoint::Generic => f.write_str("G"),
        }
    }
}

impl fmt::Debug for RegPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for RegPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "G" {
            return Ok(RegPoint::Generic);
        }
        let bad = || {
            Error::Parse(format!(
                "expected `tube:index[length]`, `[inf]`, `[-inf]` or `G`, got `{s}`"
            ))
        };
        let (q, rest) = s.split_once('[').ok_or_else(bad)?;
        let q: QuasiSimpleRef = q.parse()?;
        match rest.strip_suffix(']').ok_or_else(bad)?.trim() {
            "inf" => Ok(RegPoint::Pruefer(q)),
            "-inf" => Ok(RegPoint::Adic(q)),
            l => {
                let len: u32 = l.parse().map_err(|_| bad())?;
                if len == 0 {
                    return Err(bad());
                }
                Ok(RegPoint::Finite(Finite::new(
                    q.tube().clone(),
                    Cell::new(q.index(), len),
                )))
            }
        }
    }
}

macro_rules! string_serde {
    ($($t:ty),*) => {$(
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
            }
        }
    )*};
}

string_serde!(Cell, QuasiSimpleRef, Finite, RegPoint);

/// Outcome of a Hom or Ext query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomResult {
    Dim(u32),
    NonzeroOnly(bool),
    Unsupported,
}

impl HomResult {
    pub fn is_zero(self) -> Option<bool> {
        match self {
            HomResult::Dim(d) => Some(d == 0),
            HomResult::NonzeroOnly(b) => Some(!b),
            HomResult::Unsupported => None,
        }
    }
}

impl TubeRegistry {
    pub fn shape(&self, id: &TubeId) -> Result<Tube> {
        self.rank(id).map(Tube::new)
    }

    fn shift(&self, p: &RegPoint, step: i64) -> Result<RegPoint> {
        let move_qs = |q: &QuasiSimpleRef| -> Result<QuasiSimpleRef> {
            let r = self.rank(q.tube())?;
            Ok(QuasiSimpleRef::new(
                q.tube().clone(),
                wrap(r, q.index() as i64 + step),
            ))
        };
        Ok(match p {
            RegPoint::Finite(x) => {
                let q = move_qs(&x.qs())?;
                RegPoint::Finite(Finite::new(q.tube, Cell::new(q.index, x.len())))
            }
            RegPoint::Pruefer(q) => RegPoint::Pruefer(move_qs(q)?),
            RegPoint::Adic(q) => RegPoint::Adic(move_qs(q)?),
            RegPoint::Generic => {
                return Err(Error::Unsupported(
                    "the generic module has no translate".into(),
                ))
            }
        })
    }

    /// Auslander–Reiten translate τ.
    pub fn tau(&self, p: &RegPoint) -> Result<RegPoint> {
        self.shift(p, -1)
    }

    pub fn tau_inv(&self, p: &RegPoint) -> Result<RegPoint> {
        self.shift(p, 1)
    }

    pub fn socle(&self, x: &Finite) -> QuasiSimpleRef {
        x.qs()
    }

    pub fn top(&self, x: &Finite) -> Result<QuasiSimpleRef> {
        let t = self.shape(x.tube())?;
        Ok(QuasiSimpleRef::new(x.tube().clone(), t.top(x.cell())))
    }

    pub fn comp_factors(&self, x: &Finite) -> Result<Vec<QuasiSimpleRef>> {
        let t = self.shape(x.tube())?;
        Ok(t.factors(x.cell())
            .map(|i| QuasiSimpleRef::new(x.tube().clone(), i))
            .collect())
    }

    pub fn wing(&self, x: &Finite) -> Result<Vec<Finite>> {
        let t = self.shape(x.tube())?;
        Ok(t.wing(x.cell())?
            .into_iter()
            .map(|c| Finite::new(x.tube().clone(), c))
            .collect())
    }

    pub fn hom_dim(&self, x: &RegPoint, y: &RegPoint) -> Result<HomResult> {
        use RegPoint::*;
        for p in [x, y] {
            if let Some(t) = p.tube() {
                self.rank(t)?;
            }
        }
        let same = x.tube().is_some() && x.tube() == y.tube();
        Ok(match (x, y) {
            (Finite(a), Finite(b)) => HomResult::Dim(if same {
                self.shape(a.tube())?.hom(a.cell(), b.cell())
            } else {
                0
            }),
            (Finite(a), Pruefer(q)) => HomResult::Dim(if same {
                self.shape(a.tube())?.hom_to_pruefer(a.cell(), q.index())
            } else {
                0
            }),
            (Pruefer(_), Finite(_)) => HomResult::Dim(0),
            (Adic(q), Finite(b)) => HomResult::NonzeroOnly(
                same && self.shape(b.tube())?.adic_maps_to(q.index(), b.cell()),
            ),
            _ => HomResult::Unsupported,
        })
    }

    pub fn ext_dim(&self, x: &RegPoint, y: &RegPoint) -> Result<HomResult> {
        match (x, y) {
            (RegPoint::Pruefer(a), RegPoint::Adic(b)) => {
                self.rank(a.tube())?;
                self.rank(b.tube())?;
                Ok(HomResult::NonzeroOnly(a.tube() == b.tube()))
            }
            (RegPoint::Generic, _) | (_, RegPoint::Generic) => Ok(HomResult::Unsupported),
            _ => self.hom_dim(y, &self.tau(x)?),
        }
    }
}
