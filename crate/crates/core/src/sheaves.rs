//! Data model for rank-1 torsion-free sheaves, rank-2 extensions, U/NU-pair
//! classification, gr(V), and zero-cycle (Sym^n X) arithmetic.
//!
//! Points of X are opaque identifiers: every statement the engine checks is
//! about lengths and multiset structure, never about coordinates.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use crate::lattice::{NumClass, SurfaceModel};
use crate::{Error, Int, Result};

/// A finite multiset of opaque points with positive multiplicities; an exact
/// model of a point of Sym^n X for n = total length.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct ZeroCycle {
    multiplicities: BTreeMap<String, u64>,
}

impl ZeroCycle {
    pub fn empty() -> Self {
        ZeroCycle::default()
    }

    pub fn from_pairs(pairs: &[(&str, u64)]) -> Self {
        let mut z = ZeroCycle::empty();
        for &(p, m) in pairs {
            z.insert(p, m);
        }
        z
    }

    /// A single point with the given multiplicity.
    pub fn point(id: &str, mult: u64) -> Self {
        ZeroCycle::from_pairs(&[(id, mult)])
    }

    pub fn insert(&mut self, id: &str, mult: u64) {
        if mult == 0 {
            return;
        }
        *self.multiplicities.entry(id.to_string()).or_insert(0) += mult;
    }

    pub fn length(&self) -> u64 {
        self.multiplicities.values().sum()
    }

    pub fn multiplicity(&self, id: &str) -> u64 {
        self.multiplicities.get(id).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.multiplicities.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn support(&self) -> impl Iterator<Item = &str> {
        self.multiplicities.keys().map(|k| k.as_str())
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    /// Multiset union: multiplicities add.
    pub fn union(&self, other: &ZeroCycle) -> ZeroCycle {
        let mut out = self.clone();
        for (p, m) in other.iter() {
            out.insert(p, m);
        }
        out
    }

    /// The cycle red(Z): the reduced scheme with multiplicity counted at each
    /// point. Cycles here are already multisets of points, so this is the
    /// identity; it exists to mirror the bookkeeping it names.
    pub fn red(&self) -> ZeroCycle {
        self.clone()
    }

    /// True iff self is a sub-multiset of `other`.
    pub fn subset_of(&self, other: &ZeroCycle) -> bool {
        self.iter().all(|(p, m)| m <= other.multiplicity(p))
    }

    /// Multiset difference self - other; `None` if other is not a subset.
    pub fn difference(&self, other: &ZeroCycle) -> Option<ZeroCycle> {
        if !other.subset_of(self) {
            return None;
        }
        let mut out = ZeroCycle::empty();
        for (p, m) in self.iter() {
            out.insert(p, m - other.multiplicity(p));
        }
        Some(out)
    }

    /// All sub-multisets in a deterministic canonical order: point ids sorted
    /// lexicographically, multiplicity vectors enumerated lexicographically.
    /// There are prod(mult_i + 1) of them.
    pub fn sub_cycles(&self) -> Vec<ZeroCycle> {
        let entries: Vec<(&str, u64)> = self.iter().collect();
        let mut out = Vec::new();
        let mut choice = vec![0u64; entries.len()];
        loop {
            let mut z = ZeroCycle::empty();
            for ((p, _), &c) in entries.iter().zip(&choice) {
                z.insert(p, c);
            }
            out.push(z);
            // Increment the multiplicity vector, most significant entry first
            // so that output order is lexicographic in (sorted ids, mults).
            let mut i = entries.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if choice[i] < entries[i].1 {
                    choice[i] += 1;
                    for c in choice.iter_mut().skip(i + 1) {
                        *c = 0;
                    }
                    break;
                }
            }
        }
    }
}

impl fmt::Display for ZeroCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{m}{p}")?;
            }
        }
        Ok(())
    }
}

/// Rank-1 torsion-free sheaf L (tensor an ideal sheaf of colength ell), as
/// (first Chern class, colength, optional explicit zero-cycle).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankOneData {
    pub c1: NumClass,
    pub colength: u64,
    pub cycle: Option<ZeroCycle>,
}

impl RankOneData {
    pub fn new(c1: NumClass, colength: u64) -> Self {
        RankOneData {
            c1,
            colength,
            cycle: None,
        }
    }

    pub fn with_cycle(c1: NumClass, cycle: ZeroCycle) -> Self {
        RankOneData {
            colength: cycle.length(),
            c1,
            cycle: Some(cycle),
        }
    }

    pub fn of(c1: &[i64], colength: u64) -> Self {
        RankOneData::new(NumClass::of(c1), colength)
    }

    /// The cycle if present, or an empty one when the colength is zero.
    pub fn cycle_or_empty(&self) -> Result<ZeroCycle> {
        match &self.cycle {
            Some(z) => Ok(z.clone()),
            None if self.colength == 0 => Ok(ZeroCycle::empty()),
            None => Err(Error::MissingCycle),
        }
    }

    fn validate(&self, model: &SurfaceModel) -> Result<()> {
        if self.c1.len() != model.rank {
            return Err(Error::DimensionMismatch {
                expected: model.rank,
                got: self.c1.len(),
            });
        }
        if let Some(z) = &self.cycle {
            if z.length() != self.colength {
                return Err(Error::Invariant(format!(
                    "cycle length {} disagrees with colength {}",
                    z.length(),
                    self.colength
                )));
            }
        }
        Ok(())
    }
}

/// Whether the difference class of a rank-1 pair is numerically trivial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairClass {
    U,
    NU,
}

/// A rank-2 sheaf presented as an extension of `quot` by `sub`, with derived
/// Chern data. `split` records whether the presentation is the direct sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionData {
    pub sub: RankOneData,
    pub quot: RankOneData,
    pub split: bool,
    /// c1(V) = c1(sub) + c1(quot).
    pub c1v: NumClass,
    /// c2(V) = c1(sub).c1(quot) + ell(sub) + ell(quot).
    pub c2v: Int,
    /// tau = c1(sub) - c1(quot) = 2 c1(sub) - c1(V).
    pub tau: NumClass,
}

/// The unordered pair gr(V) = sub (+) quot, uniquely determined by V;
/// equality of gr values is s-equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrClass {
    factors: (RankOneData, RankOneData),
}

impl GrClass {
    pub fn new(a: RankOneData, b: RankOneData) -> Self {
        if a <= b {
            GrClass { factors: (a, b) }
        } else {
            GrClass { factors: (b, a) }
        }
    }

    pub fn factors(&self) -> (&RankOneData, &RankOneData) {
        (&self.factors.0, &self.factors.1)
    }
}

/// Build an extension, filling the derived Chern data.
pub fn make_extension(
    sub: RankOneData,
    quot: RankOneData,
    split: bool,
    model: &SurfaceModel,
) -> Result<ExtensionData> {
    sub.validate(model)?;
    quot.validate(model)?;
    let c1v = sub.c1.add(&quot.c1);
    let c2v = model.pair(&sub.c1, &quot.c1)?
        + Int::from(sub.colength)
        + Int::from(quot.colength);
    let tau = sub.c1.sub(&quot.c1);
    let v = ExtensionData {
        sub,
        quot,
        split,
        c1v,
        c2v,
        tau,
    };
    // 4c2 - c1^2 + tau^2 = 4(ell + ell') >= 0, the discriminant identity the
    // wall bound rests on.
    let disc = Int::from(4) * &v.c2v - model.self_pair(&v.c1v)? + model.self_pair(&v.tau)?;
    if disc.is_negative() {
        return Err(Error::Invariant(format!(
            "extension discriminant 4c2 - c1^2 + tau^2 = {disc} is negative"
        )));
    }
    Ok(v)
}

impl ExtensionData {
    /// gr(V) as an unordered pair.
    pub fn gr(&self) -> GrClass {
        GrClass::new(self.sub.clone(), self.quot.clone())
    }

    /// c = 4 c2(V) - c1(V)^2, the wall parameter of the extension's Chern data.
    pub fn wall_parameter(&self, model: &SurfaceModel) -> Result<Int> {
        Ok(Int::from(4) * &self.c2v - model.self_pair(&self.c1v)?)
    }
}

/// U iff the difference class of the pair is numerically trivial.
pub fn classify_pair(
    sub: &RankOneData,
    quot: &RankOneData,
    model: &SurfaceModel,
) -> Result<PairClass> {
    let tau = sub.c1.sub(&quot.c1);
    Ok(if model.numerically_trivial(&tau)? {
        PairClass::U
    } else {
        PairClass::NU
    })
}
