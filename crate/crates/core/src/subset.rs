//! Canonical subsets of a rng together with their closure properties.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use bitflags::bitflags;

use crate::error::{Error, Result};
use crate::rng::{Elem, FiniteRng};
use crate::rrng::RRngStructure;

bitflags! {
    /// Closure properties of a subset, computed against an [`Ambient`].
    ///
    /// The `R_*` flags only make sense when the ambient is an R-rng and are
    /// never set for a bare rng.
    #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
    pub struct SubsetFlags: u16 {
        const ADDITIVE_SUBGROUP = 1 << 0;
        const SUBRNG = 1 << 1;
        const LEFT_IDEAL = 1 << 2;
        const RIGHT_IDEAL = 1 << 3;
        const IDEAL = 1 << 4;
        const LEFT_R_SUBMODULE = 1 << 5;
        const R_SUBBIMODULE = 1 << 6;
        const R_SUBRNG = 1 << 7;
        const R_IDEAL = 1 << 8;
        const LEFT_R_IDEAL = 1 << 9;
    }
}

/// The structure a subset lives in: a bare rng, or the rng `I` of an R-rng
/// (in which case the R-actions are also tested).
#[derive(Clone, Copy)]
pub enum Ambient<'a> {
    Rng(&'a FiniteRng),
    RRng(&'a RRngStructure),
}

impl<'a> Ambient<'a> {
    pub fn rng(&self) -> &'a FiniteRng {
        match *self {
            Ambient::Rng(r) => r,
            Ambient::RRng(x) => x.rng(),
        }
    }

    pub fn rrng(&self) -> Option<&'a RRngStructure> {
        match *self {
            Ambient::Rng(_) => None,
            Ambient::RRng(x) => Some(x),
        }
    }

    pub fn order(&self) -> usize {
        self.rng().order()
    }
}

impl<'a> From<&'a FiniteRng> for Ambient<'a> {
    fn from(r: &'a FiniteRng) -> Self {
        Ambient::Rng(r)
    }
}

impl<'a> From<&'a RRngStructure> for Ambient<'a> {
    fn from(x: &'a RRngStructure) -> Self {
        Ambient::RRng(x)
    }
}

/// A set of element indices, sorted ascending, with cached flags.
///
/// Equality, hashing and ordering only look at the member list, ordered by
/// size first and then lexicographically.
#[derive(Debug, Clone)]
pub struct IdealSubset {
    order: usize,
    members: Vec<Elem>,
    mask: Vec<bool>,
    flags: SubsetFlags,
}

impl PartialEq for IdealSubset {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for IdealSubset {}

impl Hash for IdealSubset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for IdealSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IdealSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl IdealSubset {
    /// Builds the subset and computes all flags against `ambient`.
    pub fn new<'a>(ambient: impl Into<Ambient<'a>>, members: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let ambient = ambient.into();
        let mut s = Self::bare(ambient.order(), members)?;
        s.flags = compute_flags(&s, ambient);
        Ok(s)
    }

    /// Builds the subset without computing any flags.
    pub fn bare(order: usize, members: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let mut mask = vec![false; order];
        for m in members {
            if m >= order {
                return Err(Error::InvalidArgument(format!(
                    "element {m} outside ambient of order {order}"
                )));
            }
            mask[m] = true;
        }
        Ok(Self::from_mask(mask))
    }

    pub fn from_mask(mask: Vec<bool>) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(k, &b)| b.then_some(k))
            .collect();
        IdealSubset {
            order: mask.len(),
            members,
            mask,
            flags: SubsetFlags::empty(),
        }
    }

    pub fn zero<'a>(ambient: impl Into<Ambient<'a>>) -> Self {
        Self::new(ambient, [0]).expect("0 is in range")
    }

    pub fn full<'a>(ambient: impl Into<Ambient<'a>>) -> Self {
        let ambient = ambient.into();
        Self::new(ambient, 0..ambient.order()).expect("all in range")
    }

    /// Recomputes flags against a (possibly different) ambient of the same order.
    pub fn with_flags<'a>(mut self, ambient: impl Into<Ambient<'a>>) -> Self {
        let ambient = ambient.into();
        assert_eq!(ambient.order(), self.order);
        self.flags = compute_flags(&self, ambient);
        self
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask[x]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn ambient_order(&self) -> usize {
        self.order
    }

    pub fn flags(&self) -> SubsetFlags {
        self.flags
    }

    pub fn has(&self, f: SubsetFlags) -> bool {
        self.flags.contains(f)
    }

    /// True for `{0}` (and for the empty set).
    pub fn is_zero(&self) -> bool {
        self.members.iter().all(|&m| m == 0)
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.order
    }

    pub fn is_subset_of(&self, other: &IdealSubset) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersection(&self, other: &IdealSubset) -> IdealSubset {
        Self::from_mask((0..self.order).map(|k| self.mask[k] && other.mask[k]).collect())
    }
}

/// Computes every flag of `members` against `ambient`.
pub fn subset_predicates<'a>(members: &[Elem], ambient: impl Into<Ambient<'a>>) -> Result<IdealSubset> {
    IdealSubset::new(ambient, members.iter().copied())
}

fn compute_flags(s: &IdealSubset, ambient: Ambient<'_>) -> SubsetFlags {
    let rng = ambient.rng();
    let mut f = SubsetFlags::empty();
    if additive_witness(rng, s).is_some() {
        return f;
    }
    f |= SubsetFlags::ADDITIVE_SUBGROUP;
    let sub = subrng_witness(rng, s).is_none();
    let left = left_ideal_witness(rng, s).is_none();
    let right = right_ideal_witness(rng, s).is_none();
    if sub {
        f |= SubsetFlags::SUBRNG;
    }
    if left {
        f |= SubsetFlags::LEFT_IDEAL;
    }
    if right {
        f |= SubsetFlags::RIGHT_IDEAL;
    }
    if left && right {
        f |= SubsetFlags::IDEAL;
    }
    if let Some(x) = ambient.rrng() {
        let lmod = left_action_witness(x, s).is_none();
        let rmod = right_action_witness(x, s).is_none();
        if lmod {
            f |= SubsetFlags::LEFT_R_SUBMODULE;
            if left {
                f |= SubsetFlags::LEFT_R_IDEAL;
            }
        }
        if lmod && rmod {
            f |= SubsetFlags::R_SUBBIMODULE;
            if sub {
                f |= SubsetFlags::R_SUBRNG;
            }
            if left && right {
                f |= SubsetFlags::R_IDEAL;
            }
        }
    }
    f
}

/// `[a, b]` with `a + b` outside `s`, or `[]` when 0 is missing.
pub fn additive_witness(rng: &FiniteRng, s: &IdealSubset) -> Option<Vec<Elem>> {
    if !s.contains(0) {
        return Some(vec![]);
    }
    for &a in &s.members {
        for &b in &s.members {
            if !s.contains(rng.add(a, b)) {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

pub fn subrng_witness(rng: &FiniteRng, s: &IdealSubset) -> Option<Vec<Elem>> {
    for &a in &s.members {
        for &b in &s.members {
            if !s.contains(rng.mul(a, b)) {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

/// `[x, a]` with `x * a` outside `s`.
pub fn left_ideal_witness(rng: &FiniteRng, s: &IdealSubset) -> Option<Vec<Elem>> {
    for x in rng.elements() {
        for &a in &s.members {
            if !s.contains(rng.mul(x, a)) {
                return Some(vec![x, a]);
            }
        }
    }
    None
}

/// `[a, x]` with `a * x` outside `s`.
pub fn right_ideal_witness(rng: &FiniteRng, s: &IdealSubset) -> Option<Vec<Elem>> {
    for &a in &s.members {
        for x in rng.elements() {
            if !s.contains(rng.mul(a, x)) {
                return Some(vec![a, x]);
            }
        }
    }
    None
}

/// `[r, a]` with `r . a` outside `s`.
pub fn left_action_witness(x: &RRngStructure, s: &IdealSubset) -> Option<Vec<Elem>> {
    for r in x.base().elements() {
        for &a in &s.members {
            if !s.contains(x.lact(r, a)) {
                return Some(vec![r, a]);
            }
        }
    }
    None
}

/// `[a, r]` with `a . r` outside `s`.
pub fn right_action_witness(x: &RRngStructure, s: &IdealSubset) -> Option<Vec<Elem>> {
    for &a in &s.members {
        for r in x.base().elements() {
            if !s.contains(x.ract(a, r)) {
                return Some(vec![a, r]);
            }
        }
    }
    None
}

/// Fails with `NotAnIdeal` unless `s` is a two-sided ideal of `rng`.
pub fn require_ideal(rng: &FiniteRng, s: &IdealSubset) -> Result<()> {
    if let Some(w) = additive_witness(rng, s) {
        return Err(Error::NotAnIdeal {
            kind: "an additive subgroup",
            witness: w,
        });
    }
    if let Some(w) = left_ideal_witness(rng, s) {
        return Err(Error::NotAnIdeal {
            kind: "a left ideal",
            witness: w,
        });
    }
    if let Some(w) = right_ideal_witness(rng, s) {
        return Err(Error::NotAnIdeal {
            kind: "a right ideal",
            witness: w,
        });
    }
    Ok(())
}

/// Fails with `NotAnIdeal` unless `s` is an R-ideal of the R-rng `x`.
pub fn require_r_ideal(x: &RRngStructure, s: &IdealSubset) -> Result<()> {
    require_ideal(x.rng(), s)?;
    if let Some(w) = left_action_witness(x, s).or_else(|| right_action_witness(x, s)) {
        return Err(Error::NotAnIdeal {
            kind: "an R-subbimodule",
            witness: w,
        });
    }
    Ok(())
}

/// Fails with `NotAnIdeal` unless `s` is an R-subrng of the R-rng `x`.
pub fn require_r_subrng(x: &RRngStructure, s: &IdealSubset) -> Result<()> {
    if let Some(w) = additive_witness(x.rng(), s) {
        return Err(Error::NotAnIdeal {
            kind: "an additive subgroup",
            witness: w,
        });
    }
    if let Some(w) = subrng_witness(x.rng(), s) {
        return Err(Error::NotAnIdeal {
            kind: "a subrng",
            witness: w,
        });
    }
    if let Some(w) = left_action_witness(x, s).or_else(|| right_action_witness(x, s)) {
        return Err(Error::NotAnIdeal {
            kind: "an R-subbimodule",
            witness: w,
        });
    }
    Ok(())
}
