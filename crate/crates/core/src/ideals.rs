//! Generated ideals, ideal lattices and nilpotency.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rng::{Elem, FiniteRng};
use crate::rrng::RRngStructure;
use crate::subset::{Ambient, IdealSubset};

/// The kind of substructure to generate or enumerate. The `R*` kinds need an
/// R-rng ambient; the others refer to the ambient rng's own multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealKind {
    AdditiveSubgroup,
    Subrng,
    TwoSided,
    Left,
    Right,
    RIdeal,
    RSubrng,
    LeftRIdeal,
    LeftRSubmodule,
}

impl IdealKind {
    fn needs_rrng(self) -> bool {
        matches!(
            self,
            IdealKind::RIdeal | IdealKind::RSubrng | IdealKind::LeftRIdeal | IdealKind::LeftRSubmodule
        )
    }

    fn products(self) -> bool {
        matches!(self, IdealKind::Subrng | IdealKind::RSubrng)
    }

    fn left_mult(self) -> bool {
        matches!(
            self,
            IdealKind::TwoSided | IdealKind::Left | IdealKind::RIdeal | IdealKind::LeftRIdeal
        )
    }

    fn right_mult(self) -> bool {
        matches!(self, IdealKind::TwoSided | IdealKind::Right | IdealKind::RIdeal)
    }

    fn left_action(self) -> bool {
        matches!(
            self,
            IdealKind::RIdeal | IdealKind::RSubrng | IdealKind::LeftRIdeal | IdealKind::LeftRSubmodule
        )
    }

    fn right_action(self) -> bool {
        matches!(self, IdealKind::RIdeal | IdealKind::RSubrng)
    }

    /// Whether the elementwise sum of two members is again a member.
    fn closed_under_sums(self) -> bool {
        !self.products()
    }
}

/// Worklist closure of `seed` (plus 0) under the operations of `kind`.
/// Panics if an R-kind is used with a bare rng ambient; see
/// [`generated_ideal`] for the checked entry point.
pub(crate) fn generated(ambient: Ambient<'_>, seed: &[Elem], kind: IdealKind) -> IdealSubset {
    let rng = ambient.rng();
    let x = ambient.rrng();
    assert!(!kind.needs_rrng() || x.is_some(), "{kind:?} needs an R-rng ambient");
    let n = rng.order();
    let mut mask = vec![false; n];
    let mut list: Vec<Elem> = Vec::new();
    let push = |e: Elem, mask: &mut Vec<bool>, list: &mut Vec<Elem>| {
        if !mask[e] {
            mask[e] = true;
            list.push(e);
        }
    };
    push(0, &mut mask, &mut list);
    for &s in seed {
        push(s, &mut mask, &mut list);
    }
    let mut k = 0;
    while k < list.len() {
        let a = list[k];
        k += 1;
        let mut j = 0;
        while j < list.len() {
            let b = list[j];
            j += 1;
            push(rng.add(a, b), &mut mask, &mut list);
            if kind.products() {
                push(rng.mul(a, b), &mut mask, &mut list);
                push(rng.mul(b, a), &mut mask, &mut list);
            }
        }
        if kind.left_mult() || kind.right_mult() {
            for e in rng.elements() {
                if kind.left_mult() {
                    push(rng.mul(e, a), &mut mask, &mut list);
                }
                if kind.right_mult() {
                    push(rng.mul(a, e), &mut mask, &mut list);
                }
            }
        }
        if let Some(x) = x {
            if kind.left_action() || kind.right_action() {
                for r in x.base().elements() {
                    if kind.left_action() {
                        push(x.lact(r, a), &mut mask, &mut list);
                    }
                    if kind.right_action() {
                        push(x.ract(a, r), &mut mask, &mut list);
                    }
                }
            }
        }
    }
    IdealSubset::from_mask(mask).with_flags(ambient)
}

/// Least substructure of the given kind containing `seed`.
pub fn generated_ideal<'a>(ambient: impl Into<Ambient<'a>>, seed: &[Elem], kind: IdealKind) -> Result<IdealSubset> {
    let ambient = ambient.into();
    if kind.needs_rrng() && ambient.rrng().is_none() {
        return Err(Error::InvalidArgument(format!("{kind:?} needs an R-rng ambient")));
    }
    if let Some(&bad) = seed.iter().find(|&&s| s >= ambient.order()) {
        return Err(Error::InvalidArgument(format!("seed element {bad} out of range")));
    }
    Ok(generated(ambient, seed, kind))
}

fn sum_set(rng: &FiniteRng, a: &IdealSubset, b: &IdealSubset) -> IdealSubset {
    let mut mask = vec![false; rng.order()];
    for &x in a.members() {
        for &y in b.members() {
            mask[rng.add(x, y)] = true;
        }
    }
    IdealSubset::from_mask(mask)
}

/// Every substructure of the given kind, sorted by size and then by member
/// list. Computed as the join closure of the one-generated substructures.
pub fn enumerate_ideals<'a>(ambient: impl Into<Ambient<'a>>, kind: IdealKind, limits: &Limits) -> Result<Vec<IdealSubset>> {
    let ambient = ambient.into();
    if kind.needs_rrng() && ambient.rrng().is_none() {
        return Err(Error::InvalidArgument(format!("{kind:?} needs an R-rng ambient")));
    }
    limits.check_enumeration(ambient.order())?;
    let rng = ambient.rng();
    let mut principals: Vec<IdealSubset> = Vec::new();
    let mut seen_p: HashSet<Vec<Elem>> = HashSet::new();
    for e in rng.elements() {
        let p = generated(ambient, &[e], kind);
        if seen_p.insert(p.members().to_vec()) {
            principals.push(p);
        }
    }
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    let mut all: Vec<IdealSubset> = Vec::new();
    let mut queue: Vec<IdealSubset> = Vec::new();
    for p in &principals {
        if seen.insert(p.members().to_vec()) {
            queue.push(p.clone());
        }
    }
    let mut budget = limits.search_budget;
    while let Some(cur) = queue.pop() {
        for p in &principals {
            if p.is_subset_of(&cur) {
                continue;
            }
            budget = budget.saturating_sub(1);
            if budget == 0 {
                return Err(Error::SearchBudgetExceeded {
                    budget: limits.search_budget,
                });
            }
            let joined = if kind.closed_under_sums() {
                sum_set(rng, &cur, p)
            } else {
                let mut seed = cur.members().to_vec();
                seed.extend_from_slice(p.members());
                generated(ambient, &seed, kind)
            };
            if seen.insert(joined.members().to_vec()) {
                queue.push(joined);
            }
        }
        all.push(cur);
    }
    let mut out: Vec<IdealSubset> = all.into_iter().map(|s| s.with_flags(ambient)).collect();
    out.sort();
    Ok(out)
}

/// Additive closure of a set of elements.
pub fn span(rng: &FiniteRng, elems: &[Elem]) -> IdealSubset {
    generated(Ambient::Rng(rng), elems, IdealKind::AdditiveSubgroup)
}

/// Additive span of `{ab : a in A, b in B}`.
pub fn product_set(rng: &FiniteRng, a: &[Elem], b: &[Elem]) -> IdealSubset {
    let mut mask = vec![false; rng.order()];
    for &x in a {
        for &y in b {
            mask[rng.mul(x, y)] = true;
        }
    }
    let prods: Vec<Elem> = (0..rng.order()).filter(|&e| mask[e]).collect();
    span(rng, &prods)
}

/// Least `n` with `K^n = 0`, or `None` if the powers stabilise above zero.
pub fn nilpotency_exponent(rng: &FiniteRng, k: &IdealSubset) -> Option<usize> {
    let mut p = span(rng, k.members());
    let mut n = 1;
    loop {
        if p.is_zero() {
            return Some(n);
        }
        let next = product_set(rng, p.members(), k.members());
        if next == p {
            return None;
        }
        p = next;
        n += 1;
    }
}

/// Least `n` with `x^n = 0`, if any.
pub fn element_nil_exponent(rng: &FiniteRng, x: Elem) -> Option<usize> {
    let mut p = x;
    for n in 1..=rng.order() + 1 {
        if p == 0 {
            return Some(n);
        }
        p = rng.mul(p, x);
    }
    None
}

/// Largest element nil exponent over `K`, or `None` if some member is not
/// nilpotent.
pub fn nil_exponent(rng: &FiniteRng, k: &IdealSubset) -> Option<usize> {
    k.members()
        .iter()
        .map(|&x| element_nil_exponent(rng, x))
        .try_fold(1, |acc, e| e.map(|e| acc.max(e)))
}

pub fn is_nilpotent_ideal(rng: &FiniteRng, k: &IdealSubset) -> (bool, Option<usize>) {
    let e = nilpotency_exponent(rng, k);
    (e.is_some(), e)
}

pub fn is_nil_ideal(rng: &FiniteRng, k: &IdealSubset) -> (bool, Option<usize>) {
    let e = nil_exponent(rng, k);
    (e.is_some(), e)
}

/// `ann_I(I) = {i : iI = Ii = 0}`.
pub fn rng_annihilator(rng: &FiniteRng) -> IdealSubset {
    let members = rng
        .elements()
        .filter(|&i| rng.elements().all(|j| rng.mul(i, j) == 0 && rng.mul(j, i) == 0));
    IdealSubset::new(rng, members).expect("in range")
}

/// For every ideal `J` of `I`: the R-ideal `K` it generates equals the
/// additive span of `RJR`, `K^3` lies in `J`, and `J`, `K` agree on being nil
/// and nilpotent. Returns the number of ideals checked.
pub fn check_generated_r_ideals(x: &RRngStructure, limits: &Limits) -> Result<usize> {
    let i = x.rng();
    let r = x.base();
    let ideals = enumerate_ideals(i, IdealKind::TwoSided, limits)?;
    for j in &ideals {
        let k = generated(Ambient::RRng(x), j.members(), IdealKind::RIdeal);
        let mut rjr = Vec::new();
        for a in r.elements() {
            for &m in j.members() {
                let am = x.lact(a, m);
                rjr.extend(r.elements().map(|b| x.ract(am, b)));
            }
        }
        let rjr = span(i, &rjr);
        let fail = |s: &str| Err(Error::Discrepancy(format!("{s} for J = {:?}", j.members())));
        if rjr.members() != k.members() {
            return fail("R-ideal generated by J differs from RJR");
        }
        let k2 = product_set(i, k.members(), k.members());
        let k3 = product_set(i, k2.members(), k.members());
        if !k3.is_subset_of(j) {
            return fail("K^3 escapes J");
        }
        if nil_exponent(i, j).is_some() != nil_exponent(i, &k).is_some() {
            return fail("nil differs between J and K");
        }
        if nilpotency_exponent(i, j).is_some() != nilpotency_exponent(i, &k).is_some() {
            return fail("nilpotent differs between J and K");
        }
    }
    Ok(ideals.len())
}
