//! Jacobson radical and upper nil radical, by definition and through the
//! membership criteria for `E(R, I)`.

use crate::dorroh::DorrohRing;
use crate::error::{Error, Result};
use crate::ideals::{element_nil_exponent, enumerate_ideals, generated, is_nil_ideal, IdealKind};
use crate::limits::Limits;
use crate::rng::{Elem, FiniteRng};
use crate::rrng::is_centrally_generated;
use crate::subset::{require_r_ideal, Ambient, IdealSubset, SubsetFlags};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RadicalMethod {
    Definition,
    Theorem,
}

/// Evidence kept for each member of a computed radical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RadicalWitness {
    /// `i + left + left*i = 0` and `i + right + i*right = 0`.
    QuasiInverse { element: Elem, left: Elem, right: Elem },
    /// Every element of the ideal generated by `element` has `x^exponent = 0`.
    NilIndex { element: Elem, exponent: usize },
    /// Membership decided by the criterion, no per-element certificate.
    Criterion { element: Elem },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalReport {
    pub radical: IdealSubset,
    pub method: RadicalMethod,
    pub witnesses: Vec<RadicalWitness>,
}

/// Least `k` with `i + k + ki = 0` (left) or `i + k + ik = 0` (right).
pub fn quasi_regular_witness(rng: &FiniteRng, i: Elem, side: Side) -> Option<Elem> {
    rng.elements().find(|&k| {
        let p = match side {
            Side::Left => rng.mul(k, i),
            Side::Right => rng.mul(i, k),
        };
        rng.add(rng.add(i, k), p) == 0
    })
}

pub fn is_quasi_regular(rng: &FiniteRng, i: Elem, side: Side) -> bool {
    quasi_regular_witness(rng, i, side).is_some()
}

fn qr_table(rng: &FiniteRng, side: Side) -> Vec<Option<Elem>> {
    rng.elements().map(|i| quasi_regular_witness(rng, i, side)).collect()
}

/// `{i : ji left quasi-regular for all j}`, checked against the right-handed
/// description and against the two-sided ideal test.
pub fn jacobson_radical(rng: &FiniteRng) -> Result<RadicalReport> {
    let left = qr_table(rng, Side::Left);
    let right = qr_table(rng, Side::Right);
    let lset: Vec<Elem> = rng
        .elements()
        .filter(|&i| rng.elements().all(|j| left[rng.mul(j, i)].is_some()))
        .collect();
    let rset: Vec<Elem> = rng
        .elements()
        .filter(|&i| rng.elements().all(|j| right[rng.mul(i, j)].is_some()))
        .collect();
    if lset != rset {
        return Err(Error::Discrepancy(format!(
            "left-handed radical {lset:?} differs from right-handed {rset:?}"
        )));
    }
    let mut witnesses = Vec::with_capacity(lset.len());
    for &i in &lset {
        match (left[i], right[i]) {
            (Some(l), Some(r)) => witnesses.push(RadicalWitness::QuasiInverse {
                element: i,
                left: l,
                right: r,
            }),
            _ => {
                return Err(Error::Discrepancy(format!(
                    "radical member {i} is not quasi-regular on both sides"
                )))
            }
        }
    }
    let radical = IdealSubset::new(rng, lset)?;
    if !radical.has(SubsetFlags::IDEAL | SubsetFlags::ADDITIVE_SUBGROUP) {
        return Err(Error::Discrepancy("Jacobson radical fails the ideal test".into()));
    }
    Ok(RadicalReport {
        radical,
        method: RadicalMethod::Definition,
        witnesses,
    })
}

/// For a ring: `{i : for all j there is k with k(1 - ji) = 1}`, asserted equal
/// to `{i : for all j there is k with (1 - ij)k = 1}`.
pub fn radical_via_inverses(rng: &FiniteRng) -> Result<IdealSubset> {
    let one = rng.unit().ok_or(Error::NotUnital)?;
    let left_inv: Vec<bool> = rng
        .elements()
        .map(|x| rng.elements().any(|k| rng.mul(k, x) == one))
        .collect();
    let right_inv: Vec<bool> = rng
        .elements()
        .map(|x| rng.elements().any(|k| rng.mul(x, k) == one))
        .collect();
    let l: Vec<Elem> = rng
        .elements()
        .filter(|&i| rng.elements().all(|j| left_inv[rng.sub(one, rng.mul(j, i))]))
        .collect();
    let r: Vec<Elem> = rng
        .elements()
        .filter(|&i| rng.elements().all(|j| right_inv[rng.sub(one, rng.mul(i, j))]))
        .collect();
    if l != r {
        return Err(Error::Discrepancy(format!("{l:?} and {r:?} differ")));
    }
    IdealSubset::new(rng, l)
}

/// `Nil*(I)` as `{i : <i> is nil}`.
pub fn upper_nil_radical(rng: &FiniteRng) -> RadicalReport {
    let mut members = Vec::new();
    let mut witnesses = Vec::new();
    for i in rng.elements() {
        if element_nil_exponent(rng, i).is_none() {
            continue;
        }
        let k = generated(Ambient::Rng(rng), &[i], IdealKind::TwoSided);
        if let (true, Some(exponent)) = is_nil_ideal(rng, &k) {
            members.push(i);
            witnesses.push(RadicalWitness::NilIndex { element: i, exponent });
        }
    }
    RadicalReport {
        radical: IdealSubset::new(rng, members).expect("in range"),
        method: RadicalMethod::Definition,
        witnesses,
    }
}

/// [`upper_nil_radical`] cross-checked against the sum of all nil ideals.
pub fn upper_nil_radical_checked(rng: &FiniteRng, limits: &Limits) -> Result<RadicalReport> {
    let rep = upper_nil_radical(rng);
    if !rep.radical.has(SubsetFlags::IDEAL | SubsetFlags::ADDITIVE_SUBGROUP) || !is_nil_ideal(rng, &rep.radical).0 {
        return Err(Error::Discrepancy("Nil* is not a nil ideal".into()));
    }
    for k in enumerate_ideals(rng, IdealKind::TwoSided, limits)? {
        if is_nil_ideal(rng, &k).0 && !k.is_subset_of(&rep.radical) {
            return Err(Error::Discrepancy(format!(
                "nil ideal {:?} escapes Nil*",
                k.members()
            )));
        }
    }
    Ok(rep)
}

/// The radicals of `R`, `I` and `E(R, I)` for one radical notion.
#[derive(Debug, Clone)]
pub struct ExtensionRadicals {
    pub base: RadicalReport,
    pub rng: RadicalReport,
    pub whole: RadicalReport,
}

impl ExtensionRadicals {
    pub fn jacobson(e: &DorrohRing) -> Result<Self> {
        Ok(ExtensionRadicals {
            base: jacobson_radical(e.base())?,
            rng: jacobson_radical(e.rng())?,
            whole: jacobson_radical(e.ring())?,
        })
    }

    pub fn upper_nil(e: &DorrohRing) -> Self {
        ExtensionRadicals {
            base: upper_nil_radical(e.base()),
            rng: upper_nil_radical(e.rng()),
            whole: upper_nil_radical(e.ring()),
        }
    }

    /// Conditions (2) `jr + ji` and (3) `rj + ij`, both required to lie in the
    /// radical of `I` for every `j`, with `r` in the radical of `R`.
    pub fn conditions(&self, e: &DorrohRing, r: Elem, i: Elem) -> (bool, bool) {
        let x = e.source();
        let ir = e.rng();
        let (rr, ri) = (&self.base.radical, &self.rng.radical);
        if !rr.contains(r) {
            return (false, false);
        }
        let c2 = ir.elements().all(|j| ri.contains(ir.add(x.ract(j, r), ir.mul(j, i))));
        let c3 = ir.elements().all(|j| ri.contains(ir.add(x.lact(r, j), ir.mul(i, j))));
        (c2, c3)
    }

    /// Condition (2), after checking it agrees with (3).
    pub fn theorem_member(&self, e: &DorrohRing, r: Elem, i: Elem) -> Result<bool> {
        let (c2, c3) = self.conditions(e, r, i);
        if c2 != c3 {
            return Err(Error::Discrepancy(format!(
                "conditions (2) and (3) disagree at ({r}, {i})"
            )));
        }
        Ok(c2)
    }

    /// The radical of `E` as predicted by the criterion.
    pub fn theorem_radical(&self, e: &DorrohRing) -> Result<RadicalReport> {
        let mut members = Vec::new();
        for x in e.ring().elements() {
            let (r, i) = e.decode(x);
            if self.theorem_member(e, r, i)? {
                members.push(x);
            }
        }
        let witnesses = members.iter().map(|&element| RadicalWitness::Criterion { element }).collect();
        Ok(RadicalReport {
            radical: IdealSubset::new(e.ring(), members)?,
            method: RadicalMethod::Theorem,
            witnesses,
        })
    }

    /// First element where the criterion and the definition disagree.
    pub fn first_disagreement(&self, e: &DorrohRing) -> Result<Option<Elem>> {
        for x in e.ring().elements() {
            let (r, i) = e.decode(x);
            if self.theorem_member(e, r, i)? != self.whole.radical.contains(x) {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    /// Whether the radical of `E` is the direct sum of those of `R` and `I`,
    /// asserting this matches both `I rad(R)` and `rad(R) I` lying in `rad(I)`.
    pub fn direct_sum_criterion(&self, e: &DorrohRing) -> Result<bool> {
        let x = e.source();
        let (rr, ri) = (&self.base.radical, &self.rng.radical);
        let sum = e.direct_sum(rr.members(), ri.members());
        let c1 = self.whole.radical == sum;
        let c2 = rr.members().iter().all(|&r| e.rng().elements().all(|i| ri.contains(x.ract(i, r))));
        let c3 = rr.members().iter().all(|&r| e.rng().elements().all(|i| ri.contains(x.lact(r, i))));
        if c1 != c2 || c2 != c3 {
            return Err(Error::Discrepancy(format!(
                "direct-sum criterion disagrees: {c1} {c2} {c3}"
            )));
        }
        Ok(c1)
    }

    /// `I` meets the radical of `E` exactly in the radical of `I`, and the
    /// `(r, 0)` and `(0, i)` clauses hold.
    pub fn check_clauses(&self, e: &DorrohRing) -> Result<()> {
        let x = e.source();
        let ir = e.rng();
        let (rr, ri, re) = (&self.base.radical, &self.rng.radical, &self.whole.radical);
        for i in ir.elements() {
            if re.contains(e.encode(0, i)) != ri.contains(i) {
                return Err(Error::Discrepancy(format!("(0, {i}) clause fails")));
            }
        }
        for r in e.base().elements() {
            let predicted = rr.contains(r)
                && ir
                    .elements()
                    .all(|i| ri.contains(x.lact(r, i)) && ri.contains(x.ract(i, r)));
            if re.contains(e.encode(r, 0)) != predicted {
                return Err(Error::Discrepancy(format!("({r}, 0) clause fails")));
            }
        }
        require_r_ideal(x, &IdealSubset::new(x, ri.members().iter().copied())?)
            .map_err(|_| Error::Discrepancy("radical of I is not an R-ideal".into()))
    }
}

/// Condition (2) for the Jacobson radical of `E(R, I)` at `(r, i)`.
pub fn rad_membership_theorem(e: &DorrohRing, r: Elem, i: Elem) -> Result<bool> {
    ExtensionRadicals::jacobson(e)?.theorem_member(e, r, i)
}

/// Condition (2) for the upper nil radical of `E(R, I)` at `(r, i)`.
pub fn nil_membership_theorem(e: &DorrohRing, r: Elem, i: Elem) -> Result<bool> {
    ExtensionRadicals::upper_nil(e).theorem_member(e, r, i)
}

pub fn rad_direct_sum_criterion(e: &DorrohRing) -> Result<bool> {
    ExtensionRadicals::jacobson(e)?.direct_sum_criterion(e)
}

/// Everything checked about the Jacobson radical of one extension.
#[derive(Debug, Clone)]
pub struct RadCheck {
    pub radicals: ExtensionRadicals,
    pub direct_sum: bool,
    pub centrally_generated: bool,
}

/// Criterion vs definition on every element, the clauses, the direct-sum
/// corollary, the inverse description for rings, and the central case.
pub fn verify_rad_theorem(e: &DorrohRing) -> Result<RadCheck> {
    let rads = ExtensionRadicals::jacobson(e)?;
    if let Some(x) = rads.first_disagreement(e)? {
        return Err(Error::Discrepancy(format!(
            "rad membership of {} disagrees with the criterion",
            e.ring().label(x)
        )));
    }
    rads.check_clauses(e)?;
    let direct_sum = rads.direct_sum_criterion(e)?;
    for (ring, def) in [(e.base(), &rads.base), (e.ring(), &rads.whole)] {
        if radical_via_inverses(ring)? != def.radical {
            return Err(Error::Discrepancy("quasi-regular and inverse radicals differ".into()));
        }
    }
    let (central, _) = is_centrally_generated(e.source());
    if central && !direct_sum {
        return Err(Error::Discrepancy(
            "centrally generated but radical is not a direct sum".into(),
        ));
    }
    Ok(RadCheck {
        radicals: rads,
        direct_sum,
        centrally_generated: central,
    })
}

/// Criterion vs definition for `Nil*`, the clauses, the power form on
/// every element for `n` up to `max_power`, and `Nil*(E)` inside `rad(E)`.
/// With `cross_check`, each `Nil*` is also compared with the sum of nil ideals.
pub fn verify_nil_theorem(
    e: &DorrohRing,
    max_power: usize,
    cross_check: Option<&Limits>,
) -> Result<ExtensionRadicals> {
    let nils = match cross_check {
        Some(l) => ExtensionRadicals {
            base: upper_nil_radical_checked(e.base(), l)?,
            rng: upper_nil_radical_checked(e.rng(), l)?,
            whole: upper_nil_radical_checked(e.ring(), l)?,
        },
        None => ExtensionRadicals::upper_nil(e),
    };
    if let Some(x) = nils.first_disagreement(e)? {
        return Err(Error::Discrepancy(format!(
            "Nil* membership of {} disagrees with the criterion",
            e.ring().label(x)
        )));
    }
    nils.check_clauses(e)?;
    let rad = jacobson_radical(e.ring())?;
    if !nils.whole.radical.is_subset_of(&rad.radical) {
        return Err(Error::Discrepancy("Nil*(E) is not inside rad(E)".into()));
    }
    for x in e.ring().elements() {
        let (r, i) = e.decode(x);
        for n in 1..=max_power {
            power_form_check(e, r, i, n)?;
        }
    }
    Ok(nils)
}

/// Checks `(r, i)^n = (r^n, jr + ji + r^(n-1) i)` for some `j`, and the mirror
/// form `(r^n, rk + ik + i r^(n-1))`; returns the least `j`.
pub fn power_form_check(e: &DorrohRing, r: Elem, i: Elem, n: usize) -> Result<Elem> {
    if n == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let (rb, ir, x) = (e.base(), e.rng(), e.source());
    let (p, q) = e.decode(e.ring().pow(e.encode(r, i), n));
    if p != rb.pow(r, n) {
        return Err(Error::Discrepancy(format!("first coordinate of ({r}, {i})^{n}")));
    }
    let rn1 = if n == 1 { rb.unit().expect("unital base") } else { rb.pow(r, n - 1) };
    let left_tail = x.lact(rn1, i);
    let right_tail = x.ract(i, rn1);
    let j = ir
        .elements()
        .find(|&j| ir.add(ir.add(x.ract(j, r), ir.mul(j, i)), left_tail) == q);
    let k = ir
        .elements()
        .find(|&k| ir.add(ir.add(x.lact(r, k), ir.mul(i, k)), right_tail) == q);
    match (j, k) {
        (Some(j), Some(_)) => Ok(j),
        _ => Err(Error::Discrepancy(format!("no power-form witness for ({r}, {i})^{n}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::*;
    use crate::dorroh::dorroh_extend;
    use crate::rrng::{canonical_action, ideal_as_rrng};

    fn lim() -> Limits {
        Limits::default()
    }

    /// Oracle: the radical straight from the defining sentence, with no tables.
    fn brute_rad(r: &FiniteRng) -> Vec<Elem> {
        r.elements()
            .filter(|&i| {
                r.elements().all(|j| {
                    let ji = r.mul(j, i);
                    r.elements().any(|k| r.add(r.add(ji, k), r.mul(k, ji)) == 0)
                })
            })
            .collect()
    }

    #[test]
    fn quasi_regular_examples() {
        let z2 = cyclic_ring(2, &lim()).unwrap();
        let t = trivial_mult_rng(&cyclic_ring(6, &lim()).unwrap());
        for i in t.elements() {
            assert_eq!(quasi_regular_witness(&t, i, Side::Left), Some(t.neg(i)));
        }
        let z4 = cyclic_ring(4, &lim()).unwrap();
        assert_eq!(quasi_regular_witness(&z4, 2, Side::Left), Some(2));
        let m2 = matrix_ring(&z2, 2, &lim()).unwrap();
        assert!(!is_quasi_regular(&m2, 8, Side::Left));
    }

    #[test]
    fn small_radicals() {
        let z2 = cyclic_ring(2, &lim()).unwrap();
        let z4 = cyclic_ring(4, &lim()).unwrap();
        assert_eq!(jacobson_radical(&z4).unwrap().radical.members(), &[0, 2]);
        let m2 = matrix_ring(&z2, 2, &lim()).unwrap();
        assert_eq!(jacobson_radical(&m2).unwrap().radical.members(), &[0]);
        let t2 = upper_triangular_ring(&z2, 2, &lim()).unwrap();
        assert_eq!(jacobson_radical(&t2).unwrap().radical.members(), &[0, 2]);
        for r in [&z4, &m2, &t2, &cyclic_ring(12, &lim()).unwrap()] {
            assert_eq!(jacobson_radical(r).unwrap().radical.members(), brute_rad(r).as_slice());
            assert_eq!(radical_via_inverses(r).unwrap(), jacobson_radical(r).unwrap().radical);
        }
    }

    #[test]
    fn nil_radicals() {
        let z12 = cyclic_ring(12, &lim()).unwrap();
        assert_eq!(upper_nil_radical_checked(&z12, &lim()).unwrap().radical.members(), &[0, 6]);
        let m2 = matrix_ring(&cyclic_ring(2, &lim()).unwrap(), 2, &lim()).unwrap();
        assert_eq!(upper_nil_radical(&m2).radical.members(), &[0]);
        let t = trivial_mult_rng(&cyclic_ring(4, &lim()).unwrap());
        assert!(upper_nil_radical(&t).radical.is_full());
    }

    #[test]
    fn matrix_extension_radical() {
        let f2 = cyclic_ring(2, &lim()).unwrap();
        let t2 = upper_triangular_ring(&f2, 2, &lim()).unwrap();
        let m2 = matrix_ring(&f2, 2, &lim()).unwrap();
        let e = dorroh_extend(&canonical_action(&t2, &m2).unwrap(), &lim()).unwrap();
        let check = verify_rad_theorem(&e).unwrap();
        let k = e.encode(2, 4);
        assert_eq!(check.radicals.whole.radical.members(), &[0, k]);
        assert!(!check.direct_sum);
        assert!(rad_membership_theorem(&e, 2, 4).unwrap());
        let nils = verify_nil_theorem(&e, 3, Some(&lim())).unwrap();
        assert_eq!(nils.whole.radical, check.radicals.whole.radical);
    }

    #[test]
    fn direct_sum_examples() {
        let z6 = cyclic_ring(6, &lim()).unwrap();
        let e = dorroh_extend(&ideal_as_rrng(&z6, &IdealSubset::full(&z6)).unwrap(), &lim()).unwrap();
        assert!(rad_direct_sum_criterion(&e).unwrap());
        let z4 = cyclic_ring(4, &lim()).unwrap();
        let triv = trivial_mult_rng(&cyclic_ring(2, &lim()).unwrap());
        let e = dorroh_extend(&canonical_action(&z4, &triv).unwrap(), &lim()).unwrap();
        assert!(rad_direct_sum_criterion(&e).unwrap());
        verify_rad_theorem(&e).unwrap();
    }

    #[test]
    fn nil_clause_with_z12() {
        let z12 = cyclic_ring(12, &lim()).unwrap();
        let triv = trivial_mult_rng(&cyclic_ring(2, &lim()).unwrap());
        let e = dorroh_extend(&canonical_action(&z12, &triv).unwrap(), &lim()).unwrap();
        assert!(nil_membership_theorem(&e, 6, 0).unwrap());
        verify_nil_theorem(&e, 4, Some(&lim())).unwrap();
    }

    #[test]
    fn power_form_examples() {
        let z2 = cyclic_ring(2, &lim()).unwrap();
        let e = dorroh_extend(&ideal_as_rrng(&z2, &IdealSubset::full(&z2)).unwrap(), &lim()).unwrap();
        assert_eq!(power_form_check(&e, 1, 1, 1).unwrap(), 0);
        power_form_check(&e, 1, 1, 2).unwrap();
        assert_eq!(e.decode(e.ring().pow(e.encode(1, 1), 2)).0, 1);
        let z4 = cyclic_ring(4, &lim()).unwrap();
        let e = dorroh_extend(&ideal_as_rrng(&z4, &IdealSubset::new(&z4, [0, 2]).unwrap()).unwrap(), &lim()).unwrap();
        for x in e.ring().elements() {
            let (r, i) = e.decode(x);
            power_form_check(&e, r, i, 3).unwrap();
        }
        assert!(power_form_check(&e, 1, 0, 0).is_err());
    }
}
