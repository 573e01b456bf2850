//! Prime and maximal ideals of `E(R, I)` when `I` carries a multiplicative
//! retraction `phi : I -> R`, and the local-ring test.

use crate::dorroh::DorrohRing;
use crate::error::{Error, Result};
use crate::homs::{enumerate_homs, psi_automorphism, retraction_witness, HomConstraints, HomTarget, RHomomorphism};
use crate::ideals::{enumerate_ideals, IdealKind};
use crate::limits::Limits;
use crate::prime::{is_maximal_ideal, is_prime_ideal, is_prime_rng};
use crate::rng::{Elem, FiniteRng};
use crate::rrng::{direct_sum_coordinates, direct_sum_rrng, RRngStructure};
use crate::subset::{Ambient, IdealSubset, SubsetFlags};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeForm {
    /// `A + I`.
    Sum,
    /// `{(a, -i) : a - phi(i) in Z}`.
    Graph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedPrime {
    pub form: PrimeForm,
    /// `A` for the sum form, `Z` for the graph form.
    pub base: IdealSubset,
    /// Which summand's retraction was used, for direct sums.
    pub summand: Option<usize>,
    pub members: IdealSubset,
}

fn require_retraction(x: &RRngStructure, phi: &RHomomorphism) -> Result<()> {
    if let Some((a, b)) = retraction_witness(x, phi) {
        return Err(Error::NotARetraction { witness: vec![a, b] });
    }
    if let Some((what, w)) = phi.failure(x) {
        return Err(Error::InvalidArgument(format!("phi is not an R-homomorphism: {what} at {w:?}")));
    }
    Ok(())
}

/// `{(a, -i) : a - f(i) in Z}` for a map `f : I -> R` given as a table.
fn graph(e: &DorrohRing, z: &IdealSubset, f: &[Elem]) -> IdealSubset {
    let (r, i) = (e.base(), e.rng());
    let mut members = Vec::new();
    for t in i.elements() {
        for &zz in z.members() {
            members.push(e.encode(r.add(f[t], zz), i.neg(t)));
        }
    }
    IdealSubset::new(e.ring(), members).expect("in range")
}

fn brute(e: &DorrohRing, maximal: bool, limits: &Limits) -> Result<Vec<IdealSubset>> {
    let mut out = Vec::new();
    for k in enumerate_ideals(e.ring(), IdealKind::TwoSided, limits)? {
        let keep = if maximal {
            is_maximal_ideal(e.ring(), &k, limits)?
        } else {
            is_prime_ideal(e.ring(), &k, limits)?
        };
        if keep {
            out.push(k);
        }
    }
    Ok(out)
}

/// Prime (or maximal) ideals of `R`, in canonical order.
pub fn prime_ideals(r: &FiniteRng, maximal: bool, limits: &Limits) -> Result<Vec<IdealSubset>> {
    let mut out = Vec::new();
    for k in enumerate_ideals(r, IdealKind::TwoSided, limits)? {
        let keep = if maximal {
            is_maximal_ideal(r, &k, limits)?
        } else {
            is_prime_ideal(r, &k, limits)?
        };
        if keep {
            out.push(k);
        }
    }
    Ok(out)
}

fn classify(
    e: &DorrohRing,
    maps: &[(Option<usize>, Vec<Elem>)],
    maximal: bool,
    limits: &Limits,
) -> Result<Vec<ClassifiedPrime>> {
    let r = e.base();
    let bases = prime_ideals(r, maximal, limits)?;
    let all_i: Vec<Elem> = e.rng().elements().collect();
    let mut out = Vec::new();
    for a in &bases {
        out.push(ClassifiedPrime {
            form: PrimeForm::Sum,
            base: a.clone(),
            summand: None,
            members: e.direct_sum(a.members(), &all_i),
        });
    }
    for (summand, f) in maps {
        for z in &bases {
            if f.iter().all(|&v| z.contains(v)) {
                continue;
            }
            let members = graph(e, z, f);
            if out.iter().all(|c: &ClassifiedPrime| c.members != members) {
                out.push(ClassifiedPrime {
                    form: PrimeForm::Graph,
                    base: z.clone(),
                    summand: *summand,
                    members,
                });
            }
        }
    }
    let mut predicted: Vec<IdealSubset> = out.iter().map(|c| c.members.clone()).collect();
    predicted.sort();
    let actual = brute(e, maximal, limits)?;
    if predicted != actual {
        let what = if maximal { "maximal" } else { "prime" };
        return Err(Error::Discrepancy(format!(
            "classified {what} ideals {:?} differ from brute force {:?}",
            predicted.iter().map(|k| k.members().to_vec()).collect::<Vec<_>>(),
            actual.iter().map(|k| k.members().to_vec()).collect::<Vec<_>>()
        )));
    }
    Ok(out)
}

fn table_of(e: &DorrohRing, phi: &RHomomorphism) -> Vec<Elem> {
    e.rng().elements().map(|t| phi.apply(t)).collect()
}

/// Sum forms `A + I` for prime `A`, and graph forms for prime `Z` with
/// `phi(I)` not inside `Z`; compared with every prime ideal of `E`.
pub fn classify_prime_ideals(e: &DorrohRing, phi: &RHomomorphism, limits: &Limits) -> Result<Vec<ClassifiedPrime>> {
    require_retraction(e.source(), phi)?;
    classify(e, &[(None, table_of(e, phi))], false, limits)
}

/// As [`classify_prime_ideals`] with maximal ideals throughout.
pub fn classify_maximal_ideals(e: &DorrohRing, phi: &RHomomorphism, limits: &Limits) -> Result<Vec<ClassifiedPrime>> {
    require_retraction(e.source(), phi)?;
    classify(e, &[(None, table_of(e, phi))], true, limits)
}

/// `I = J_1 + ... + J_n` with a retraction `phi_d` on each summand: graph
/// forms use `phi_d` composed with the projection onto `J_d`.
pub fn classify_primes_direct_sum(
    e: &DorrohRing,
    summands: &[(RRngStructure, RHomomorphism)],
    limits: &Limits,
) -> Result<Vec<ClassifiedPrime>> {
    let x = e.source();
    let factors: Vec<RRngStructure> = summands.iter().map(|(f, _)| f.clone()).collect();
    let rebuilt = direct_sum_rrng(&factors, limits)?;
    let orders = direct_sum_coordinates(x).unwrap_or_default();
    if orders.len() != summands.len()
        || rebuilt.rng() != x.rng()
        || rebuilt.left_table() != x.left_table()
        || rebuilt.right_table() != x.right_table()
    {
        return Err(Error::InvalidArgument("I is not the direct sum of the given summands".into()));
    }
    let mut maps = Vec::new();
    for (d, (f, phi)) in summands.iter().enumerate() {
        require_retraction(f, phi)?;
        let table = x
            .rng()
            .elements()
            .map(|t| phi.apply(crate::builders::tuple_decode(&orders, t)[d]))
            .collect();
        maps.push((Some(d), table));
    }
    classify(e, &maps, false, limits)
}

/// Maximal ideals of a ring by brute force.
pub fn maximal_ideals(r: &FiniteRng, limits: &Limits) -> Result<Vec<IdealSubset>> {
    prime_ideals(r, true, limits)
}

/// Exactly one maximal ideal.
pub fn is_local(r: &FiniteRng, limits: &Limits) -> Result<bool> {
    Ok(maximal_ideals(r, limits)?.len() == 1)
}

/// For commutative `E`: local iff `R` is local and `phi(I)` is not all of `R`.
/// Checked against [`is_local`] on `E`.
pub fn local_via_corollary(e: &DorrohRing, phi: &RHomomorphism, limits: &Limits) -> Result<bool> {
    if let Some((a, b)) = e.ring().commutativity_witness() {
        return Err(Error::NotCommutative(a, b));
    }
    require_retraction(e.source(), phi)?;
    let image = phi.image_set();
    let verdict = is_local(e.base(), limits)? && image.len() != e.base().order();
    if verdict != is_local(e.ring(), limits)? {
        return Err(Error::Discrepancy("local corollary disagrees with the maximal ideals of E".into()));
    }
    Ok(verdict)
}

/// Outcome of the checks tied to a retraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RetractionChecks {
    pub r_ideals: usize,
    pub absorbing_maps: usize,
}

/// With a retraction `phi`: `psi` is an involutive automorphism sending
/// `0 + I` to the graph of `phi`; R-subrngs are exactly R-ideals; for each
/// nonzero R-ideal `J`, the graph `J_phi` is prime iff `0 + J` is prime iff
/// `J = I` and `R` is prime; and for each absorbing `psi' : J -> R`, the
/// graph `J_psi'` is prime iff `J = I`, `psi' = phi` and `R` is prime.
pub fn check_retraction_lemmas(e: &DorrohRing, phi: &RHomomorphism, limits: &Limits) -> Result<RetractionChecks> {
    let x = e.source();
    require_retraction(x, phi)?;
    let fail = |s: String| Err(Error::Discrepancy(s));
    let psi = psi_automorphism(e, phi)?;
    if !psi.compose(&psi)?.table().iter().enumerate().all(|(k, &v)| k == v) {
        return fail("psi is not an involution".into());
    }
    let image: Vec<Elem> = e.ideal_copy().members().iter().map(|&k| psi.apply(k)).collect();
    let graph_i = IdealSubset::new(e.ring(), e.rng().elements().map(|t| e.encode(phi.apply(t), e.rng().neg(t))))?;
    if IdealSubset::new(e.ring(), image)? != graph_i {
        return fail("psi(I) is not the graph of phi".into());
    }
    let subrngs = enumerate_ideals(Ambient::RRng(x), IdealKind::RSubrng, limits)?;
    let ideals = enumerate_ideals(Ambient::RRng(x), IdealKind::RIdeal, limits)?;
    if subrngs != ideals {
        return fail("R-subrngs and R-ideals differ despite a retraction".into());
    }
    let r_prime = is_prime_rng(e.base(), limits)?.verdict;
    let target = HomTarget::base(e.base());
    let c = HomConstraints {
        absorbing: true,
        ..HomConstraints::R_HOM
    };
    let mut absorbing_maps = 0;
    for j in ideals.iter().filter(|j| !j.is_zero()) {
        let j_phi = IdealSubset::new(e.ring(), j.members().iter().map(|&t| e.encode(phi.apply(t), e.rng().neg(t))))?;
        let zero_j = e.direct_sum(&[0], j.members());
        let p1 = is_prime_ideal(e.ring(), &j_phi, limits)?;
        let p2 = is_prime_ideal(e.ring(), &zero_j, limits)?;
        let p3 = j.is_full() && r_prime;
        if p1 != p2 || p2 != p3 {
            return fail(format!("graph lemma fails on J = {:?}: {p1} {p2} {p3}", j.members()));
        }
        for other in enumerate_homs(x, j, &target, c, limits)? {
            absorbing_maps += 1;
            let j_psi = IdealSubset::new(
                e.ring(),
                j.members().iter().map(|&t| e.encode(other.apply(t), e.rng().neg(t))),
            )?;
            if !j_psi.has(SubsetFlags::IDEAL) {
                return fail(format!("J_psi is not an ideal for J = {:?}", j.members()));
            }
            let agrees = j.members().iter().all(|&t| other.apply(t) == phi.apply(t));
            let q1 = is_prime_ideal(e.ring(), &j_psi, limits)?;
            let q2 = j.is_full() && agrees && r_prime;
            if q1 != q2 {
                return fail(format!("second graph lemma fails on J = {:?}", j.members()));
            }
        }
    }
    Ok(RetractionChecks {
        r_ideals: ideals.len(),
        absorbing_maps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::*;
    use crate::dorroh::dorroh_extend;
    use crate::homs::find_retractions;
    use crate::rrng::{canonical_action, ideal_as_rrng};

    fn lim() -> Limits {
        Limits::default()
    }

    fn inclusion(x: &RRngStructure) -> RHomomorphism {
        // for an ideal viewed as an R-rng, the labels carry the ambient element
        let r = x.base();
        let table: Vec<Elem> = x
            .rng()
            .elements()
            .map(|t| r.elements().find(|&a| r.label(a) == x.rng().label(t)).unwrap())
            .collect();
        RHomomorphism::from_table(IdealSubset::full(x), HomTarget::base(r), &table).unwrap()
    }

    #[test]
    fn z6_classification() {
        let z6 = cyclic_ring(6, &lim()).unwrap();
        let x = ideal_as_rrng(&z6, &IdealSubset::full(&z6)).unwrap();
        let e = dorroh_extend(&x, &lim()).unwrap();
        let phi = inclusion(&x);
        let primes = classify_prime_ideals(&e, &phi, &lim()).unwrap();
        assert_eq!(primes.len(), 4);
        assert_eq!(primes.iter().filter(|c| c.form == PrimeForm::Sum).count(), 2);
        let maxes = classify_maximal_ideals(&e, &phi, &lim()).unwrap();
        assert_eq!(maxes.len(), 4);
        assert!(!is_local(e.ring(), &lim()).unwrap());
        assert!(!local_via_corollary(&e, &phi, &lim()).unwrap());
        check_retraction_lemmas(&e, &phi, &lim()).unwrap();
    }

    #[test]
    fn z4_local() {
        let z4 = cyclic_ring(4, &lim()).unwrap();
        let x = ideal_as_rrng(&z4, &IdealSubset::new(&z4, [0, 2]).unwrap()).unwrap();
        let e = dorroh_extend(&x, &lim()).unwrap();
        let phi = inclusion(&x);
        let primes = classify_prime_ideals(&e, &phi, &lim()).unwrap();
        assert_eq!(primes.len(), 1);
        assert_eq!(primes[0].form, PrimeForm::Sum);
        assert_eq!(primes[0].members.len(), 4);
        assert_eq!(classify_maximal_ideals(&e, &phi, &lim()).unwrap().len(), 1);
        assert!(local_via_corollary(&e, &phi, &lim()).unwrap());
    }

    #[test]
    fn trivial_mult_only_sum_forms() {
        let z2 = cyclic_ring(2, &lim()).unwrap();
        let x = canonical_action(&z2, &trivial_mult_rng(&z2)).unwrap();
        let e = dorroh_extend(&x, &lim()).unwrap();
        let rets = find_retractions(&x, &lim()).unwrap();
        assert_eq!(rets.len(), 1);
        assert!(rets[0].is_zero());
        let maxes = classify_maximal_ideals(&e, &rets[0], &lim()).unwrap();
        assert_eq!(maxes.len(), 1);
        assert_eq!(maxes[0].members, e.ideal_copy());
        assert!(local_via_corollary(&e, &rets[0], &lim()).unwrap());
    }

    #[test]
    fn direct_sum_of_two_copies() {
        let z2 = cyclic_ring(2, &lim()).unwrap();
        let j = ideal_as_rrng(&z2, &IdealSubset::full(&z2)).unwrap();
        let x = direct_sum_rrng(&[j.clone(), j.clone()], &lim()).unwrap();
        let e = dorroh_extend(&x, &lim()).unwrap();
        let phi = inclusion(&j);
        let primes = classify_primes_direct_sum(&e, &[(j.clone(), phi.clone()), (j.clone(), phi.clone())], &lim()).unwrap();
        assert_eq!(primes.len(), 3);
        // a single summand reduces to the plain classification
        let e1 = dorroh_extend(&direct_sum_rrng(&[j.clone()], &lim()).unwrap(), &lim()).unwrap();
        let one = classify_primes_direct_sum(&e1, &[(j.clone(), phi.clone())], &lim()).unwrap();
        assert_eq!(one.len(), 2);
    }

    #[test]
    fn non_retraction_is_rejected() {
        let f2 = cyclic_ring(2, &lim()).unwrap();
        let v = direct_product(&[f2.clone(), f2.clone()], &lim()).unwrap();
        let x = canonical_action(&f2, &v).unwrap();
        let e = dorroh_extend(&x, &lim()).unwrap();
        let first = RHomomorphism::from_table(IdealSubset::full(&x), HomTarget::base(&f2), &[0, 0, 1, 1]).unwrap();
        assert!(matches!(
            classify_prime_ideals(&e, &first, &lim()),
            Err(Error::NotARetraction { .. })
        ));
    }
}
