//! Semiprime and prime tests for rngs and ideals, and the criteria for
//! `E(R, I)` in terms of `R`, `I` and square-zero or absorbing maps.

use crate::builders::quotient_rng;
use crate::dorroh::{dorroh_extend, DorrohRing};
use crate::error::{Error, Result};
use crate::homs::{enumerate_homs, HomConstraints, HomTarget, RHomomorphism};
use crate::ideals::{enumerate_ideals, generated, product_set, IdealKind};
use crate::limits::Limits;
use crate::rng::{Elem, FiniteRng};
use crate::rrng::{annihilator, quotient_rrng, RRngStructure};
use crate::subset::{require_ideal, require_r_ideal, Ambient, IdealSubset, SubsetFlags};

/// Evidence behind a negative verdict.
#[derive(Debug, Clone)]
pub enum PrimenessWitness {
    /// A nonzero ideal with zero square.
    SquareZeroIdeal(IdealSubset),
    /// Two nonzero ideals with zero product.
    ZeroProduct(IdealSubset, IdealSubset),
    /// The zero rng is never prime.
    ZeroRng,
    /// A nonzero ideal of `R` inside `ann_R(I)` (square-zero in the semiprime case).
    AnnihilatorIdeal(IdealSubset),
    /// `J` and `phi : J -> R` with `ij = i.phi(j)` and `ji = phi(j).i`.
    Obstruction { j: IdealSubset, phi: RHomomorphism },
    /// Condition (1) fails; the witness lives in `I`.
    InRng(Box<PrimenessWitness>),
}

#[derive(Debug, Clone)]
pub struct PrimenessVerdict {
    pub verdict: bool,
    pub witness: Option<PrimenessWitness>,
}

impl PrimenessVerdict {
    fn yes() -> Self {
        PrimenessVerdict {
            verdict: true,
            witness: None,
        }
    }

    fn no(w: PrimenessWitness) -> Self {
        PrimenessVerdict {
            verdict: false,
            witness: Some(w),
        }
    }
}

fn products_vanish(rng: &FiniteRng, a: &[Elem], b: &[Elem]) -> bool {
    a.iter().all(|&x| b.iter().all(|&y| rng.mul(x, y) == 0))
}

/// Distinct nonzero principal ideals, in canonical order.
fn principal_ideals(rng: &FiniteRng, within: Option<&IdealSubset>) -> Vec<IdealSubset> {
    let mut out: Vec<IdealSubset> = rng
        .elements()
        .skip(1)
        .filter(|&a| within.is_none_or(|w| w.contains(a)))
        .map(|a| generated(Ambient::Rng(rng), &[a], IdealKind::TwoSided))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// No nonzero ideal squares to zero. Only principal ideals need checking,
/// since any square-zero ideal contains a square-zero principal one.
pub fn is_semiprime_rng(rng: &FiniteRng, limits: &Limits) -> Result<PrimenessVerdict> {
    limits.check_enumeration(rng.order())?;
    for k in principal_ideals(rng, None) {
        if products_vanish(rng, k.members(), k.members()) {
            return Ok(PrimenessVerdict::no(PrimenessWitness::SquareZeroIdeal(k)));
        }
    }
    Ok(PrimenessVerdict::yes())
}

/// Nonzero, and no two nonzero ideals multiply to zero.
pub fn is_prime_rng(rng: &FiniteRng, limits: &Limits) -> Result<PrimenessVerdict> {
    limits.check_enumeration(rng.order())?;
    if rng.is_zero_rng() {
        return Ok(PrimenessVerdict::no(PrimenessWitness::ZeroRng));
    }
    let ps = principal_ideals(rng, None);
    for a in &ps {
        for b in &ps {
            if products_vanish(rng, a.members(), b.members()) {
                return Ok(PrimenessVerdict::no(PrimenessWitness::ZeroProduct(a.clone(), b.clone())));
            }
        }
    }
    Ok(PrimenessVerdict::yes())
}

/// Re-checks a witness against the rng it was produced for.
pub fn witness_holds(rng: &FiniteRng, w: &PrimenessWitness) -> bool {
    let ideal = |k: &IdealSubset| {
        k.ambient_order() == rng.order()
            && !k.is_zero()
            && k.clone().with_flags(rng).has(SubsetFlags::IDEAL | SubsetFlags::ADDITIVE_SUBGROUP)
    };
    match w {
        PrimenessWitness::SquareZeroIdeal(k) => ideal(k) && products_vanish(rng, k.members(), k.members()),
        PrimenessWitness::ZeroProduct(a, b) => {
            ideal(a) && ideal(b) && products_vanish(rng, a.members(), b.members())
        }
        PrimenessWitness::ZeroRng => rng.is_zero_rng(),
        _ => false,
    }
}

/// Re-checks an obstruction `(J, phi)`: `J` a nonzero R-subrng, `phi` an
/// R-homomorphism to `R` with `ij = i.phi(j)` and `ji = phi(j).i`.
pub fn obstruction_holds(x: &RRngStructure, j: &IdealSubset, phi: &RHomomorphism, square_zero: bool, injective: bool) -> bool {
    let i = x.rng();
    let j = j.clone().with_flags(x);
    if j.is_zero() || !j.has(SubsetFlags::R_SUBRNG) || phi.domain.members() != j.members() {
        return false;
    }
    if phi.target.ring.order() != x.base().order() || phi.failure(x).is_some() {
        return false;
    }
    if square_zero && !products_vanish(i, j.members(), j.members()) {
        return false;
    }
    if injective && !phi.is_injective() {
        return false;
    }
    j.members().iter().all(|&b| {
        let p = phi.apply(b);
        i.elements()
            .all(|a| i.mul(a, b) == x.ract(a, p) && i.mul(b, a) == x.lact(p, a))
    })
}

/// First `(J, phi)` violating condition (3) or (3'): `J` the least nonzero
/// R-subrng in canonical order admitting such a map, then the least map.
pub fn find_obstruction(
    x: &RRngStructure,
    square_zero: bool,
    injective: bool,
    limits: &Limits,
) -> Result<Option<(IdealSubset, RHomomorphism)>> {
    let target = HomTarget::base(x.base());
    let c = HomConstraints {
        injective,
        absorbing: true,
        ..HomConstraints::R_HOM
    };
    let i = x.rng();
    for j in enumerate_ideals(Ambient::RRng(x), IdealKind::RSubrng, limits)? {
        if j.is_zero() || (square_zero && !products_vanish(i, j.members(), j.members())) {
            continue;
        }
        if let Some(phi) = enumerate_homs(x, &j, &target, c, limits)?.into_iter().next() {
            return Ok(Some((j, phi)));
        }
    }
    Ok(None)
}

/// Each condition of a criterion, the combined verdict, and the
/// definitional verdict on `E` it was compared with.
#[derive(Debug, Clone)]
pub struct TheoremVerdict {
    pub verdict: PrimenessVerdict,
    pub condition_1: bool,
    pub condition_2: bool,
    pub condition_3: bool,
    pub condition_3_prime: bool,
    pub definitional: PrimenessVerdict,
}

fn combine(
    c1: PrimenessVerdict,
    c2: Option<IdealSubset>,
    c3: Option<(IdealSubset, RHomomorphism)>,
    c3p: &Option<(IdealSubset, RHomomorphism)>,
    definitional: PrimenessVerdict,
    what: &str,
) -> Result<TheoremVerdict> {
    let (b1, b2, b3, b3p) = (c1.verdict, c2.is_none(), c3.is_none(), c3p.is_none());
    if b1 && b3 != b3p {
        return Err(Error::Discrepancy(format!("{what}: conditions (3) and (3') disagree")));
    }
    let verdict = if !b1 {
        PrimenessVerdict::no(PrimenessWitness::InRng(Box::new(c1.witness.expect("failing verdict"))))
    } else if let Some(a) = c2 {
        PrimenessVerdict::no(PrimenessWitness::AnnihilatorIdeal(a))
    } else if let Some((j, phi)) = c3 {
        PrimenessVerdict::no(PrimenessWitness::Obstruction { j, phi })
    } else {
        PrimenessVerdict::yes()
    };
    if verdict.verdict != definitional.verdict {
        return Err(Error::Discrepancy(format!(
            "{what}: criterion says {} but the definition says {}",
            verdict.verdict, definitional.verdict
        )));
    }
    Ok(TheoremVerdict {
        verdict,
        condition_1: b1,
        condition_2: b2,
        condition_3: b3,
        condition_3_prime: b3p,
        definitional,
    })
}

/// Semiprimeness of `E(R, I)` from (1) `I` semiprime, (2) no nonzero
/// square-zero ideal inside `ann_R(I)`, (3) no square-zero obstruction.
pub fn semiprime_via_theorem(e: &DorrohRing, limits: &Limits) -> Result<TheoremVerdict> {
    let x = e.source();
    let r = x.base();
    let c1 = is_semiprime_rng(x.rng(), limits)?;
    let ann = annihilator(x);
    let c2 = principal_ideals(r, Some(&ann))
        .into_iter()
        .find(|a| products_vanish(r, a.members(), a.members()));
    let c3 = find_obstruction(x, true, true, limits)?;
    let c3p = find_obstruction(x, true, false, limits)?;
    let def = is_semiprime_rng(e.ring(), limits)?;
    combine(c1, c2, c3, &c3p, def, "semiprime criterion")
}

/// Primeness of `E(R, I)` for nonzero `I` from (1) `I` prime, (2)
/// `ann_R(I) = 0`, (3) no injective obstruction.
pub fn prime_via_theorem(e: &DorrohRing, limits: &Limits) -> Result<TheoremVerdict> {
    let x = e.source();
    if x.rng().is_zero_rng() {
        return Err(Error::EmptyRng);
    }
    let c1 = is_prime_rng(x.rng(), limits)?;
    let ann = annihilator(x);
    let c2 = (!ann.is_zero()).then_some(ann);
    let c3 = find_obstruction(x, false, true, limits)?;
    let c3p = find_obstruction(x, false, false, limits)?;
    let def = is_prime_rng(e.ring(), limits)?;
    combine(c1, c2, c3, &c3p, def, "prime criterion")
}

/// `K` is prime when `rng / K` is a prime rng.
pub fn is_prime_ideal(rng: &FiniteRng, k: &IdealSubset, limits: &Limits) -> Result<bool> {
    require_ideal(rng, k)?;
    let (q, _) = quotient_rng(rng, k)?;
    Ok(is_prime_rng(&q, limits)?.verdict)
}

/// `K` is semiprime when `rng / K` is a semiprime rng.
pub fn is_semiprime_ideal(rng: &FiniteRng, k: &IdealSubset, limits: &Limits) -> Result<bool> {
    require_ideal(rng, k)?;
    let (q, _) = quotient_rng(rng, k)?;
    Ok(is_semiprime_rng(&q, limits)?.verdict)
}

/// `K` proper and every ideal properly containing it is everything.
pub fn is_maximal_ideal(rng: &FiniteRng, k: &IdealSubset, limits: &Limits) -> Result<bool> {
    require_ideal(rng, k)?;
    limits.check_enumeration(rng.order())?;
    if k.is_full() {
        return Ok(false);
    }
    let mut seed = k.members().to_vec();
    seed.push(0);
    for a in rng.elements().filter(|&a| !k.contains(a)) {
        *seed.last_mut().expect("nonempty") = a;
        if !generated(Ambient::Rng(rng), &seed, IdealKind::TwoSided).is_full() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn aj_setup(e: &DorrohRing, a: &IdealSubset, j: &IdealSubset) -> Result<(RRngStructure, IdealSubset)> {
    let x = e.source();
    let (q, _, _) = quotient_rrng(x, a, j)?;
    Ok((q, e.direct_sum(a.members(), j.members())))
}

/// `A + J` semiprime via: (1) no `L` strictly over `J` with `L^2` inside `J`,
/// (2) no ideal `B` strictly over `A` with `B^2` inside `A` and `BI + IB`
/// inside `J`, (3) no obstruction in `E(R/A, I/J)`. Checked against the
/// quotient `E / (A + J)`.
pub fn semiprime_aj_via_corollary(e: &DorrohRing, a: &IdealSubset, j: &IdealSubset, limits: &Limits) -> Result<bool> {
    let x = e.source();
    let (r, i) = (x.base(), x.rng());
    let (q, k) = aj_setup(e, a, j)?;
    let c1 = !enumerate_ideals(i, IdealKind::TwoSided, limits)?
        .iter()
        .any(|l| j.is_subset_of(l) && l != j && product_set(i, l.members(), l.members()).is_subset_of(j));
    let c2 = !enumerate_ideals(r, IdealKind::TwoSided, limits)?.iter().any(|b| {
        a.is_subset_of(b)
            && b != a
            && product_set(r, b.members(), b.members()).is_subset_of(a)
            && b.members()
                .iter()
                .all(|&p| i.elements().all(|t| j.contains(x.lact(p, t)) && j.contains(x.ract(t, p))))
    });
    let c3 = find_obstruction(&q, true, false, limits)?.is_none();
    let verdict = c1 && c2 && c3;
    if verdict != is_semiprime_ideal(e.ring(), &k, limits)? {
        return Err(Error::Discrepancy("semiprime corollary disagrees with the quotient".into()));
    }
    Ok(verdict)
}

/// `A + J` prime via: (1) `I/J` prime in terms of ideals over `J`, (2)
/// `A = {r : rI + Ir inside J}`, (3) no obstruction in `E(R/A, I/J)`.
/// With `J = I` the quotient is `R/A` and the test is whether `A` is prime.
pub fn prime_aj_via_corollary(e: &DorrohRing, a: &IdealSubset, j: &IdealSubset, limits: &Limits) -> Result<bool> {
    let x = e.source();
    let (r, i) = (x.base(), x.rng());
    if i.is_zero_rng() {
        return Err(Error::EmptyRng);
    }
    let (q, k) = aj_setup(e, a, j)?;
    let verdict = if j.is_full() {
        is_prime_ideal(r, a, limits)?
    } else {
        let over: Vec<IdealSubset> = enumerate_ideals(i, IdealKind::TwoSided, limits)?
            .into_iter()
            .filter(|l| j.is_subset_of(l))
            .collect();
        let c1 = over.iter().all(|l1| {
            over.iter()
                .all(|l2| !product_set(i, l1.members(), l2.members()).is_subset_of(j) || l1 == j || l2 == j)
        });
        let absorbed: Vec<Elem> = r
            .elements()
            .filter(|&p| i.elements().all(|t| j.contains(x.lact(p, t)) && j.contains(x.ract(t, p))))
            .collect();
        let c2 = a.members() == absorbed.as_slice();
        let c3 = find_obstruction(&q, false, false, limits)?.is_none();
        c1 && c2 && c3
    };
    if verdict != is_prime_ideal(e.ring(), &k, limits)? {
        return Err(Error::Discrepancy("prime corollary disagrees with the quotient".into()));
    }
    Ok(verdict)
}

/// Results of the lemmas tying semiprimeness of `R`, `I`, `E` and `ann_R(I)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SemiprimeLemmas {
    pub e_semiprime: bool,
    pub r_semiprime: bool,
    pub ann_semiprime: bool,
    pub centrally_generated: bool,
}

/// Checks: obstructions over a semiprime `I` are injective; `ann_R(I)`
/// semiprime and `E` semiprime give `R` semiprime; for centrally generated
/// `I`, prime (semiprime) `I` gives prime (semiprime) `ann_R(I)`, and `E`
/// semiprime gives `R` semiprime.
pub fn check_semiprime_lemmas(e: &DorrohRing, limits: &Limits) -> Result<SemiprimeLemmas> {
    let x = e.source();
    let r = x.base();
    let fail = |s: &str| Err(Error::Discrepancy(s.to_string()));
    let i_semi = is_semiprime_rng(x.rng(), limits)?.verdict;
    if i_semi {
        if let Some((_, phi)) = find_obstruction(x, false, false, limits)? {
            if !phi.is_injective() {
                return fail("absorbing map over a semiprime rng is not injective");
            }
        }
    }
    let ann = annihilator(x);
    let ann_semi = is_semiprime_ideal(r, &ann, limits)?;
    let e_semi = is_semiprime_rng(e.ring(), limits)?.verdict;
    let r_semi = is_semiprime_rng(r, limits)?.verdict;
    if ann_semi && e_semi && !r_semi {
        return fail("ann_R(I) and E semiprime but R is not");
    }
    let (central, _) = crate::rrng::is_centrally_generated(x);
    if central {
        if i_semi && !ann_semi {
            return fail("central semiprime I with non-semiprime annihilator");
        }
        if is_prime_rng(x.rng(), limits)?.verdict && !is_prime_ideal(r, &ann, limits)? {
            return fail("central prime I with non-prime annihilator");
        }
        if e_semi && !r_semi {
            return fail("central I and E semiprime but R is not");
        }
    }
    Ok(SemiprimeLemmas {
        e_semiprime: e_semi,
        r_semiprime: r_semi,
        ann_semiprime: ann_semi,
        centrally_generated: central,
    })
}

/// Runs both corollaries on every pair `(A, J)` with `AI + IA` inside `J`.
/// Returns the number of pairs checked.
pub fn check_aj_corollaries(e: &DorrohRing, limits: &Limits) -> Result<usize> {
    let x = e.source();
    let mut n = 0;
    let js: Vec<IdealSubset> = enumerate_ideals(Ambient::RRng(x), IdealKind::RIdeal, limits)?;
    for a in enumerate_ideals(x.base(), IdealKind::TwoSided, limits)? {
        for j in &js {
            if require_r_ideal(x, j).is_err() || quotient_rrng(x, &a, j).is_err() {
                continue;
            }
            semiprime_aj_via_corollary(e, &a, j, limits)?;
            if !x.rng().is_zero_rng() {
                prime_aj_via_corollary(e, &a, j, limits)?;
            }
            n += 1;
        }
    }
    Ok(n)
}

/// `E(R/A, I/J)`, the ring the corollaries reduce to.
pub fn quotient_extension(e: &DorrohRing, a: &IdealSubset, j: &IdealSubset, limits: &Limits) -> Result<DorrohRing> {
    let (q, _, _) = quotient_rrng(e.source(), a, j)?;
    dorroh_extend(&q, limits)
}
