//! Every (left) ideal `K` of `E(R, I)` has the form
//! `{(a, -j) : a in A, j in J, a + Z = phi(j)}`. This module extracts the
//! data `(A, Z, J, phi)` from `K`, checks it, and rebuilds `K` from it.

use crate::dorroh::DorrohRing;
use crate::error::{Error, Result};
use crate::homs::{enumerate_r_homs, HomTarget};
use crate::ideals::{enumerate_ideals, nil_exponent, nilpotency_exponent, IdealKind};
use crate::limits::Limits;
use crate::rng::Elem;
use crate::rrng::annihilator;
use crate::subset::{
    additive_witness, left_action_witness, left_ideal_witness, require_r_ideal, right_action_witness,
    right_ideal_witness, subrng_witness, Ambient, IdealSubset, SubsetFlags,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sidedness {
    TwoSided,
    Left,
}

/// The tuple `(A, Z, J, phi)`. `phi` is stored as a table parallel to
/// `j.members()`, each entry the least element of the coset `phi(j)` in `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealDecomposition {
    pub side: Sidedness,
    pub a: IdealSubset,
    pub z: IdealSubset,
    pub j: IdealSubset,
    phi: Vec<Elem>,
}

fn coset_min(e: &DorrohRing, z: &IdealSubset, a: Elem) -> Elem {
    let r = e.base();
    z.members().iter().map(|&m| r.add(a, m)).min().unwrap_or(a)
}

impl IdealDecomposition {
    /// Assembles a tuple from user data. `phi` lists one representative per
    /// member of `j`; representatives are normalised to least coset elements.
    pub fn new(
        e: &DorrohRing,
        side: Sidedness,
        a: &[Elem],
        z: &[Elem],
        j: &[Elem],
        phi: &[Elem],
    ) -> Result<Self> {
        let x = e.source();
        let a = IdealSubset::new(x.base(), a.iter().copied())?;
        let z = IdealSubset::new(x.base(), z.iter().copied())?;
        let j = IdealSubset::new(x, j.iter().copied())?;
        if phi.len() != j.len() {
            return Err(Error::DimensionMismatch {
                what: "phi table",
                expected: j.len(),
                found: phi.len(),
            });
        }
        if let Some(&bad) = phi.iter().find(|&&p| p >= x.base().order()) {
            return Err(Error::InvalidArgument(format!("phi value {bad} out of range")));
        }
        // members of j are sorted; phi was given in the same order
        let phi = phi.iter().map(|&p| coset_min(e, &z, p)).collect();
        Ok(IdealDecomposition { side, a, z, j, phi })
    }

    /// Least representative of `phi(j)`.
    pub fn phi(&self, j: Elem) -> Elem {
        let k = self.j.members().binary_search(&j).expect("element of J");
        self.phi[k]
    }

    pub fn phi_table(&self) -> &[Elem] {
        &self.phi
    }

    /// `ker(phi) = {j : phi(j) in Z}`.
    pub fn kernel(&self) -> Vec<Elem> {
        self.j
            .members()
            .iter()
            .zip(&self.phi)
            .filter(|&(_, &p)| self.z.contains(p))
            .map(|(&j, _)| j)
            .collect()
    }

    pub fn phi_is_zero(&self) -> bool {
        self.phi.iter().all(|&p| self.z.contains(p))
    }

    pub fn phi_is_injective(&self) -> bool {
        self.kernel().len() == 1
    }
}

fn bad(condition: &'static str, witness: Vec<Elem>) -> Error {
    Error::InvalidDecomposition { condition, witness }
}

/// Reads `(A, Z, J, phi)` off a (left) ideal of `E`.
pub fn decompose_ideal(e: &DorrohRing, k: &IdealSubset, side: Sidedness) -> Result<IdealDecomposition> {
    let ring = e.ring();
    let k = k.clone().with_flags(ring);
    let needed = match side {
        Sidedness::TwoSided => SubsetFlags::IDEAL | SubsetFlags::ADDITIVE_SUBGROUP,
        Sidedness::Left => SubsetFlags::LEFT_IDEAL | SubsetFlags::ADDITIVE_SUBGROUP,
    };
    if !k.has(needed) {
        let w = additive_witness(ring, &k)
            .or_else(|| left_ideal_witness(ring, &k))
            .or_else(|| (side == Sidedness::TwoSided).then(|| right_ideal_witness(ring, &k)).flatten())
            .unwrap_or_default();
        return Err(Error::NotAnIdeal {
            kind: if side == Sidedness::TwoSided { "an ideal" } else { "a left ideal" },
            witness: w,
        });
    }
    let x = e.source();
    let (r, i) = (x.base(), x.rng());
    let mut a_mask = vec![false; r.order()];
    let mut j_mask = vec![false; i.order()];
    let mut z_mask = vec![false; r.order()];
    for &m in k.members() {
        let (p, q) = e.decode(m);
        a_mask[p] = true;
        j_mask[q] = true;
        if q == 0 {
            z_mask[p] = true;
        }
    }
    let a = IdealSubset::from_mask(a_mask).with_flags(r);
    let z = IdealSubset::from_mask(z_mask).with_flags(r);
    let j = IdealSubset::from_mask(j_mask).with_flags(x);
    let mut phi = vec![usize::MAX; i.order()];
    for &m in k.members() {
        let (p, q) = e.decode(m);
        let jj = i.neg(q);
        if phi[jj] == usize::MAX {
            phi[jj] = coset_min(e, &z, p);
        }
    }
    let phi = j.members().iter().map(|&m| phi[m]).collect();
    Ok(IdealDecomposition { side, a, z, j, phi })
}

/// Checks every requirement on the tuple; the first failure is reported
/// with its witness.
pub fn check_decomposition(e: &DorrohRing, d: &IdealDecomposition) -> Result<()> {
    let x = e.source();
    let (r, i) = (x.base(), x.rng());
    let two = d.side == Sidedness::TwoSided;
    let in_z = |v: Elem| d.z.contains(v);
    for (name, s) in [("A is an ideal of R", &d.a), ("Z is an ideal of R", &d.z)] {
        if let Some(w) = additive_witness(r, s)
            .or_else(|| left_ideal_witness(r, s))
            .or_else(|| if two { right_ideal_witness(r, s) } else { None })
        {
            return Err(bad(name, w));
        }
    }
    if let Some(&w) = d.z.members().iter().find(|&&m| !d.a.contains(m)) {
        return Err(bad("Z is contained in A", vec![w]));
    }
    if let Some(w) = additive_witness(i, &d.j) {
        return Err(bad("J is an additive subgroup", w));
    }
    if let Some(w) = left_action_witness(x, &d.j) {
        return Err(bad("J is a left R-submodule", w));
    }
    if two {
        if let Some(w) = right_action_witness(x, &d.j).or_else(|| subrng_witness(i, &d.j)) {
            return Err(bad("J is an R-subrng", w));
        }
    }
    let jm = d.j.members();
    for &p in jm {
        if !d.a.contains(d.phi(p)) {
            return Err(bad("phi maps into A/Z", vec![p, d.phi(p)]));
        }
    }
    for &p in jm {
        for &q in jm {
            if !in_z(r.sub(d.phi(i.add(p, q)), r.add(d.phi(p), d.phi(q)))) {
                return Err(bad("phi is additive", vec![p, q]));
            }
            if two && !in_z(r.sub(d.phi(i.mul(p, q)), r.mul(d.phi(p), d.phi(q)))) {
                return Err(bad("phi is multiplicative", vec![p, q]));
            }
        }
        for s in r.elements() {
            if !in_z(r.sub(d.phi(x.lact(s, p)), r.mul(s, d.phi(p)))) {
                return Err(bad("phi is left R-linear", vec![s, p]));
            }
            if two && !in_z(r.sub(d.phi(x.ract(p, s)), r.mul(d.phi(p), s))) {
                return Err(bad("phi is right R-linear", vec![p, s]));
            }
        }
    }
    for &a in d.a.members() {
        if !jm.iter().any(|&p| in_z(r.sub(a, d.phi(p)))) {
            return Err(bad("phi is surjective onto A/Z", vec![a]));
        }
    }
    let in_ker = |v: Elem| d.j.contains(v) && in_z(d.phi(v));
    for &p in jm {
        // every a with a + Z = phi(p), i.e. every (a, -p) in K
        for &zz in d.z.members() {
            let a = r.add(d.phi(p), zz);
            for t in i.elements() {
                if two && !in_ker(i.sub(x.lact(a, t), i.mul(p, t))) {
                    return Err(bad("condition (a): ai - ji in ker(phi)", vec![a, p, t]));
                }
                if !in_ker(i.sub(x.ract(t, a), i.mul(t, p))) {
                    return Err(bad("condition (b): ia - ij in ker(phi)", vec![a, p, t]));
                }
            }
        }
    }
    Ok(())
}

/// `{(a, -j) : a in A, j in J, a + Z = phi(j)}` without checking the tuple.
pub fn reconstruct_unchecked(e: &DorrohRing, d: &IdealDecomposition) -> IdealSubset {
    let (r, i) = (e.base(), e.rng());
    let mut members = Vec::new();
    for &p in d.j.members() {
        for &zz in d.z.members() {
            members.push(e.encode(r.add(d.phi(p), zz), i.neg(p)));
        }
    }
    IdealSubset::new(e.ring(), members).expect("in range")
}

/// Checks the tuple and rebuilds the (left) ideal it describes.
pub fn reconstruct_ideal(e: &DorrohRing, d: &IdealDecomposition) -> Result<IdealSubset> {
    check_decomposition(e, d)?;
    let k = reconstruct_unchecked(e, d);
    let ok = match d.side {
        Sidedness::TwoSided => k.has(SubsetFlags::IDEAL | SubsetFlags::ADDITIVE_SUBGROUP),
        Sidedness::Left => k.has(SubsetFlags::LEFT_IDEAL | SubsetFlags::ADDITIVE_SUBGROUP),
    };
    if !ok {
        return Err(Error::Discrepancy(format!(
            "a checked {:?} decomposition rebuilt to a non-ideal",
            d.side
        )));
    }
    Ok(k)
}

/// Same `A`, `Z`, `J`, and `phi` agreeing modulo `Z`.
pub fn equivalent(e: &DorrohRing, d1: &IdealDecomposition, d2: &IdealDecomposition) -> bool {
    let r = e.base();
    d1.a == d2.a
        && d1.z == d2.z
        && d1.j == d2.j
        && d1
            .j
            .members()
            .iter()
            .all(|&p| d1.z.contains(r.sub(d1.phi(p), d2.phi(p))))
}

/// `AI + IA` inside `J`, with a witness `(a, i)` otherwise.
pub fn ai_ia_witness(e: &DorrohRing, a: &IdealSubset, j: &IdealSubset) -> Option<(Elem, Elem)> {
    let x = e.source();
    for &p in a.members() {
        for t in x.rng().elements() {
            if !j.contains(x.lact(p, t)) || !j.contains(x.ract(t, p)) {
                return Some((p, t));
            }
        }
    }
    None
}

/// Verifies statements (1) to (4) attached to the correspondence for a
/// two-sided decomposition `d` of the ideal `k`.
pub fn verify_statements(e: &DorrohRing, k: &IdealSubset, d: &IdealDecomposition) -> Result<()> {
    let x = e.source();
    let fail = |s: &str| Err(Error::Discrepancy(format!("statement {s} fails")));
    let j_r_ideal = d.j.has(SubsetFlags::R_IDEAL);
    let contained = ai_ia_witness(e, &d.a, &d.j).is_none();
    if j_r_ideal != contained {
        return fail("(1): J is an R-ideal iff AI + IA is inside J");
    }
    let ann = annihilator(x);
    if d.a.is_zero() && !j_r_ideal {
        return fail("(1): A = 0 forces J to be an R-ideal");
    }
    if d.j.is_zero() && !d.a.is_subset_of(&ann) {
        return fail("(1): J = 0 forces A inside ann(I)");
    }
    let a_eq_z = d.a == d.z;
    let phi_zero = d.phi_is_zero();
    let is_sum = *k == e.direct_sum(d.a.members(), d.j.members());
    if a_eq_z != phi_zero || phi_zero != is_sum {
        return fail("(2): A = Z iff phi = 0 iff K = A + J");
    }
    if is_sum && !j_r_ideal {
        return fail("(2): a direct sum has J an R-ideal");
    }
    if d.phi_is_injective() && !d.z.is_subset_of(&ann) {
        return fail("(3): injective phi puts Z inside ann(I)");
    }
    let ker = IdealSubset::new(x, d.kernel())?;
    let sub = e.direct_sum(d.z.members(), ker.members());
    if !sub.is_subset_of(k) || !sub.has(SubsetFlags::IDEAL) {
        return fail("(4): Z + ker(phi) is an ideal inside K");
    }
    if require_r_ideal(x, &ker).is_err() {
        return fail("(4): ker(phi) is an R-ideal");
    }
    Ok(())
}

/// Hypothesis and conclusion of one direct-sum case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseOutcome {
    pub hypothesis: bool,
    pub conclusion: bool,
}

/// The three direct-sum cases: `0 + J` for an R-ideal `J`, `A + 0` for `A`
/// inside `ann(I)`, and `A + J` when `AI + IA` lies in `J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectSumReport {
    pub zero_plus_j: Option<CaseOutcome>,
    pub a_plus_zero: Option<CaseOutcome>,
    pub a_plus_j: Option<CaseOutcome>,
}

pub fn direct_sum_ideal_tests(
    e: &DorrohRing,
    a: Option<&IdealSubset>,
    j: Option<&IdealSubset>,
) -> Result<DirectSumReport> {
    let x = e.source();
    let ring = e.ring();
    let is_ideal = |s: &IdealSubset| s.has(SubsetFlags::IDEAL | SubsetFlags::ADDITIVE_SUBGROUP);
    let j = j.map(|j| j.clone().with_flags(x));
    let a = a.map(|a| a.clone().with_flags(x.base()));
    let mut report = DirectSumReport {
        zero_plus_j: None,
        a_plus_zero: None,
        a_plus_j: None,
    };
    if let Some(j) = &j {
        let s = e.direct_sum(&[0], j.members());
        report.zero_plus_j = Some(CaseOutcome {
            hypothesis: j.has(SubsetFlags::R_IDEAL),
            conclusion: is_ideal(&s.with_flags(ring)),
        });
    }
    if let Some(a) = &a {
        let s = e.direct_sum(a.members(), &[0]);
        report.a_plus_zero = Some(CaseOutcome {
            hypothesis: a.has(SubsetFlags::IDEAL) && a.is_subset_of(&annihilator(x)),
            conclusion: is_ideal(&s.with_flags(ring)),
        });
    }
    if let (Some(a), Some(j)) = (&a, &j) {
        let s = e.direct_sum(a.members(), j.members());
        report.a_plus_j = Some(CaseOutcome {
            hypothesis: a.has(SubsetFlags::IDEAL)
                && j.has(SubsetFlags::R_IDEAL)
                && ai_ia_witness(e, a, j).is_none(),
            conclusion: is_ideal(&s.with_flags(ring)),
        });
    }
    for c in [report.zero_plus_j, report.a_plus_zero, report.a_plus_j].into_iter().flatten() {
        if c.hypothesis && !c.conclusion {
            return Err(Error::Discrepancy("direct sum hypothesis holds but sum is not an ideal".into()));
        }
    }
    Ok(report)
}

/// Nilpotency and nil data of `K`, `A`, `J` and `ker(phi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NilLemmaReport {
    pub k_nilpotent: Option<usize>,
    pub a_nilpotent: Option<usize>,
    pub j_nilpotent: Option<usize>,
    pub ker_nilpotent: Option<usize>,
    pub k_nil: bool,
    pub a_nil: bool,
    pub j_nil: bool,
    pub ker_nil: bool,
}

/// Checks that `K` nilpotent, `A` and `J` nilpotent, and `A` and `ker(phi)`
/// nilpotent are equivalent, likewise for nil, and that the exponent of `K`
/// is at most the product of those of `A` and `ker(phi)`.
pub fn nil_ideal_lemma(e: &DorrohRing, k: &IdealSubset, d: &IdealDecomposition) -> Result<NilLemmaReport> {
    let (r, i) = (e.base(), e.rng());
    let ker = IdealSubset::bare(i.order(), d.kernel())?;
    let rep = NilLemmaReport {
        k_nilpotent: nilpotency_exponent(e.ring(), k),
        a_nilpotent: nilpotency_exponent(r, &d.a),
        j_nilpotent: nilpotency_exponent(i, &d.j),
        ker_nilpotent: nilpotency_exponent(i, &ker),
        k_nil: nil_exponent(e.ring(), k).is_some(),
        a_nil: nil_exponent(r, &d.a).is_some(),
        j_nil: nil_exponent(i, &d.j).is_some(),
        ker_nil: nil_exponent(i, &ker).is_some(),
    };
    let p1 = rep.k_nilpotent.is_some();
    let p2 = rep.a_nilpotent.is_some() && rep.j_nilpotent.is_some();
    let p3 = rep.a_nilpotent.is_some() && rep.ker_nilpotent.is_some();
    if p1 != p2 || p2 != p3 {
        return Err(Error::Discrepancy(format!("nilpotent variant disagrees: {p1} {p2} {p3}")));
    }
    let n1 = rep.k_nil;
    let n2 = rep.a_nil && rep.j_nil;
    let n3 = rep.a_nil && rep.ker_nil;
    if n1 != n2 || n2 != n3 {
        return Err(Error::Discrepancy(format!("nil variant disagrees: {n1} {n2} {n3}")));
    }
    if let (Some(kk), Some(n), Some(m)) = (rep.k_nilpotent, rep.a_nilpotent, rep.ker_nilpotent) {
        if kk > n * m {
            return Err(Error::Discrepancy(format!("K^{} = 0 fails with A^{n} = 0 and ker^{m} = 0", n * m)));
        }
    }
    Ok(rep)
}

/// Tally of [`check_extension_corollary`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExtensionCorollaryReport {
    /// Tuples `(Z, f, J)` tried.
    pub tried: usize,
    /// Tuples with `ker(f)` inside `J`; each of these rebuilt to an ideal.
    pub covered: usize,
    /// Tuples outside that hypothesis whose set is not an ideal.
    pub literal_failures: usize,
    /// First such failure as `(J, Z)`.
    pub counterexample: Option<(Vec<Elem>, Vec<Elem>)>,
}

/// For every ideal `Z` of `R`, every R-homomorphism `f : I -> R/Z` and
/// every R-subrng `J`, rebuilds `(A, Z, J, f|J)` with `A` the preimage of
/// `f(J)` without checking (a) and (b). When `ker(f)` lies in `J` the result
/// must be an ideal. Without that hypothesis it can fail: `J = 0`, `Z = R`,
/// `f = 0` gives `R + 0`.
pub fn check_extension_corollary(e: &DorrohRing, limits: &Limits) -> Result<ExtensionCorollaryReport> {
    let x = e.source();
    let r = x.base();
    let subrngs = enumerate_ideals(Ambient::RRng(x), IdealKind::RSubrng, limits)?;
    let full = IdealSubset::full(x);
    let mut rep_out = ExtensionCorollaryReport::default();
    for z in enumerate_ideals(r, IdealKind::TwoSided, limits)? {
        let target = HomTarget::quotient(r, &z)?;
        // least representative of each coset
        let mut rep = vec![usize::MAX; target.ring.order()];
        for a in r.elements() {
            let c = target.projection[a];
            rep[c] = rep[c].min(a);
        }
        for f in enumerate_r_homs(x, &full, &target, limits)? {
            let ker = f.kernel();
            for j in &subrngs {
                let image: Vec<Elem> = j.members().iter().map(|&t| f.apply(t)).collect();
                let a: Vec<Elem> = r.elements().filter(|&p| image.contains(&target.projection[p])).collect();
                let phi: Vec<Elem> = image.iter().map(|&c| rep[c]).collect();
                let d = IdealDecomposition::new(e, Sidedness::TwoSided, &a, z.members(), j.members(), &phi)?;
                let k = reconstruct_unchecked(e, &d);
                let is_ideal = k.has(SubsetFlags::IDEAL | SubsetFlags::ADDITIVE_SUBGROUP);
                rep_out.tried += 1;
                if ker.iter().all(|&t| j.contains(t)) {
                    if !is_ideal {
                        return Err(Error::Discrepancy(format!(
                            "extendable phi on J = {:?} over Z = {:?} gave a non-ideal",
                            j.members(),
                            z.members()
                        )));
                    }
                    check_decomposition(e, &d)?;
                    rep_out.covered += 1;
                } else if !is_ideal {
                    rep_out.literal_failures += 1;
                    if rep_out.counterexample.is_none() {
                        rep_out.counterexample = Some((j.members().to_vec(), z.members().to_vec()));
                    }
                }
            }
        }
    }
    Ok(rep_out)
}
