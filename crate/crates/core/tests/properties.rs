mod common;

use common::*;
use proptest::prelude::*;
use ringlab_core::decomposition::*;
use ringlab_core::homs::{find_retractions, psi_automorphism};
use ringlab_core::ideals::{check_generated_r_ideals, enumerate_ideals};
use ringlab_core::prime::{prime_via_theorem, semiprime_via_theorem, witness_holds};
use ringlab_core::radicals::{verify_nil_theorem, verify_rad_theorem};
use ringlab_core::classify::{check_retraction_lemmas, classify_prime_ideals};
use ringlab_core::*;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        ..ProptestConfig::default()
    }
}

// Oracles below use only the tables; they do not call the library's
// ideal or radical code.

fn closed(e: &FiniteRng, s: &[bool]) -> (bool, bool, bool) {
    let n = e.order();
    let mut add = s[0];
    let mut left = true;
    let mut right = true;
    for a in 0..n {
        if !s[a] {
            continue;
        }
        for b in 0..n {
            if s[b] && !s[e.sub(a, b)] {
                add = false;
            }
            if !s[e.mul(b, a)] {
                left = false;
            }
            if !s[e.mul(a, b)] {
                right = false;
            }
        }
    }
    (add, left, right)
}

fn quasi_left(e: &FiniteRng, x: Elem) -> bool {
    e.elements().any(|k| e.add(e.add(x, k), e.mul(k, x)) == 0)
}

fn brute_rad(e: &FiniteRng) -> Vec<Elem> {
    e.elements()
        .filter(|&x| e.elements().all(|y| quasi_left(e, e.mul(y, x))))
        .collect()
}

/// Smallest ideal containing `x`, by closing under sums and both products.
fn principal(e: &FiniteRng, x: Elem) -> Vec<bool> {
    let mut s = vec![false; e.order()];
    s[0] = true;
    s[x] = true;
    loop {
        let cur: Vec<Elem> = e.elements().filter(|&a| s[a]).collect();
        let mut grew = false;
        for &a in &cur {
            for b in e.elements() {
                for y in [e.mul(a, b), e.mul(b, a)] {
                    if !s[y] {
                        s[y] = true;
                        grew = true;
                    }
                }
                if s[b] && !s[e.add(a, b)] {
                    s[e.add(a, b)] = true;
                    grew = true;
                }
            }
        }
        if !grew {
            return s;
        }
    }
}

fn products_vanish(e: &FiniteRng, a: &[bool], b: &[bool]) -> bool {
    e.elements()
        .all(|x| !a[x] || e.elements().all(|y| !b[y] || e.mul(x, y) == 0))
}

fn brute_semiprime(e: &FiniteRng) -> bool {
    (1..e.order()).all(|x| {
        let p = principal(e, x);
        !products_vanish(e, &p, &p)
    })
}

fn brute_prime(e: &FiniteRng) -> bool {
    let ps: Vec<Vec<bool>> = (1..e.order()).map(|x| principal(e, x)).collect();
    e.order() > 1
        && ps
            .iter()
            .all(|a| ps.iter().all(|b| !products_vanish(e, a, b)))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn ideals_round_trip_through_decomposition(x in arb_rrng()) {
        let e = ext(&x);
        for k in enumerate_ideals(e.ring(), IdealKind::TwoSided, &lim()).unwrap() {
            let d = decompose_ideal(&e, &k, Sidedness::TwoSided).unwrap();
            check_decomposition(&e, &d).unwrap();
            prop_assert_eq!(reconstruct_ideal(&e, &d).unwrap(), k.clone());
            verify_statements(&e, &k, &d).unwrap();
            let rep = nil_ideal_lemma(&e, &k, &d).unwrap();
            if let (Some(n), Some(m), Some(kn)) = (rep.a_nilpotent, rep.ker_nilpotent, rep.k_nilpotent) {
                prop_assert!(kn <= n * m);
            }
        }
    }

    #[test]
    fn enumerated_ideals_are_exactly_the_closed_subsets(x in arb_rrng()) {
        let e = ext(&x);
        prop_assume!(e.ring().order() <= 16);
        let ring = e.ring();
        let n = ring.order();
        let mut brute = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let s: Vec<bool> = (0..n).map(|b| mask >> b & 1 == 1).collect();
            if closed(ring, &s) == (true, true, true) {
                brute.push((0..n).filter(|&b| s[b]).collect::<Vec<_>>());
            }
        }
        brute.sort();
        let mut found: Vec<Vec<Elem>> = enumerate_ideals(ring, IdealKind::TwoSided, &lim())
            .unwrap()
            .iter()
            .map(|k| k.members().to_vec())
            .collect();
        found.sort();
        prop_assert_eq!(found, brute);
    }

    #[test]
    fn subset_flags_match_table_scan(x in arb_rrng(), bits in proptest::collection::vec(any::<bool>(), 144)) {
        let e = ext(&x);
        let ring = e.ring();
        let mut s: Vec<bool> = (0..ring.order()).map(|k| bits[k % bits.len()]).collect();
        s[0] = true;
        let k = IdealSubset::new(ring, (0..ring.order()).filter(|&b| s[b])).unwrap();
        let (add, left, right) = closed(ring, &s);
        prop_assert_eq!(k.has(SubsetFlags::ADDITIVE_SUBGROUP), add);
        if add {
            prop_assert_eq!(k.has(SubsetFlags::LEFT_IDEAL), left);
            prop_assert_eq!(k.has(SubsetFlags::RIGHT_IDEAL), right);
        }
    }

    #[test]
    fn left_ideals_round_trip(x in arb_rrng()) {
        let e = ext(&x);
        prop_assume!(e.ring().order() <= 64);
        for k in enumerate_ideals(e.ring(), IdealKind::Left, &lim()).unwrap() {
            let d = decompose_ideal(&e, &k, Sidedness::Left).unwrap();
            check_decomposition(&e, &d).unwrap();
            prop_assert_eq!(reconstruct_ideal(&e, &d).unwrap(), k);
        }
    }

    #[test]
    fn radical_theorem_matches_definition(x in arb_rrng()) {
        let e = ext(&x);
        let check = verify_rad_theorem(&e).unwrap();
        prop_assert_eq!(check.radicals.whole.radical.members().to_vec(), brute_rad(e.ring()));
        prop_assert_eq!(check.radicals.rng.radical.members().to_vec(), brute_rad(e.rng()));
        if check.centrally_generated {
            prop_assert!(check.direct_sum);
        }
    }

    #[test]
    fn nil_radical_theorem_and_power_form(x in arb_rrng()) {
        let e = ext(&x);
        let nils = verify_nil_theorem(&e, 4, Some(&lim())).unwrap();
        let rad = brute_rad(e.ring());
        prop_assert!(nils.whole.radical.members().iter().all(|m| rad.contains(m)));
    }

    #[test]
    fn semiprime_and_prime_criteria_agree_with_lattice(x in arb_rrng()) {
        let e = ext(&x);
        let sp = semiprime_via_theorem(&e, &lim()).unwrap();
        prop_assert_eq!(sp.verdict.verdict, brute_semiprime(e.ring()));
        if let Some(w) = &sp.definitional.witness {
            prop_assert!(witness_holds(e.ring(), w));
        }
        if x.rng().order() > 1 {
            let p = prime_via_theorem(&e, &lim()).unwrap();
            prop_assert_eq!(p.verdict.verdict, brute_prime(e.ring()));
        }
    }

    #[test]
    fn retractions_give_involutions_and_complete_classification(x in arb_rrng()) {
        let e = ext(&x);
        for phi in find_retractions(&x, &lim()).unwrap() {
            let psi = psi_automorphism(&e, &phi).unwrap();
            for a in e.ring().elements() {
                prop_assert_eq!(psi.apply(psi.apply(a)), a);
            }
            check_retraction_lemmas(&e, &phi, &lim()).unwrap();
            classify_prime_ideals(&e, &phi, &lim()).unwrap();
        }
    }

    #[test]
    fn generated_r_ideals_and_extension_corollary(x in arb_rrng()) {
        check_generated_r_ideals(&x, &lim()).unwrap();
        let e = ext(&x);
        let rep = check_extension_corollary(&e, &lim()).unwrap();
        prop_assert!(rep.covered <= rep.tried);
    }
}

fn table_axioms_hold(n: usize, add: &[Vec<Elem>], mul: &[Vec<Elem>]) -> bool {
    let r = 0..n;
    r.clone().all(|a| {
        r.clone().all(|b| {
            r.clone().all(|c| {
                mul[mul[a][b]][c] == mul[a][mul[b][c]]
                    && mul[a][add[b][c]] == add[mul[a][b]][mul[a][c]]
                    && mul[add[a][b]][c] == add[mul[a][c]][mul[b][c]]
            })
        })
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn corrupted_multiplication_is_rejected_exactly_when_an_axiom_fails(
        n in 2usize..=8,
        a in 0usize..8,
        b in 0usize..8,
        v in 0usize..8,
    ) {
        let (a, b, v) = (a % n, b % n, v % n);
        let add: Vec<Vec<Elem>> = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        let mut mul: Vec<Vec<Elem>> = (0..n).map(|x| (0..n).map(|y| x * y % n).collect()).collect();
        mul[a][b] = v;
        let ok = table_axioms_hold(n, &add, &mul);
        match validate_rng(n, &add, &mul, None) {
            Ok(_) => prop_assert!(ok),
            Err(Error::AxiomViolation(vs)) => {
                prop_assert!(!ok);
                prop_assert!(!vs.is_empty());
            }
            Err(other) => prop_assert!(false, "unexpected {other}"),
        }
    }
}
