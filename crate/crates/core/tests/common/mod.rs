#![allow(dead_code)]

use proptest::prelude::*;
use ringlab_core::builders::*;
use ringlab_core::rrng::{canonical_action, ideal_as_rrng};
use ringlab_core::{dorroh_extend, DorrohRing, FiniteRng, IdealSubset, Limits, RRngStructure};

pub fn lim() -> Limits {
    Limits::default()
}

pub fn z(n: usize) -> FiniteRng {
    cyclic_ring(n, &lim()).unwrap()
}

pub fn ext(x: &RRngStructure) -> DorrohRing {
    dorroh_extend(x, &lim()).unwrap()
}

/// The ideal `dZ/nZ` of `Z/n` as a `Z/n`-rng.
pub fn ideal_of(n: usize, d: usize) -> RRngStructure {
    let r = z(n);
    let k = IdealSubset::new(&r, (0..n).filter(|a| a % d == 0)).unwrap();
    ideal_as_rrng(&r, &k).unwrap()
}

pub fn t2_on_m2() -> RRngStructure {
    let f2 = z(2);
    let t2 = upper_triangular_ring(&f2, 2, &lim()).unwrap();
    let m2 = matrix_ring(&f2, 2, &lim()).unwrap();
    canonical_action(&t2, &m2).unwrap()
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Small R-rngs over cyclic bases: ideals of `Z/n`, `Z/m` and trivial
/// `Z/m` under `Z/n` for `m | n`, and `F2 x F2` over `F2`.
pub fn arb_rrng() -> impl Strategy<Value = RRngStructure> {
    let ideal = (1usize..=12)
        .prop_flat_map(|n| (Just(n), proptest::sample::select(divisors(n))))
        .prop_map(|(n, d)| ideal_of(n, d));
    let over = (1usize..=12, 0usize..2)
        .prop_flat_map(|(n, t)| (Just(n), proptest::sample::select(divisors(n)), Just(t)))
        .prop_map(|(n, m, t)| {
            let s = if t == 0 { z(m) } else { trivial_mult_rng(&z(m)) };
            canonical_action(&z(n), &s).unwrap()
        });
    let pair = (1usize..=3).prop_map(|p| {
        let f = z(p);
        canonical_action(&f, &direct_product(&[f.clone(), f.clone()], &lim()).unwrap()).unwrap()
    });
    prop_oneof![3 => ideal, 3 => over, 1 => pair]
}
