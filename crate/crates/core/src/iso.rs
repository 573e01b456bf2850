//! Ring isomorphism search, used mostly by tests.

use crate::error::Result;
use crate::homs::{AdditiveSearch, PartialMap};
use crate::limits::Limits;
use crate::rng::{Elem, FiniteRng};

/// A bijection `a -> b` preserving both operations, if one exists.
pub fn find_isomorphism(a: &FiniteRng, b: &FiniteRng, limits: &Limits) -> Result<Option<Vec<Elem>>> {
    if a.order() != b.order() || a.is_unital() != b.is_unital() {
        return Ok(None);
    }
    let domain: Vec<Elem> = a.elements().collect();
    let search = AdditiveSearch {
        group: a,
        domain: &domain,
        target: b,
        injective: true,
        budget: limits.search_budget,
    };
    let mut prune = |m: &PartialMap, first_new: usize| {
        for &x in &m.defined[first_new..] {
            for &y in &m.defined {
                if let Some(v) = m.get(a.mul(x, y)) {
                    if v != b.mul(m.img[x], m.img[y]) {
                        return false;
                    }
                }
                if let Some(v) = m.get(a.mul(y, x)) {
                    if v != b.mul(m.img[y], m.img[x]) {
                        return false;
                    }
                }
            }
        }
        true
    };
    let mut found = None;
    let mut leaf = |m: &PartialMap| {
        found = Some(m.img.clone());
        false
    };
    search.run(&mut prune, &mut leaf)?;
    Ok(found)
}

pub fn are_isomorphic(a: &FiniteRng, b: &FiniteRng, limits: &Limits) -> Result<bool> {
    Ok(find_isomorphism(a, b, limits)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::*;
    use crate::rng::RngMorphism;

    #[test]
    fn z4_is_not_f2_squared() {
        let l = Limits::default();
        let z4 = cyclic_ring(4, &l).unwrap();
        let z2 = cyclic_ring(2, &l).unwrap();
        let v = direct_product(&[z2.clone(), z2.clone()], &l).unwrap();
        assert!(!are_isomorphic(&z4, &v, &l).unwrap());
        let z6 = cyclic_ring(6, &l).unwrap();
        let z3 = cyclic_ring(3, &l).unwrap();
        let p = direct_product(&[z2, z3], &l).unwrap();
        let f = find_isomorphism(&z6, &p, &l).unwrap().unwrap();
        let m = RngMorphism::new(z6, p, f).unwrap();
        assert!(m.is_injective() && m.is_surjective());
    }
}
