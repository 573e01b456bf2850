//! The extension ring `E(R, I)` on `R x I`.

use crate::error::Result;
use crate::limits::Limits;
use crate::rng::{Elem, FiniteRng, Shape};
use crate::rrng::RRngStructure;
use crate::subset::IdealSubset;

/// `E(R, I)` together with the R-rng it was built from. Element `(r, i)` has
/// index `r * |I| + i`.
#[derive(Clone, Debug)]
pub struct DorrohRing {
    ring: FiniteRng,
    source: RRngStructure,
}

/// Builds `E(R, I)` with `(r, i)(p, j) = (rp, ip + rj + ij)` and unit `(1, 0)`.
pub fn dorroh_extend(x: &RRngStructure, limits: &Limits) -> Result<DorrohRing> {
    let r = x.base();
    let i = x.rng();
    let ni = i.order();
    let n = limits.check_order(r.order() as u128 * ni as u128)?;
    let split = |e: Elem| (e / ni, e % ni);
    let add = |a: Elem, b: Elem| {
        let ((r1, i1), (r2, i2)) = (split(a), split(b));
        r.add(r1, r2) * ni + i.add(i1, i2)
    };
    let mul = |a: Elem, b: Elem| {
        let ((r1, i1), (r2, j)) = (split(a), split(b));
        let second = i.add(i.add(x.ract(i1, r2), x.lact(r1, j)), i.mul(i1, j));
        r.mul(r1, r2) * ni + second
    };
    let labels = (0..n)
        .map(|e| {
            let (a, b) = split(e);
            format!("({}, {})", r.label(a), i.label(b))
        })
        .collect();
    let unit = r.unit().expect("R-rng bases are unital") * ni;
    let ring = FiniteRng::build(n, add, mul, Some(unit), labels, Shape::Plain);
    Ok(DorrohRing {
        ring,
        source: x.clone(),
    })
}

impl DorrohRing {
    pub fn ring(&self) -> &FiniteRng {
        &self.ring
    }

    pub fn source(&self) -> &RRngStructure {
        &self.source
    }

    pub fn base(&self) -> &FiniteRng {
        self.source.base()
    }

    pub fn rng(&self) -> &FiniteRng {
        self.source.rng()
    }

    #[inline]
    pub fn encode(&self, r: Elem, i: Elem) -> Elem {
        r * self.rng().order() + i
    }

    #[inline]
    pub fn decode(&self, e: Elem) -> (Elem, Elem) {
        let ni = self.rng().order();
        (e / ni, e % ni)
    }

    /// `R + 0` as a subset of `E`.
    pub fn base_copy(&self) -> IdealSubset {
        let members = self.base().elements().map(|r| self.encode(r, 0));
        IdealSubset::new(&self.ring, members).expect("in range")
    }

    /// `0 + I` as a subset of `E`.
    pub fn ideal_copy(&self) -> IdealSubset {
        let members = self.rng().elements().map(|i| self.encode(0, i));
        IdealSubset::new(&self.ring, members).expect("in range")
    }

    /// `{(a, j) : a in A, j in J}` for subsets of `R` and `I`.
    pub fn direct_sum(&self, a: &[Elem], j: &[Elem]) -> IdealSubset {
        let members = a.iter().flat_map(|&p| j.iter().map(move |&q| (p, q)));
        let members: Vec<Elem> = members.map(|(p, q)| self.encode(p, q)).collect();
        IdealSubset::new(&self.ring, members).expect("in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::*;
    use crate::rrng::{canonical_action, ideal_as_rrng};
    use crate::subset::SubsetFlags;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn small_extensions() {
        let z2 = cyclic_ring(2, &lim()).unwrap();
        let triv = trivial_mult_rng(&z2);
        let e = dorroh_extend(&canonical_action(&z2, &triv).unwrap(), &lim()).unwrap();
        assert_eq!(e.ring().order(), 4);
        assert_eq!(e.ring().mul(e.encode(0, 1), e.encode(0, 1)), e.encode(0, 0));
        assert_eq!(e.ring().unit(), Some(e.encode(1, 0)));

        let e = dorroh_extend(&ideal_as_rrng(&z2, &IdealSubset::full(&z2)).unwrap(), &lim()).unwrap();
        assert_eq!(e.ring().mul(e.encode(1, 1), e.encode(1, 1)), e.encode(1, 1));
        assert_eq!(e.ring().label(3), "(1, 1)");
    }

    #[test]
    fn matrix_extension_is_a_ring_with_the_embeddings() {
        let f2 = cyclic_ring(2, &lim()).unwrap();
        let t2 = upper_triangular_ring(&f2, 2, &lim()).unwrap();
        let m2 = matrix_ring(&f2, 2, &lim()).unwrap();
        let e = dorroh_extend(&canonical_action(&t2, &m2).unwrap(), &lim()).unwrap();
        assert_eq!(e.ring().order(), 128);
        assert!(e.ring().violations().is_empty());
        let r = e.base_copy();
        assert!(r.has(SubsetFlags::SUBRNG) && r.contains(e.ring().unit().unwrap()));
        assert!(e.ideal_copy().has(SubsetFlags::IDEAL));
    }

    #[test]
    fn order_cap_applies() {
        let f2 = cyclic_ring(2, &lim()).unwrap();
        let t2 = upper_triangular_ring(&f2, 2, &lim()).unwrap();
        let m2 = matrix_ring(&f2, 2, &lim()).unwrap();
        let cap = Limits {
            order_cap: 64,
            ..lim()
        };
        assert!(dorroh_extend(&canonical_action(&t2, &m2).unwrap(), &cap).is_err());
    }
}
