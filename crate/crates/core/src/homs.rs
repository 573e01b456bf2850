//! Backtracking search for additive maps with extra structure: R-homomorphisms
//! into `R` or `R/Z`, multiplicative retractions, and ring isomorphisms.

use crate::dorroh::DorrohRing;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rng::{Elem, FiniteRng, RngMorphism};
use crate::rrng::RRngStructure;
use crate::subset::{require_r_subrng, IdealSubset, SubsetFlags};

pub(crate) const NONE: usize = usize::MAX;

/// Partially defined map during the search, indexed by ambient element.
pub(crate) struct PartialMap {
    pub img: Vec<usize>,
    pub defined: Vec<Elem>,
    rev: Vec<usize>,
}

impl PartialMap {
    #[inline]
    pub fn get(&self, x: Elem) -> Option<Elem> {
        let v = self.img[x];
        (v != NONE).then_some(v)
    }
}

/// Enumerates additive maps `domain -> target` where `domain` is a subgroup
/// of `group`. Generators are picked greedily by ascending index; each new
/// generator image is propagated through the span and every edge
/// `x -> x + g` is checked, so only genuine homomorphisms survive.
pub(crate) struct AdditiveSearch<'a> {
    pub group: &'a FiniteRng,
    pub domain: &'a [Elem],
    pub target: &'a FiniteRng,
    pub injective: bool,
    pub budget: u64,
}

fn greedy_generators(group: &FiniteRng, domain: &[Elem]) -> Vec<Elem> {
    let mut in_span = vec![false; group.order()];
    in_span[0] = true;
    let mut span = vec![0];
    let mut gens = Vec::new();
    for &d in domain {
        if in_span[d] {
            continue;
        }
        gens.push(d);
        let mut k = 0;
        while k < span.len() {
            let x = span[k];
            k += 1;
            let y = group.add(x, d);
            if !in_span[y] {
                in_span[y] = true;
                span.push(y);
            }
            // also close under the older generators
            for &g in &gens {
                let z = group.add(x, g);
                if !in_span[z] {
                    in_span[z] = true;
                    span.push(z);
                }
            }
        }
    }
    gens
}

impl<'a> AdditiveSearch<'a> {
    /// Runs the search. `prune(map, first_new)` sees the map after each
    /// generator is placed (`map.defined[first_new..]` are new) and returns
    /// false to cut the branch. `leaf` returns false to stop everything.
    pub fn run(
        &self,
        prune: &mut dyn FnMut(&PartialMap, usize) -> bool,
        leaf: &mut dyn FnMut(&PartialMap) -> bool,
    ) -> Result<()> {
        let gens = greedy_generators(self.group, self.domain);
        let mut map = PartialMap {
            img: vec![NONE; self.group.order()],
            defined: vec![0],
            rev: vec![NONE; self.target.order()],
        };
        map.img[0] = 0;
        map.rev[0] = 0;
        let mut nodes = 0u64;
        if !prune(&map, 0) {
            return Ok(());
        }
        self.descend(&gens, 0, &mut map, &mut nodes, prune, leaf)?;
        Ok(())
    }

    fn descend(
        &self,
        gens: &[Elem],
        level: usize,
        map: &mut PartialMap,
        nodes: &mut u64,
        prune: &mut dyn FnMut(&PartialMap, usize) -> bool,
        leaf: &mut dyn FnMut(&PartialMap) -> bool,
    ) -> Result<bool> {
        if level == gens.len() {
            return Ok(leaf(map));
        }
        let g = gens[level];
        let active = &gens[..=level];
        for t in self.target.elements() {
            *nodes += 1;
            if *nodes > self.budget {
                return Err(Error::SearchBudgetExceeded { budget: self.budget });
            }
            let mark = map.defined.len();
            let ok = self.extend(active, g, t, map);
            let keep_going = if ok && prune(map, mark) {
                self.descend(gens, level + 1, map, nodes, prune, leaf)?
            } else {
                true
            };
            for &x in &map.defined[mark..] {
                if self.injective {
                    map.rev[map.img[x]] = NONE;
                }
                map.img[x] = NONE;
            }
            map.defined.truncate(mark);
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn assign(&self, map: &mut PartialMap, x: Elem, v: Elem) -> bool {
        if self.injective {
            if map.rev[v] != NONE {
                return false;
            }
            map.rev[v] = x;
        }
        map.img[x] = v;
        map.defined.push(x);
        true
    }

    fn extend(&self, active: &[Elem], g: Elem, t: Elem, map: &mut PartialMap) -> bool {
        if !self.assign(map, g, t) {
            return false;
        }
        let mut k = 0;
        while k < map.defined.len() {
            let x = map.defined[k];
            k += 1;
            for &h in active {
                let y = self.group.add(x, h);
                let v = self.target.add(map.img[x], map.img[h]);
                match map.get(y) {
                    Some(w) if w != v => return false,
                    Some(_) => {}
                    None => {
                        if !self.assign(map, y, v) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// The codomain of an R-homomorphism: `R` itself or a quotient `R/Z`, given
/// with the projection `R -> target` that defines the R-action on it.
#[derive(Clone, Debug)]
pub struct HomTarget {
    pub ring: FiniteRng,
    pub projection: Vec<Elem>,
}

impl HomTarget {
    pub fn base(r: &FiniteRng) -> Self {
        HomTarget {
            ring: r.clone(),
            projection: r.elements().collect(),
        }
    }

    pub fn quotient(r: &FiniteRng, z: &IdealSubset) -> Result<Self> {
        let (q, p) = crate::builders::quotient_rng(r, z)?;
        Ok(HomTarget {
            ring: q,
            projection: p.table().to_vec(),
        })
    }

    pub fn from_morphism(p: &RngMorphism) -> Self {
        HomTarget {
            ring: p.target.clone(),
            projection: p.table().to_vec(),
        }
    }

    #[inline]
    pub fn lact(&self, r: Elem, t: Elem) -> Elem {
        self.ring.mul(self.projection[r], t)
    }

    #[inline]
    pub fn ract(&self, t: Elem, r: Elem) -> Elem {
        self.ring.mul(t, self.projection[r])
    }
}

/// An explicit map from an R-subrng `J` of `I` to `R` or `R/Z`.
#[derive(Clone, Debug)]
pub struct RHomomorphism {
    pub domain: IdealSubset,
    pub target: HomTarget,
    map: Vec<usize>,
}

impl RHomomorphism {
    /// Wraps a table indexed by `I`-elements (entries outside `J` ignored).
    pub fn from_table(domain: IdealSubset, target: HomTarget, table: &[Elem]) -> Result<Self> {
        if table.len() != domain.ambient_order() {
            return Err(Error::DimensionMismatch {
                what: "homomorphism table",
                expected: domain.ambient_order(),
                found: table.len(),
            });
        }
        let mut map = vec![NONE; table.len()];
        for &j in domain.members() {
            if table[j] >= target.ring.order() {
                return Err(Error::InvalidArgument(format!("image {} out of range", table[j])));
            }
            map[j] = table[j];
        }
        Ok(RHomomorphism { domain, target, map })
    }

    /// Images listed in the order of the domain members.
    pub fn from_images(domain: IdealSubset, target: HomTarget, images: &[Elem]) -> Result<Self> {
        if images.len() != domain.len() {
            return Err(Error::DimensionMismatch {
                what: "homomorphism images",
                expected: domain.len(),
                found: images.len(),
            });
        }
        let mut table = vec![0; domain.ambient_order()];
        for (&j, &v) in domain.members().iter().zip(images) {
            table[j] = v;
        }
        Self::from_table(domain, target, &table)
    }

    #[inline]
    pub fn apply(&self, j: Elem) -> Elem {
        let v = self.map[j];
        assert!(v != NONE, "element {j} outside homomorphism domain");
        v
    }

    pub fn images(&self) -> Vec<Elem> {
        self.domain.members().iter().map(|&j| self.map[j]).collect()
    }

    /// Total table on `I`, with `None` outside the domain.
    pub fn table(&self) -> Vec<Option<Elem>> {
        self.map.iter().map(|&v| (v != NONE).then_some(v)).collect()
    }

    pub fn kernel(&self) -> Vec<Elem> {
        self.domain
            .members()
            .iter()
            .copied()
            .filter(|&j| self.map[j] == 0)
            .collect()
    }

    pub fn image_set(&self) -> Vec<Elem> {
        let mut v = self.images();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.domain.members().iter().all(|&j| self.map[j] == 0)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    /// First failure of additivity, equivariance or multiplicativity.
    pub fn failure(&self, x: &RRngStructure) -> Option<(&'static str, Vec<Elem>)> {
        let i = x.rng();
        let t = &self.target;
        let d = self.domain.members();
        for &a in d {
            for &b in d {
                let s = i.add(a, b);
                if self.map[s] == NONE || self.map[s] != t.ring.add(self.map[a], self.map[b]) {
                    return Some(("additive", vec![a, b]));
                }
                let p = i.mul(a, b);
                if self.map[p] == NONE || self.map[p] != t.ring.mul(self.map[a], self.map[b]) {
                    return Some(("multiplicative", vec![a, b]));
                }
            }
        }
        for r in x.base().elements() {
            for &a in d {
                let l = x.lact(r, a);
                if self.map[l] == NONE || self.map[l] != t.lact(r, self.map[a]) {
                    return Some(("left-equivariant", vec![r, a]));
                }
                let rr = x.ract(a, r);
                if self.map[rr] == NONE || self.map[rr] != t.ract(self.map[a], r) {
                    return Some(("right-equivariant", vec![a, r]));
                }
            }
        }
        None
    }
}

/// Which properties a searched map must have on top of additivity.
#[derive(Debug, Clone, Copy, Default)]
pub struct HomConstraints {
    pub left_equivariant: bool,
    pub right_equivariant: bool,
    pub multiplicative: bool,
    pub injective: bool,
    /// `i.phi(j) = ij` and `phi(j).i = ji` for all `i` in `I` and `j` in the domain.
    pub absorbing: bool,
}

impl HomConstraints {
    pub const R_HOM: HomConstraints = HomConstraints {
        left_equivariant: true,
        right_equivariant: true,
        multiplicative: true,
        injective: false,
        absorbing: false,
    };
}

/// `i.phi(k) = ik` and `phi(k).i = ki` for every `i` in `I`.
#[inline]
fn absorbs(x: &RRngStructure, k: Elem, pk: Elem) -> bool {
    let i = x.rng();
    i.elements()
        .all(|e| x.ract(e, pk) == i.mul(e, k) && x.lact(pk, e) == i.mul(k, e))
}

/// All maps `J -> target` satisfying `c`, sorted by image tuple.
pub fn enumerate_homs(
    x: &RRngStructure,
    j: &IdealSubset,
    target: &HomTarget,
    c: HomConstraints,
    limits: &Limits,
) -> Result<Vec<RHomomorphism>> {
    if c.absorbing && target.ring.order() != x.base().order() {
        return Err(Error::InvalidArgument(
            "absorbing maps must land in the base ring".into(),
        ));
    }
    let mut found = Vec::new();
    search_homs(x, j, target, c, limits, &mut |m| {
        found.push(m);
        true
    })?;
    found.sort_by(|a, b| a.images().cmp(&b.images()));
    Ok(found)
}

/// Streams every qualifying map to `sink`; `sink` returns false to stop.
pub fn search_homs(
    x: &RRngStructure,
    j: &IdealSubset,
    target: &HomTarget,
    c: HomConstraints,
    limits: &Limits,
    sink: &mut dyn FnMut(RHomomorphism) -> bool,
) -> Result<()> {
    let i = x.rng();
    let r = x.base();
    let search = AdditiveSearch {
        group: i,
        domain: j.members(),
        target: &target.ring,
        injective: c.injective,
        budget: limits.search_budget,
    };
    let mut prune = |m: &PartialMap, first_new: usize| -> bool {
        for &a in &m.defined[first_new..] {
            let fa = m.img[a];
            if c.left_equivariant || c.right_equivariant {
                for s in r.elements() {
                    if c.left_equivariant {
                        if let Some(v) = m.get(x.lact(s, a)) {
                            if v != target.lact(s, fa) {
                                return false;
                            }
                        }
                    }
                    if c.right_equivariant {
                        if let Some(v) = m.get(x.ract(a, s)) {
                            if v != target.ract(fa, s) {
                                return false;
                            }
                        }
                    }
                }
            }
            if c.multiplicative {
                for &b in &m.defined {
                    let fb = m.img[b];
                    if let Some(v) = m.get(i.mul(a, b)) {
                        if v != target.ring.mul(fa, fb) {
                            return false;
                        }
                    }
                    if let Some(v) = m.get(i.mul(b, a)) {
                        if v != target.ring.mul(fb, fa) {
                            return false;
                        }
                    }
                }
            }
            if c.absorbing && !absorbs(x, a, fa) {
                return false;
            }
        }
        true
    };
    let mut leaf = |m: &PartialMap| -> bool {
        let table: Vec<Elem> = (0..i.order()).map(|e| m.get(e).unwrap_or(0)).collect();
        let h = RHomomorphism::from_table(j.clone(), target.clone(), &table)
            .expect("search produces in-range tables");
        sink(h)
    };
    search.run(&mut prune, &mut leaf)
}

/// All R-homomorphisms `J -> target`, lexicographic in the image tuple.
pub fn enumerate_r_homs(
    x: &RRngStructure,
    j: &IdealSubset,
    target: &HomTarget,
    limits: &Limits,
) -> Result<Vec<RHomomorphism>> {
    let j = j.clone().with_flags(x);
    if !j.has(SubsetFlags::R_SUBRNG) {
        require_r_subrng(x, &j)?;
    }
    enumerate_homs(x, &j, target, HomConstraints::R_HOM, limits)
}

/// A pair `(i, j)` with `i.phi(j) != ij` or `phi(i).j != ij`.
pub fn retraction_witness(x: &RRngStructure, phi: &RHomomorphism) -> Option<(Elem, Elem)> {
    let i = x.rng();
    if !phi.domain.is_full() {
        return Some((0, 0));
    }
    for a in i.elements() {
        for b in i.elements() {
            let ab = i.mul(a, b);
            if x.ract(a, phi.apply(b)) != ab || x.lact(phi.apply(a), b) != ab {
                return Some((a, b));
            }
        }
    }
    None
}

/// `i.phi(j) = ij = phi(i).j` for all `i, j` in `I`, with `phi` total.
pub fn is_multiplicative_retraction(x: &RRngStructure, phi: &RHomomorphism) -> bool {
    retraction_witness(x, phi).is_none()
}

/// Every R-homomorphism `I -> R` that is a multiplicative retraction.
pub fn find_retractions(x: &RRngStructure, limits: &Limits) -> Result<Vec<RHomomorphism>> {
    let full = IdealSubset::full(x);
    let c = HomConstraints {
        absorbing: true,
        ..HomConstraints::R_HOM
    };
    enumerate_homs(x, &full, &HomTarget::base(x.base()), c, limits)
}

/// `psi(r, i) = (r + phi(i), -i)`.
pub fn psi_automorphism(e: &DorrohRing, phi: &RHomomorphism) -> Result<RngMorphism> {
    let x = e.source();
    if let Some((a, b)) = retraction_witness(x, phi) {
        return Err(Error::NotARetraction { witness: vec![a, b] });
    }
    let r = x.base();
    let i = x.rng();
    let map = e
        .ring()
        .elements()
        .map(|el| {
            let (p, k) = e.decode(el);
            e.encode(r.add(p, phi.apply(k)), i.neg(k))
        })
        .collect();
    RngMorphism::new(e.ring().clone(), e.ring().clone(), map)
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

    /// Oracle: all |T|^|J| tables, filtered by the R-homomorphism axioms.
    fn brute_r_homs(x: &RRngStructure, t: &HomTarget) -> Vec<Vec<Elem>> {
        let n = x.rng().order();
        let q = t.ring.order();
        let mut out = Vec::new();
        let total = q.pow(n as u32);
        for code in 0..total {
            let table = tuple_decode(&vec![q; n], code);
            let h = RHomomorphism::from_table(IdealSubset::full(x), t.clone(), &table).unwrap();
            if h.failure(x).is_none() {
                out.push(h.images());
            }
        }
        out
    }

    #[test]
    fn homs_from_trivial_z2_into_z4() {
        let z4 = cyclic_ring(4, &lim()).unwrap();
        let t = trivial_mult_rng(&cyclic_ring(2, &lim()).unwrap());
        let x = canonical_action(&z4, &t).unwrap();
        let j = IdealSubset::full(&x);
        let homs = enumerate_r_homs(&x, &j, &HomTarget::base(&z4), &lim()).unwrap();
        let imgs: Vec<_> = homs.iter().map(|h| h.images()).collect();
        assert_eq!(imgs, vec![vec![0, 0], vec![0, 2]]);
        assert_eq!(imgs, brute_r_homs(&x, &HomTarget::base(&z4)));
        let rets = find_retractions(&x, &lim()).unwrap();
        assert_eq!(rets.len(), 2);
    }

    #[test]
    fn zero_domain_has_only_the_empty_map() {
        let z4 = cyclic_ring(4, &lim()).unwrap();
        let x = ideal_as_rrng(&z4, &IdealSubset::new(&z4, [0, 2]).unwrap()).unwrap();
        let homs = enumerate_r_homs(&x, &IdealSubset::zero(&x), &HomTarget::base(&z4), &lim()).unwrap();
        assert_eq!(homs.len(), 1);
        assert!(homs[0].is_zero());
    }

    #[test]
    fn identity_on_z6() {
        let z6 = cyclic_ring(6, &lim()).unwrap();
        let x = ideal_as_rrng(&z6, &IdealSubset::full(&z6)).unwrap();
        let homs = enumerate_r_homs(&x, &IdealSubset::full(&x), &HomTarget::base(&z6), &lim()).unwrap();
        assert!(homs.iter().any(|h| h.images() == vec![0, 1, 2, 3, 4, 5]));
        let imgs: Vec<_> = homs.iter().map(|h| h.images()).collect();
        assert_eq!(imgs, brute_r_homs(&x, &HomTarget::base(&z6)));
    }

    #[test]
    fn no_retraction_from_m2_to_t2() {
        let f2 = cyclic_ring(2, &lim()).unwrap();
        let t2 = upper_triangular_ring(&f2, 2, &lim()).unwrap();
        let m2 = matrix_ring(&f2, 2, &lim()).unwrap();
        let x = canonical_action(&t2, &m2).unwrap();
        assert!(find_retractions(&x, &lim()).unwrap().is_empty());
    }

    #[test]
    fn first_projection_is_not_a_retraction() {
        let f2 = cyclic_ring(2, &lim()).unwrap();
        let v = direct_product(&[f2.clone(), f2.clone()], &lim()).unwrap();
        let x = canonical_action(&f2, &v).unwrap();
        // elements: 0=(0,0) 1=(0,1) 2=(1,0) 3=(1,1)
        let phi = RHomomorphism::from_table(IdealSubset::full(&x), HomTarget::base(&f2), &[0, 0, 1, 1]).unwrap();
        assert!(phi.failure(&x).is_none());
        assert!(!is_multiplicative_retraction(&x, &phi));
        // i = (0,1), j = (1,0): i.phi(j) = (0,1) but ij = 0
        assert_eq!(x.ract(1, phi.apply(2)), 1);
        assert_eq!(v.mul(1, 2), 0);
        // oracle scan of all 16 pairs finds a failure
        let fails = (0..4)
            .flat_map(|a| (0..4).map(move |b| (a, b)))
            .filter(|&(a, b)| x.ract(a, phi.apply(b)) != v.mul(a, b) || x.lact(phi.apply(a), b) != v.mul(a, b))
            .count();
        assert!(fails > 0);
    }

    #[test]
    fn zero_map_on_square_zero_is_retraction() {
        let z4 = cyclic_ring(4, &lim()).unwrap();
        let t = trivial_mult_rng(&cyclic_ring(2, &lim()).unwrap());
        let x = canonical_action(&z4, &t).unwrap();
        let phi = RHomomorphism::from_table(IdealSubset::full(&x), HomTarget::base(&z4), &[0, 0]).unwrap();
        assert!(is_multiplicative_retraction(&x, &phi));
    }

    #[test]
    fn psi_examples() {
        let z4 = cyclic_ring(4, &lim()).unwrap();
        let x = ideal_as_rrng(&z4, &IdealSubset::new(&z4, [0, 2]).unwrap()).unwrap();
        let e = dorroh_extend(&x, &lim()).unwrap();
        let rets = find_retractions(&x, &lim()).unwrap();
        let incl = rets.iter().find(|h| h.images() == vec![0, 2]).expect("inclusion");
        let psi = psi_automorphism(&e, incl).unwrap();
        // I has elements {0, 2} at local indices 0, 1
        assert_eq!(e.decode(psi.apply(e.encode(1, 1))), (3, 1));
        for r in 0..4 {
            assert_eq!(psi.apply(e.encode(r, 0)), e.encode(r, 0));
        }
        for el in e.ring().elements() {
            assert_eq!(psi.apply(psi.apply(el)), el);
        }
        assert!(psi.is_injective());
    }

    #[test]
    fn budget_is_enforced() {
        let z6 = cyclic_ring(6, &lim()).unwrap();
        let x = ideal_as_rrng(&z6, &IdealSubset::full(&z6)).unwrap();
        let tight = Limits {
            search_budget: 2,
            ..lim()
        };
        let err = enumerate_r_homs(&x, &IdealSubset::full(&x), &HomTarget::base(&z6), &tight).unwrap_err();
        assert_eq!(err, Error::SearchBudgetExceeded { budget: 2 });
    }
}
