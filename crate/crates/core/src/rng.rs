//! Finite rngs presented by dense addition and multiplication tables.
//!
//! Elements are indices `0..order`; index 0 is always the additive identity.
//! A [`FiniteRng`] is immutable once built and cheap to clone.

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use crate::error::{Axiom, Error, Result, Violation};

/// Index of an element inside its ambient rng.
pub type Elem = usize;

/// How a rng was constructed. Used for element rendering and for choosing
/// canonical actions between related rings.
#[derive(Clone)]
pub enum Shape {
    Plain,
    Cyclic(usize),
    Matrix {
        base: FiniteRng,
        size: usize,
        upper: bool,
    },
    Product(Vec<FiniteRng>),
}

struct Tables {
    order: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
    mul: Vec<u32>,
    unit: Option<u32>,
    labels: Vec<String>,
    shape: Shape,
}

#[derive(Clone)]
pub struct FiniteRng {
    t: Arc<Tables>,
}

impl fmt::Debug for FiniteRng {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRng")
            .field("order", &self.order())
            .field("unit", &self.unit())
            .finish()
    }
}

/// Two rngs are equal when their tables (and unit) agree; labels are ignored.
impl PartialEq for FiniteRng {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.order == other.t.order
                && self.t.unit == other.t.unit
                && self.t.add == other.t.add
                && self.t.mul == other.t.mul)
    }
}

impl Eq for FiniteRng {}

/// Checks every axiom instance of a rng presented by table lookups and
/// returns all failures.
fn scan_rng_axioms(
    n: usize,
    add: impl Fn(Elem, Elem) -> Elem,
    mul: impl Fn(Elem, Elem) -> Elem,
    unit: Option<Elem>,
) -> Vec<Violation> {
    let mut out = Vec::new();
    for x in 0..n {
        if add(0, x) != x || add(x, 0) != x {
            out.push(Violation::new(Axiom::AdditiveIdentity, [x]));
        }
        if !(0..n).any(|y| add(x, y) == 0) {
            out.push(Violation::new(Axiom::AdditiveInverse, [x]));
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if add(a, b) != add(b, a) {
                out.push(Violation::new(Axiom::AdditiveCommutativity, [a, b]));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab_sum = add(a, b);
            let ab = mul(a, b);
            for c in 0..n {
                if add(ab_sum, c) != add(a, add(b, c)) {
                    out.push(Violation::new(Axiom::AdditiveAssociativity, [a, b, c]));
                }
                if mul(ab, c) != mul(a, mul(b, c)) {
                    out.push(Violation::new(Axiom::MultiplicativeAssociativity, [a, b, c]));
                }
                if mul(a, add(b, c)) != add(ab, mul(a, c)) {
                    out.push(Violation::new(Axiom::LeftDistributivity, [a, b, c]));
                }
                if mul(ab_sum, c) != add(mul(a, c), mul(b, c)) {
                    out.push(Violation::new(Axiom::RightDistributivity, [a, b, c]));
                }
            }
        }
    }
    for x in 0..n {
        if mul(0, x) != 0 || mul(x, 0) != 0 {
            out.push(Violation::new(Axiom::ZeroAbsorption, [x]));
        }
    }
    if let Some(u) = unit {
        for x in 0..n {
            if mul(u, x) != x || mul(x, u) != x {
                out.push(Violation::new(Axiom::UnitLaw, [u, x]));
            }
        }
    }
    out
}

fn check_square(what: &'static str, n: usize, table: &[Vec<Elem>]) -> Result<()> {
    if table.len() != n {
        return Err(Error::DimensionMismatch {
            what,
            expected: n,
            found: table.len(),
        });
    }
    for row in table {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                what,
                expected: n,
                found: row.len(),
            });
        }
    }
    Ok(())
}

/// Validates a rng given by raw tables. On failure the error lists every
/// violated axiom instance with its witnesses.
pub fn validate_rng(
    order: usize,
    add: &[Vec<Elem>],
    mul: &[Vec<Elem>],
    unit: Option<Elem>,
) -> Result<FiniteRng> {
    if order == 0 {
        return Err(Error::DimensionMismatch {
            what: "order",
            expected: 1,
            found: 0,
        });
    }
    check_square("addition table", order, add)?;
    check_square("multiplication table", order, mul)?;
    let mut range = Vec::new();
    for (name, table) in [(0usize, add), (1, mul)] {
        for (a, row) in table.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v >= order {
                    range.push(Violation::new(Axiom::TableRange, [name, a, b]));
                }
            }
        }
    }
    if let Some(u) = unit {
        if u >= order {
            range.push(Violation::new(Axiom::TableRange, [2, u]));
        }
    }
    if !range.is_empty() {
        return Err(Error::AxiomViolation(range));
    }
    let violations = scan_rng_axioms(order, |a, b| add[a][b], |a, b| mul[a][b], unit);
    if !violations.is_empty() {
        return Err(Error::AxiomViolation(violations));
    }
    Ok(FiniteRng::build(
        order,
        |a, b| add[a][b],
        |a, b| mul[a][b],
        unit,
        (0..order).map(|k| k.to_string()).collect(),
        Shape::Plain,
    ))
}

impl FiniteRng {
    /// Builds tables from closures without checking any axiom. Callers are
    /// constructions that are correct by design; tests re-validate them.
    pub(crate) fn build(
        order: usize,
        add: impl Fn(Elem, Elem) -> Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
        unit: Option<Elem>,
        labels: Vec<String>,
        shape: Shape,
    ) -> FiniteRng {
        debug_assert_eq!(labels.len(), order);
        let mut add_t = Vec::with_capacity(order * order);
        let mut mul_t = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                add_t.push(add(a, b) as u32);
                mul_t.push(mul(a, b) as u32);
            }
        }
        let mut neg = vec![0u32; order];
        for a in 0..order {
            let row = &add_t[a * order..(a + 1) * order];
            neg[a] = row
                .iter()
                .position(|&v| v == 0)
                .expect("additive inverse exists") as u32;
        }
        FiniteRng {
            t: Arc::new(Tables {
                order,
                add: add_t,
                neg,
                mul: mul_t,
                unit: unit.map(|u| u as u32),
                labels,
                shape,
            }),
        }
    }

    /// Same tables, new element names.
    pub fn with_labels(&self, labels: Vec<String>) -> FiniteRng {
        assert_eq!(labels.len(), self.order());
        FiniteRng {
            t: Arc::new(Tables {
                order: self.t.order,
                add: self.t.add.clone(),
                neg: self.t.neg.clone(),
                mul: self.t.mul.clone(),
                unit: self.t.unit,
                labels,
                shape: self.t.shape.clone(),
            }),
        }
    }

    /// Re-runs the full axiom scan on this rng's own tables.
    pub fn violations(&self) -> Vec<Violation> {
        scan_rng_axioms(self.order(), |a, b| self.add(a, b), |a, b| self.mul(a, b), self.unit())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.t.order
    }

    #[inline]
    pub fn elements(&self) -> Range<Elem> {
        0..self.t.order
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.t.add[a * self.t.order + b] as Elem
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.t.neg[a] as Elem
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.t.mul[a * self.t.order + b] as Elem
    }

    pub fn unit(&self) -> Option<Elem> {
        self.t.unit.map(|u| u as Elem)
    }

    pub fn is_unital(&self) -> bool {
        self.t.unit.is_some()
    }

    pub fn is_zero_rng(&self) -> bool {
        self.t.order == 1
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.t.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.t.labels
    }

    pub fn shape(&self) -> &Shape {
        &self.t.shape
    }

    /// `k`-fold sum `a + ... + a`.
    pub fn multiple(&self, k: usize, a: Elem) -> Elem {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.add(acc, a);
        }
        acc
    }

    /// `a^n` for `n >= 1`.
    pub fn pow(&self, a: Elem, n: usize) -> Elem {
        assert!(n >= 1, "rng powers start at 1");
        let mut acc = a;
        for _ in 1..n {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// A pair `(a, b)` with `ab != ba`, if any.
    pub fn commutativity_witness(&self) -> Option<(Elem, Elem)> {
        let n = self.order();
        for a in 0..n {
            for b in a + 1..n {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_witness().is_none()
    }

    pub fn add_table(&self) -> Vec<Vec<Elem>> {
        self.t
            .add
            .chunks(self.order())
            .map(|row| row.iter().map(|&v| v as Elem).collect())
            .collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<Elem>> {
        self.t
            .mul
            .chunks(self.order())
            .map(|row| row.iter().map(|&v| v as Elem).collect())
            .collect()
    }
}

/// A map between finite rngs, checked to be additive and multiplicative.
#[derive(Clone, Debug)]
pub struct RngMorphism {
    pub source: FiniteRng,
    pub target: FiniteRng,
    map: Vec<Elem>,
}

impl RngMorphism {
    pub fn new(source: FiniteRng, target: FiniteRng, map: Vec<Elem>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::DimensionMismatch {
                what: "morphism table",
                expected: source.order(),
                found: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.order()) {
            return Err(Error::InvalidArgument(format!(
                "morphism image {bad} outside target of order {}",
                target.order()
            )));
        }
        if let Some(w) = Self::failure(&source, &target, &map) {
            return Err(Error::InvalidArgument(format!(
                "map is not a rng homomorphism at {w:?}"
            )));
        }
        Ok(RngMorphism {
            source,
            target,
            map,
        })
    }

    /// First pair `(a, b)` at which `map` fails to preserve `+` or `*`.
    pub fn failure(source: &FiniteRng, target: &FiniteRng, map: &[Elem]) -> Option<(Elem, Elem)> {
        for a in source.elements() {
            for b in source.elements() {
                if map[source.add(a, b)] != target.add(map[a], map[b])
                    || map[source.mul(a, b)] != target.mul(map[a], map[b])
                {
                    return Some((a, b));
                }
            }
        }
        None
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    pub fn table(&self) -> &[Elem] {
        &self.map
    }

    pub fn kernel(&self) -> Vec<Elem> {
        self.source.elements().filter(|&a| self.map[a] == 0).collect()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &v in &self.map {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &v in &self.map {
            if std::mem::replace(&mut hit[v], true) {
                return false;
            }
        }
        true
    }

    pub fn compose(&self, then: &RngMorphism) -> Result<RngMorphism> {
        if self.target != then.source {
            return Err(Error::InvalidArgument("morphisms are not composable".into()));
        }
        Ok(RngMorphism {
            source: self.source.clone(),
            target: then.target.clone(),
            map: self.map.iter().map(|&a| then.map[a]).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn_tables(n: usize) -> (Vec<Vec<Elem>>, Vec<Vec<Elem>>) {
        let add = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a * b) % n).collect()).collect();
        (add, mul)
    }

    #[test]
    fn z4_tables_validate_with_unit() {
        let (add, mul) = zn_tables(4);
        let r = validate_rng(4, &add, &mul, Some(1)).unwrap();
        assert_eq!(r.order(), 4);
        assert_eq!(r.unit(), Some(1));
        assert_eq!(r.mul(2, 3), 2);
        assert_eq!(r.neg(1), 3);
    }

    /// Independent oracle: enumerate every axiom instance over all triples.
    fn oracle_failures(n: usize, add: &[Vec<Elem>], mul: &[Vec<Elem>]) -> Vec<(Axiom, [Elem; 3])> {
        let mut v = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        v.push((Axiom::MultiplicativeAssociativity, [a, b, c]));
                    }
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] {
                        v.push((Axiom::LeftDistributivity, [a, b, c]));
                    }
                    if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]] {
                        v.push((Axiom::RightDistributivity, [a, b, c]));
                    }
                }
            }
        }
        v
    }

    #[test]
    fn corrupted_z4_reports_every_failing_triple() {
        let (add, mut mul) = zn_tables(4);
        mul[2][2] = 1;
        let err = validate_rng(4, &add, &mul, Some(1)).unwrap_err();
        let Error::AxiomViolation(list) = err else {
            panic!("expected axiom violations")
        };
        let expected = oracle_failures(4, &add, &mul);
        assert!(!expected.is_empty());
        let got: Vec<_> = list
            .iter()
            .filter(|v| v.witness.len() == 3)
            .map(|v| (v.axiom, [v.witness[0], v.witness[1], v.witness[2]]))
            .collect();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        let mut exp_sorted = expected.clone();
        exp_sorted.sort();
        assert_eq!(got_sorted, exp_sorted);
        assert!(list.iter().any(|v| matches!(
            v.axiom,
            Axiom::LeftDistributivity | Axiom::RightDistributivity | Axiom::MultiplicativeAssociativity
        )));
    }

    #[test]
    fn zero_ring_is_unital() {
        let r = validate_rng(1, &[vec![0]], &[vec![0]], Some(0)).unwrap();
        assert!(r.is_zero_rng());
        assert_eq!(r.unit(), Some(0));
    }

    #[test]
    fn bad_dimensions_and_ranges_are_reported() {
        let err = validate_rng(2, &[vec![0, 1]], &[vec![0, 0], vec![0, 0]], None).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
        let err = validate_rng(2, &[vec![0, 1], vec![1, 5]], &[vec![0, 0], vec![0, 0]], None).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation(ref v) if v[0].axiom == Axiom::TableRange));
    }

    #[test]
    fn wrong_unit_is_flagged() {
        let (add, mul) = zn_tables(3);
        let err = validate_rng(3, &add, &mul, Some(2)).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation(ref v) if v.iter().all(|x| x.axiom == Axiom::UnitLaw)));
    }

    #[test]
    fn morphism_reduction_mod_two() {
        let (a4, m4) = zn_tables(4);
        let (a2, m2) = zn_tables(2);
        let z4 = validate_rng(4, &a4, &m4, Some(1)).unwrap();
        let z2 = validate_rng(2, &a2, &m2, Some(1)).unwrap();
        let f = RngMorphism::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        assert!(f.is_surjective());
        assert!(!f.is_injective());
        assert_eq!(f.kernel(), vec![0, 2]);
        assert!(RngMorphism::new(z2, z4, vec![0, 1]).is_err());
    }
}
