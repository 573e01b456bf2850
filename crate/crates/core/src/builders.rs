//! Standard constructions: cyclic rings, matrix rings, products, trivial
//! multiplication and quotients.

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::rng::{Elem, FiniteRng, RngMorphism, Shape};
use crate::subset::{require_ideal, IdealSubset};

/// `Z/n`; index `k` is the residue `k`.
pub fn cyclic_ring(n: usize, limits: &Limits) -> Result<FiniteRng> {
    if n == 0 {
        return Err(Error::InvalidArgument("Z(n) needs n >= 1".into()));
    }
    limits.check_order(n as u128)?;
    let unit = if n == 1 { 0 } else { 1 };
    Ok(FiniteRng::build(
        n,
        |a, b| (a + b) % n,
        |a, b| (a * b) % n,
        Some(unit),
        (0..n).map(|k| k.to_string()).collect(),
        Shape::Cyclic(n),
    ))
}

/// Positions `(row, col)` of the free entries of a `k x k` matrix, row-major.
fn entry_positions(k: usize, upper: bool) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if !upper || i <= j {
                v.push((i, j));
            }
        }
    }
    v
}

/// Helper for matrix rings: mixed-radix encoding of entry tuples, first
/// entry most significant.
pub(crate) struct MatrixCodec {
    pub base: FiniteRng,
    pub size: usize,
    pub upper: bool,
    positions: Vec<(usize, usize)>,
}

impl MatrixCodec {
    pub(crate) fn new(base: FiniteRng, size: usize, upper: bool) -> Self {
        let positions = entry_positions(size, upper);
        MatrixCodec {
            base,
            size,
            upper,
            positions,
        }
    }

    fn order(&self, limits: &Limits) -> Result<usize> {
        let q = self.base.order() as u128;
        let mut total: u128 = 1;
        for _ in 0..self.positions.len() {
            total = total.saturating_mul(q);
        }
        limits.check_order(total)
    }

    /// Full `size x size` matrix of base indices.
    pub(crate) fn decode(&self, mut x: Elem) -> Vec<Vec<Elem>> {
        let q = self.base.order();
        let mut m = vec![vec![0; self.size]; self.size];
        for &(i, j) in self.positions.iter().rev() {
            m[i][j] = x % q;
            x /= q;
        }
        m
    }

    /// Inverse of [`decode`]; entries outside the free positions are ignored.
    pub(crate) fn encode(&self, m: &[Vec<Elem>]) -> Elem {
        let q = self.base.order();
        self.positions.iter().fold(0, |acc, &(i, j)| acc * q + m[i][j])
    }

    fn product(&self, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
        let k = self.size;
        let r = &self.base;
        let mut c = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                let mut acc = 0;
                for t in 0..k {
                    acc = r.add(acc, r.mul(a[i][t], b[t][j]));
                }
                c[i][j] = acc;
            }
        }
        c
    }

    fn label(&self, m: &[Vec<Elem>]) -> String {
        let rows: Vec<String> = m
            .iter()
            .map(|row| {
                let cells: Vec<&str> = row.iter().map(|&e| self.base.label(e)).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }

    fn build(self, limits: &Limits) -> Result<FiniteRng> {
        let one = self.base.unit().ok_or(Error::NotUnital)?;
        if self.size == 0 {
            return Err(Error::InvalidArgument("matrix size must be at least 1".into()));
        }
        let n = self.order(limits)?;
        let decoded: Vec<Vec<Vec<Elem>>> = (0..n).map(|x| self.decode(x)).collect();
        let mut id = vec![vec![0; self.size]; self.size];
        for (i, row) in id.iter_mut().enumerate() {
            row[i] = one;
        }
        let unit = self.encode(&id);
        let labels = decoded.iter().map(|m| self.label(m)).collect();
        let r = &self.base;
        let add = |a: Elem, b: Elem| {
            let (ma, mb) = (&decoded[a], &decoded[b]);
            let s: Vec<Vec<Elem>> = ma
                .iter()
                .zip(mb)
                .map(|(ra, rb)| ra.iter().zip(rb).map(|(&x, &y)| r.add(x, y)).collect())
                .collect();
            self.encode(&s)
        };
        let mul = |a: Elem, b: Elem| self.encode(&self.product(&decoded[a], &decoded[b]));
        Ok(FiniteRng::build(
            n,
            add,
            mul,
            Some(unit),
            labels,
            Shape::Matrix {
                base: self.base.clone(),
                size: self.size,
                upper: self.upper,
            },
        ))
    }
}

/// `M_k(base)`, matrices enumerated row-major with the first entry most
/// significant. Over `Z/2` with `k = 2` this puts `e11 = 8`, `e12 = 4`,
/// `e21 = 2`, `e22 = 1` and the identity at 9.
pub fn matrix_ring(base: &FiniteRng, k: usize, limits: &Limits) -> Result<FiniteRng> {
    MatrixCodec::new(base.clone(), k, false).build(limits)
}

/// Upper-triangular `k x k` matrices over `base`, free entries row-major.
/// Over `Z/2` with `k = 2`: `e11 = 4`, `e12 = 2`, `e22 = 1`, identity 5.
pub fn upper_triangular_ring(base: &FiniteRng, k: usize, limits: &Limits) -> Result<FiniteRng> {
    MatrixCodec::new(base.clone(), k, true).build(limits)
}

/// Mixed-radix codec for tuples, first coordinate most significant.
pub(crate) fn tuple_decode(orders: &[usize], mut x: Elem) -> Vec<Elem> {
    let mut v = vec![0; orders.len()];
    for (slot, &q) in v.iter_mut().zip(orders).rev() {
        *slot = x % q;
        x /= q;
    }
    v
}

pub(crate) fn tuple_encode(orders: &[usize], coords: &[Elem]) -> Elem {
    orders.iter().zip(coords).fold(0, |acc, (&q, &c)| acc * q + c)
}

/// Componentwise product of the factors.
pub fn direct_product(factors: &[FiniteRng], limits: &Limits) -> Result<FiniteRng> {
    if factors.is_empty() {
        return Err(Error::InvalidArgument("product of no factors".into()));
    }
    let orders: Vec<usize> = factors.iter().map(|f| f.order()).collect();
    let total = orders
        .iter()
        .fold(1u128, |acc, &q| acc.saturating_mul(q as u128));
    let n = limits.check_order(total)?;
    let decoded: Vec<Vec<Elem>> = (0..n).map(|x| tuple_decode(&orders, x)).collect();
    let unit = factors
        .iter()
        .map(|f| f.unit())
        .collect::<Option<Vec<_>>>()
        .map(|u| tuple_encode(&orders, &u));
    let labels = decoded
        .iter()
        .map(|c| {
            let parts: Vec<&str> = c.iter().zip(factors).map(|(&e, f)| f.label(e)).collect();
            format!("({})", parts.join(", "))
        })
        .collect();
    let combine = |a: Elem, b: Elem, op: &dyn Fn(&FiniteRng, Elem, Elem) -> Elem| {
        let c: Vec<Elem> = factors
            .iter()
            .enumerate()
            .map(|(k, f)| op(f, decoded[a][k], decoded[b][k]))
            .collect();
        tuple_encode(&orders, &c)
    };
    Ok(FiniteRng::build(
        n,
        |a, b| combine(a, b, &|f, x, y| f.add(x, y)),
        |a, b| combine(a, b, &|f, x, y| f.mul(x, y)),
        unit,
        labels,
        Shape::Product(factors.to_vec()),
    ))
}

/// Projection of a product onto factor `k`.
pub fn product_projection(product: &FiniteRng, k: usize) -> Result<RngMorphism> {
    let Shape::Product(factors) = product.shape() else {
        return Err(Error::InvalidArgument("not a direct product".into()));
    };
    let factor = factors
        .get(k)
        .ok_or_else(|| Error::InvalidArgument(format!("no factor {k}")))?
        .clone();
    let orders: Vec<usize> = factors.iter().map(|f| f.order()).collect();
    let map = product.elements().map(|x| tuple_decode(&orders, x)[k]).collect();
    RngMorphism::new(product.clone(), factor, map)
}

/// Same additive group, all products zero. Element names are kept.
pub fn trivial_mult_rng(group: &FiniteRng) -> FiniteRng {
    let unit = if group.order() == 1 { Some(0) } else { None };
    FiniteRng::build(
        group.order(),
        |a, b| group.add(a, b),
        |_, _| 0,
        unit,
        group.labels().to_vec(),
        Shape::Plain,
    )
}

/// `rng / k`. Cosets are represented by their least element, and quotient
/// indices follow the ascending order of those representatives.
pub fn quotient_rng(rng: &FiniteRng, k: &IdealSubset) -> Result<(FiniteRng, RngMorphism)> {
    if k.ambient_order() != rng.order() {
        return Err(Error::DimensionMismatch {
            what: "ideal ambient",
            expected: rng.order(),
            found: k.ambient_order(),
        });
    }
    require_ideal(rng, k)?;
    let n = rng.order();
    let mut rep = vec![usize::MAX; n];
    for x in 0..n {
        if rep[x] == usize::MAX {
            // x is the least element of its coset since we scan upwards
            for &m in k.members() {
                rep[rng.add(x, m)] = x;
            }
        }
    }
    let mut reps: Vec<Elem> = rep.clone();
    reps.sort_unstable();
    reps.dedup();
    let mut index_of = vec![usize::MAX; n];
    for (q, &r) in reps.iter().enumerate() {
        index_of[r] = q;
    }
    let proj: Vec<Elem> = (0..n).map(|x| index_of[rep[x]]).collect();
    let m = reps.len();
    let shape = match rng.shape() {
        Shape::Cyclic(_) if rng.is_unital() => Shape::Cyclic(m),
        _ => Shape::Plain,
    };
    let labels = match shape {
        Shape::Cyclic(_) => (0..m).map(|q| q.to_string()).collect(),
        _ if k.is_zero() => reps.iter().map(|&r| rng.label(r).to_string()).collect(),
        _ => reps.iter().map(|&r| format!("[{}]", rng.label(r))).collect(),
    };
    let unit = rng.unit().map(|u| proj[u]);
    let q = FiniteRng::build(
        m,
        |a, b| proj[rng.add(reps[a], reps[b])],
        |a, b| proj[rng.mul(reps[a], reps[b])],
        unit,
        labels,
        shape,
    );
    let morphism = RngMorphism::new(rng.clone(), q.clone(), proj)?;
    Ok((q, morphism))
}

/// Representative (least element) of each coset, indexed by quotient index.
pub fn coset_representatives(proj: &RngMorphism) -> Vec<Elem> {
    let mut reps = vec![usize::MAX; proj.target.order()];
    for x in proj.source.elements().rev() {
        reps[proj.apply(x)] = x;
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::validate_rng;

    fn lim() -> Limits {
        Limits::default()
    }

    fn revalidate(r: &FiniteRng) {
        assert!(r.violations().is_empty());
        validate_rng(r.order(), &r.add_table(), &r.mul_table(), r.unit()).unwrap();
    }

    #[test]
    fn cyclic_examples() {
        let z2 = cyclic_ring(2, &lim()).unwrap();
        assert_eq!((z2.order(), z2.unit()), (2, Some(1)));
        let z6 = cyclic_ring(6, &lim()).unwrap();
        assert_eq!(z6.mul(2, 3), 0);
        let z1 = cyclic_ring(1, &lim()).unwrap();
        assert_eq!(z1.unit(), Some(0));
        assert!(cyclic_ring(0, &lim()).is_err());
        for r in [z2, z6, z1] {
            revalidate(&r);
        }
    }

    #[test]
    fn matrix_units_over_f2() {
        let f2 = cyclic_ring(2, &lim()).unwrap();
        let m2 = matrix_ring(&f2, 2, &lim()).unwrap();
        assert_eq!(m2.order(), 16);
        assert_eq!(m2.unit(), Some(9));
        let (e11, e12, e21, e22) = (8, 4, 2, 1);
        assert_eq!(m2.mul(e12, e21), e11);
        assert_eq!(m2.mul(e21, e12), e22);
        assert_eq!(m2.label(e12), "[[0,1],[0,0]]");
        revalidate(&m2);

        let t2 = upper_triangular_ring(&f2, 2, &lim()).unwrap();
        assert_eq!(t2.order(), 8);
        assert_eq!(t2.unit(), Some(5));
        assert_eq!(t2.label(2), "[[0,1],[0,0]]");
        assert_eq!(t2.mul(4, 2), 2);
        assert_eq!(t2.mul(2, 4), 0);
        revalidate(&t2);
    }

    #[test]
    fn matrix_cap_and_unit_required() {
        let f2 = cyclic_ring(2, &lim()).unwrap();
        let small = Limits {
            order_cap: 100,
            ..lim()
        };
        assert!(matches!(
            matrix_ring(&f2, 3, &small),
            Err(Error::OrderCapExceeded { requested: 512, .. })
        ));
        let triv = trivial_mult_rng(&f2);
        assert_eq!(matrix_ring(&triv, 2, &lim()).unwrap_err(), Error::NotUnital);
    }

    #[test]
    fn products() {
        let z2 = cyclic_ring(2, &lim()).unwrap();
        let p = direct_product(&[z2.clone(), z2.clone()], &lim()).unwrap();
        assert_eq!(p.order(), 4);
        assert_eq!(p.unit(), Some(3));
        assert_eq!(p.label(2), "(1, 0)");
        assert_eq!(p.mul(2, 1), 0);
        revalidate(&p);
        let mixed = direct_product(&[z2.clone(), trivial_mult_rng(&z2)], &lim()).unwrap();
        assert!(!mixed.is_unital());
        let pr = product_projection(&p, 0).unwrap();
        assert!(pr.is_surjective());
    }

    #[test]
    fn trivial_mult() {
        let z2 = cyclic_ring(2, &lim()).unwrap();
        let t = trivial_mult_rng(&z2);
        assert_eq!(t.mul(1, 1), 0);
        assert!(!t.is_unital());
        let v = trivial_mult_rng(&direct_product(&[z2.clone(), z2], &lim()).unwrap());
        assert_eq!(v.order(), 4);
        assert!(v.elements().all(|a| v.elements().all(|b| v.mul(a, b) == 0)));
        revalidate(&v);
    }

    #[test]
    fn quotients() {
        let z12 = cyclic_ring(12, &lim()).unwrap();
        let k = IdealSubset::new(&z12, [0, 4, 8]).unwrap();
        let (q, p) = quotient_rng(&z12, &k).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(p.kernel(), vec![0, 4, 8]);
        assert!(p.is_surjective());
        revalidate(&q);
        let z4 = cyclic_ring(4, &lim()).unwrap();
        assert!(crate::iso::find_isomorphism(&q, &z4, &lim()).unwrap().is_some());

        let (same, id) = quotient_rng(&z12, &IdealSubset::zero(&z12)).unwrap();
        assert_eq!(same, z12);
        assert!(z12.elements().all(|x| id.apply(x) == x));
        let (zero, _) = quotient_rng(&z12, &IdealSubset::full(&z12)).unwrap();
        assert!(zero.is_zero_rng());

        let bad = IdealSubset::new(&z12, [0, 5]).unwrap();
        assert!(matches!(quotient_rng(&z12, &bad), Err(Error::NotAnIdeal { .. })));
    }
}
