//! R-rngs: a rng `I` with a unital `(R, R)`-bimodule structure compatible
//! with its multiplication.

use std::fmt;
use std::sync::Arc;

use crate::builders::{direct_product, quotient_rng, tuple_decode, tuple_encode, MatrixCodec};
use crate::error::{Axiom, Error, Result, Violation};
use crate::ideals::{generated, IdealKind};
use crate::limits::Limits;
use crate::rng::{Elem, FiniteRng, Shape};
use crate::subset::{require_ideal, require_r_ideal, Ambient, IdealSubset};

#[derive(Clone)]
pub struct RRngStructure {
    base: FiniteRng,
    rng: FiniteRng,
    left: Arc<Vec<u32>>,
    right: Arc<Vec<u32>>,
}

impl fmt::Debug for RRngStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RRngStructure")
            .field("base_order", &self.base.order())
            .field("rng_order", &self.rng.order())
            .finish()
    }
}

impl PartialEq for RRngStructure {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.rng == other.rng && self.left == other.left && self.right == other.right
    }
}

impl Eq for RRngStructure {}

fn scan_rrng_axioms(
    r: &FiniteRng,
    i: &FiniteRng,
    l: impl Fn(Elem, Elem) -> Elem,
    rt: impl Fn(Elem, Elem) -> Elem,
) -> Vec<Violation> {
    let mut out = Vec::new();
    let one = r.unit().expect("checked by caller");
    for a in r.elements() {
        for b in r.elements() {
            let ab = r.mul(a, b);
            let apb = r.add(a, b);
            for x in i.elements() {
                if l(apb, x) != i.add(l(a, x), l(b, x)) {
                    out.push(Violation::new(Axiom::LeftActionAdditivity, [a, b, x]));
                }
                if rt(x, apb) != i.add(rt(x, a), rt(x, b)) {
                    out.push(Violation::new(Axiom::RightActionAdditivity, [x, a, b]));
                }
                if l(ab, x) != l(a, l(b, x)) {
                    out.push(Violation::new(Axiom::ModuleAssociativity, [a, b, x]));
                }
                if rt(x, ab) != rt(rt(x, a), b) {
                    out.push(Violation::new(Axiom::ModuleAssociativity, [x, a, b]));
                }
            }
        }
    }
    for a in r.elements() {
        for x in i.elements() {
            for y in i.elements() {
                let xy = i.mul(x, y);
                if l(a, i.add(x, y)) != i.add(l(a, x), l(a, y)) {
                    out.push(Violation::new(Axiom::LeftActionAdditivity, [a, x, y]));
                }
                if rt(i.add(x, y), a) != i.add(rt(x, a), rt(y, a)) {
                    out.push(Violation::new(Axiom::RightActionAdditivity, [x, y, a]));
                }
                if l(a, xy) != i.mul(l(a, x), y) {
                    out.push(Violation::new(Axiom::Compatibility, [a, x, y]));
                }
                if i.mul(x, l(a, y)) != i.mul(rt(x, a), y) {
                    out.push(Violation::new(Axiom::Compatibility, [x, a, y]));
                }
                if rt(xy, a) != i.mul(x, rt(y, a)) {
                    out.push(Violation::new(Axiom::Compatibility, [x, y, a]));
                }
            }
        }
    }
    for a in r.elements() {
        for x in i.elements() {
            for b in r.elements() {
                if rt(l(a, x), b) != l(a, rt(x, b)) {
                    out.push(Violation::new(Axiom::ModuleAssociativity, [a, x, b]));
                }
            }
        }
    }
    for x in i.elements() {
        if l(one, x) != x || rt(x, one) != x {
            out.push(Violation::new(Axiom::ActionUnitality, [one, x]));
        }
    }
    out
}

/// Validates action tables `left[r][i] = r.i` and `right[i][r] = i.r`.
pub fn validate_rrng(
    base: &FiniteRng,
    rng: &FiniteRng,
    left: &[Vec<Elem>],
    right: &[Vec<Elem>],
) -> Result<RRngStructure> {
    if !base.is_unital() {
        return Err(Error::NotUnital);
    }
    let (nr, ni) = (base.order(), rng.order());
    let dims = [
        ("left action rows", nr, left.len()),
        ("right action rows", ni, right.len()),
    ];
    for (what, expected, found) in dims {
        if expected != found {
            return Err(Error::DimensionMismatch { what, expected, found });
        }
    }
    for row in left {
        if row.len() != ni {
            return Err(Error::DimensionMismatch {
                what: "left action columns",
                expected: ni,
                found: row.len(),
            });
        }
    }
    for row in right {
        if row.len() != nr {
            return Err(Error::DimensionMismatch {
                what: "right action columns",
                expected: nr,
                found: row.len(),
            });
        }
    }
    let mut range = Vec::new();
    for (a, row) in left.iter().enumerate() {
        for (x, &v) in row.iter().enumerate() {
            if v >= ni {
                range.push(Violation::new(Axiom::TableRange, [0, a, x]));
            }
        }
    }
    for (x, row) in right.iter().enumerate() {
        for (a, &v) in row.iter().enumerate() {
            if v >= ni {
                range.push(Violation::new(Axiom::TableRange, [1, x, a]));
            }
        }
    }
    if !range.is_empty() {
        return Err(Error::AxiomViolation(range));
    }
    let v = scan_rrng_axioms(base, rng, |a, x| left[a][x], |x, a| right[x][a]);
    if !v.is_empty() {
        return Err(Error::AxiomViolation(v));
    }
    Ok(RRngStructure::from_fns(base, rng, |a, x| left[a][x], |x, a| right[x][a]))
}

impl RRngStructure {
    pub(crate) fn from_fns(
        base: &FiniteRng,
        rng: &FiniteRng,
        l: impl Fn(Elem, Elem) -> Elem,
        rt: impl Fn(Elem, Elem) -> Elem,
    ) -> Self {
        let (nr, ni) = (base.order(), rng.order());
        let mut left = Vec::with_capacity(nr * ni);
        for a in 0..nr {
            for x in 0..ni {
                left.push(l(a, x) as u32);
            }
        }
        let mut right = Vec::with_capacity(nr * ni);
        for x in 0..ni {
            for a in 0..nr {
                right.push(rt(x, a) as u32);
            }
        }
        RRngStructure {
            base: base.clone(),
            rng: rng.clone(),
            left: Arc::new(left),
            right: Arc::new(right),
        }
    }

    /// Builds from closures and runs the full axiom scan.
    pub fn checked(
        base: &FiniteRng,
        rng: &FiniteRng,
        l: impl Fn(Elem, Elem) -> Elem,
        rt: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self> {
        if !base.is_unital() {
            return Err(Error::NotUnital);
        }
        let s = Self::from_fns(base, rng, l, rt);
        let v = s.violations();
        if v.is_empty() {
            Ok(s)
        } else {
            Err(Error::AxiomViolation(v))
        }
    }

    pub fn violations(&self) -> Vec<Violation> {
        scan_rrng_axioms(&self.base, &self.rng, |a, x| self.lact(a, x), |x, a| self.ract(x, a))
    }

    /// The ring `R`.
    pub fn base(&self) -> &FiniteRng {
        &self.base
    }

    /// The rng `I`.
    pub fn rng(&self) -> &FiniteRng {
        &self.rng
    }

    #[inline]
    pub fn lact(&self, r: Elem, i: Elem) -> Elem {
        self.left[r * self.rng.order() + i] as Elem
    }

    #[inline]
    pub fn ract(&self, i: Elem, r: Elem) -> Elem {
        self.right[i * self.base.order() + r] as Elem
    }

    pub fn left_table(&self) -> Vec<Vec<Elem>> {
        self.base
            .elements()
            .map(|a| self.rng.elements().map(|x| self.lact(a, x)).collect())
            .collect()
    }

    pub fn right_table(&self) -> Vec<Vec<Elem>> {
        self.rng
            .elements()
            .map(|x| self.base.elements().map(|a| self.ract(x, a)).collect())
            .collect()
    }

    /// Same actions, all products in `I` replaced by zero.
    pub fn with_trivial_multiplication(&self) -> RRngStructure {
        RRngStructure {
            base: self.base.clone(),
            rng: crate::builders::trivial_mult_rng(&self.rng),
            left: self.left.clone(),
            right: self.right.clone(),
        }
    }
}

/// An ideal `K` of `R` as an R-rng; `I`-indices follow the sorted members of `K`.
pub fn ideal_as_rrng(r: &FiniteRng, k: &IdealSubset) -> Result<RRngStructure> {
    if !r.is_unital() {
        return Err(Error::NotUnital);
    }
    require_ideal(r, k)?;
    let members = k.members();
    let mut local = vec![usize::MAX; r.order()];
    for (idx, &m) in members.iter().enumerate() {
        local[m] = idx;
    }
    let i = FiniteRng::build(
        members.len(),
        |a, b| local[r.add(members[a], members[b])],
        |a, b| local[r.mul(members[a], members[b])],
        if k.is_full() { r.unit() } else if members.len() == 1 { Some(0) } else { None },
        members.iter().map(|&m| r.label(m).to_string()).collect(),
        if k.is_full() { r.shape().clone() } else { Shape::Plain },
    );
    // A proper ideal can still contain a unit of its own (e.g. {0,3} in Z/6).
    let i = match i.unit() {
        Some(_) => i,
        None => with_detected_unit(&i),
    };
    Ok(RRngStructure::from_fns(
        r,
        &i,
        |a, x| local[r.mul(a, members[x])],
        |x, a| local[r.mul(members[x], a)],
    ))
}

/// Records a two-sided identity if the tables have one.
fn with_detected_unit(i: &FiniteRng) -> FiniteRng {
    let u = i
        .elements()
        .find(|&u| i.elements().all(|x| i.mul(u, x) == x && i.mul(x, u) == x));
    match u {
        None => i.clone(),
        Some(u) => FiniteRng::build(
            i.order(),
            |a, b| i.add(a, b),
            |a, b| i.mul(a, b),
            Some(u),
            i.labels().to_vec(),
            i.shape().clone(),
        ),
    }
}

/// The action of `R` on `S` implied by how the two were built:
///
/// * `R = Z/n` acts on any `S` by integer multiples;
/// * `R = S` acts by multiplication;
/// * upper-triangular `k x k` matrices act on `k x k` matrices (or on a
///   trivial-multiplication copy of them) over the same base by matrix
///   multiplication.
///
/// The result is always re-validated.
pub fn canonical_action(r: &FiniteRng, s: &FiniteRng) -> Result<RRngStructure> {
    if !r.is_unital() {
        return Err(Error::NotUnital);
    }
    if let Shape::Cyclic(_) = r.shape() {
        let mult: Vec<Vec<Elem>> = r
            .elements()
            .map(|k| s.elements().map(|x| s.multiple(k, x)).collect())
            .collect();
        return RRngStructure::checked(r, s, |k, x| mult[k][x], |x, k| mult[k][x]);
    }
    if r == s {
        return RRngStructure::checked(r, s, |a, x| r.mul(a, x), |x, a| r.mul(x, a));
    }
    if let Some(embed) = matrix_embedding(r, s) {
        // actions computed in the full matrix ring, so they ignore the
        // multiplication stored in `s`
        let full = embed.1;
        return RRngStructure::checked(
            r,
            s,
            |a, x| full.mul(embed.0[a], x),
            |x, a| full.mul(x, embed.0[a]),
        );
    }
    Err(Error::InvalidArgument(
        "no canonical action between these rings; give explicit actions".into(),
    ))
}

/// Embedding of a triangular (or equal) matrix ring `r` into the full matrix
/// ring with the same element numbering as `s`.
fn matrix_embedding(r: &FiniteRng, s: &FiniteRng) -> Option<(Vec<Elem>, FiniteRng)> {
    let Shape::Matrix { base, size, upper } = r.shape() else {
        return None;
    };
    let full = crate::builders::matrix_ring(base, *size, &Limits {
        order_cap: usize::MAX,
        ..Limits::default()
    })
    .ok()?;
    if full.order() != s.order() || full.add_table() != s.add_table() || full.labels() != s.labels() {
        return None;
    }
    let from = MatrixCodec::new(base.clone(), *size, *upper);
    let to = MatrixCodec::new(base.clone(), *size, false);
    let map = r.elements().map(|a| to.encode(&from.decode(a))).collect();
    Some((map, full))
}

/// `I_1 x ... x I_n` with componentwise actions of a common base ring.
pub fn direct_sum_rrng(factors: &[RRngStructure], limits: &Limits) -> Result<RRngStructure> {
    let first = factors
        .first()
        .ok_or_else(|| Error::InvalidArgument("direct sum of no factors".into()))?;
    let r = first.base();
    if factors.iter().any(|f| f.base() != r) {
        return Err(Error::InvalidArgument("direct sum factors over different rings".into()));
    }
    let rngs: Vec<FiniteRng> = factors.iter().map(|f| f.rng().clone()).collect();
    let i = direct_product(&rngs, limits)?;
    let orders: Vec<usize> = rngs.iter().map(|f| f.order()).collect();
    let dec: Vec<Vec<Elem>> = i.elements().map(|x| tuple_decode(&orders, x)).collect();
    Ok(RRngStructure::from_fns(
        r,
        &i,
        |a, x| {
            let c: Vec<Elem> = factors.iter().zip(&dec[x]).map(|(f, &e)| f.lact(a, e)).collect();
            tuple_encode(&orders, &c)
        },
        |x, a| {
            let c: Vec<Elem> = factors.iter().zip(&dec[x]).map(|(f, &e)| f.ract(e, a)).collect();
            tuple_encode(&orders, &c)
        },
    ))
}

/// Component projections `I -> J_k` and injections `J_k -> I` of a direct sum.
pub fn direct_sum_coordinates(x: &RRngStructure) -> Option<Vec<usize>> {
    match x.rng().shape() {
        Shape::Product(fs) => Some(fs.iter().map(|f| f.order()).collect()),
        _ => None,
    }
}

/// `ann_R(I) = {r : rI = Ir = 0}`.
pub fn annihilator(x: &RRngStructure) -> IdealSubset {
    let members = x
        .base()
        .elements()
        .filter(|&a| x.rng().elements().all(|i| x.lact(a, i) == 0 && x.ract(i, a) == 0));
    IdealSubset::new(x.base(), members).expect("in range")
}

/// `C = {i : r.i = i.r for all r}` and whether `C` generates `I` as a left
/// R-module.
pub fn is_centrally_generated(x: &RRngStructure) -> (bool, Vec<Elem>) {
    let c: Vec<Elem> = x
        .rng()
        .elements()
        .filter(|&i| x.base().elements().all(|a| x.lact(a, i) == x.ract(i, a)))
        .collect();
    let span = generated(Ambient::RRng(x), &c, IdealKind::LeftRSubmodule);
    (span.is_full(), c)
}

/// `(R/A)`-rng `I/J`, for an ideal `A` of `R` and an R-ideal `J` of `I` with
/// `AI + IA` inside `J`. Returns the structure and both projections.
pub fn quotient_rrng(
    x: &RRngStructure,
    a: &IdealSubset,
    j: &IdealSubset,
) -> Result<(RRngStructure, Vec<Elem>, Vec<Elem>)> {
    require_ideal(x.base(), a)?;
    require_r_ideal(x, j)?;
    for &p in a.members() {
        for i in x.rng().elements() {
            if !j.contains(x.lact(p, i)) || !j.contains(x.ract(i, p)) {
                return Err(Error::HypothesisViolated(format!(
                    "AI + IA is not contained in J (witness r={p}, i={i})"
                )));
            }
        }
    }
    let (rq, pr) = quotient_rng(x.base(), a)?;
    let (iq, pi) = quotient_rng(x.rng(), j)?;
    let rrep = crate::builders::coset_representatives(&pr);
    let irep = crate::builders::coset_representatives(&pi);
    let s = RRngStructure::from_fns(
        &rq,
        &iq,
        |r, i| pi.apply(x.lact(rrep[r], irep[i])),
        |i, r| pi.apply(x.ract(irep[i], rrep[r])),
    );
    Ok((s, pr.table().to_vec(), pi.table().to_vec()))
}
