//! Turns a parsed document into rings, R-rngs, extensions and maps.

use ringlab_core::builders::{cyclic_ring, direct_product, matrix_ring, quotient_rng, trivial_mult_rng, upper_triangular_ring};
use ringlab_core::homs::find_retractions;
use ringlab_core::rrng::{canonical_action, direct_sum_rrng, ideal_as_rrng};
use ringlab_core::{
    dorroh_extend, validate_rng, validate_rrng, DorrohRing, Elem, Error, FiniteRng, HomTarget, IdealSubset, Limits,
    RHomomorphism, RRngStructure,
};

use crate::dsl::{Arg, Binding, Expr, Kind, Pos, SpecDocument};
use crate::error::{CliError, CliResult};

/// One component of a (possibly direct-sum) map `I -> R`.
#[derive(Clone, Debug)]
pub struct PhiPart {
    /// Name of the R-rng binding the map was declared on, if any.
    pub over: Option<String>,
    pub x: RRngStructure,
    pub map: RHomomorphism,
}

#[derive(Clone)]
pub enum Value {
    Ring(FiniteRng),
    RRng(RRngStructure),
    Ext { e: DorrohRing, source: Option<String> },
    Phi(Vec<PhiPart>),
}

impl Value {
    pub fn describe(&self) -> &'static str {
        match self {
            Value::Ring(r) if r.is_unital() => "a ring",
            Value::Ring(_) => "a rng",
            Value::RRng(_) => "an R-rng",
            Value::Ext { .. } => "an extension",
            Value::Phi(_) => "a map",
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Value::Ring(r) => r.order(),
            Value::RRng(x) => x.rng().order(),
            Value::Ext { e, .. } => e.ring().order(),
            Value::Phi(parts) => parts.iter().map(|p| p.x.rng().order()).product(),
        }
    }
}

pub struct Object {
    pub name: String,
    pub kind: Kind,
    pub value: Value,
}

#[derive(Default)]
pub struct Env {
    pub objects: Vec<Object>,
}

impl Env {
    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.iter().find(|o| o.name == name)
    }
}

struct Ctx<'a> {
    env: &'a Env,
    limits: &'a Limits,
    binding: &'a str,
}

fn type_err<T>(pos: Pos, expected: &str, found: &str) -> CliResult<T> {
    Err(CliError::Type {
        pos,
        expected: expected.to_string(),
        found: found.to_string(),
    })
}

fn expr_kind(e: &Expr) -> &'static str {
    match e {
        Expr::Int { .. } => "an integer",
        Expr::Name { .. } => "a name",
        Expr::Call { .. } => "a builder call",
        Expr::Set { .. } => "a set",
        Expr::List { .. } => "a list",
    }
}

impl Ctx<'_> {
    fn wrap<T>(&self, pos: Pos, r: ringlab_core::Result<T>) -> CliResult<T> {
        r.map_err(|source| CliError::Eval {
            pos,
            name: self.binding.to_string(),
            source,
        })
    }

    fn value(&self, e: &Expr) -> CliResult<Value> {
        match e {
            Expr::Name { name, pos } => match self.env.get(name) {
                Some(o) => Ok(o.value.clone()),
                None => Err(crate::dsl::ParseError::UnknownName {
                    pos: *pos,
                    name: name.clone(),
                }
                .into()),
            },
            Expr::Call { name, args, pos } => self.call(name, args, *pos),
            other => type_err(other.pos(), "a structure", expr_kind(other)),
        }
    }

    /// Any rng; an R-rng stands for its underlying rng.
    fn rng(&self, e: &Expr) -> CliResult<FiniteRng> {
        match self.value(e)? {
            Value::Ring(r) => Ok(r),
            Value::RRng(x) => Ok(x.rng().clone()),
            Value::Ext { e, .. } => Ok(e.ring().clone()),
            v => type_err(e.pos(), "a rng", v.describe()),
        }
    }

    fn ring(&self, e: &Expr) -> CliResult<FiniteRng> {
        let r = self.rng(e)?;
        if !r.is_unital() {
            return type_err(e.pos(), "a ring with unit", "a rng without unit");
        }
        Ok(r)
    }

    fn rrng(&self, e: &Expr) -> CliResult<RRngStructure> {
        match self.value(e)? {
            Value::RRng(x) => Ok(x),
            v => type_err(e.pos(), "an R-rng", v.describe()),
        }
    }

    fn int(&self, e: &Expr) -> CliResult<usize> {
        match e {
            Expr::Int { value, .. } => Ok(*value as usize),
            other => type_err(other.pos(), "an integer", expr_kind(other)),
        }
    }

    fn set(&self, e: &Expr) -> CliResult<Vec<Elem>> {
        match e {
            Expr::Set { items, .. } => Ok(items.iter().map(|&v| v as usize).collect()),
            other => type_err(other.pos(), "a set of element indices", expr_kind(other)),
        }
    }

    fn ints(&self, e: &Expr) -> CliResult<Vec<Elem>> {
        match e {
            Expr::List { items, .. } => items.iter().map(|x| self.int(x)).collect(),
            other => type_err(other.pos(), "a list of integers", expr_kind(other)),
        }
    }

    fn table(&self, e: &Expr) -> CliResult<Vec<Vec<Elem>>> {
        match e {
            Expr::List { items, .. } => items.iter().map(|x| self.ints(x)).collect(),
            other => type_err(other.pos(), "a table (list of lists)", expr_kind(other)),
        }
    }

    fn call(&self, name: &str, args: &[Arg], pos: Pos) -> CliResult<Value> {
        let pos_args: Vec<&Expr> = args.iter().filter(|a| a.key.is_none()).map(|a| &a.value).collect();
        let kw = |k: &str| args.iter().find(|a| a.key.as_deref() == Some(k)).map(|a| &a.value);
        let l = self.limits;
        Ok(match name {
            "Z" => Value::Ring(self.wrap(pos, cyclic_ring(self.int(pos_args[0])?, l))?),
            "Mat" | "UT" => {
                let base = self.ring(pos_args[0])?;
                let k = self.int(pos_args[1])?;
                let r = if name == "Mat" {
                    matrix_ring(&base, k, l)
                } else {
                    upper_triangular_ring(&base, k, l)
                };
                Value::Ring(self.wrap(pos, r)?)
            }
            "product" => {
                let fs = pos_args.iter().map(|a| self.rng(a)).collect::<CliResult<Vec<_>>>()?;
                Value::Ring(self.wrap(pos, direct_product(&fs, l))?)
            }
            "trivial" => Value::Ring(trivial_mult_rng(&self.rng(pos_args[0])?)),
            "ideal_of" => {
                let r = self.ring(pos_args[0])?;
                let k = self.wrap(pos, IdealSubset::new(&r, self.set(pos_args[1])?))?;
                Value::RRng(self.wrap(pos, ideal_as_rrng(&r, &k))?)
            }
            "quotient" => {
                let r = self.rng(pos_args[0])?;
                let k = self.wrap(pos, IdealSubset::new(&r, self.set(pos_args[1])?))?;
                Value::Ring(self.wrap(pos, quotient_rng(&r, &k))?.0)
            }
            "tables" => {
                let add = self.table(kw("add").expect("checked by the parser"))?;
                let mul = self.table(kw("mul").expect("checked by the parser"))?;
                let unit = kw("unit").map(|u| self.int(u)).transpose()?;
                Value::Ring(self.wrap(pos, validate_rng(add.len(), &add, &mul, unit))?)
            }
            "over" => {
                let r = self.ring(pos_args[0])?;
                let s = self.rng(pos_args[1])?;
                Value::RRng(self.wrap(pos, canonical_action(&r, &s))?)
            }
            "actions" => {
                let r = self.ring(pos_args[0])?;
                let s = self.rng(pos_args[1])?;
                let left = self.table(kw("left").expect("checked by the parser"))?;
                let right = self.table(kw("right").expect("checked by the parser"))?;
                Value::RRng(self.wrap(pos, validate_rrng(&r, &s, &left, &right))?)
            }
            "sum" => {
                let fs = pos_args.iter().map(|a| self.rrng(a)).collect::<CliResult<Vec<_>>>()?;
                Value::RRng(self.wrap(pos, direct_sum_rrng(&fs, l))?)
            }
            "dorroh" => {
                let x = self.rrng(pos_args[0])?;
                let source = match pos_args[0] {
                    Expr::Name { name, .. } => Some(name.clone()),
                    _ => None,
                };
                Value::Ext {
                    e: self.wrap(pos, dorroh_extend(&x, l))?,
                    source,
                }
            }
            "hom" => {
                let x = self.rrng(pos_args[0])?;
                let images = self.ints(pos_args[1])?;
                let map = self.wrap(
                    pos,
                    RHomomorphism::from_images(IdealSubset::full(&x), HomTarget::base(x.base()), &images),
                )?;
                if let Some((what, witness)) = map.failure(&x) {
                    return Err(CliError::Eval {
                        pos,
                        name: self.binding.to_string(),
                        source: Error::InvalidArgument(format!(
                            "map is not an R-homomorphism: {what} fails at {witness:?}"
                        )),
                    });
                }
                Value::Phi(vec![PhiPart {
                    over: name_of(pos_args[0]),
                    x,
                    map,
                }])
            }
            "retraction" => {
                let x = self.rrng(pos_args[0])?;
                let k = self.int(pos_args[1])?;
                let all = self.wrap(pos, find_retractions(&x, l))?;
                let Some(map) = all.get(k).cloned() else {
                    return Err(CliError::Eval {
                        pos,
                        name: self.binding.to_string(),
                        source: Error::InvalidArgument(format!(
                            "retraction {k} requested, but there are {}",
                            all.len()
                        )),
                    });
                };
                Value::Phi(vec![PhiPart {
                    over: name_of(pos_args[0]),
                    x,
                    map,
                }])
            }
            "family" => {
                let mut parts = Vec::new();
                for a in &pos_args {
                    match self.value(a)? {
                        Value::Phi(p) => parts.extend(p),
                        v => return type_err(a.pos(), "a map", v.describe()),
                    }
                }
                Value::Phi(parts)
            }
            other => {
                return Err(crate::dsl::ParseError::UnknownName {
                    pos,
                    name: other.to_string(),
                }
                .into())
            }
        })
    }
}

fn name_of(e: &Expr) -> Option<String> {
    match e {
        Expr::Name { name, .. } => Some(name.clone()),
        _ => None,
    }
}

fn check_kind(b: &Binding, v: &Value) -> CliResult<()> {
    let ok = match (b.kind, v) {
        (Kind::Ring, Value::Ring(r)) => r.is_unital(),
        (Kind::Rng, Value::Ring(_) | Value::RRng(_)) => true,
        (Kind::RRng, Value::RRng(_)) => true,
        (Kind::Ext, Value::Ext { .. }) => true,
        (Kind::Phi, Value::Phi(_)) => true,
        _ => false,
    };
    if ok {
        return Ok(());
    }
    let expected = match b.kind {
        Kind::Ring => "a ring with unit",
        Kind::Rng => "a rng",
        Kind::RRng => "an R-rng",
        Kind::Ext => "an extension",
        Kind::Phi => "a map",
    };
    type_err(b.expr.pos(), expected, v.describe())
}

/// Evaluates bindings in order. Stops at the first failure and returns the
/// objects built so far together with the error.
pub fn evaluate_until_error(doc: &SpecDocument, limits: &Limits) -> (Env, Option<(String, CliError)>) {
    let mut env = Env::default();
    for b in &doc.bindings {
        let ctx = Ctx {
            env: &env,
            limits,
            binding: &b.name,
        };
        let v = ctx.value(&b.expr).and_then(|v| check_kind(b, &v).map(|_| v));
        match v {
            Ok(value) => env.objects.push(Object {
                name: b.name.clone(),
                kind: b.kind,
                value,
            }),
            Err(e) => return (env, Some((b.name.clone(), e))),
        }
    }
    (env, None)
}

pub fn evaluate(doc: &SpecDocument, limits: &Limits) -> CliResult<Env> {
    match evaluate_until_error(doc, limits) {
        (env, None) => Ok(env),
        (_, Some((_, e))) => Err(e),
    }
}
