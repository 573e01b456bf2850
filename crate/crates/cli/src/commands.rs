//! Command dispatch: builds a [`Report`] from an evaluated document.

use std::time::Instant;

use serde_json::{json, Value as Json};

use ringlab_core::classify::{
    classify_maximal_ideals, classify_prime_ideals, classify_primes_direct_sum, is_local, local_via_corollary,
    prime_ideals,
};
use ringlab_core::decomposition::{check_decomposition, decompose_ideal, reconstruct_ideal, verify_statements};
use ringlab_core::homs::find_retractions;
use ringlab_core::ideals::enumerate_ideals;
use ringlab_core::radicals::{jacobson_radical, upper_nil_radical, verify_nil_theorem, verify_rad_theorem};
use ringlab_core::*;

use crate::catalog::load_catalog;
use crate::dsl::{Kind, SpecDocument};
use crate::error::{CliError, CliResult, EXIT_DISCREPANCY, EXIT_INPUT, EXIT_OK};
use crate::eval::{evaluate, evaluate_until_error, Env, Object, PhiPart, Value};
use crate::report::{Failure, ObjectReport, Report, SuiteReport};
use crate::suites::{self, labels, phis_for, run_suites, POWER_FORM_MAX, SUITES};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Check,
    Radical,
    Nilradical,
    Ideals {
        left: bool,
        prime: bool,
        maximal: bool,
        phi: Option<String>,
    },
    Decompose {
        left: bool,
    },
    Classify {
        phi: Option<String>,
    },
    VerifyTheorems {
        suite: Option<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Radical => "radical",
            Command::Nilradical => "nilradical",
            Command::Ideals { .. } => "ideals",
            Command::Decompose { .. } => "decompose",
            Command::Classify { .. } => "classify",
            Command::VerifyTheorems { .. } => "verify-theorems",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub object: Option<String>,
    pub limits: Limits,
    pub timing: bool,
    pub source: String,
}

/// A finished report and the exit code it implies.
pub struct Outcome {
    pub report: Report,
    pub code: i32,
}

fn kind_name(k: Kind) -> &'static str {
    k.keyword()
}

fn core<T>(context: &str, r: Result<T>) -> CliResult<T> {
    r.map_err(|e| CliError::core(context, e))
}

fn subset_json(rng: &FiniteRng, k: &IdealSubset) -> Json {
    json!(labels(rng, k.members()))
}

/// Objects the command applies to, honouring `--object`.
fn select<'a>(env: &'a Env, opts: &RunOptions, accept: &[Kind], what: &str) -> CliResult<Vec<&'a Object>> {
    match &opts.object {
        Some(name) => {
            let o = env
                .get(name)
                .ok_or_else(|| CliError::Usage(format!("no object named `{name}`")))?;
            if !accept.contains(&o.kind) {
                return Err(CliError::Usage(format!("`{name}` is not {what}")));
            }
            Ok(vec![o])
        }
        None => Ok(env.objects.iter().filter(|o| accept.contains(&o.kind)).collect()),
    }
}

fn object_report(o: &Object, result: Json) -> ObjectReport {
    ObjectReport {
        name: o.name.clone(),
        kind: kind_name(o.kind).to_string(),
        order: o.value.order(),
        result,
    }
}

fn plain_rng(v: &Value) -> &FiniteRng {
    match v {
        Value::Ring(r) => r,
        Value::RRng(x) => x.rng(),
        Value::Ext { e, .. } => e.ring(),
        Value::Phi(_) => unreachable!("maps are filtered out"),
    }
}

const STRUCTURES: &[Kind] = &[Kind::Ring, Kind::Rng, Kind::RRng, Kind::Ext];

fn radical(env: &Env, opts: &RunOptions, nil: bool) -> CliResult<Vec<ObjectReport>> {
    let mut out = Vec::new();
    for o in select(env, opts, STRUCTURES, "a ring, rng or extension")? {
        let ctx = format!("radical of {}", o.name);
        let result = match &o.value {
            Value::Ext { e, .. } => {
                let (rads, direct_sum) = if nil {
                    (core(&ctx, verify_nil_theorem(e, POWER_FORM_MAX, None))?, None)
                } else {
                    let c = core(&ctx, verify_rad_theorem(e))?;
                    (c.radicals, Some(c.direct_sum))
                };
                let mut r = json!({
                    "radical": subset_json(e.ring(), &rads.whole.radical),
                    "base_radical": subset_json(e.base(), &rads.base.radical),
                    "rng_radical": subset_json(e.rng(), &rads.rng.radical),
                    "criterion": "agrees",
                });
                if let Some(d) = direct_sum {
                    r["direct_sum"] = json!(d);
                }
                r
            }
            v => {
                let rng = plain_rng(v);
                let rad = if nil {
                    upper_nil_radical(rng)
                } else {
                    core(&ctx, jacobson_radical(rng))?
                };
                json!({ "radical": subset_json(rng, &rad.radical) })
            }
        };
        out.push(object_report(o, result));
    }
    Ok(out)
}

fn classified_json(e: &DorrohRing, c: &ClassifiedPrime) -> Json {
    let form = match c.form {
        PrimeForm::Sum => "SUM",
        PrimeForm::Graph => "GRAPH",
    };
    let mut v = json!({
        "members": subset_json(e.ring(), &c.members),
        "form": form,
        "base": subset_json(e.base(), &c.base),
    });
    if let Some(s) = c.summand {
        v["summand"] = json!(s);
    }
    v
}

enum Chosen {
    None,
    Auto(RHomomorphism),
    Named(String, Vec<PhiPart>),
}

fn choose_phi(doc: &SpecDocument, env: &Env, o: &Object, phi: Option<&str>, limits: &Limits) -> CliResult<Chosen> {
    let Value::Ext { e, source } = &o.value else {
        return Ok(Chosen::None);
    };
    match phi {
        None => Ok(Chosen::None),
        Some("auto") => {
            let found = core("retraction search", find_retractions(e.source(), limits))?;
            Ok(found.into_iter().next().map_or(Chosen::None, Chosen::Auto))
        }
        Some(name) => {
            if !matches!(env.get(name), Some(Object { value: Value::Phi(_), .. })) {
                return Err(CliError::Usage(format!("no map named `{name}`")));
            }
            phis_for(doc, env, source.as_deref())
                .into_iter()
                .find(|(n, _)| n == name)
                .map(|(n, p)| Chosen::Named(n, p))
                .ok_or_else(|| CliError::Usage(format!("map `{name}` is not declared on the source of `{}`", o.name)))
        }
    }
}

fn phi_label(c: &Chosen) -> Json {
    match c {
        Chosen::None => Json::Null,
        Chosen::Auto(_) => json!("auto"),
        Chosen::Named(n, _) => json!(n),
    }
}

fn classify_with(e: &DorrohRing, c: &Chosen, maximal: bool, limits: &Limits) -> CliResult<Option<Vec<ClassifiedPrime>>> {
    let ctx = "classification";
    Ok(match c {
        Chosen::None => None,
        Chosen::Auto(phi) => Some(if maximal {
            core(ctx, classify_maximal_ideals(e, phi, limits))?
        } else {
            core(ctx, classify_prime_ideals(e, phi, limits))?
        }),
        Chosen::Named(_, parts) if parts.len() == 1 => Some(if maximal {
            core(ctx, classify_maximal_ideals(e, &parts[0].map, limits))?
        } else {
            core(ctx, classify_prime_ideals(e, &parts[0].map, limits))?
        }),
        Chosen::Named(_, parts) => {
            let pairs: Vec<(RRngStructure, RHomomorphism)> =
                parts.iter().map(|p| (p.x.clone(), p.map.clone())).collect();
            let all = core(ctx, classify_primes_direct_sum(e, &pairs, limits))?;
            if maximal {
                let max = core(ctx, prime_ideals(e.ring(), true, limits))?;
                Some(all.into_iter().filter(|c| max.contains(&c.members)).collect())
            } else {
                Some(all)
            }
        }
    })
}

fn ideals(
    doc: &SpecDocument,
    env: &Env,
    opts: &RunOptions,
    left: bool,
    prime: bool,
    maximal: bool,
    phi: Option<&str>,
) -> CliResult<Vec<ObjectReport>> {
    if left && (prime || maximal) {
        return Err(CliError::Usage("--left cannot be combined with --prime or --maximal".into()));
    }
    let l = &opts.limits;
    let mut out = Vec::new();
    for o in select(env, opts, STRUCTURES, "a ring, rng or extension")? {
        let ctx = format!("ideals of {}", o.name);
        let chosen = if prime || maximal {
            choose_phi(doc, env, o, phi, l)?
        } else {
            Chosen::None
        };
        let mut result = json!({});
        let list: Vec<Json> = match (&o.value, classify_with_ext(o, &chosen, maximal, l)?) {
            (Value::Ext { e, .. }, Some(classified)) => {
                result["phi"] = phi_label(&chosen);
                classified.iter().map(|c| classified_json(e, c)).collect()
            }
            (Value::RRng(x), _) if !prime && !maximal => {
                let kind = if left { IdealKind::LeftRIdeal } else { IdealKind::RIdeal };
                core(&ctx, enumerate_ideals(x, kind, l))?
                    .iter()
                    .map(|k| json!({ "members": subset_json(x.rng(), k) }))
                    .collect()
            }
            (v, _) => {
                let rng = plain_rng(v);
                let found = if prime || maximal {
                    core(&ctx, prime_ideals(rng, maximal, l))?
                } else {
                    let kind = if left { IdealKind::Left } else { IdealKind::TwoSided };
                    core(&ctx, enumerate_ideals(rng, kind, l))?
                };
                found.iter().map(|k| json!({ "members": subset_json(rng, k) })).collect()
            }
        };
        result["count"] = json!(list.len());
        result["ideals"] = Json::Array(list);
        out.push(object_report(o, result));
    }
    Ok(out)
}

fn classify_with_ext(o: &Object, c: &Chosen, maximal: bool, l: &Limits) -> CliResult<Option<Vec<ClassifiedPrime>>> {
    match &o.value {
        Value::Ext { e, .. } => classify_with(e, c, maximal, l),
        _ => Ok(None),
    }
}

fn decomposition_json(e: &DorrohRing, k: &IdealSubset, d: &IdealDecomposition) -> Json {
    let (r, i) = (e.base(), e.rng());
    let phi: Vec<Json> = d
        .j
        .members()
        .iter()
        .map(|&j| json!([i.label(j), r.label(d.phi(j))]))
        .collect();
    json!({
        "members": subset_json(e.ring(), k),
        "A": subset_json(r, &d.a),
        "Z": subset_json(r, &d.z),
        "J": subset_json(i, &d.j),
        "phi": phi,
    })
}

fn decompose(env: &Env, opts: &RunOptions, left: bool) -> CliResult<Vec<ObjectReport>> {
    let l = &opts.limits;
    let mut out = Vec::new();
    for o in select(env, opts, &[Kind::Ext], "an extension")? {
        let Value::Ext { e, .. } = &o.value else { unreachable!() };
        let ctx = format!("decomposition of ideals of {}", o.name);
        let (kind, side) = if left {
            (IdealKind::Left, Sidedness::Left)
        } else {
            (IdealKind::TwoSided, Sidedness::TwoSided)
        };
        let mut list = Vec::new();
        for k in core(&ctx, enumerate_ideals(e.ring(), kind, l))? {
            let d = core(&ctx, decompose_ideal(e, &k, side))?;
            core(&ctx, check_decomposition(e, &d))?;
            if core(&ctx, reconstruct_ideal(e, &d))? != k {
                return Err(CliError::core(&ctx, Error::Discrepancy("reconstruction differs".into())));
            }
            if !left {
                core(&ctx, verify_statements(e, &k, &d))?;
            }
            list.push(decomposition_json(e, &k, &d));
        }
        out.push(object_report(
            o,
            json!({ "side": if left { "left" } else { "two-sided" }, "count": list.len(), "ideals": list }),
        ));
    }
    Ok(out)
}

fn classify(doc: &SpecDocument, env: &Env, opts: &RunOptions, phi: Option<&str>) -> CliResult<Vec<ObjectReport>> {
    let l = &opts.limits;
    let mut out = Vec::new();
    for o in select(env, opts, &[Kind::Ext], "an extension")? {
        let Value::Ext { e, .. } = &o.value else { unreachable!() };
        let ctx = format!("classification for {}", o.name);
        let chosen = choose_phi(doc, env, o, Some(phi.unwrap_or("auto")), l)?;
        let primes = classify_with(e, &chosen, false, l)?;
        let maximal = classify_with(e, &chosen, true, l)?;
        let local = core(&ctx, is_local(e.ring(), l))?;
        let single = match &chosen {
            Chosen::Auto(p) => Some(p),
            Chosen::Named(_, parts) if parts.len() == 1 => Some(&parts[0].map),
            _ => None,
        };
        let corollary = match single {
            Some(p) if e.ring().is_commutative() => json!(core(&ctx, local_via_corollary(e, p, l))?),
            _ => Json::Null,
        };
        let list = |v: Option<Vec<ClassifiedPrime>>, maximal: bool| -> CliResult<Json> {
            Ok(match v {
                Some(v) => Json::Array(v.iter().map(|c| classified_json(e, c)).collect()),
                None => Json::Array(
                    core(&ctx, prime_ideals(e.ring(), maximal, l))?
                        .iter()
                        .map(|k| json!({ "members": subset_json(e.ring(), k) }))
                        .collect(),
                ),
            })
        };
        let retraction = match &chosen {
            Chosen::None => Json::Null,
            Chosen::Auto(p) => json!(labels(e.base(), &p.images())),
            Chosen::Named(_, parts) => Json::Array(
                parts
                    .iter()
                    .map(|p| json!(labels(p.x.base(), &p.map.images())))
                    .collect(),
            ),
        };
        out.push(object_report(
            o,
            json!({
                "phi": phi_label(&chosen),
                "retraction": retraction,
                "primes": list(primes, false)?,
                "maximal": list(maximal, true)?,
                "local": local,
                "local_corollary": corollary,
            }),
        ));
    }
    Ok(out)
}

fn check(env: &Env, opts: &RunOptions) -> CliResult<Vec<ObjectReport>> {
    let accept = [Kind::Ring, Kind::Rng, Kind::RRng, Kind::Ext, Kind::Phi];
    let mut out = Vec::new();
    for o in select(env, opts, &accept, "declared")? {
        let result = match &o.value {
            Value::Ring(r) => json!({
                "unital": r.is_unital(),
                "commutative": r.is_commutative(),
                "elements": labels(r, &r.elements().collect::<Vec<_>>()),
            }),
            Value::RRng(x) => json!({
                "base_order": x.base().order(),
                "unital": x.rng().is_unital(),
                "commutative": x.rng().is_commutative(),
                "elements": labels(x.rng(), &x.rng().elements().collect::<Vec<_>>()),
            }),
            Value::Ext { e, .. } => json!({
                "base_order": e.base().order(),
                "rng_order": e.rng().order(),
                "commutative": e.ring().is_commutative(),
            }),
            Value::Phi(parts) => Json::Array(
                parts
                    .iter()
                    .map(|p| {
                        json!({
                            "images": labels(p.x.base(), &p.map.images()),
                            "retraction": ringlab_core::homs::is_multiplicative_retraction(&p.x, &p.map),
                        })
                    })
                    .collect(),
            ),
        };
        out.push(object_report(o, result));
    }
    Ok(out)
}

fn violation_failures(name: &str, e: &CliError) -> Option<Vec<Failure>> {
    let CliError::Eval {
        source: Error::AxiomViolation(vs),
        ..
    } = e
    else {
        return None;
    };
    Some(
        vs.iter()
            .map(|v| Failure {
                instance: name.to_string(),
                expected: format!("{} holds", v.axiom),
                actual: "violated".into(),
                witness: v.witness.iter().map(|x| x.to_string()).collect(),
            })
            .collect(),
    )
}

/// Runs `cmd` on `doc`. Input and limit errors come back as `Err`; suite
/// failures and axiom violations found by `check` are part of the report.
pub fn run_command(doc: &SpecDocument, cmd: &Command, opts: &RunOptions) -> CliResult<Outcome> {
    let start = Instant::now();
    let l = &opts.limits;
    let mut suites_out: Vec<SuiteReport> = Vec::new();
    let mut code = EXIT_OK;
    let objects = match cmd {
        Command::Check => {
            let (env, err) = evaluate_until_error(doc, l);
            let mut axioms = SuiteReport {
                name: "axioms".into(),
                cases: doc.bindings.len(),
                failures: Vec::new(),
            };
            if let Some((name, e)) = err {
                match violation_failures(&name, &e) {
                    Some(f) => {
                        axioms.failures = f;
                        code = EXIT_INPUT;
                    }
                    None => return Err(e),
                }
            }
            suites_out.push(axioms);
            check(&env, opts)?
        }
        other => {
            let env = evaluate(doc, l)?;
            match other {
                Command::Radical => radical(&env, opts, false)?,
                Command::Nilradical => radical(&env, opts, true)?,
                Command::Ideals {
                    left,
                    prime,
                    maximal,
                    phi,
                } => ideals(doc, &env, opts, *left, *prime, *maximal, phi.as_deref())?,
                Command::Decompose { left } => decompose(&env, opts, *left)?,
                Command::Classify { phi } => classify(doc, &env, opts, phi.as_deref())?,
                Command::VerifyTheorems { suite } => {
                    let names: Vec<&str> = match suite {
                        Some(s) => vec![s.as_str()],
                        None => SUITES.to_vec(),
                    };
                    let mut insts = match &opts.object {
                        Some(_) => {
                            let chosen = select(&env, opts, &[Kind::Ext], "an extension")?;
                            suites::instances("", doc, &env)
                                .into_iter()
                                .filter(|i| chosen.iter().any(|o| o.name == i.name))
                                .collect()
                        }
                        None => suites::instances("", doc, &env),
                    };
                    for entry in load_catalog(l)? {
                        insts.extend(suites::instances(&format!("catalog:{}/", entry.name), &entry.doc, &entry.env));
                    }
                    suites_out = run_suites(&names, &insts, l)?;
                    if suites_out.iter().any(|s| !s.failures.is_empty()) {
                        code = EXIT_DISCREPANCY;
                    }
                    insts
                        .iter()
                        .map(|i| ObjectReport {
                            name: i.name.clone(),
                            kind: "ext".into(),
                            order: i.e.ring().order(),
                            result: json!({
                                "base_order": i.e.base().order(),
                                "rng_order": i.e.rng().order(),
                            }),
                        })
                        .collect()
                }
                Command::Check => unreachable!(),
            }
        }
    };
    let report = Report {
        command: cmd.name().to_string(),
        source: opts.source.clone(),
        objects,
        suites: suites_out,
        elapsed_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    };
    Ok(Outcome { report, code })
}
