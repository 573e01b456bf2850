//! Theorem-verification suites. Each suite compares a structural
//! computation with a definitional one on every instance; any disagreement
//! is an implementation failure.

use rayon::prelude::*;
use ringlab_core::classify::{
    check_retraction_lemmas, classify_maximal_ideals, classify_prime_ideals, classify_primes_direct_sum,
    local_via_corollary,
};
use ringlab_core::decomposition::{
    check_decomposition, check_extension_corollary, decompose_ideal, nil_ideal_lemma, reconstruct_ideal,
    verify_statements,
};
use ringlab_core::homs::{find_retractions, psi_automorphism};
use ringlab_core::ideals::{check_generated_r_ideals, enumerate_ideals, product_set};
use ringlab_core::prime::{
    check_aj_corollaries, check_semiprime_lemmas, obstruction_holds, prime_via_theorem, semiprime_via_theorem,
    witness_holds,
};
use ringlab_core::radicals::{verify_nil_theorem, verify_rad_theorem};
use ringlab_core::rrng::annihilator;
use ringlab_core::*;

use crate::dsl::{Expr, SpecDocument};
use crate::error::{CliError, CliResult};
use crate::eval::{Env, PhiPart, Value};
use crate::report::{Failure, SuiteReport};

pub const SUITES: &[&str] = &[
    "rad",
    "nil",
    "ideal-correspondence",
    "nil-ideals",
    "semiprime",
    "prime",
    "classification",
    "psi",
    "left",
];

/// Left ideals are only enumerated up to this order.
pub const LEFT_ORDER_LIMIT: usize = 64;

/// Largest power used when checking the power form on every element.
pub const POWER_FORM_MAX: usize = 4;

pub struct Instance {
    pub name: String,
    pub e: DorrohRing,
    pub phis: Vec<(String, Vec<PhiPart>)>,
}

/// Maps declared on the source of `ext`: single maps on the same R-rng,
/// and families whose parts match the summands of a `sum(...)` source.
pub fn phis_for(doc: &SpecDocument, env: &Env, source: Option<&str>) -> Vec<(String, Vec<PhiPart>)> {
    let Some(source) = source else {
        return Vec::new();
    };
    let summands: Option<Vec<&str>> = doc.get(source).and_then(|b| match &b.expr {
        Expr::Call { name, args, .. } if name == "sum" => args
            .iter()
            .map(|a| match &a.value {
                Expr::Name { name, .. } => Some(name.as_str()),
                _ => None,
            })
            .collect(),
        _ => None,
    });
    env.objects
        .iter()
        .filter_map(|o| match &o.value {
            Value::Phi(parts) => {
                let overs: Vec<Option<&str>> = parts.iter().map(|p| p.over.as_deref()).collect();
                let single = overs.len() == 1 && overs[0] == Some(source);
                let family = overs.len() > 1
                    && summands
                        .as_ref()
                        .is_some_and(|s| s.len() == overs.len() && s.iter().zip(&overs).all(|(a, b)| Some(*a) == *b));
                (single || family).then(|| (o.name.clone(), parts.clone()))
            }
            _ => None,
        })
        .collect()
}

pub fn instances(prefix: &str, doc: &SpecDocument, env: &Env) -> Vec<Instance> {
    env.objects
        .iter()
        .filter_map(|o| match &o.value {
            Value::Ext { e, source } => Some(Instance {
                name: format!("{prefix}{}", o.name),
                e: e.clone(),
                phis: phis_for(doc, env, source.as_deref()),
            }),
            _ => None,
        })
        .collect()
}

pub fn labels(rng: &FiniteRng, members: &[Elem]) -> Vec<String> {
    members.iter().map(|&m| rng.label(m).to_string()).collect()
}

fn error_witness(e: &Error) -> Vec<String> {
    let w: &[Elem] = match e {
        Error::InvalidDecomposition { witness, .. }
        | Error::NotAnIdeal { witness, .. }
        | Error::NotARetraction { witness } => witness,
        Error::AxiomViolation(vs) => &vs[0].witness,
        _ => &[],
    };
    w.iter().map(|x| x.to_string()).collect()
}

#[derive(Default)]
struct Outcome {
    cases: usize,
    failures: Vec<Failure>,
}

struct Rec<'a> {
    inst: &'a str,
    out: Outcome,
}

impl Rec<'_> {
    fn fail(&mut self, expected: impl Into<String>, actual: impl Into<String>, witness: Vec<String>) {
        self.out.failures.push(Failure {
            instance: self.inst.to_string(),
            expected: expected.into(),
            actual: actual.into(),
            witness,
        });
    }

    /// Caps and budgets abort the run; every other error is a failure.
    fn guard<T>(&mut self, what: &str, r: Result<T>) -> CliResult<Option<T>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(e @ (Error::OrderCapExceeded { .. } | Error::SearchBudgetExceeded { .. })) => {
                Err(CliError::core(self.inst, e))
            }
            Err(e) => {
                let w = error_witness(&e);
                self.fail(what, e.to_string(), w);
                Ok(None)
            }
        }
    }

    fn check(&mut self, ok: bool, expected: &str, actual: &str, witness: Vec<String>) {
        if !ok {
            self.fail(expected, actual, witness);
        }
    }
}

fn rad_suite(rec: &mut Rec, inst: &Instance) -> CliResult<()> {
    rec.out.cases += inst.e.ring().order();
    rec.guard("rad criterion agrees with the definition", verify_rad_theorem(&inst.e))?;
    Ok(())
}

fn nil_suite(rec: &mut Rec, inst: &Instance, limits: &Limits) -> CliResult<()> {
    rec.out.cases += inst.e.ring().order();
    rec.guard(
        "Nil* criterion and power form agree with the definition",
        verify_nil_theorem(&inst.e, POWER_FORM_MAX, Some(limits)),
    )?;
    Ok(())
}

fn correspondence_suite(rec: &mut Rec, inst: &Instance, limits: &Limits) -> CliResult<()> {
    let e = &inst.e;
    let Some(ideals) = rec.guard("ideal enumeration", enumerate_ideals(e.ring(), IdealKind::TwoSided, limits))? else {
        return Ok(());
    };
    for k in &ideals {
        rec.out.cases += 1;
        let Some(d) = rec.guard("decomposition", decompose_ideal(e, k, Sidedness::TwoSided))? else {
            continue;
        };
        if rec.guard("decomposition conditions", check_decomposition(e, &d))?.is_none() {
            continue;
        }
        if let Some(back) = rec.guard("reconstruction", reconstruct_ideal(e, &d))? {
            rec.check(
                back == *k,
                "reconstruct(decompose(K)) = K",
                "a different ideal",
                labels(e.ring(), k.members()),
            );
        }
        rec.guard("statements about special forms", verify_statements(e, k, &d))?;
    }
    rec.out.cases += 1;
    rec.guard("generated R-ideals", check_generated_r_ideals(e.source(), limits))?;
    rec.out.cases += 1;
    rec.guard("extension of maps gives ideals", check_extension_corollary(e, limits))?;
    Ok(())
}

fn nil_ideals_suite(rec: &mut Rec, inst: &Instance, limits: &Limits) -> CliResult<()> {
    let e = &inst.e;
    let Some(ideals) = rec.guard("ideal enumeration", enumerate_ideals(e.ring(), IdealKind::TwoSided, limits))? else {
        return Ok(());
    };
    for k in &ideals {
        rec.out.cases += 1;
        let Some(d) = rec.guard("decomposition", decompose_ideal(e, k, Sidedness::TwoSided))? else {
            continue;
        };
        let Some(rep) = rec.guard("nil and nilpotent equivalences", nil_ideal_lemma(e, k, &d))? else {
            continue;
        };
        if let (Some(n), Some(m), Some(kn)) = (rep.a_nilpotent, rep.ker_nilpotent, rep.k_nilpotent) {
            rec.check(
                kn <= n * m,
                &format!("nilpotency exponent at most {}", n * m),
                &kn.to_string(),
                labels(e.ring(), k.members()),
            );
        }
    }
    Ok(())
}

fn verify_theorem_witness(x: &RRngStructure, w: &PrimenessWitness, semiprime: bool) -> bool {
    match w {
        PrimenessWitness::InRng(inner) => witness_holds(x.rng(), inner),
        PrimenessWitness::AnnihilatorIdeal(a) => {
            let r = x.base();
            let ann = annihilator(x);
            let ideal = a.clone().with_flags(r).has(SubsetFlags::IDEAL);
            let sq = !semiprime || product_set(r, a.members(), a.members()).is_zero();
            !a.is_zero() && ideal && a.is_subset_of(&ann) && sq
        }
        PrimenessWitness::Obstruction { j, phi } => obstruction_holds(x, j, phi, semiprime, true),
        _ => false,
    }
}

fn primeness_suite(rec: &mut Rec, inst: &Instance, limits: &Limits, semiprime: bool) -> CliResult<()> {
    let e = &inst.e;
    let x = e.source();
    if !semiprime && x.rng().is_zero_rng() {
        return Ok(());
    }
    rec.out.cases += 1;
    let v = if semiprime {
        rec.guard("semiprime criterion agrees with the definition", semiprime_via_theorem(e, limits))?
    } else {
        rec.guard("prime criterion agrees with the definition", prime_via_theorem(e, limits))?
    };
    if let Some(v) = v {
        if let Some(w) = &v.definitional.witness {
            rec.check(witness_holds(e.ring(), w), "definitional witness re-verifies", "it does not", vec![]);
        }
        if let Some(w) = &v.verdict.witness {
            rec.check(
                verify_theorem_witness(x, w, semiprime),
                "criterion witness re-verifies",
                "it does not",
                vec![],
            );
        }
    }
    if semiprime {
        rec.out.cases += 1;
        rec.guard("semiprime lemmas", check_semiprime_lemmas(e, limits))?;
        if let Some(n) = rec.guard("A+J corollaries", check_aj_corollaries(e, limits))? {
            rec.out.cases += n;
        }
    }
    Ok(())
}

fn retractions(rec: &mut Rec, inst: &Instance, limits: &Limits) -> CliResult<Vec<RHomomorphism>> {
    Ok(rec
        .guard("retraction search", find_retractions(inst.e.source(), limits))?
        .unwrap_or_default())
}

fn classification_suite(rec: &mut Rec, inst: &Instance, limits: &Limits) -> CliResult<()> {
    let e = &inst.e;
    for phi in retractions(rec, inst, limits)? {
        rec.out.cases += 1;
        rec.guard("classified primes equal brute force", classify_prime_ideals(e, &phi, limits))?;
        rec.guard("classified maximal ideals equal brute force", classify_maximal_ideals(e, &phi, limits))?;
        if e.ring().is_commutative() {
            rec.guard("local corollary agrees with maximal ideals", local_via_corollary(e, &phi, limits))?;
        }
    }
    for (name, parts) in inst.phis.iter().filter(|(_, p)| p.len() > 1) {
        rec.out.cases += 1;
        let pairs: Vec<(RRngStructure, RHomomorphism)> =
            parts.iter().map(|p| (p.x.clone(), p.map.clone())).collect();
        rec.guard(
            &format!("direct-sum classification with {name} equals brute force"),
            classify_primes_direct_sum(e, &pairs, limits),
        )?;
    }
    Ok(())
}

fn psi_suite(rec: &mut Rec, inst: &Instance, limits: &Limits) -> CliResult<()> {
    let e = &inst.e;
    let i = e.rng();
    for phi in retractions(rec, inst, limits)? {
        rec.out.cases += 1;
        let Some(psi) = rec.guard("psi is a ring automorphism", psi_automorphism(e, &phi))? else {
            continue;
        };
        if let Some(x) = e.ring().elements().find(|&x| psi.apply(psi.apply(x)) != x) {
            rec.fail("psi o psi = id", "moves an element", labels(e.ring(), &[x]));
        }
        let mut image: Vec<Elem> = i.elements().map(|k| psi.apply(e.encode(0, k))).collect();
        image.sort_unstable();
        let mut graph: Vec<Elem> = i.elements().map(|k| e.encode(phi.apply(k), i.neg(k))).collect();
        graph.sort_unstable();
        rec.check(image == graph, "psi(0 + I) is the graph of phi", "a different set", vec![]);
        rec.guard("retraction lemmas", check_retraction_lemmas(e, &phi, limits))?;
    }
    Ok(())
}

fn left_suite(rec: &mut Rec, inst: &Instance, limits: &Limits) -> CliResult<()> {
    let e = &inst.e;
    if e.ring().order() > LEFT_ORDER_LIMIT {
        return Ok(());
    }
    let Some(ideals) = rec.guard("left ideal enumeration", enumerate_ideals(e.ring(), IdealKind::Left, limits))? else {
        return Ok(());
    };
    for k in &ideals {
        rec.out.cases += 1;
        let Some(d) = rec.guard("left decomposition", decompose_ideal(e, k, Sidedness::Left))? else {
            continue;
        };
        if rec.guard("left decomposition conditions", check_decomposition(e, &d))?.is_none() {
            continue;
        }
        if let Some(back) = rec.guard("left reconstruction", reconstruct_ideal(e, &d))? {
            rec.check(
                back == *k,
                "reconstruct(decompose(K)) = K",
                "a different left ideal",
                labels(e.ring(), k.members()),
            );
        }
    }
    Ok(())
}

fn run_one(suite: &str, inst: &Instance, limits: &Limits) -> CliResult<Outcome> {
    let mut rec = Rec {
        inst: &inst.name,
        out: Outcome::default(),
    };
    match suite {
        "rad" => rad_suite(&mut rec, inst)?,
        "nil" => nil_suite(&mut rec, inst, limits)?,
        "ideal-correspondence" => correspondence_suite(&mut rec, inst, limits)?,
        "nil-ideals" => nil_ideals_suite(&mut rec, inst, limits)?,
        "semiprime" => primeness_suite(&mut rec, inst, limits, true)?,
        "prime" => primeness_suite(&mut rec, inst, limits, false)?,
        "classification" => classification_suite(&mut rec, inst, limits)?,
        "psi" => psi_suite(&mut rec, inst, limits)?,
        "left" => left_suite(&mut rec, inst, limits)?,
        other => return Err(CliError::Usage(format!("unknown suite `{other}`"))),
    }
    Ok(rec.out)
}

/// Runs every named suite on every instance in parallel. The report lists
/// suites in the order given and failures in instance order.
pub fn run_suites(names: &[&str], insts: &[Instance], limits: &Limits) -> CliResult<Vec<SuiteReport>> {
    if let Some(bad) = names.iter().find(|n| !SUITES.contains(n)) {
        return Err(CliError::Usage(format!(
            "unknown suite `{bad}`; expected one of {}",
            SUITES.join(", ")
        )));
    }
    let tasks: Vec<(usize, usize)> = (0..names.len())
        .flat_map(|s| (0..insts.len()).map(move |i| (s, i)))
        .collect();
    let results: Vec<CliResult<Outcome>> = tasks
        .par_iter()
        .map(|&(s, i)| run_one(names[s], &insts[i], limits))
        .collect();
    let mut reports: Vec<SuiteReport> = names
        .iter()
        .map(|n| SuiteReport {
            name: n.to_string(),
            cases: 0,
            failures: Vec::new(),
        })
        .collect();
    for (&(s, _), r) in tasks.iter().zip(results) {
        let o = r?;
        reports[s].cases += o.cases;
        reports[s].failures.extend(o.failures);
    }
    Ok(reports)
}
