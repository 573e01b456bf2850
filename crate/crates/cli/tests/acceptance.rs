//! Acceptance run: one pass/fail line per criterion, nonzero exit on any failure.

use std::process::Command as Proc;
use std::time::{Duration, Instant};

use ringlab::catalog::{load_catalog, CATALOG};
use ringlab::dsl::ParseError;
use ringlab::eval::{Env, Value};
use ringlab::parse_spec;
use ringlab::suites::{instances, run_suites, Instance};
use ringlab_core::classify::{
    classify_maximal_ideals, classify_prime_ideals, classify_primes_direct_sum, is_local, local_via_corollary,
    prime_ideals,
};
use ringlab_core::prime::{is_prime_rng, prime_via_theorem, semiprime_via_theorem};
use ringlab_core::radicals::{jacobson_radical, upper_nil_radical};
use ringlab_core::*;

const CRITERION_1_LIMIT: Duration = Duration::from_secs(10);
const CORRESPONDENCE_LIMIT: Duration = Duration::from_secs(30);
const RAD_LIMIT: Duration = Duration::from_secs(30);
const PRIMENESS_LIMIT: Duration = Duration::from_secs(60);
const TOTAL_LIMIT: Duration = Duration::from_secs(180);
const MIN_INSTANCES: usize = 10;
const ORDER_RANGE: (usize, usize) = (4, 128);

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

struct Ctx {
    limits: Limits,
    insts: Vec<Instance>,
    envs: Vec<(&'static str, Env)>,
}

impl Ctx {
    fn ext(&self, name: &str) -> &DorrohRing {
        &self.insts.iter().find(|i| i.name.ends_with(&format!("/{name}"))).unwrap().e
    }

    fn phi(&self, file: &str, name: &str) -> Vec<(RRngStructure, RHomomorphism)> {
        let env = &self.envs.iter().find(|(n, _)| *n == file).unwrap().1;
        match &env.get(name).unwrap().value {
            Value::Phi(parts) => parts.iter().map(|p| (p.x.clone(), p.map.clone())).collect(),
            _ => panic!("{name} is not a map"),
        }
    }

    fn suite(&self, name: &str) -> Result<usize, String> {
        let reports = run_suites(&[name], &self.insts, &self.limits).map_err(|e| e.to_string())?;
        let r = &reports[0];
        if let Some(f) = r.failures.first() {
            return Err(format!(
                "{} failure(s), first: {} expected {} got {}",
                r.failures.len(),
                f.instance,
                f.expected,
                f.actual
            ));
        }
        ensure(r.cases > 0, format!("suite {name} ran no cases"))?;
        Ok(r.cases)
    }
}

fn labels(r: &FiniteRng, k: &IdealSubset) -> Vec<String> {
    k.members().iter().map(|&m| r.label(m).to_string()).collect()
}

fn brute_rad(e: &FiniteRng) -> Vec<Elem> {
    let quasi = |x: Elem| e.elements().any(|k| e.add(e.add(x, k), e.mul(k, x)) == 0);
    e.elements()
        .filter(|&x| e.elements().all(|y| quasi(e.mul(y, x))))
        .collect()
}

fn timed(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let t = Instant::now();
    let r = f();
    let el = t.elapsed();
    match r {
        Ok(msg) if el <= limit => Ok(format!("{msg} in {:.2}s (limit {}s)", el.as_secs_f64(), limit.as_secs())),
        Ok(_) => Err(format!("took {:.2}s, limit {}s", el.as_secs_f64(), limit.as_secs())),
        Err(e) => Err(e),
    }
}

fn c1(ctx: &Ctx) -> Check {
    timed(CRITERION_1_LIMIT, || {
        let e = ctx.ext("EM");
        ensure(e.ring().order() == 128, "E should have 128 elements")?;
        let rad = jacobson_radical(e.ring()).map_err(|x| x.to_string())?;
        let want = ["([[0,0],[0,0]], [[0,0],[0,0]])", "([[0,1],[0,0]], [[0,1],[0,0]])"];
        ensure(labels(e.ring(), &rad.radical) == want, format!("rad(E) = {:?}", labels(e.ring(), &rad.radical)))?;
        ensure(rad.radical.members() == brute_rad(e.ring()), "rad(E) differs from the table scan")?;
        let rad_r = jacobson_radical(e.base()).map_err(|x| x.to_string())?;
        ensure(
            labels(e.base(), &rad_r.radical) == ["[[0,0],[0,0]]", "[[0,1],[0,0]]"],
            "rad(R) is not the strictly upper-triangular set",
        )?;
        let rad_i = jacobson_radical(e.rng()).map_err(|x| x.to_string())?;
        ensure(rad_i.radical.is_zero(), "rad(I) is not zero")?;
        Ok("rad(E) = {(0,0), (e12,e12)}, rad(R) = {0, e12}, rad(I) = 0".into())
    })
}

fn c2(ctx: &Ctx) -> Check {
    timed(CORRESPONDENCE_LIMIT, || {
        let n = ctx.insts.len();
        ensure(n >= MIN_INSTANCES, format!("only {n} catalog instances"))?;
        let orders: Vec<usize> = ctx.insts.iter().map(|i| i.e.ring().order()).collect();
        let (lo, hi) = (*orders.iter().min().unwrap(), *orders.iter().max().unwrap());
        ensure(lo == ORDER_RANGE.0 && hi == ORDER_RANGE.1, format!("orders span {lo}..{hi}"))?;
        let cases = ctx.suite("ideal-correspondence")?;
        Ok(format!("{n} instances of order {lo}-{hi}, {cases} cases, 0 discrepancies"))
    })
}

fn c3(ctx: &Ctx) -> Check {
    timed(RAD_LIMIT, || {
        let cases = ctx.suite("rad")?;
        Ok(format!("{cases} elements, 0 discrepancies"))
    })
}

fn c4(ctx: &Ctx) -> Check {
    let cases = ctx.suite("nil")?;
    let e = ctx.ext("EM");
    let rad = jacobson_radical(e.ring()).map_err(|x| x.to_string())?;
    ensure(upper_nil_radical(e.ring()).radical == rad.radical, "Nil*(E) != rad(E) on the matrix example")?;
    Ok(format!("{cases} elements, Nil*(E) = rad(E) on the matrix example"))
}

fn c5(ctx: &Ctx) -> Check {
    let cases = ctx.suite("nil-ideals")?;
    Ok(format!("{cases} ideals, exponents within n*m"))
}

fn c6(ctx: &Ctx) -> Check {
    timed(PRIMENESS_LIMIT, || {
        let sp = ctx.suite("semiprime")?;
        let p = ctx.suite("prime")?;
        let l = &ctx.limits;
        let err = |e: Error| e.to_string();

        let m = semiprime_via_theorem(ctx.ext("EM"), l).map_err(err)?;
        ensure(
            m.condition_1 && m.condition_2 && !m.condition_3 && !m.verdict.verdict,
            "matrix example should fail only condition (3)",
        )?;
        let t = semiprime_via_theorem(ctx.ext("ET1"), l).map_err(err)?;
        ensure(!t.condition_1 && !t.verdict.verdict, "trivial I should fail condition (1)")?;
        let s = semiprime_via_theorem(ctx.ext("E6"), l).map_err(err)?;
        ensure(s.verdict.verdict, "E(Z/6, Z/6) should be semiprime")?;
        let mut ideal_cases = 0;
        for name in ["E2", "E3", "E4", "E6a", "E6", "E8", "E12"] {
            let e = ctx.ext(name);
            ensure(!is_prime_rng(e.ring(), l).map_err(err)?.verdict, format!("{name} is prime"))?;
            ensure(!prime_via_theorem(e, l).map_err(err)?.verdict.verdict, format!("{name} criterion says prime"))?;
            ideal_cases += 1;
        }
        Ok(format!("{sp} semiprime and {p} prime cases, {ideal_cases} ideal extensions not prime"))
    })
}

fn same_sets(a: &[ClassifiedPrime], b: &[IdealSubset]) -> bool {
    let mut x: Vec<&[Elem]> = a.iter().map(|c| c.members.members()).collect();
    let mut y: Vec<&[Elem]> = b.iter().map(|k| k.members()).collect();
    x.sort();
    y.sort();
    x == y
}

fn c7(ctx: &Ctx) -> Check {
    let l = &ctx.limits;
    let err = |e: Error| e.to_string();

    let e6 = ctx.ext("E6");
    let id = &ctx.phi("cyclic", "id6")[0].1;
    let primes = classify_prime_ideals(e6, id, l).map_err(err)?;
    let brute = prime_ideals(e6.ring(), false, l).map_err(err)?;
    let maximal = prime_ideals(e6.ring(), true, l).map_err(err)?;
    let sums = primes.iter().filter(|c| c.form == PrimeForm::Sum).count();
    ensure(primes.len() == 4 && sums == 2, "E(Z/6, Z/6) should have 2 SUM + 2 GRAPH primes")?;
    ensure(same_sets(&primes, &brute) && same_sets(&primes, &maximal), "Z/6 primes differ from brute force")?;

    let e4 = ctx.ext("E4");
    let incl = &ctx.phi("cyclic", "incl4")[0].1;
    let p4 = classify_prime_ideals(e4, incl, l).map_err(err)?;
    let m4 = classify_maximal_ideals(e4, incl, l).map_err(err)?;
    ensure(p4.len() == 1 && m4.len() == 1 && p4[0].members == m4[0].members, "E(Z/4, {0,2}) should have one prime = maximal")?;
    ensure(p4[0].members.len() == 4, "the maximal ideal should have order 4")?;
    ensure(is_local(e4.ring(), l).map_err(err)?, "E(Z/4, {0,2}) not local by maximal ideals")?;
    ensure(local_via_corollary(e4, incl, l).map_err(err)?, "E(Z/4, {0,2}) not local by the corollary")?;

    let es = ctx.ext("ES");
    let family = ctx.phi("sums", "pS");
    let ps = classify_primes_direct_sum(es, &family, l).map_err(err)?;
    let brute_s = prime_ideals(es.ring(), false, l).map_err(err)?;
    ensure(same_sets(&ps, &brute_s), "direct-sum list differs from brute force")?;
    Ok(format!("Z/6: 4 primes (2 SUM, 2 GRAPH), all maximal; Z/4: local; direct sum: {} primes match", ps.len()))
}

fn c8(ctx: &Ctx) -> Check {
    let cases = ctx.suite("psi")?;
    Ok(format!("{cases} retraction pairs"))
}

fn c9(ctx: &Ctx) -> Check {
    let cases = ctx.suite("left")?;
    Ok(format!("{cases} left ideals round-trip"))
}

fn run_bin(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Proc::new(env!("CARGO_BIN_EXE_ringlab")).args(args).output().expect("binary runs");
    (out.status.code(), out.stdout)
}

fn c10() -> Check {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/catalog");
    let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");
    for &(name, _) in CATALOG {
        let path = format!("{dir}/{name}.ring");
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        parse_spec(&text).map_err(|e| format!("{name}: {e}"))?;
        for cmd in ["check", "radical", "ideals"] {
            let a = run_bin(&[cmd, &path, "--format", "json"]);
            let b = run_bin(&[cmd, &path, "--format", "json"]);
            ensure(a.0 == Some(0), format!("{cmd} {name} exited {:?}", a.0))?;
            ensure(a.1 == b.1, format!("{cmd} {name} output differs between runs"))?;
        }
    }
    let path = format!("{dir}/rings.ring");
    let a = run_bin(&["verify-theorems", &path, "--format", "json"]);
    let b = run_bin(&["verify-theorems", &path, "--format", "json"]);
    ensure(a.0 == Some(0) && a.1 == b.1, "verify-theorems is not deterministic or failed")?;

    for (name, line, col) in [("unclosed_call", 1, 12), ("bad_set", 2, 26), ("missing_comma", 4, 17)] {
        let text = std::fs::read_to_string(format!("{fixtures}/{name}.ring")).map_err(|e| e.to_string())?;
        match parse_spec(&text) {
            Err(ParseError::SyntaxError { pos, .. }) if (pos.line, pos.col) == (line, col) => {}
            other => return Err(format!("{name}: {other:?}")),
        }
        let (code, _) = run_bin(&["check", &format!("{fixtures}/{name}.ring")]);
        ensure(code == Some(2), format!("{name} exited {code:?}"))?;
    }
    let (code, _) = run_bin(&["check", &format!("{fixtures}/corrupted.ring")]);
    ensure(code == Some(2), "corrupted tables should exit 2")?;
    let (code, _) = run_bin(&["radical", &format!("{dir}/matrix.ring"), "--order-cap", "64"]);
    ensure(code == Some(3), "order cap should exit 3")?;
    let d = ringlab::CliError::core("x", Error::Discrepancy("y".into()));
    ensure(d.exit_code() == 1, "discrepancies should map to exit 1")?;
    Ok("catalog parses and runs byte-identically, fixtures at 1:12, 2:26, 4:17, exit codes 0/1/2/3".into())
}

fn main() {
    let start = Instant::now();
    let limits = Limits::default();
    let catalog = load_catalog(&limits).expect("catalog loads");
    let mut insts = Vec::new();
    let mut envs = Vec::new();
    for entry in catalog {
        insts.extend(instances(&format!("catalog:{}/", entry.name), &entry.doc, &entry.env));
        envs.push((entry.name, entry.env));
    }
    let ctx = Ctx { limits, insts, envs };

    let criteria: Vec<(&str, Box<dyn Fn() -> Check + '_>)> = vec![
        ("matrix example radical", Box::new(|| c1(&ctx))),
        ("ideal correspondence round trip", Box::new(|| c2(&ctx))),
        ("radical criterion", Box::new(|| c3(&ctx))),
        ("nil radical criterion and power form", Box::new(|| c4(&ctx))),
        ("nil and nilpotent ideals", Box::new(|| c5(&ctx))),
        ("semiprime and prime criteria", Box::new(|| c6(&ctx))),
        ("prime and maximal classification", Box::new(|| c7(&ctx))),
        ("psi involution", Box::new(|| c8(&ctx))),
        ("left ideals", Box::new(|| c9(&ctx))),
        ("parser and CLI", Box::new(c10)),
    ];
    let mut failed = 0;
    for (k, (title, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {:>2} PASS  {title}: {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {msg}", k + 1);
            }
        }
    }
    let total = start.elapsed();
    if total > TOTAL_LIMIT {
        failed += 1;
        println!("total time {:.1}s exceeds {}s", total.as_secs_f64(), TOTAL_LIMIT.as_secs());
    } else {
        println!("total time {:.1}s (limit {}s)", total.as_secs_f64(), TOTAL_LIMIT.as_secs());
    }
    if failed > 0 {
        println!("{failed} criterion check(s) failed");
        std::process::exit(1);
    }
}
