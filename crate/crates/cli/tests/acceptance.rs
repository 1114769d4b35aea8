//! Acceptance criteria A1 to A6. Prints one PASS/FAIL line per criterion and
//! exits nonzero when any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestError, TestRunner};
use rand::SeedableRng;

use linrew::completion::{as_convergent, certify_termination, check_confluence, complete, enumerate_critical_branchings, CompletionBounds, TerminationHint};
use linrew::homology::{build_complex, koszul_verdict, tor_table, KoszulReason, KoszulVerdict, TorTable};
use linrew::io::parse;
use linrew::random::{check_properties, CheckBounds, RuleRecipe, SystemRecipe};
use linrew::resolution::{cell_degrees, enumerate_chains};
use linrew::rewrite::{standard_basis, Polygraph2};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn fixture(name: &str) -> Polygraph2 {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display())).system
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: linrew::Error) -> String {
    e.to_string()
}

/// Tor of the trivial module for the convergent form of `input`, with the
/// degree N of the input.
fn tor_of(input: &Polygraph2, sys: &Polygraph2, kmax: usize, dmax: u32) -> Result<TorTable, String> {
    let mut cx = build_complex(sys, kmax, dmax).map_err(err)?;
    cx.n = input.homogeneous_degree();
    tor_table(&cx, kmax).map_err(err)
}

/// Every entry of `t` is exact and equal to `expected`, zero where absent.
fn tor_equals(t: &TorTable, expected: &[((usize, u32), usize)]) -> Result<(), String> {
    let want: BTreeMap<(usize, u32), usize> = expected.iter().cloned().collect();
    for (&(k, i), e) in &t.entries {
        let w = want.get(&(k, i)).copied().unwrap_or(0);
        ensure(e.exact() == Some(w), || format!("Tor_{k},({i}) is [{}, {}], expected {w}", e.lo, e.hi))?;
    }
    for &(k, i) in want.keys() {
        ensure(t.entries.contains_key(&(k, i)), || format!("Tor_{k},({i}) missing from the table"))?;
    }
    Ok(())
}

fn completed(p: &Polygraph2) -> Result<(Polygraph2, Vec<String>), String> {
    let ord = p.order.clone().ok_or("fixture declares no order")?;
    let res = complete(p, &ord, CompletionBounds::default()).map_err(err)?;
    ensure(res.certified, || format!("completion not certified: {:?}", res.note))?;
    let added = res.added.iter().map(|n| res.system.show_rule(res.system.rule_by_name(n).unwrap())).collect();
    Ok((res.system, added))
}

fn critical_words(p: &Polygraph2) -> BTreeSet<String> {
    enumerate_critical_branchings(p).iter().map(|b| p.show_mono(&b.word(p))).collect()
}

fn chain_words(p: &Polygraph2, dim: usize, dmax: u32) -> Result<BTreeSet<String>, String> {
    Ok(enumerate_chains(p, dim, dmax).map_err(err)?.iter().filter(|c| c.dim == dim).map(|c| p.show_mono(&c.word)).collect())
}

fn set(words: &[&str]) -> BTreeSet<String> {
    words.iter().map(|s| s.to_string()).collect()
}

fn a1() -> Check {
    let p = fixture("xyz.lp");
    let (sys, added) = completed(&p)?;
    let cert = sys.termination.as_ref().ok_or("no termination certificate")?;
    ensure(cert.kind_name() == "pattern-measure", || format!("certificate is {}", cert.kind_name()))?;
    ensure(added.is_empty(), || format!("completion added {added:?}"))?;
    let conf = check_confluence(&sys).map_err(err)?;
    ensure(conf.critical.is_empty() && conf.convergent, || format!("{} critical branchings", conf.critical.len()))?;
    let v = koszul_verdict(&p, 4, 6).map_err(err)?;
    ensure(matches!(v.verdict, KoszulVerdict::KoszulCertified { .. }), || format!("verdict {}", v.verdict))?;
    let t = tor_of(&p, &sys, 3, 6)?;
    tor_equals(&t, &[((0, 0), 1), ((1, 1), 3), ((2, 3), 1)])?;
    Ok(format!("pattern-measure, 0 criticals, {}, Tor0,(0)=1 Tor1,(1)=3 Tor2,(3)=1", v.verdict))
}

fn a2() -> Check {
    let p = fixture("pp05.lp");
    let (sys, added) = completed(&p)?;
    let want = set(&["gamma : y x^2 -> 2 x^2 y", "delta : z x^2 -> 1/2 x^2 z"]);
    ensure(added.iter().cloned().collect::<BTreeSet<_>>() == want, || format!("added {added:?}"))?;
    let conf = check_confluence(&sys).map_err(err)?;
    ensure(conf.critical.len() == 4 && conf.convergent, || format!("{} criticals, convergent {}", conf.critical.len(), conf.convergent))?;
    let triples = chain_words(&sys, 4, 5)?;
    ensure(triples == set(&["y z y z", "y z y x^2", "z y z y", "z y z x^2"]), || format!("triple sources {triples:?}"))?;
    let t = tor_of(&p, &sys, 3, 6)?;
    for (k, i, w) in [(2, 2, 2), (2, 3, 0), (3, 3, 0), (3, 4, 0)] {
        let e = t.entries.get(&(k, i)).ok_or_else(|| format!("Tor_{k},({i}) missing"))?;
        ensure(e.exact() == Some(w), || format!("Tor_{k},({i}) is [{}, {}], expected {w}", e.lo, e.hi))?;
    }
    let v = koszul_verdict(&p, 4, 6).map_err(err)?;
    ensure(
        matches!(v.verdict, KoszulVerdict::KoszulCertified { reason: KoszulReason::ConcentratedAfterCollapse, .. }),
        || format!("verdict {}", v.verdict),
    )?;
    let two: Vec<&String> = v.surviving.iter().filter(|(k, _)| *k == 2).flat_map(|(_, l)| l).collect();
    let three = v.surviving.iter().filter(|(k, _)| *k == 3).flat_map(|(_, l)| l).count();
    ensure(two == ["alpha", "beta"] && three == 0, || format!("surviving 2-cells {two:?}, {three} 3-cells"))?;
    Ok(format!("added gamma, delta; 4 criticals; 4 triples; Tor2,(2)=2; {}", v.verdict))
}

fn a3() -> Check {
    let p = fixture("xy.lp");
    let (sys, added) = completed(&p)?;
    ensure(added == ["gamma : y x^2 -> x^3"], || format!("added {added:?}"))?;
    let crit = critical_words(&sys);
    ensure(crit == set(&["y^3", "x y^2", "x y x^2", "y^2 x^2", "y x^2 y"]), || format!("critical sources {crit:?}"))?;
    let triples = chain_words(&sys, 4, 5)?;
    let want = set(&["x y x^2 y", "x y^2 x^2", "x y^3", "y x^2 y^2", "y^2 x^2 y", "y^3 x^2", "y^4"]);
    ensure(triples == want, || format!("triple words {triples:?}"))?;
    let cells = enumerate_chains(&sys, 4, 5).map_err(err)?;
    let deg = cell_degrees(&cells, p.homogeneous_degree());
    let (c3, c4) = (deg.count(3, 4), deg.count(4, 4));
    ensure((c3, c4) == (3, 2), || format!("degree-4 counts {c3} vs {c4}"))?;
    let v = koszul_verdict(&p, 4, 6).map_err(err)?;
    match &v.verdict {
        KoszulVerdict::NotKoszul { witness: (3, 4), tor, .. } if tor.lo >= 1 => {}
        other => return Err(format!("verdict {other}")),
    }
    Ok(format!("added gamma; 5 criticals; 7 triples; degree 4: 3 vs 2; {}", v.verdict))
}

fn a4() -> Check {
    let p = fixture("xy_single.lp");
    let sys = as_convergent(&p).map_err(err)?.ok_or("x y -> x^2 not certified convergent")?;
    let basis = standard_basis(&sys, 8).map_err(err)?;
    for d in 0..=8usize {
        let got: BTreeSet<String> = basis.by_degree[d].iter().map(|m| sys.show_mono(m)).collect();
        let want: BTreeSet<String> = (0..=d)
            .map(|i| {
                let j = d - i;
                let part = |g: &str, e: usize| match e {
                    0 => String::new(),
                    1 => g.to_string(),
                    _ => format!("{g}^{e}"),
                };
                let s = [part("y", i), part("x", j)].iter().filter(|s| !s.is_empty()).cloned().collect::<Vec<_>>().join(" ");
                if s.is_empty() {
                    "1".to_string()
                } else {
                    s
                }
            })
            .collect();
        ensure(got.len() == d + 1 && (d == 0 || got == want), || format!("degree {d}: {got:?}"))?;
    }
    let mut rev = fixture("xy_reversed.lp");
    rev.termination = certify_termination(&rev, TerminationHint::Auto).certificate();
    let conf = check_confluence(&rev).map_err(err)?;
    let w = conf.witness().ok_or("reversed orientation reported confluent")?;
    ensure(!conf.convergent && w.word == "x^3", || format!("witness {}", w.word))?;
    Ok("standard basis {y^i x^j} for d <= 8; reversed orientation not confluent at x^3".into())
}

fn a5() -> Check {
    let gb = fixture("xyz_gb.lp");
    let gb = as_convergent(&gb).map_err(err)?.ok_or("two-rule basis is not confluent")?;
    let conf = check_confluence(&gb).map_err(err)?;
    ensure(conf.critical.iter().all(|c| c.s_normal_form == "0"), || "an S-polynomial has a nonzero normal form".into())?;
    let xyz = as_convergent(&fixture("xyz.lp")).map_err(err)?.ok_or("xyz not convergent")?;
    let (a, b) = (standard_basis(&gb, 6).map_err(err)?.counts(), standard_basis(&xyz, 6).map_err(err)?.counts());
    ensure(a == b, || format!("Hilbert counts {a:?} vs {b:?}"))?;
    Ok(format!("{} S-polynomials reduce to 0; Hilbert counts {a:?}", conf.critical.len()))
}

fn recipe() -> impl Strategy<Value = SystemRecipe> {
    let rule = (
        prop::collection::vec(0u8..3, 2..=3),
        prop::collection::vec((prop::sample::select(vec![-2i8, -1, 1, 2]), any::<u16>()), 0..=2),
    )
        .prop_map(|(src, terms)| RuleRecipe { src, terms });
    (1u8..=3, prop::collection::vec(rule, 1..=4)).prop_map(|(gens, rules)| SystemRecipe { gens, rules })
}

fn a6() -> Check {
    let config = Config { cases: 200, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha));
    let stats = std::cell::Cell::new((0usize, 0usize));
    let result = runner.run(&recipe(), |r| {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let rep = check_properties(&r.build(), &mut rng, CheckBounds::default()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let (n, c) = stats.get();
        stats.set((n + 1, c + rep.completed() as usize));
        if rep.passed() {
            Ok(())
        } else {
            Err(TestCaseError::fail(rep.failures.join("; ")))
        }
    });
    match result {
        Ok(()) => {
            let (n, c) = stats.get();
            Ok(format!("{n} systems, {c} completed within bounds, all checks agree"))
        }
        Err(TestError::Fail(why, r)) => Err(format!("minimal counterexample {r:?}: {why}")),
        Err(TestError::Abort(why)) => Err(format!("aborted: {why}")),
    }
}

fn main() {
    let criteria: [Criterion; 6] = [("A1", a1), ("A2", a2), ("A3", a3), ("A4", a4), ("A5", a5), ("A6", a6)];
    let mut failed = 0;
    for (name, f) in criteria {
        match std::panic::catch_unwind(f) {
            Ok(Ok(detail)) => println!("{name} PASS {detail}"),
            Ok(Err(why)) => {
                failed += 1;
                println!("{name} FAIL {why}");
            }
            Err(_) => {
                failed += 1;
                println!("{name} FAIL panicked");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
