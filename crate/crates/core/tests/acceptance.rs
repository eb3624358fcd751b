//! Acceptance criteria 1 to 10. Prints one line per criterion and exits
//! nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{lattice, oracle};
use finring::ring::{direct_product, make_zn};
use finring::star::enumerate_involutions;
use finring::suite::CheckReport;
use finring::{
    build_spec, corpus_generate, ring_census, run_check, run_suite, Caps, CentralPolynomial,
    CheckId, CheckInput, Classifier, CorpusEntry, FiniteRing, Ideal, RegularityRule, Status,
};

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(t.elapsed() < limit, || format!("took {:.2?}, limit {limit:?}", t.elapsed()))
}

fn criterion_1() -> Verdict {
    let t = Instant::now();
    let built = build_spec("star(product(Zn(2),Zn(2)),swap)").map_err(|e| e.to_string())?;
    let inv = built.involution.ok_or("no involution attached")?;
    let c = ring_census(&built.ring, Some(&inv), None);
    ensure(c.flag("is_weakly_clean") == Some(true), || "is_weakly_clean is not true".into())?;
    let f = c.ring_flag("is_weakly_star_clean").ok_or("is_weakly_star_clean missing")?;
    ensure(!f.holds, || "is_weakly_star_clean is true".into())?;
    let w = built.ring.name(f.witness[0]).to_string();
    ensure(w == "(1,0)", || format!("witness {w}"))?;
    within(t, Duration::from_secs(1))?;
    Ok(format!("weakly clean, not weakly star-clean at {w}"))
}

fn criterion_2() -> Verdict {
    let t = Instant::now();
    let mut seen = 0;
    for k in 1..=4 {
        let z2 = make_zn(2).unwrap();
        let r = if k == 1 { z2 } else { direct_product(&vec![z2; k]).unwrap() };
        for inv in enumerate_involutions(&r).map_err(|e| e.to_string())? {
            let c = ring_census(&r, Some(&inv), None);
            let wsc = c.flag("is_weakly_star_clean") == Some(true);
            ensure(wsc == inv.is_identity(), || {
                format!("Z2^{k} with {}: weakly star-clean {wsc}", inv.label())
            })?;
            seen += 1;
        }
    }
    within(t, Duration::from_secs(30))?;
    Ok(format!("{seen} involutions on Z2^k, k <= 4, no exceptions"))
}

fn criterion_3(corpus: &[CorpusEntry]) -> Verdict {
    let t = Instant::now();
    let mut covered: Vec<(String, String)> = Vec::new();
    let mut runs = 0;
    for e in corpus {
        for inv in &e.involutions {
            let c = ring_census(&e.ring, Some(inv), None);
            if c.flag("two_invertible") != Some(true) {
                continue;
            }
            covered.push((e.ring.provenance().to_string(), inv.label().to_string()));
            ensure(
                c.flag("is_weakly_star_clean") == c.flag("is_sasr1_or_two_p_plus_one"),
                || format!("{} {}: decomposition biconditional", e.ring.provenance(), inv.label()),
            )?;
            ensure(
                c.flag("square_roots_of_one_self_adjoint") == c.flag("all_idempotents_projections"),
                || format!("{} {}: idempotent biconditional", e.ring.provenance(), inv.label()),
            )?;
            for n in 21..=23 {
                let r = run_check(CheckId::new(n).unwrap(), &CheckInput::StarRing(inv.clone())).unwrap();
                ensure(r.status == Status::Verified, || {
                    format!("{} on {}: {} {}", r.id, r.inputs, r.status, r.witness.clone().unwrap_or_default())
                })?;
                runs += 1;
            }
        }
    }
    for (ring, label) in [
        ("Zn(3)", "id"),
        ("Zn(9)", "id"),
        ("product(Zn(3),Zn(3))", "id"),
        ("product(Zn(3),Zn(3))", "swap"),
        ("M(Zn(3),2)", "transpose"),
    ] {
        ensure(covered.iter().any(|(r, l)| r == ring && l == label), || format!("{ring} with {label} not covered"))?;
    }
    within(t, Duration::from_secs(120))?;
    Ok(format!("{} 2-invertible star rings, {runs} check runs verified", covered.len()))
}

fn criterion_4(corpus: &[CorpusEntry]) -> Verdict {
    let mut rings = 0;
    for e in corpus.iter().filter(|e| e.ring.size() <= 256) {
        let c = ring_census(&e.ring, None, None);
        if c.flag("abelian") != Some(true) {
            continue;
        }
        rings += 1;
        let wc = c.elements_with("weakly_clean");
        let wr = c.elements_with("weakly_r_clean");
        ensure(wc == wr, || format!("{}: element sets differ", e.ring.provenance()))?;
        ensure(c.flag("is_weakly_r_clean") == c.flag("is_weakly_exchange"), || {
            format!("{}: weakly r-clean and weakly exchange verdicts differ", e.ring.provenance())
        })?;
    }
    ensure(rings > 0, || "no abelian rings".into())?;
    Ok(format!("{rings} abelian rings agree"))
}

fn criterion_5(corpus: &[CorpusEntry]) -> Verdict {
    let mut elements = 0;
    for e in corpus {
        let mut censuses = vec![ring_census(&e.ring, None, None)];
        censuses.extend(e.involutions.iter().map(|i| ring_census(&e.ring, Some(i), None)));
        for c in &censuses {
            for p in &c.profiles {
                if let Some((a, b)) = lattice::violation(p) {
                    return Err(format!("{} at {}: {a} without {b}", e.ring.provenance(), e.ring.name(p.element)));
                }
                if let Some(v) = lattice::set_violation(p, e.ring.zero()) {
                    return Err(format!("{} at {}: {v}", e.ring.provenance(), e.ring.name(p.element)));
                }
                elements += 1;
            }
        }
    }
    Ok(format!("{elements} element profiles, zero violations"))
}

fn criterion_6(corpus: &[CorpusEntry]) -> Verdict {
    let mut contexts = 0;
    for e in corpus.iter().filter(|e| e.ring.size() <= oracle::ORACLE_RING_CAP) {
        oracle::compare(&e.ring, None, None)?;
        contexts += 1;
        for inv in &e.involutions {
            oracle::compare(&e.ring, Some(inv), None)?;
            contexts += 1;
        }
        for g in &e.polynomials {
            oracle::compare(&e.ring, None, Some(g))?;
            contexts += 1;
        }
    }
    Ok(format!("{contexts} contexts on rings of size <= {}", oracle::ORACLE_RING_CAP))
}

fn sign_pair(r: &FiniteRing, a: usize, b: usize, n: usize) -> (CentralPolynomial, CentralPolynomial) {
    let mut minus = vec![r.zero(); 2 * n + 1];
    minus[2 * n] = a;
    minus[1] = r.neg(b);
    let mut plus = minus.clone();
    plus[1] = b;
    (CentralPolynomial::new(r, minus, "minus").unwrap(), CentralPolynomial::new(r, plus, "plus").unwrap())
}

fn criterion_7() -> Verdict {
    let mut cases = 0;
    for spec in ["Zn(5)", "Zn(6)", "polyq(2,\"x^2\")"] {
        let r = build_spec(spec).unwrap().ring;
        let central: Vec<usize> = finring::basic_sets(&r).central.clone();
        for &a in central.iter().filter(|&&a| a != r.zero()) {
            for &b in &central {
                for n in 1..=2 {
                    let (gm, gp) = sign_pair(&r, a, b, n);
                    let vm = ring_census(&r, None, Some(&gm)).flag("is_weakly_g_r_clean");
                    let vp = ring_census(&r, None, Some(&gp)).flag("is_weakly_g_r_clean");
                    ensure(vm == vp, || format!("{spec}, a={}, b={}, n={n}", r.name(a), r.name(b)))?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} grid cases equal"))
}

fn criterion_8() -> Verdict {
    let c10 = CheckId::new(10).unwrap();
    let z6 = make_zn(6).unwrap();
    let r = run_check(c10, &CheckInput::Quotient { ideal: Ideal::new(&z6, [0, 3]).unwrap(), ring: z6 }).unwrap();
    ensure(r.status == Status::Verified && r.precondition.is_none(), || format!("Z6/(3): {}", r.status))?;
    let z4 = make_zn(4).unwrap();
    let r = run_check(c10, &CheckInput::Quotient { ideal: Ideal::new(&z4, [0, 2]).unwrap(), ring: z4 }).unwrap();
    ensure(r.status == Status::NotApplicable, || format!("Z4/(2): {}", r.status))?;
    ensure(r.precondition.as_deref() == Some("is_regular_ideal") && r.witness.as_deref() == Some("2"), || {
        format!("Z4/(2): precondition {:?}, witness {:?}", r.precondition, r.witness)
    })?;
    Ok("Z6/(3) verified; Z4/(2) not-applicable on is_regular_ideal at 2".into())
}

fn criterion_9(corpus: &[CorpusEntry]) -> Verdict {
    let t = Instant::now();
    let run = run_suite(&Classifier::default(), corpus);
    if let Some(r) = run.reports.iter().find(|r| r.status == Status::Counterexample) {
        return Err(format!("{} on {}: {}", r.id, r.inputs, r.witness.clone().unwrap_or_default()));
    }
    let mut verified: BTreeMap<u8, usize> = BTreeMap::new();
    for r in run.reports.iter().filter(|r| r.status == Status::Verified) {
        *verified.entry(r.id.number()).or_default() += 1;
    }
    if let Some(id) = CheckId::all().find(|id| !verified.contains_key(&id.number())) {
        return Err(format!("{id} has no verified instance"));
    }
    let noncommutative = "trunc(polyq(2,\"x^2+x+1\"),frobenius,2)";
    let c12 = |r: &&CheckReport| r.id.number() == 12 && r.inputs.contains(noncommutative);
    ensure(run.reports.iter().filter(c12).any(|r| r.status == Status::Verified), || {
        format!("C12 not verified on {noncommutative}")
    })?;
    within(t, Duration::from_secs(300))?;
    let s = run.summary;
    Ok(format!(
        "{} reports: {} verified, {} not-applicable, 0 counterexamples in {:.2?}",
        run.reports.len(),
        s.verified,
        s.not_applicable,
        t.elapsed()
    ))
}

fn criterion_10(corpus: &[CorpusEntry]) -> Verdict {
    let cl = Classifier::mutated(RegularityRule::DropRightFactor);
    let run = run_suite(&cl, corpus);
    let bad: Vec<&CheckReport> = run.reports.iter().filter(|r| r.status == Status::Counterexample).collect();
    ensure(!bad.is_empty(), || "mutated classifier produced no counterexample".into())?;
    let first = bad[0];
    Ok(format!("{} counterexamples, first {} on {}", bad.len(), first.id, first.inputs))
}

fn main() -> ExitCode {
    let corpus = corpus_generate(&Caps::default());
    let criteria: Vec<(u8, Box<dyn Fn() -> Verdict + '_>)> = vec![
        (1, Box::new(criterion_1)),
        (2, Box::new(criterion_2)),
        (3, Box::new(|| criterion_3(&corpus))),
        (4, Box::new(|| criterion_4(&corpus))),
        (5, Box::new(|| criterion_5(&corpus))),
        (6, Box::new(|| criterion_6(&corpus))),
        (7, Box::new(criterion_7)),
        (8, Box::new(criterion_8)),
        (9, Box::new(|| criterion_9(&corpus))),
        (10, Box::new(|| criterion_10(&corpus))),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        let t = Instant::now();
        let verdict = run();
        let el = t.elapsed();
        match verdict {
            Ok(msg) => println!("criterion {n}: PASS ({el:.2?}) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL ({el:.2?}) {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
