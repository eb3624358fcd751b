use std::time::{Instant, SystemTime, UNIX_EPOCH};

use finring::classify::{CentralPolynomial, Family, PolyError, ELEMENT_FLAGS};
use finring::dsl::{involution_by_name, DslErrorKind};
use finring::search::{SearchError, CORPUS_POLYNOMIALS};
use finring::suite::{corpus_inputs, run_pairs, CheckError, SuiteSummary};
use finring::{
    build_spec, corpus_generate, find_witness, Caps, CheckId, CheckReport, Classifier, CorpusEntry, DslError,
    FiniteRing, Involution, RegularityRule, Status, WitnessQuery,
};
use thiserror::Error;

use crate::args::CapsArgs;
use crate::report::{CapsRecord, Format, Invocation, Record, ReportDocument};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Dsl(#[from] DslError),
    #[error("--star: {0}")]
    Involution(DslErrorKind),
    #[error("--g: {0}")]
    Poly(#[from] PolyError),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("verify needs ring expressions or --corpus")]
    NothingToVerify,
}

/// A rendered document plus the process exit code it implies.
pub struct Outcome {
    pub document: ReportDocument,
    pub exit_code: u8,
}

fn invocation(command: &str, specs: Vec<String>, caps: Option<&Caps>) -> Invocation {
    Invocation {
        command: command.to_string(),
        specs,
        caps: caps.map(|c| CapsRecord {
            max_size: c.max_size,
            enumerate_involutions: c.enumerate_involutions,
            time_budget_ms: c.time_budget.map(|d| d.as_millis() as u64),
        }),
        timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
    }
}

pub fn caps_of(a: &CapsArgs) -> Caps {
    Caps {
        max_size: a.max_size,
        enumerate_involutions: a.enumerate_involutions,
        time_budget: a.time_budget_ms.map(std::time::Duration::from_millis),
    }
}

fn context(ring: &FiniteRing, inv: Option<&Involution>, g: Option<&CentralPolynomial>) -> String {
    let mut s = match inv {
        Some(i) => format!("star({},{})", ring.provenance(), i.label()),
        None => ring.provenance().to_string(),
    };
    if let Some(g) = g {
        s.push_str(&format!(" with g = {}", g.label()));
    }
    s
}

pub fn census(
    spec: &str,
    element: Option<&str>,
    star: Option<&str>,
    g: Option<&str>,
    format: Format,
) -> Result<Outcome, CliError> {
    let built = build_spec(spec)?;
    let ring = built.ring;
    let inv = match star {
        Some(name) => Some(involution_by_name(&ring, name).map_err(CliError::Involution)?),
        None => built.involution,
    };
    let g = g.map(|t| CentralPolynomial::parse(&ring, t)).transpose()?;
    let x = element
        .map(|name| ring.element_by_name(name).ok_or_else(|| CliError::UnknownElement(name.to_string())))
        .transpose()?;

    let t = Instant::now();
    let c = finring::ring_census(&ring, inv.as_ref(), g.as_ref());
    let nanos = t.elapsed().as_nanos();
    let ctx = context(&ring, inv.as_ref(), g.as_ref());
    let mut records = Vec::new();
    match x {
        Some(x) => {
            let p = c.profile(x);
            let at = format!("{ctx} at {}", ring.name(x));
            for &(name, family) in ELEMENT_FLAGS {
                let attached = match family {
                    Family::Base => true,
                    Family::Star => inv.is_some(),
                    Family::G => g.is_some(),
                };
                if !attached {
                    continue;
                }
                let holds = p.flag(name).unwrap_or(false);
                records.push(
                    Record::new("element_flag", at.clone(), name, holds.to_string())
                        .witness(p.witness(&ring, name))
                        .nanos(nanos),
                );
            }
        }
        None => {
            let n = &c.counts;
            let mut counts = vec![
                ("size", ring.size()),
                ("units", n.units),
                ("idempotents", n.idempotents),
                ("regulars", n.regulars),
                ("nilpotents", n.nilpotents),
                ("jacobson", n.jacobson),
                ("central", n.central),
            ];
            if let Some(p) = n.projections {
                counts.push(("projections", p));
            }
            for (name, v) in counts {
                records.push(Record::new("count", ctx.clone(), name, v.to_string()));
            }
            for f in &c.flags {
                let w = (!f.holds).then(|| f.witness.iter().map(|&e| ring.name(e)).collect::<Vec<_>>().join(", "));
                records.push(Record::new("ring_flag", ctx.clone(), f.name, f.holds.to_string()).witness(w).nanos(nanos));
            }
        }
    }
    let mut specs = vec![spec.to_string()];
    specs.extend(element.map(|e| format!("--element {e}")));
    specs.extend(star.map(|s| format!("--star {s}")));
    specs.extend(g.as_ref().map(|g| format!("--g {}", g.label())));
    Ok(Outcome {
        document: ReportDocument { invocation: invocation("census", specs, None), records, format },
        exit_code: 0,
    })
}

pub fn parse_ids(text: &str) -> Result<Vec<CheckId>, CheckError> {
    if text.trim().eq_ignore_ascii_case("all") {
        return Ok(CheckId::all().collect());
    }
    let mut ids = text.split(',').map(str::parse).collect::<Result<Vec<CheckId>, _>>()?;
    ids.sort();
    ids.dedup();
    Ok(ids)
}

fn check_record(r: &CheckReport) -> Record {
    let witness = match r.status {
        Status::Verified => None,
        Status::NotApplicable => Some(match (&r.precondition, &r.witness) {
            (Some(p), Some(w)) if !w.is_empty() => format!("{p} fails at {w}"),
            (Some(p), _) => format!("{p} fails"),
            (None, w) => w.clone().unwrap_or_default(),
        }),
        Status::Counterexample => {
            Some(format!("{}: {}", r.witness.clone().unwrap_or_default(), r.detail))
        }
    };
    Record::new("check", r.inputs.clone(), r.id.to_string(), r.status.as_str()).witness(witness).nanos(r.elapsed.as_nanos())
}

/// Corpus entry for an explicit ring: the given involution only, or the
/// usual ones when none was named.
fn entry_for(spec: &str, caps: &Caps) -> Result<CorpusEntry, CliError> {
    let built = build_spec(spec)?;
    Ok(match built.involution {
        Some(inv) => CorpusEntry {
            polynomials: CORPUS_POLYNOMIALS
                .iter()
                .filter_map(|c| CentralPolynomial::from_integers(&built.ring, c).ok())
                .collect(),
            ring: built.ring,
            involutions: vec![inv],
            tags: Vec::new(),
        },
        None => CorpusEntry::new(built.ring, Vec::new(), caps),
    })
}

pub fn verify(
    ids: &str,
    specs: &[String],
    corpus: bool,
    mutate: bool,
    caps_args: &CapsArgs,
    format: Format,
) -> Result<Outcome, CliError> {
    let ids = parse_ids(ids)?;
    let ids_text = ids.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
    let caps = caps_of(caps_args);
    let cl = if mutate { Classifier::mutated(RegularityRule::DropRightFactor) } else { Classifier::default() };
    let t = Instant::now();
    let mut records = Vec::new();
    let mut reports = Vec::new();
    let mut run = |entries: &[CorpusEntry], label: Option<&str>, records: &mut Vec<Record>| {
        let pairs: Vec<_> = corpus_inputs(entries).into_iter().filter(|(id, _)| ids.contains(id)).collect();
        let got = run_pairs(&cl, &pairs);
        if let Some(spec) = label {
            for &id in &ids {
                if !pairs.iter().any(|(i, _)| *i == id) {
                    let why = format!("needs a {} input; none derives from this ring", id.expects());
                    records.push(Record::new("check", spec, id.to_string(), Status::NotApplicable.as_str()).witness(Some(why)));
                }
            }
        }
        records.extend(got.iter().map(check_record));
        reports.extend(got);
    };
    if corpus {
        let entries = corpus_generate(&caps);
        run(&entries, None, &mut records);
    } else if specs.is_empty() {
        return Err(CliError::NothingToVerify);
    } else {
        for spec in specs {
            let entry = entry_for(spec, &caps)?;
            run(std::slice::from_ref(&entry), Some(spec), &mut records);
        }
    }
    records.sort_by_key(|r| r.flag_or_check.clone());
    let s = SuiteSummary::of(&reports);
    records.push(
        Record::new(
            "summary",
            if corpus { "corpus".to_string() } else { specs.join(" ") },
            ids_text.clone(),
            format!("verified={} counterexample={} not-applicable={}", s.verified, s.counterexamples, s.not_applicable),
        )
        .nanos(t.elapsed().as_nanos()),
    );
    let mut inv_specs = vec![ids_text];
    inv_specs.extend(specs.iter().cloned());
    if corpus {
        inv_specs.push("--corpus".into());
    }
    if mutate {
        inv_specs.push("--mutate".into());
    }
    Ok(Outcome {
        document: ReportDocument {
            invocation: invocation("verify", inv_specs, corpus.then_some(&caps)),
            records,
            format,
        },
        exit_code: if s.counterexamples > 0 { 1 } else { 0 },
    })
}

pub fn search(query: &str, caps_args: &CapsArgs, format: Format) -> Result<Outcome, CliError> {
    let q = WitnessQuery::parse(query)?;
    let caps = caps_of(caps_args);
    let t = Instant::now();
    let entries = corpus_generate(&caps);
    let out = find_witness(&q, &entries)?;
    let nanos = t.elapsed().as_nanos();
    let qtext = q.to_string();
    let mut records: Vec<Record> = out
        .witnesses
        .iter()
        .map(|w| {
            let ring = match &w.involution {
                Some(i) => format!("star({},{i})", w.ring),
                None => w.ring.clone(),
            };
            let ring = match &w.polynomial {
                Some(g) => format!("{ring} with g = {g}"),
                None => ring,
            };
            Record::new("witness", ring, qtext.clone(), "found").witness(w.element.clone())
        })
        .collect();
    if out.witnesses.is_empty() {
        records.push(
            Record::new("note", "corpus", qtext.clone(), "no witness in corpus").witness(out.note.map(str::to_string)),
        );
    }
    records.push(
        Record::new(
            "scan",
            "corpus",
            qtext,
            format!(
                "entries={} contexts={} elements={}",
                out.entries_scanned, out.contexts_scanned, out.elements_scanned
            ),
        )
        .nanos(nanos),
    );
    Ok(Outcome {
        document: ReportDocument { invocation: invocation("search", vec![query.to_string()], Some(&caps)), records, format },
        exit_code: 0,
    })
}

pub fn corpus_list(caps_args: &CapsArgs, format: Format) -> Outcome {
    let caps = caps_of(caps_args);
    let records = corpus_generate(&caps)
        .iter()
        .map(|e| {
            let invs = e.involutions.iter().map(|i| i.label().to_string()).collect::<Vec<_>>().join(" ");
            Record::new("corpus", e.ring.provenance(), e.tags.join(","), e.ring.size().to_string()).witness(Some(invs))
        })
        .collect();
    Outcome {
        document: ReportDocument { invocation: invocation("corpus list", Vec::new(), Some(&caps)), records, format },
        exit_code: 0,
    }
}
