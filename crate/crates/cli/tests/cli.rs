use std::process::{Command, Output};

use finring_cli::{Record, ReportDocument};

fn finring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finring")).args(args).output().expect("binary runs")
}

fn machine(args: &[&str]) -> (ReportDocument, i32) {
    let mut all = vec!["--format", "machine"];
    all.extend_from_slice(args);
    let out = finring(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    (ReportDocument::parse_machine(&text).unwrap(), out.status.code().unwrap())
}

fn row<'d>(doc: &'d ReportDocument, flag: &str) -> &'d Record {
    doc.records.iter().find(|r| r.flag_or_check == flag).unwrap_or_else(|| panic!("no row {flag}"))
}

#[test]
fn census_z6_is_weakly_r_clean() {
    let (doc, code) = machine(&["census", "Zn(6)"]);
    assert_eq!(code, 0);
    assert_eq!(row(&doc, "is_weakly_r_clean").status, "true");
    assert_eq!(row(&doc, "units").status, "2");
}

#[test]
fn census_swap_separates() {
    let (doc, _) = machine(&["census", "star(product(Zn(2),Zn(2)), swap)"]);
    assert_eq!(row(&doc, "is_weakly_clean").status, "true");
    let r = row(&doc, "is_weakly_star_clean");
    assert_eq!(r.status, "false");
    assert_eq!(r.witness.as_deref(), Some("(1,0)"));
}

#[test]
fn star_option_overrides() {
    let (doc, _) = machine(&["census", "product(Zn(2),Zn(2))", "--star", "id"]);
    assert_eq!(row(&doc, "is_weakly_star_clean").status, "true");
}

#[test]
fn element_census_has_witnesses() {
    let (doc, _) = machine(&["census", "Zn(4)", "--element", "2"]);
    let r = row(&doc, "clean");
    assert_eq!(r.status, "true");
    assert!(r.witness.as_deref().unwrap().starts_with("2 = 1 + 1"));
    let (doc, _) = machine(&["census", "Zn(6)", "--element", "#3", "--g", "x^2-x"]);
    assert_eq!(row(&doc, "g_root").status, "true");
}

#[test]
fn verify_single_check() {
    let (doc, code) = machine(&["verify", "C20", "star(product(Zn(2),Zn(2)),swap)"]);
    assert_eq!(code, 0);
    assert_eq!(row(&doc, "C20").status, "verified");
}

#[test]
fn verify_reports_missing_input_shapes() {
    let (doc, code) = machine(&["verify", "C02,C11", "Zn(6)"]);
    assert_eq!(code, 0);
    assert_eq!(row(&doc, "C02").status, "not-applicable");
    assert_eq!(row(&doc, "C11").status, "not-applicable");
}

#[test]
fn verify_whole_corpus() {
    let (doc, code) = machine(&["verify", "all", "--corpus"]);
    assert_eq!(code, 0);
    let checks: Vec<&Record> = doc.records.iter().filter(|r| r.kind == "check").collect();
    assert!(checks.iter().all(|r| r.status == "verified" || r.status == "not-applicable"));
    for n in 1..=33 {
        let id = format!("C{n:02}");
        assert!(checks.iter().any(|r| r.flag_or_check == id && r.status == "verified"), "{id}");
    }
}

#[test]
fn mutation_exits_one() {
    let (doc, code) = machine(&["verify", "C03,C07", "--corpus", "--mutate"]);
    assert_eq!(code, 1);
    assert!(doc.records.iter().any(|r| r.status == "counterexample"));
}

#[test]
fn input_errors_exit_two() {
    let out = finring(&["verify", "C99", "Zn(2)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("C99"));

    let out = finring(&["census", "Zn(6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:"));

    for args in [
        &["census", "Foo(3)"][..],
        &["census", "Zn(6)", "--element", "9"],
        &["census", "Zn(6)", "--star", "swap"],
        &["search", "is_shiny"],
        &["verify", "C01"],
        &["bogus"],
    ] {
        assert_eq!(finring(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn search_examples() {
    let (doc, code) = machine(&["search", "is_weakly_clean & !is_weakly_star_clean & size<=4 & tag=product"]);
    assert_eq!(code, 0);
    let found: Vec<&str> = doc.records.iter().filter(|r| r.kind == "witness").map(|r| r.ring.as_str()).collect();
    assert_eq!(found, ["star(product(Zn(2),Zn(2)),swap)"]);

    let (doc, code) = machine(&["search", "is_weakly_r_clean & !is_r_clean"]);
    assert_eq!(code, 0);
    let note = doc.records.iter().find(|r| r.kind == "note").unwrap();
    assert_eq!(note.status, "no witness in corpus");
    assert!(note.witness.as_deref().unwrap().contains("finite ring is clean"));

    let (doc, _) = machine(&["search", "element: idempotent & !central"]);
    assert!(doc.records.iter().any(|r| r.kind == "witness" && r.ring == "M(Zn(2),2)"));
}

#[test]
fn machine_output_is_stable() {
    let strip = |mut d: ReportDocument| {
        d.invocation.timestamp = 0;
        d.records.iter_mut().for_each(|r| r.nanos = 0);
        d
    };
    let args = ["census", "M(Zn(2),2)", "--star", "transpose"];
    assert_eq!(strip(machine(&args).0), strip(machine(&args).0));
}

#[test]
fn machine_round_trips_real_output() {
    let out = finring(&["--format", "machine", "corpus", "list", "--max-size", "16"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let doc = ReportDocument::parse_machine(&text).unwrap();
    assert_eq!(doc.to_machine(), text);
    assert!(doc.records.iter().all(|r| r.status.parse::<usize>().unwrap() <= 16));
}

#[test]
fn human_output_has_every_row() {
    let (doc, _) = machine(&["census", "Zn(12)"]);
    let human = String::from_utf8(finring(&["census", "Zn(12)"]).stdout).unwrap();
    for r in &doc.records {
        assert!(human.lines().any(|l| l.contains(&r.flag_or_check) && l.contains(&r.status)), "{}", r.flag_or_check);
    }
}
