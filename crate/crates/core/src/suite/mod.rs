//! Executable checks C01–C33, one per structural theorem, evaluated on
//! concrete finite inputs.

mod g_checks;
mod inputs;
mod r_checks;
mod star_checks;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::classify::{Census, CentralPolynomial, Classifier};
use crate::ring::{Elem, FiniteRing, Grading, Ideal, RingMap};
use crate::search::CorpusEntry;

pub use g_checks::GRID_RING_CAP;
pub use inputs::{corpus_inputs, PRODUCT_POLYNOMIALS, STAR_SERIES_CAPS, SWEEP_RING_CAP};
use crate::star::Involution;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("unknown check {0:?} (expected C01..C33)")]
    UnknownCheck(String),
    #[error("{id} does not take {got} (expects {expected})")]
    ArityMismatch { id: CheckId, got: &'static str, expected: &'static str },
}

/// Identifier of one check, `C01` to `C33`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CheckId(u8);

impl CheckId {
    pub const COUNT: u8 = 33;

    pub fn new(n: u8) -> Option<CheckId> {
        (1..=Self::COUNT).contains(&n).then_some(CheckId(n))
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = CheckId> {
        (1..=Self::COUNT).map(CheckId)
    }

    /// Formal statement the check evaluates.
    pub fn statement(self) -> &'static str {
        STATEMENTS[self.0 as usize - 1]
    }

    /// Input shape the check accepts.
    pub fn expects(self) -> &'static str {
        match self.0 {
            1 => "surjection or quotient",
            2 => "factor list",
            9 => "series",
            10 => "quotient",
            13 => "grading",
            14 => "g-epimorphism",
            15 => "factor list with integer polynomial",
            17..=19 => "ring with degree",
            20..=23 | 28..=33 => "star ring",
            24 => "star quotient",
            25 => "star series",
            26 => "star surjection or star quotient",
            27 => "star factor list",
            _ => "ring",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{:02}", self.0)
    }
}

impl FromStr for CheckId {
    type Err = CheckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        t.strip_prefix(['C', 'c'])
            .and_then(|d| d.parse::<u8>().ok())
            .and_then(CheckId::new)
            .ok_or_else(|| CheckError::UnknownCheck(s.to_string()))
    }
}

const STATEMENTS: [&str; 33] = [
    "θ: R ↠ S, R weakly r-clean ⇒ S weakly r-clean",
    "∏R_i weakly r-clean ⇔ every R_i weakly r-clean and at most one R_i not r-clean",
    "R without zero divisors: weakly clean ⇔ weakly r-clean",
    "a = u − f in eRe (u ∈ U(eRe), f ∈ Idem(eRe)) ⇒ a = v − ē with v = u + (1−e) ∈ U(R), ē = f + (1−e) ∈ Idem(R)",
    "R abelian, a weakly clean, e ∈ Idem(R) ⇒ ae weakly clean",
    "R abelian, a and −a clean, e ∈ Idem(R) ⇒ a + e clean and a − e weakly clean",
    "R abelian: weakly clean ⇔ weakly r-clean",
    "R abelian: weakly r-clean ⇔ weakly exchange",
    "R abelian: R weakly r-clean ⇔ R[t;α]/(t^N) weakly r-clean",
    "I regular, idempotents lift mod I: R weakly r-clean ⇔ R/I weakly r-clean",
    "[[A,0],[M,B]] weakly r-clean ⇒ A and B weakly r-clean",
    "R weakly r-clean with Idem(R) = {0,1} ⇒ C(R) weakly r-clean",
    "R = ⊕R_n graded, R weakly r-clean ⇒ R_0 weakly r-clean",
    "θ: R ↠ S, R weakly g-r-clean ⇒ S weakly θ'(g)-r-clean",
    "g ∈ Z[x]: ∏R_i weakly g-r-clean ⇔ every R_i weakly g-r-clean and at most one R_i not g-r-clean",
    "R weakly (ax^{2n} − bx)-r-clean ⇔ R weakly (ax^{2n} + bx)-r-clean",
    "every a = r ± t with r ∈ Reg(R), t^{n−1} = 1 ⇒ R weakly (x^n − x)-r-clean",
    "g = x^n − x, g(e) = 0, a strongly g-clean in E R E (E = e^{n−1}) ⇒ a strongly g-clean in R",
    "R abelian, g = x^n − x, a g-clean, g(e) = 0 ⇒ a e^{n−1} g-clean",
    "R boolean ⋆-ring: weakly ⋆-clean ⇔ ⋆ = id",
    "2 ∈ U(R): (u² = 1 ⇒ u⋆ = u) ⇔ Idem(R) = P(R)",
    "2 ∈ U(R): (weakly clean and U(R) self-adjoint) ⇔ (weakly ⋆-clean and ⋆ = id)",
    "(weakly ⋆-clean and 2 ∈ U(R)) ⇔ every x = u + s (s² = 1 = …, s⋆ = s) or x = u + (2p + 1), p ∈ P(R)",
    "R weakly ⋆-clean, I⋆ = I ⇒ R/I weakly ⋆-clean",
    "R weakly ⋆-clean ⇔ R[t]/(t^N) weakly ⋆-clean with coefficientwise ⋆",
    "θ: R ↠ S with θ(x⋆) = θ(x)⋆, R weakly ⋆-clean ⇒ S weakly ⋆-clean",
    "∏R_i weakly ⋆-clean ⇔ every R_i weakly ⋆-clean and at most one R_i not ⋆-clean",
    "e ∈ P(R), a strongly ⋆-clean in eRe ⇒ a strongly ⋆-clean in R",
    "R abelian, a ⋆-clean, e ∈ P(R) ⇒ ae ⋆-clean",
    "R abelian, a and −a ⋆-clean, e ∈ P(R) ⇒ a + e ⋆-clean",
    "R abelian, idempotents ry, yr (r = ryr) are projections ⇒ every regular r is ⋆-clean",
    "R abelian, idempotents ry, yr (r = ryr) are projections: ⋆-r-clean ⇔ ⋆-clean",
    "units, J(R) and nilpotents of a ⋆-ring are weakly ⋆-clean",
];

/// Concrete input for one check.
#[derive(Clone, Debug)]
pub enum CheckInput {
    Ring(FiniteRing),
    RingDegree { ring: FiniteRing, n: u32 },
    Surjection(RingMap),
    Quotient { ring: FiniteRing, ideal: Ideal },
    Factors(Vec<FiniteRing>),
    FactorsG { factors: Vec<FiniteRing>, g: Vec<i64> },
    Series { twist: RingMap, length: usize },
    Graded(Grading),
    GEpimorphism { map: RingMap, g: CentralPolynomial },
    StarRing(Involution),
    StarQuotient { inv: Involution, ideal: Ideal },
    StarSeries { inv: Involution, length: usize },
    StarSurjection { map: RingMap, source: Involution, target: Involution },
    StarFactors(Vec<Involution>),
}

impl CheckInput {
    pub fn kind_name(&self) -> &'static str {
        match self {
            CheckInput::Ring(_) => "ring",
            CheckInput::RingDegree { .. } => "ring with degree",
            CheckInput::Surjection(_) => "surjection",
            CheckInput::Quotient { .. } => "quotient",
            CheckInput::Factors(_) => "factor list",
            CheckInput::FactorsG { .. } => "factor list with integer polynomial",
            CheckInput::Series { .. } => "series",
            CheckInput::Graded(_) => "grading",
            CheckInput::GEpimorphism { .. } => "g-epimorphism",
            CheckInput::StarRing(_) => "star ring",
            CheckInput::StarQuotient { .. } => "star quotient",
            CheckInput::StarSeries { .. } => "star series",
            CheckInput::StarSurjection { .. } => "star surjection",
            CheckInput::StarFactors(_) => "star factor list",
        }
    }

    pub fn describe(&self) -> String {
        let star = |i: &Involution| format!("star({},{})", i.ring().provenance(), i.label());
        let list = |v: Vec<String>| v.join(", ");
        match self {
            CheckInput::Ring(r) => r.provenance().to_string(),
            CheckInput::RingDegree { ring, n } => format!("{} with n={n}", ring.provenance()),
            CheckInput::Surjection(m) => format!("{} -> {} ({})", m.source().provenance(), m.target().provenance(), m.label()),
            CheckInput::Quotient { ring, ideal } => format!("{} mod {}", ring.provenance(), ideal.describe()),
            CheckInput::Factors(fs) => format!("factors [{}]", list(fs.iter().map(|f| f.provenance().to_string()).collect())),
            CheckInput::FactorsG { factors, g } => format!(
                "factors [{}], g = {}",
                list(factors.iter().map(|f| f.provenance().to_string()).collect()),
                crate::ring::poly::IntPoly(g)
            ),
            CheckInput::Series { twist, length } => {
                format!("trunc({},{},{length})", twist.source().provenance(), twist.label())
            }
            CheckInput::Graded(g) => format!("{} graded by {} ({} parts)", g.ring().provenance(), g.label(), g.parts().len()),
            CheckInput::GEpimorphism { map, g } => format!(
                "{} -> {} ({}), g = {}",
                map.source().provenance(),
                map.target().provenance(),
                map.label(),
                g.label()
            ),
            CheckInput::StarRing(i) => star(i),
            CheckInput::StarQuotient { inv, ideal } => format!("{} mod {}", star(inv), ideal.describe()),
            CheckInput::StarSeries { inv, length } => format!("{} truncated at t^{length}", star(inv)),
            CheckInput::StarSurjection { map, source, target } => {
                format!("{} -> {} ({})", star(source), star(target), map.label())
            }
            CheckInput::StarFactors(is) => format!("factors [{}]", list(is.iter().map(star).collect())),
        }
    }

    fn mismatch(&self, id: CheckId) -> CheckError {
        CheckError::ArityMismatch { id, got: self.kind_name(), expected: id.expects() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Verified,
    Counterexample,
    NotApplicable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Counterexample => "counterexample",
            Status::NotApplicable => "not-applicable",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "verified" => Ok(Status::Verified),
            "counterexample" => Ok(Status::Counterexample),
            "not-applicable" => Ok(Status::NotApplicable),
            other => Err(format!("unknown status {other:?}")),
        }
    }
}

/// Verdict of one check on one input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub id: CheckId,
    pub statement: &'static str,
    pub inputs: String,
    pub status: Status,
    /// Name of the failed hypothesis when not applicable.
    pub precondition: Option<String>,
    /// Offending element(s) for counterexamples and failed hypotheses.
    pub witness: Option<String>,
    /// What was evaluated, including documented vacuities.
    pub detail: String,
    pub elapsed: Duration,
    pub scanned: usize,
}

/// Result of a check body, before timing and labelling.
#[derive(Clone, Debug)]
pub(crate) struct Outcome {
    status: Status,
    precondition: Option<String>,
    witness: Option<String>,
    detail: String,
    scanned: usize,
}

impl Outcome {
    pub(crate) fn verified(detail: impl Into<String>, scanned: usize) -> Outcome {
        Outcome { status: Status::Verified, precondition: None, witness: None, detail: detail.into(), scanned }
    }

    pub(crate) fn na(precondition: impl Into<String>, witness: impl Into<String>) -> Outcome {
        Outcome {
            status: Status::NotApplicable,
            precondition: Some(precondition.into()),
            witness: Some(witness.into()),
            detail: String::new(),
            scanned: 0,
        }
    }

    pub(crate) fn cex(witness: impl Into<String>, detail: impl Into<String>, scanned: usize) -> Outcome {
        Outcome {
            status: Status::Counterexample,
            precondition: None,
            witness: Some(witness.into()),
            detail: detail.into(),
            scanned,
        }
    }
}

/// Shared state for check bodies.
pub(crate) struct Ctx {
    pub cl: Classifier,
}

impl Ctx {
    pub fn census(&self, ring: &FiniteRing) -> Census {
        self.cl.census(ring, None, None)
    }

    pub fn star_census(&self, inv: &Involution) -> Census {
        self.cl.census(inv.ring(), Some(inv), None)
    }

    pub fn flag(c: &Census, name: &str) -> bool {
        c.flag(name).unwrap_or_else(|| panic!("flag {name} not computed"))
    }

    /// Least element where a ring flag fails, by name.
    pub fn flag_witness(c: &Census, name: &str) -> String {
        let f = c.ring_flag(name).expect("registered flag");
        names(&c.ring, &f.witness)
    }
}

pub(crate) fn names(ring: &FiniteRing, xs: &[Elem]) -> String {
    xs.iter().map(|&x| ring.name(x).to_string()).collect::<Vec<_>>().join(", ")
}

/// Coordinates of a product element, first factor first.
pub(crate) fn coords(factors: &[FiniteRing], mut x: Elem) -> Vec<Elem> {
    factors
        .iter()
        .map(|f| {
            let c = x % f.size();
            x /= f.size();
            c
        })
        .collect()
}

/// Run one check under the default classifier.
pub fn run_check(id: CheckId, input: &CheckInput) -> Result<CheckReport, CheckError> {
    run_check_with(&Classifier::default(), id, input)
}

pub fn run_check_with(cl: &Classifier, id: CheckId, input: &CheckInput) -> Result<CheckReport, CheckError> {
    let ctx = Ctx { cl: *cl };
    let start = Instant::now();
    let out = dispatch(&ctx, id, input)?;
    Ok(CheckReport {
        id,
        statement: id.statement(),
        inputs: input.describe(),
        status: out.status,
        precondition: out.precondition,
        witness: out.witness,
        detail: out.detail,
        elapsed: start.elapsed(),
        scanned: out.scanned,
    })
}

fn dispatch(ctx: &Ctx, id: CheckId, input: &CheckInput) -> Result<Outcome, CheckError> {
    use CheckInput as I;
    let bad = || input.mismatch(id);
    Ok(match (id.0, input) {
        (1, I::Surjection(m)) => r_checks::c01(ctx, m),
        (1, I::Quotient { ring, ideal }) => match crate::ring::quotient_ring(ring, ideal) {
            Ok((_, m)) => r_checks::c01(ctx, &m),
            Err(_) => Outcome::na("ideal is proper", ideal.describe()),
        },
        (2, I::Factors(fs)) => r_checks::c02(ctx, fs),
        (3, I::Ring(r)) => r_checks::c03(ctx, r),
        (4, I::Ring(r)) => r_checks::c04(ctx, r),
        (5, I::Ring(r)) => r_checks::c05(ctx, r),
        (6, I::Ring(r)) => r_checks::c06(ctx, r),
        (7, I::Ring(r)) => r_checks::c07(ctx, r),
        (8, I::Ring(r)) => r_checks::c08(ctx, r),
        (9, I::Series { twist, length }) => r_checks::c09(ctx, twist, *length),
        (10, I::Quotient { ring, ideal }) => r_checks::c10(ctx, ring, ideal),
        (11, I::Ring(r)) => r_checks::c11(ctx, r),
        (12, I::Ring(r)) => r_checks::c12(ctx, r),
        (13, I::Graded(g)) => r_checks::c13(ctx, g),
        (14, I::GEpimorphism { map, g }) => g_checks::c14(ctx, map, g),
        (15, I::FactorsG { factors, g }) => g_checks::c15(ctx, factors, g),
        (16, I::Ring(r)) => g_checks::c16(ctx, r),
        (17, I::RingDegree { ring, n }) => g_checks::c17(ctx, ring, *n),
        (18, I::RingDegree { ring, n }) => g_checks::c18(ctx, ring, *n),
        (19, I::RingDegree { ring, n }) => g_checks::c19(ctx, ring, *n),
        (20, I::StarRing(i)) => star_checks::c20(ctx, i),
        (21, I::StarRing(i)) => star_checks::c21(ctx, i),
        (22, I::StarRing(i)) => star_checks::c22(ctx, i),
        (23, I::StarRing(i)) => star_checks::c23(ctx, i),
        (24, I::StarQuotient { inv, ideal }) => star_checks::c24(ctx, inv, ideal),
        (25, I::StarSeries { inv, length }) => star_checks::c25(ctx, inv, *length),
        (26, I::StarSurjection { map, source, target }) => star_checks::c26(ctx, map, source, target),
        (26, I::StarQuotient { inv, ideal }) => star_checks::c26_quotient(ctx, inv, ideal),
        (27, I::StarFactors(is)) => star_checks::c27(ctx, is),
        (28, I::StarRing(i)) => star_checks::c28(ctx, i),
        (29, I::StarRing(i)) => star_checks::c29(ctx, i),
        (30, I::StarRing(i)) => star_checks::c30(ctx, i),
        (31, I::StarRing(i)) => star_checks::c31(ctx, i),
        (32, I::StarRing(i)) => star_checks::c32(ctx, i),
        (33, I::StarRing(i)) => star_checks::c33(ctx, i),
        _ => return Err(bad()),
    })
}

/// Per-status totals of a suite run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteSummary {
    pub verified: usize,
    pub counterexamples: usize,
    pub not_applicable: usize,
}

impl SuiteSummary {
    pub fn of(reports: &[CheckReport]) -> SuiteSummary {
        let mut s = SuiteSummary::default();
        for r in reports {
            match r.status {
                Status::Verified => s.verified += 1,
                Status::Counterexample => s.counterexamples += 1,
                Status::NotApplicable => s.not_applicable += 1,
            }
        }
        s
    }
}

/// Run every `(check, input)` pairing in parallel; reports come back in
/// catalog order, then input order.
pub fn run_pairs(cl: &Classifier, pairs: &[(CheckId, CheckInput)]) -> Vec<CheckReport> {
    pairs
        .par_iter()
        .map(|(id, input)| run_check_with(cl, *id, input).expect("suite inputs match their checks"))
        .collect()
}

/// Reports of a whole suite run plus totals.
#[derive(Clone, Debug)]
pub struct SuiteRun {
    pub reports: Vec<CheckReport>,
    pub summary: SuiteSummary,
}

/// Every applicable pairing over a corpus, in deterministic catalog order.
pub fn run_suite(cl: &Classifier, corpus: &[CorpusEntry]) -> SuiteRun {
    let reports = run_pairs(cl, &corpus_inputs(corpus));
    let summary = SuiteSummary::of(&reports);
    SuiteRun { reports, summary }
}
