//! The generated ring corpus and flag queries over it.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::classify::{
    Census, CentralPolynomial, Classifier, ElementProfile, Family, ELEMENT_FLAGS, RING_FLAGS,
};
use crate::ring::{
    direct_product, frobenius, make_poly_quotient, make_zn, matrix_ring, poly::format_descending,
    triangular_ring, truncated_skew_series, FiniteRing, RingMap,
};
use crate::star::{enumerate_involutions_capped, standard_involutions, Involution};

/// Limits for corpus generation. Caps only ever shrink the corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_size: usize,
    /// Rings up to this size get every involution, not just the standard ones.
    pub enumerate_involutions: usize,
    /// Stop adding entries once generation has run this long.
    pub time_budget: Option<Duration>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_size: 256, enumerate_involutions: 16, time_budget: None }
    }
}

/// Polynomials attached to every corpus ring.
pub const CORPUS_POLYNOMIALS: &[&[i64]] = &[&[0, -1, 1], &[0, 1, 1], &[0, -1, 0, 1]];

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub ring: FiniteRing,
    pub involutions: Vec<Involution>,
    pub polynomials: Vec<CentralPolynomial>,
    pub tags: Vec<&'static str>,
}

impl CorpusEntry {
    /// Attach standard involutions, all involutions when small enough, and
    /// the corpus polynomials.
    pub fn new(ring: FiniteRing, tags: Vec<&'static str>, caps: &Caps) -> CorpusEntry {
        let mut involutions = standard_involutions(&ring);
        if ring.size() <= caps.enumerate_involutions {
            if let Ok(all) = enumerate_involutions_capped(&ring, caps.enumerate_involutions) {
                for inv in all {
                    if !involutions.iter().any(|i| i.table() == inv.table()) {
                        involutions.push(inv);
                    }
                }
            }
        }
        let polynomials = CORPUS_POLYNOMIALS
            .iter()
            .filter_map(|c| CentralPolynomial::from_integers(&ring, c).ok())
            .collect();
        CorpusEntry { ring, involutions, polynomials, tags }
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.contains(&tag)
    }
}

fn f4() -> FiniteRing {
    make_poly_quotient(2, "x^2+x+1").expect("F4")
}

/// Rings of the corpus in generation order, before attachments.
fn corpus_rings(caps: &Caps) -> Vec<(FiniteRing, Vec<&'static str>)> {
    let mut out: Vec<(FiniteRing, Vec<&'static str>)> = Vec::new();
    let z = |n| make_zn(n).expect("Z_n");
    for n in 2..=36 {
        out.push((z(n), vec!["zn"]));
    }
    for n in 2..=4usize {
        for d in 1..=2u32 {
            let count = n.pow(d);
            for low in 0..count {
                let mut coeffs: Vec<usize> = (0..d).map(|i| low / n.pow(i) % n).collect();
                coeffs.push(1);
                let text = format_descending(&coeffs);
                if let Ok(r) = make_poly_quotient(n, &text) {
                    out.push((r, vec!["polyq"]));
                }
            }
        }
    }
    let z2 = z(2);
    let atoms = vec![
        z2.clone(),
        z(3),
        z(4),
        z(5),
        z(9),
        f4(),
        make_poly_quotient(2, "x^2").expect("dual numbers"),
        matrix_ring(&z2, 2).expect("M2(Z2)"),
        triangular_ring(&z2).expect("T(Z2)"),
    ];
    for i in 0..atoms.len() {
        for j in i..atoms.len() {
            if atoms[i].size() * atoms[j].size() <= caps.max_size {
                let p = direct_product(&[atoms[i].clone(), atoms[j].clone()]).expect("small product");
                let mut tags = vec!["product"];
                if i == 0 && j == 0 {
                    tags.push("boolean");
                }
                out.push((p, tags));
            }
        }
    }
    for k in 3..=4 {
        if let Ok(p) = direct_product(&vec![z2.clone(); k]) {
            out.push((p, vec!["product", "boolean"]));
        }
    }
    let z3 = z(3);
    for base in [&z2, &z3] {
        if let Ok(m) = matrix_ring(base, 2) {
            out.push((m, vec!["matrix"]));
        }
    }
    for base in [&z2, &z3] {
        out.push((triangular_ring(base).expect("triangular"), vec!["triangular"]));
    }
    let f4 = f4();
    let mut twists = vec![RingMap::identity(&z2), RingMap::identity(&z3), RingMap::identity(&f4)];
    twists.push(frobenius(&f4).expect("F4 has a Frobenius"));
    for twist in &twists {
        for length in 2..=3 {
            if let Ok(s) = truncated_skew_series(twist.source(), twist, length) {
                out.push((s, vec!["series"]));
            }
        }
    }
    out.retain(|(r, _)| r.size() <= caps.max_size);
    out
}

/// Deterministic corpus: same caps, same entries in the same order (unless a
/// time budget cuts generation short).
pub fn corpus_generate(caps: &Caps) -> Vec<CorpusEntry> {
    let start = Instant::now();
    let rings = corpus_rings(caps);
    match caps.time_budget {
        None => rings.into_par_iter().map(|(r, t)| CorpusEntry::new(r, t, caps)).collect(),
        Some(budget) => {
            let mut out = Vec::new();
            for (r, t) in rings {
                if start.elapsed() > budget {
                    break;
                }
                out.push(CorpusEntry::new(r, t, caps));
            }
            out
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("unknown flag {0:?}")]
    UnknownFlag(String),
    #[error("empty query")]
    Empty,
    #[error("bad scope term {0:?} (expected size<=N or tag=NAME)")]
    BadScope(String),
    #[error("witness failed re-verification: {0}")]
    Unverified(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Ring,
    Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub flag: String,
    pub negated: bool,
    pub family: Family,
}

/// Corpus filter.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Scope {
    pub max_size: Option<usize>,
    pub tags: Vec<String>,
}

impl Scope {
    pub fn admits(&self, e: &CorpusEntry) -> bool {
        self.max_size.is_none_or(|m| e.ring.size() <= m) && self.tags.iter().all(|t| e.has_tag(t))
    }
}

/// A conjunction of possibly negated flags, evaluated per ring or per
/// element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessQuery {
    pub level: Level,
    pub terms: Vec<Term>,
    pub scope: Scope,
}

impl WitnessQuery {
    /// `[element:] [!]flag & [!]flag & ... [& size<=N] [& tag=NAME]`.
    /// `∧`, `and`, `¬` and `not` are accepted as spellings.
    pub fn parse(text: &str) -> Result<WitnessQuery, SearchError> {
        let mut body = text.trim();
        let mut level = Level::Ring;
        if let Some(rest) = body.strip_prefix("element:") {
            level = Level::Element;
            body = rest;
        }
        let normalized = body.replace('∧', "&").replace(" and ", " & ");
        let mut terms = Vec::new();
        let mut scope = Scope::default();
        for raw in normalized.split('&').map(str::trim) {
            if raw.is_empty() {
                return Err(SearchError::Empty);
            }
            if let Some(n) = raw.strip_prefix("size<=") {
                scope.max_size = Some(n.trim().parse().map_err(|_| SearchError::BadScope(raw.into()))?);
                continue;
            }
            if let Some(t) = raw.strip_prefix("tag=") {
                scope.tags.push(t.trim().to_string());
                continue;
            }
            let (negated, name) = match raw.strip_prefix(['!', '¬']) {
                Some(rest) => (true, rest.trim()),
                None => match raw.strip_prefix("not ") {
                    Some(rest) => (true, rest.trim()),
                    None => (false, raw),
                },
            };
            let family = match level {
                Level::Ring => RING_FLAGS.iter().find(|f| f.0 == name).map(|f| f.1),
                Level::Element => ELEMENT_FLAGS.iter().find(|f| f.0 == name).map(|f| f.1),
            }
            .ok_or_else(|| SearchError::UnknownFlag(name.to_string()))?;
            terms.push(Term { flag: name.to_string(), negated, family });
        }
        if terms.is_empty() {
            return Err(SearchError::Empty);
        }
        Ok(WitnessQuery { level, terms, scope })
    }

    fn needs(&self, family: Family) -> bool {
        self.terms.iter().any(|t| t.family == family)
    }

    fn holds_ring(&self, c: &Census) -> bool {
        self.terms.iter().all(|t| c.flag(&t.flag) == Some(!t.negated))
    }

    fn holds_element(&self, p: &ElementProfile) -> bool {
        self.terms.iter().all(|t| p.flag(&t.flag) == Some(!t.negated))
    }
}

impl fmt::Display for WitnessQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.level == Level::Element {
            f.write_str("element: ")?;
        }
        let mut parts: Vec<String> =
            self.terms.iter().map(|t| format!("{}{}", if t.negated { "!" } else { "" }, t.flag)).collect();
        if let Some(m) = self.scope.max_size {
            parts.push(format!("size<={m}"));
        }
        parts.extend(self.scope.tags.iter().map(|t| format!("tag={t}")));
        f.write_str(&parts.join(" & "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub ring: String,
    pub involution: Option<String>,
    pub polynomial: Option<String>,
    pub element: Option<String>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.involution {
            Some(i) => write!(f, "star({},{i})", self.ring)?,
            None => f.write_str(&self.ring)?,
        }
        if let Some(g) = &self.polynomial {
            write!(f, " with g = {g}")?;
        }
        if let Some(x) = &self.element {
            write!(f, " at {x}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub witnesses: Vec<Witness>,
    pub entries_scanned: usize,
    pub contexts_scanned: usize,
    pub elements_scanned: usize,
    /// Set when the result is empty and a negated flag can never fail on a
    /// finite ring.
    pub note: Option<&'static str>,
}

/// Ring-level flags that hold on every finite ring.
const ALWAYS_TRUE_ON_FINITE: &[&str] = &[
    "is_clean",
    "is_weakly_clean",
    "is_r_clean",
    "is_weakly_r_clean",
    "is_exchange",
    "is_weakly_exchange",
    "is_exchange_left",
    "is_weakly_exchange_left",
];

pub const FINITE_CLEAN_NOTE: &str =
    "every finite ring is clean, so clean, r-clean and exchange ring flags (plain or weakly) never fail here";

struct Context<'e> {
    entry: &'e CorpusEntry,
    inv: Option<&'e Involution>,
    g: Option<&'e CentralPolynomial>,
}

impl Context<'_> {
    fn witness(&self, element: Option<String>) -> Witness {
        Witness {
            ring: self.entry.ring.provenance().to_string(),
            involution: self.inv.map(|i| i.label().to_string()),
            polynomial: self.g.map(|g| g.label().to_string()),
            element,
        }
    }
}

fn contexts<'e>(q: &WitnessQuery, e: &'e CorpusEntry) -> Vec<Context<'e>> {
    let invs: Vec<Option<&Involution>> =
        if q.needs(Family::Star) { e.involutions.iter().map(Some).collect() } else { vec![None] };
    let gs: Vec<Option<&CentralPolynomial>> =
        if q.needs(Family::G) { e.polynomials.iter().map(Some).collect() } else { vec![None] };
    invs.iter()
        .flat_map(|&inv| gs.iter().map(move |&g| Context { entry: e, inv, g }))
        .collect()
}

/// All witnesses in corpus order, each re-verified from freshly computed
/// sets.
pub fn find_witness(query: &WitnessQuery, corpus: &[CorpusEntry]) -> Result<SearchOutcome, SearchError> {
    find_witness_with(&Classifier::default(), query, corpus)
}

pub fn find_witness_with(
    cl: &Classifier,
    query: &WitnessQuery,
    corpus: &[CorpusEntry],
) -> Result<SearchOutcome, SearchError> {
    let admitted: Vec<&CorpusEntry> = corpus.iter().filter(|e| query.scope.admits(e)).collect();
    let per_entry: Vec<Result<(Vec<Witness>, usize, usize), SearchError>> = admitted
        .par_iter()
        .map(|e| {
            let mut found = Vec::new();
            let mut ctxs = 0;
            let mut elems = 0;
            for ctx in contexts(query, e) {
                ctxs += 1;
                let c = cl.census(&e.ring, ctx.inv, ctx.g);
                match query.level {
                    Level::Ring => {
                        if query.holds_ring(&c) {
                            reverify_ring(cl, query, &ctx)?;
                            found.push(ctx.witness(None));
                        }
                    }
                    Level::Element => {
                        elems += c.profiles.len();
                        let hits: Vec<usize> =
                            c.profiles.iter().filter(|p| query.holds_element(p)).map(|p| p.element).collect();
                        if !hits.is_empty() {
                            let fresh = cl.census_uncached(&e.ring, ctx.inv, ctx.g);
                            for x in hits {
                                let p = fresh.profile(x);
                                let w = ctx.witness(Some(e.ring.name(x).to_string()));
                                if !query.holds_element(p) {
                                    return Err(SearchError::Unverified(w.to_string()));
                                }
                                p.verify(&e.ring, ctx.inv, ctx.g)
                                    .map_err(|m| SearchError::Unverified(format!("{w}: {m}")))?;
                                found.push(w);
                            }
                        }
                    }
                }
            }
            Ok((found, ctxs, elems))
        })
        .collect();
    let mut out = SearchOutcome {
        witnesses: Vec::new(),
        entries_scanned: admitted.len(),
        contexts_scanned: 0,
        elements_scanned: 0,
        note: None,
    };
    for r in per_entry {
        let (w, c, e) = r?;
        out.witnesses.extend(w);
        out.contexts_scanned += c;
        out.elements_scanned += e;
    }
    if out.witnesses.is_empty()
        && query.level == Level::Ring
        && query.terms.iter().any(|t| t.negated && ALWAYS_TRUE_ON_FINITE.contains(&t.flag.as_str()))
    {
        out.note = Some(FINITE_CLEAN_NOTE);
    }
    Ok(out)
}

fn reverify_ring(cl: &Classifier, q: &WitnessQuery, ctx: &Context<'_>) -> Result<(), SearchError> {
    let r = &ctx.entry.ring;
    let fresh = cl.census_uncached(r, ctx.inv, ctx.g);
    if !q.holds_ring(&fresh) {
        return Err(SearchError::Unverified(ctx.witness(None).to_string()));
    }
    for p in &fresh.profiles {
        p.verify(r, ctx.inv, ctx.g)
            .map_err(|m| SearchError::Unverified(format!("{}: {m}", ctx.witness(None))))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Vec<CorpusEntry> {
        corpus_generate(&Caps { max_size: 16, ..Caps::default() })
    }

    #[test]
    fn parse_and_display() {
        let q = WitnessQuery::parse("element: idempotent ∧ ¬projection & size<=9").unwrap();
        assert_eq!(q.level, Level::Element);
        assert_eq!(q.to_string(), "element: idempotent & !projection & size<=9");
        assert_eq!(WitnessQuery::parse("is_cleann").unwrap_err(), SearchError::UnknownFlag("is_cleann".into()));
        assert_eq!(WitnessQuery::parse("element: is_clean").unwrap_err(), SearchError::UnknownFlag("is_clean".into()));
        assert_eq!(WitnessQuery::parse("").unwrap_err(), SearchError::Empty);
    }

    #[test]
    fn size_cap_filters() {
        let c = corpus_generate(&Caps { max_size: 8, ..Caps::default() });
        assert!(c.iter().all(|e| e.ring.size() <= 8));
        assert!(!c.iter().any(|e| e.ring.provenance() == "M(Zn(3),2)"));
    }

    #[test]
    fn swap_is_the_small_separator() {
        let q = WitnessQuery::parse("is_weakly_clean & !is_weakly_star_clean & size<=4 & tag=product").unwrap();
        let out = find_witness(&q, &small()).unwrap();
        assert_eq!(out.witnesses.len(), 1);
        assert_eq!(out.witnesses[0].ring, "product(Zn(2),Zn(2))");
        assert_eq!(out.witnesses[0].involution.as_deref(), Some("swap"));
        // Z2[x]/(x^2+x) is another copy of Z2 x Z2, with its own swap
        let q = WitnessQuery::parse("is_weakly_clean & !is_weakly_star_clean & size<=4").unwrap();
        let rings: Vec<String> = find_witness(&q, &small()).unwrap().witnesses.into_iter().map(|w| w.ring).collect();
        assert_eq!(rings, ["polyq(2,\"x^2+x\")", "product(Zn(2),Zn(2))"]);
    }

    #[test]
    fn empty_result_carries_note() {
        let q = WitnessQuery::parse("is_weakly_r_clean & !is_r_clean").unwrap();
        let out = find_witness(&q, &small()).unwrap();
        assert!(out.witnesses.is_empty());
        assert_eq!(out.note, Some(FINITE_CLEAN_NOTE));
        assert!(out.entries_scanned > 0);
    }
}
