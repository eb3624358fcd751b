//! Ring-spec expressions such as `star(product(Zn(2),Zn(2)),swap)`.
//!
//! ```text
//! spec  := ctor '(' args ')'
//! ctor  := Zn | polyq | product | M | tri | trunc | corner | quot | center | star
//! args  := arg (',' arg)*
//! arg   := spec | integer | "string" | name
//! ```
//!
//! Printing a parsed [`Plan`] gives the canonical text, which is exactly the
//! provenance of the ring it builds.

use std::fmt;

use thiserror::Error;

use crate::ring::{
    center, corner_ring, direct_product, endomorphisms, frobenius, ideal_closure, make_poly_quotient, make_zn,
    matrix_ring, poly::{format_descending, parse_integer_poly, reduce_mod}, quotient_ring, triangular_ring,
    truncated_skew_series, FiniteRing, RingError, RingMap, MAX_RING_SIZE,
};
use crate::star::{
    enumerate_involutions, standard_involutions, swap_involution, transpose_involution, validate_involution,
    Involution,
};

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DslErrorKind {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown constructor {0:?}")]
    UnknownConstructor(String),
    #[error("{ctor} takes {expected}, got {got}")]
    ArityError { ctor: String, expected: &'static str, got: String },
    #[error("ring would have {size} elements, above the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("unknown involution or twist {0:?}")]
    UnknownName(String),
    #[error("{0}")]
    Build(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{pos}: {kind}")]
pub struct DslError {
    pub kind: DslErrorKind,
    pub pos: Pos,
}

fn err<T>(pos: Pos, kind: DslErrorKind) -> Result<T, DslError> {
    Err(DslError { kind, pos })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(usize),
    Str(String),
    Open,
    Close,
    Comma,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, DslError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        match c {
            c if c.is_whitespace() => {
                bump(&mut chars);
            }
            '(' | ')' | ',' => {
                bump(&mut chars);
                out.push((
                    match c {
                        '(' => Tok::Open,
                        ')' => Tok::Close,
                        _ => Tok::Comma,
                    },
                    pos,
                ));
            }
            '"' => {
                bump(&mut chars);
                let mut s = String::new();
                loop {
                    match chars.peek() {
                        None => return err(pos, DslErrorKind::Parse("unterminated string".into())),
                        Some('"') => {
                            bump(&mut chars);
                            break;
                        }
                        Some(_) => s.push(bump(&mut chars)),
                    }
                }
                out.push((Tok::Str(s), pos));
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    s.push(bump(&mut chars));
                }
                let n = s
                    .parse()
                    .map_err(|_| DslError { kind: DslErrorKind::Parse(format!("integer {s} too large")), pos })?;
                out.push((Tok::Int(n), pos));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while chars.peek().is_some_and(|c| c.is_alphanumeric() || *c == '_' || *c == ':') {
                    s.push(bump(&mut chars));
                }
                out.push((Tok::Ident(s), pos));
            }
            other => return err(pos, DslErrorKind::Parse(format!("unexpected character {other:?}"))),
        }
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

/// A ring expression, one node per constructor call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSpec {
    Zn(usize),
    /// Canonical descending polynomial text.
    PolyQ(usize, String),
    Product(Vec<Node>),
    Matrix(Box<Node>, usize),
    Tri(Box<Node>),
    Trunc(Box<Node>, String, usize),
    Corner(Box<Node>, String),
    Quot(Box<Node>, Vec<String>),
    Center(Box<Node>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub spec: RingSpec,
    pub pos: Pos,
}

/// A parsed, not yet built, ring expression with an optional involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plan {
    pub ring: Node,
    pub star: Option<(String, Pos)>,
}

/// Built result of a plan.
#[derive(Clone, Debug)]
pub struct Built {
    pub ring: FiniteRing,
    pub involution: Option<Involution>,
}

fn quote(s: &str) -> String {
    format!("\"{s}\"")
}

fn name_text(s: &str) -> String {
    if s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == ':') {
        s.to_string()
    } else {
        quote(s)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.spec {
            RingSpec::Zn(n) => write!(f, "Zn({n})"),
            RingSpec::PolyQ(n, p) => write!(f, "polyq({n},{})", quote(p)),
            RingSpec::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|n| n.to_string()).collect();
                write!(f, "product({})", parts.join(","))
            }
            RingSpec::Matrix(b, k) => write!(f, "M({b},{k})"),
            RingSpec::Tri(b) => write!(f, "tri({b})"),
            RingSpec::Trunc(b, t, n) => write!(f, "trunc({b},{t},{n})"),
            RingSpec::Corner(b, e) => write!(f, "corner({b},{})", quote(e)),
            RingSpec::Quot(b, gens) => {
                let parts: Vec<String> = gens.iter().map(|g| quote(g)).collect();
                write!(f, "quot({b},{})", parts.join(","))
            }
            RingSpec::Center(b) => write!(f, "center({b})"),
        }
    }
}

impl fmt::Display for Plan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.star {
            Some((inv, _)) => write!(f, "star({},{})", self.ring, name_text(inv)),
            None => write!(f, "{}", self.ring),
        }
    }
}

#[derive(Clone, Debug)]
enum Arg {
    Node(Node),
    Int(usize),
    Str(String, Pos),
    Name(String, Pos),
}

impl Arg {
    fn kind(&self) -> &'static str {
        match self {
            Arg::Node(_) => "ring",
            Arg::Int(..) => "integer",
            Arg::Str(..) => "string",
            Arg::Name(..) => "name",
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

const CTORS: &[&str] = &["Zn", "polyq", "product", "M", "tri", "trunc", "corner", "quot", "center", "star"];

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.at]
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), DslError> {
        let (t, pos) = self.next();
        if t == want {
            Ok(())
        } else {
            err(pos, DslErrorKind::Parse(format!("expected {what}, found {}", show(&t))))
        }
    }

    /// `ctor(args)` with the constructor name already consumed.
    fn call(&mut self, name: String, pos: Pos) -> Result<(String, Vec<Arg>, Pos), DslError> {
        if !CTORS.contains(&name.as_str()) {
            return err(pos, DslErrorKind::UnknownConstructor(name));
        }
        self.expect(Tok::Open, "'('")?;
        let mut args = Vec::new();
        if self.peek().0 != Tok::Close {
            loop {
                args.push(self.arg()?);
                match self.next() {
                    (Tok::Comma, _) => continue,
                    (Tok::Close, _) => break,
                    (t, p) => return err(p, DslErrorKind::Parse(format!("expected ',' or ')', found {}", show(&t)))),
                }
            }
        } else {
            self.next();
        }
        Ok((name, args, pos))
    }

    fn arg(&mut self) -> Result<Arg, DslError> {
        let (t, pos) = self.next();
        match t {
            Tok::Int(n) => Ok(Arg::Int(n)),
            Tok::Str(s) => Ok(Arg::Str(s, pos)),
            Tok::Ident(name) if self.peek().0 == Tok::Open => {
                let (ctor, args, pos) = self.call(name, pos)?;
                if ctor == "star" {
                    return err(pos, DslErrorKind::Parse("star(...) is only allowed at the top level".into()));
                }
                Ok(Arg::Node(node(ctor, args, pos)?))
            }
            Tok::Ident(name) => Ok(Arg::Name(name, pos)),
            other => err(pos, DslErrorKind::Parse(format!("expected an argument, found {}", show(&other)))),
        }
    }
}

fn show(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("{s:?}"),
        Tok::Int(n) => n.to_string(),
        Tok::Str(s) => format!("\"{s}\""),
        Tok::Open => "'('".into(),
        Tok::Close => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::End => "end of input".into(),
    }
}

fn arity(ctor: &str, expected: &'static str, args: &[Arg], pos: Pos) -> DslError {
    let got = args.iter().map(Arg::kind).collect::<Vec<_>>().join(", ");
    DslError {
        kind: DslErrorKind::ArityError { ctor: ctor.into(), expected, got: if got.is_empty() { "nothing".into() } else { got } },
        pos,
    }
}

fn node(ctor: String, args: Vec<Arg>, pos: Pos) -> Result<Node, DslError> {
    use Arg::{Int, Name, Str};
    let bad = |expected| Err(arity(&ctor, expected, &args, pos));
    let spec = match (ctor.as_str(), args.as_slice()) {
        ("Zn", [Int(n)]) => RingSpec::Zn(*n),
        ("Zn", _) => return bad("(n)"),
        ("polyq", [Int(n), Str(p, ppos)]) => {
            let coeffs = parse_integer_poly(p).map_err(|e| DslError { kind: DslErrorKind::Parse(e.to_string()), pos: *ppos })?;
            if *n < 2 {
                return err(pos, DslErrorKind::Build(RingError::ModulusTooSmall(*n).to_string()));
            }
            RingSpec::PolyQ(*n, format_descending(&reduce_mod(&coeffs, *n)))
        }
        ("polyq", _) => return bad("(n, \"poly\")"),
        ("product", fs) if fs.len() >= 2 && fs.iter().all(|a| matches!(a, Arg::Node(_))) => RingSpec::Product(
            fs.iter()
                .map(|a| match a {
                    Arg::Node(n) => n.clone(),
                    _ => unreachable!(),
                })
                .collect(),
        ),
        ("product", _) => return bad("(ring, ring, ...)"),
        ("M", [Arg::Node(b), Int(k)]) => RingSpec::Matrix(Box::new(b.clone()), *k),
        ("M", _) => return bad("(ring, k)"),
        ("tri", [Arg::Node(b)]) => RingSpec::Tri(Box::new(b.clone())),
        ("tri", _) => return bad("(ring)"),
        ("trunc", [Arg::Node(b), Name(t, _) | Str(t, _), Int(n)]) => RingSpec::Trunc(Box::new(b.clone()), t.clone(), *n),
        ("trunc", _) => return bad("(ring, twist, N)"),
        ("corner", [Arg::Node(b), Str(e, _) | Name(e, _)]) => RingSpec::Corner(Box::new(b.clone()), e.clone()),
        ("corner", [Arg::Node(b), Int(e)]) => RingSpec::Corner(Box::new(b.clone()), e.to_string()),
        ("corner", _) => return bad("(ring, \"element\")"),
        ("quot", [Arg::Node(b), gens @ ..]) if !gens.is_empty() => {
            let mut names = Vec::new();
            for g in gens {
                match g {
                    Str(s, _) | Name(s, _) => names.push(s.clone()),
                    Int(k) => names.push(k.to_string()),
                    Arg::Node(_) => return bad("(ring, \"generator\", ...)"),
                }
            }
            RingSpec::Quot(Box::new(b.clone()), names)
        }
        ("quot", _) => return bad("(ring, \"generator\", ...)"),
        ("center", [Arg::Node(b)]) => RingSpec::Center(Box::new(b.clone())),
        ("center", _) => return bad("(ring)"),
        (other, _) => return err(pos, DslErrorKind::UnknownConstructor(other.into())),
    };
    Ok(Node { spec, pos })
}

/// Parse a ring spec, optionally wrapped in `star(spec, involution)`.
pub fn parse_ring_spec(text: &str) -> Result<Plan, DslError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let (t, pos) = p.next();
    let Tok::Ident(name) = t else {
        return err(pos, DslErrorKind::Parse(format!("expected a constructor, found {}", show(&t))));
    };
    let (ctor, args, pos) = p.call(name, pos)?;
    let plan = if ctor == "star" {
        match args.as_slice() {
            [Arg::Node(n), Arg::Name(i, ip) | Arg::Str(i, ip)] => Plan { ring: n.clone(), star: Some((i.clone(), *ip)) },
            _ => return Err(arity("star", "(ring, involution)", &args, pos)),
        }
    } else {
        Plan { ring: node(ctor, args, pos)?, star: None }
    };
    let (t, pos) = p.next();
    if t != Tok::End {
        return err(pos, DslErrorKind::Parse(format!("trailing input at {}", show(&t))));
    }
    let size = estimate(&plan.ring);
    if size > MAX_RING_SIZE {
        return err(plan.ring.pos, DslErrorKind::CapExceeded { size, cap: MAX_RING_SIZE });
    }
    Ok(plan)
}

/// Upper bound on the size of the ring a node builds (saturating).
fn estimate(n: &Node) -> usize {
    let pow = |b: usize, e: usize| (0..e).fold(1usize, |acc, _| acc.saturating_mul(b));
    match &n.spec {
        RingSpec::Zn(k) => *k,
        RingSpec::PolyQ(k, p) => {
            let deg = parse_integer_poly(p).map(|c| c.len().saturating_sub(1)).unwrap_or(0);
            pow(*k, deg)
        }
        RingSpec::Product(fs) => fs.iter().fold(1usize, |acc, f| acc.saturating_mul(estimate(f))),
        RingSpec::Matrix(b, k) => pow(estimate(b), k.saturating_mul(*k)),
        RingSpec::Tri(b) => pow(estimate(b), 3),
        RingSpec::Trunc(b, _, len) => pow(estimate(b), *len),
        RingSpec::Corner(b, _) | RingSpec::Quot(b, _) | RingSpec::Center(b) => estimate(b),
    }
}

fn build_err(pos: Pos, e: impl fmt::Display) -> DslError {
    DslError { kind: DslErrorKind::Build(e.to_string()), pos }
}

fn ring_err(pos: Pos, e: RingError) -> DslError {
    match e {
        RingError::CapExceeded { size, cap } => DslError { kind: DslErrorKind::CapExceeded { size, cap }, pos },
        other => build_err(pos, other),
    }
}

fn element(ring: &FiniteRing, name: &str, pos: Pos) -> Result<usize, DslError> {
    ring.element_by_name(name)
        .ok_or_else(|| DslError { kind: DslErrorKind::UnknownElement(name.into()), pos })
}

fn twist(base: &FiniteRing, name: &str, pos: Pos) -> Result<RingMap, DslError> {
    let unknown = || DslError { kind: DslErrorKind::UnknownName(name.into()), pos };
    match name {
        "id" => Ok(RingMap::identity(base)),
        "frobenius" => frobenius(base).map_err(|e| build_err(pos, e)),
        other => {
            let k: usize = other.strip_prefix("enumerated:").and_then(|k| k.parse().ok()).ok_or_else(unknown)?;
            let all = endomorphisms(base).map_err(|e| build_err(pos, e))?;
            all.into_iter().nth(k).ok_or_else(unknown)
        }
    }
}

fn build_node(n: &Node) -> Result<FiniteRing, DslError> {
    let pos = n.pos;
    match &n.spec {
        RingSpec::Zn(k) => make_zn(*k).map_err(|e| ring_err(pos, e)),
        RingSpec::PolyQ(k, p) => make_poly_quotient(*k, p).map_err(|e| ring_err(pos, e)),
        RingSpec::Product(fs) => {
            let rings = fs.iter().map(build_node).collect::<Result<Vec<_>, _>>()?;
            direct_product(&rings).map_err(|e| ring_err(pos, e))
        }
        RingSpec::Matrix(b, k) => matrix_ring(&build_node(b)?, *k).map_err(|e| ring_err(pos, e)),
        RingSpec::Tri(b) => triangular_ring(&build_node(b)?).map_err(|e| ring_err(pos, e)),
        RingSpec::Trunc(b, t, len) => {
            let base = build_node(b)?;
            let map = twist(&base, t, pos)?;
            truncated_skew_series(&base, &map, *len).map_err(|e| ring_err(pos, e))
        }
        RingSpec::Corner(b, e) => {
            let base = build_node(b)?;
            let x = element(&base, e, pos)?;
            corner_ring(&base, x).map(|(r, _)| r).map_err(|e| ring_err(pos, e))
        }
        RingSpec::Quot(b, gens) => {
            let base = build_node(b)?;
            let ids = gens.iter().map(|g| element(&base, g, pos)).collect::<Result<Vec<_>, _>>()?;
            let ideal = ideal_closure(&base, &ids);
            quotient_ring(&base, &ideal).map(|(r, _)| r).map_err(|e| ring_err(pos, e))
        }
        RingSpec::Center(b) => Ok(center(&build_node(b)?).0),
    }
}

/// Look up an involution by name on a ring.
pub fn involution_by_name(ring: &FiniteRing, name: &str) -> Result<Involution, DslErrorKind> {
    let unknown = || DslErrorKind::UnknownName(name.into());
    let built = match name {
        "id" => Involution::identity(ring).map_err(|e| DslErrorKind::Build(e.to_string())),
        "swap" => swap_involution(ring).map_err(|e| DslErrorKind::Build(e.to_string())),
        "transpose" => transpose_involution(ring).map_err(|e| DslErrorKind::Build(e.to_string())),
        "frobenius" => frobenius(ring)
            .map_err(|e| DslErrorKind::Build(e.to_string()))
            .and_then(|f| {
                validate_involution(ring, f.image().to_vec(), "frobenius").map_err(|e| DslErrorKind::Build(e.to_string()))
            }),
        other => {
            if let Some(k) = other.strip_prefix("enumerated:") {
                let k: usize = k.parse().map_err(|_| unknown())?;
                let all = enumerate_involutions(ring).map_err(|e| DslErrorKind::Build(e.to_string()))?;
                all.into_iter().nth(k).ok_or_else(unknown)
            } else {
                standard_involutions(ring).into_iter().find(|i| i.label() == other).ok_or_else(unknown)
            }
        }
    }?;
    Ok(built)
}

impl Plan {
    pub fn build(&self) -> Result<Built, DslError> {
        let ring = build_node(&self.ring)?;
        let involution = match &self.star {
            Some((name, pos)) => Some(involution_by_name(&ring, name).map_err(|kind| DslError { kind, pos: *pos })?),
            None => None,
        };
        Ok(Built { ring, involution })
    }
}

/// Parse and build in one step.
pub fn build_spec(text: &str) -> Result<Built, DslError> {
    parse_ring_spec(text)?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text_is_provenance() {
        for text in [
            "Zn(6)",
            "polyq(2,\"x^2+x+1\")",
            "product(Zn(2),Zn(3))",
            "M(Zn(2),2)",
            "tri(Zn(3))",
            "trunc(polyq(2,\"x^2+x+1\"),frobenius,2)",
            "trunc(Zn(3),id,3)",
            "corner(M(Zn(2),2),\"[[1,0],[0,0]]\")",
            "quot(Zn(12),\"4\")",
            "center(M(Zn(2),2))",
        ] {
            let plan = parse_ring_spec(text).unwrap();
            assert_eq!(plan.to_string(), text);
            assert_eq!(plan.build().unwrap().ring.provenance(), text);
        }
    }

    #[test]
    fn normalizes_spacing_and_polynomials() {
        let plan = parse_ring_spec("polyq( 2 , \"1 + x + x^2\" )").unwrap();
        assert_eq!(plan.to_string(), "polyq(2,\"x^2+x+1\")");
    }

    #[test]
    fn star_specs() {
        let b = build_spec("star(product(Zn(2),Zn(2)), swap)").unwrap();
        assert_eq!(b.involution.unwrap().label(), "swap");
        let b = build_spec("star(M(Zn(3),2),transpose)").unwrap();
        assert_eq!(b.ring.size(), 81);
        assert!(build_spec("star(Zn(4),enumerated:0)").unwrap().involution.unwrap().is_identity());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_ring_spec("Zn(2").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, column: 5 });
        let e = parse_ring_spec("product(Zn(2),\n  Foo(3))").unwrap_err();
        assert_eq!(e.kind, DslErrorKind::UnknownConstructor("Foo".into()));
        assert_eq!(e.pos, Pos { line: 2, column: 3 });
        assert!(matches!(parse_ring_spec("Zn(2,3)").unwrap_err().kind, DslErrorKind::ArityError { .. }));
        assert!(matches!(parse_ring_spec("product(Zn(2))").unwrap_err().kind, DslErrorKind::ArityError { .. }));
        assert!(matches!(parse_ring_spec("M(Zn(3),3)").unwrap_err().kind, DslErrorKind::CapExceeded { .. }));
        assert!(matches!(build_spec("star(Zn(3),swap)").unwrap_err().kind, DslErrorKind::Build(_)));
        assert!(matches!(build_spec("corner(Zn(6),\"7\")").unwrap_err().kind, DslErrorKind::UnknownElement(_)));
        assert!(matches!(build_spec("star(Zn(3),bogus)").unwrap_err().kind, DslErrorKind::UnknownName(_)));
    }
}
