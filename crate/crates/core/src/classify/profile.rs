use crate::ring::{Elem, FiniteRing};
use crate::star::Involution;

use super::CentralPolynomial;

/// A two-part decomposition. The sign (`x = first + second` or
/// `x = first − second`) is fixed by the flag that holds it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Decomp {
    pub first: Elem,
    pub second: Elem,
}

/// Which cofactor set contains `1 − e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    OneMinusX,
    OnePlusX,
}

/// Right multiples `aR` or left multiples `Ra`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeWitness {
    pub e: Elem,
    pub branch: Branch,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarProfile {
    pub projection: bool,
    pub self_adjoint: bool,
    /// `x = u + p`
    pub star_clean: Option<Decomp>,
    /// `x = u − p`
    pub weakly_star_clean_t2: Option<Decomp>,
    /// `x = r + p`, `r` regular
    pub star_r_clean: Option<Decomp>,
    pub strongly_star_clean: Option<Decomp>,
    /// `x = u + s`, `s² = 1 = …`, `s⋆ = s`
    pub sasr1: Option<Decomp>,
    /// `x = u + (2p + 1)`; `second` is `p`.
    pub two_p_plus_one: Option<Decomp>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GProfile {
    pub root: bool,
    pub g_clean: Option<Decomp>,
    pub strongly_g_clean: Option<Decomp>,
    pub g_r_clean: Option<Decomp>,
    pub weakly_g_r_clean_t2: Option<Decomp>,
}

/// Everything known about one element, with least witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementProfile {
    pub element: Elem,
    /// Two-sided inverse.
    pub unit: Option<Elem>,
    pub idempotent: bool,
    /// Least `y` with `x = xyx`.
    pub regular: Option<Elem>,
    pub nilpotent: Option<u32>,
    pub central: bool,
    pub jacobson: bool,
    /// `x = u + e`
    pub clean: Option<Decomp>,
    /// `x = u − e`
    pub weakly_clean_t2: Option<Decomp>,
    /// `x = r + e`
    pub r_clean: Option<Decomp>,
    /// `x = r − e`
    pub weakly_r_clean_t2: Option<Decomp>,
    pub strongly_clean: Option<Decomp>,
    pub exchange: Option<ExchangeWitness>,
    pub weakly_exchange: Option<ExchangeWitness>,
    pub exchange_left: Option<ExchangeWitness>,
    pub weakly_exchange_left: Option<ExchangeWitness>,
    pub star: Option<StarProfile>,
    pub g: Option<GProfile>,
}

/// What a flag needs attached to the ring before it has a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Base,
    Star,
    G,
}

/// Registered element-level flag names.
pub const ELEMENT_FLAGS: &[(&str, Family)] = &[
    ("unit", Family::Base),
    ("idempotent", Family::Base),
    ("regular", Family::Base),
    ("nilpotent", Family::Base),
    ("central", Family::Base),
    ("jacobson", Family::Base),
    ("clean", Family::Base),
    ("weakly_clean", Family::Base),
    ("weakly_clean_t1", Family::Base),
    ("weakly_clean_t2", Family::Base),
    ("r_clean", Family::Base),
    ("weakly_r_clean", Family::Base),
    ("weakly_r_clean_t1", Family::Base),
    ("weakly_r_clean_t2", Family::Base),
    ("strongly_clean", Family::Base),
    ("exchange", Family::Base),
    ("weakly_exchange", Family::Base),
    ("exchange_left", Family::Base),
    ("weakly_exchange_left", Family::Base),
    ("projection", Family::Star),
    ("self_adjoint", Family::Star),
    ("star_clean", Family::Star),
    ("weakly_star_clean", Family::Star),
    ("weakly_star_clean_t1", Family::Star),
    ("weakly_star_clean_t2", Family::Star),
    ("star_r_clean", Family::Star),
    ("strongly_star_clean", Family::Star),
    ("sasr1_decomp", Family::Star),
    ("two_p_plus_one_decomp", Family::Star),
    ("g_root", Family::G),
    ("g_clean", Family::G),
    ("strongly_g_clean", Family::G),
    ("g_r_clean", Family::G),
    ("weakly_g_r_clean", Family::G),
    ("weakly_g_r_clean_t1", Family::G),
    ("weakly_g_r_clean_t2", Family::G),
];

pub(crate) fn element_flag_family(name: &str) -> Option<Family> {
    ELEMENT_FLAGS.iter().find(|(n, _)| *n == name).map(|&(_, f)| f)
}

/// A witness as it should be displayed, before names are attached.
enum Shown<'p> {
    Plain,
    Value(String),
    Named(&'static str, Elem),
    Plus(&'p Decomp, &'static str),
    Minus(&'p Decomp, &'static str),
    TwoP(&'p Decomp),
    Exchange(&'p ExchangeWitness),
}

fn plus<'p>(d: &'p Option<Decomp>, what: &'static str) -> (bool, Shown<'p>) {
    match d {
        Some(d) => (true, Shown::Plus(d, what)),
        None => (false, Shown::Plain),
    }
}

fn minus<'p>(d: &'p Option<Decomp>, what: &'static str) -> (bool, Shown<'p>) {
    match d {
        Some(d) => (true, Shown::Minus(d, what)),
        None => (false, Shown::Plain),
    }
}

fn either<'p>(p: &'p Option<Decomp>, m: &'p Option<Decomp>, what: &'static str) -> (bool, Shown<'p>) {
    match (p, m) {
        (Some(d), _) => (true, Shown::Plus(d, what)),
        (None, Some(d)) => (true, Shown::Minus(d, what)),
        _ => (false, Shown::Plain),
    }
}

fn ex(w: &Option<ExchangeWitness>) -> (bool, Shown<'_>) {
    match w {
        Some(w) => (true, Shown::Exchange(w)),
        None => (false, Shown::Plain),
    }
}

impl ElementProfile {
    /// Value of a registered flag; `None` for unknown names or when the
    /// needed involution or polynomial is not attached.
    pub fn flag(&self, name: &str) -> Option<bool> {
        self.lookup(name).map(|(holds, _)| holds)
    }

    /// Human-readable witness for a flag that holds.
    pub fn witness(&self, ring: &FiniteRing, name: &str) -> Option<String> {
        let (holds, shown) = self.lookup(name)?;
        if !holds {
            return None;
        }
        let x = ring.name(self.element);
        let n = |e: Elem| ring.name(e).to_string();
        Some(match shown {
            Shown::Plain => String::new(),
            Shown::Value(v) => v,
            Shown::Named(label, e) => format!("{label} = {}", n(e)),
            Shown::Plus(d, what) => format!("{x} = {} + {} ({what})", n(d.first), n(d.second)),
            Shown::Minus(d, what) => format!("{x} = {} - {} ({what})", n(d.first), n(d.second)),
            Shown::TwoP(d) => format!("{x} = {} + (2*{}+1) (unit, projection)", n(d.first), n(d.second)),
            Shown::Exchange(w) => {
                let (sx, cof) = match (w.side, w.branch) {
                    (Side::Right, Branch::OneMinusX) => ("xR", "(1-x)R"),
                    (Side::Right, Branch::OnePlusX) => ("xR", "(1+x)R"),
                    (Side::Left, Branch::OneMinusX) => ("Rx", "R(1-x)"),
                    (Side::Left, Branch::OnePlusX) => ("Rx", "R(1+x)"),
                };
                format!("e = {} in {sx}, 1-e in {cof}", n(w.e))
            }
        })
    }

    fn lookup(&self, name: &str) -> Option<(bool, Shown<'_>)> {
        let v = match name {
            "unit" => match self.unit {
                Some(u) => (true, Shown::Named("inverse", u)),
                None => (false, Shown::Plain),
            },
            "idempotent" => (self.idempotent, Shown::Plain),
            "regular" => match self.regular {
                Some(y) => (true, Shown::Named("y", y)),
                None => (false, Shown::Plain),
            },
            "nilpotent" => (self.nilpotent.is_some(), Shown::Value(self.nilpotent.map(|k| format!("index {k}")).unwrap_or_default())),
            "central" => (self.central, Shown::Plain),
            "jacobson" => (self.jacobson, Shown::Plain),
            "clean" | "weakly_clean_t1" => plus(&self.clean, "unit, idempotent"),
            "weakly_clean_t2" => minus(&self.weakly_clean_t2, "unit, idempotent"),
            "weakly_clean" => either(&self.clean, &self.weakly_clean_t2, "unit, idempotent"),
            "r_clean" | "weakly_r_clean_t1" => plus(&self.r_clean, "regular, idempotent"),
            "weakly_r_clean_t2" => minus(&self.weakly_r_clean_t2, "regular, idempotent"),
            "weakly_r_clean" => either(&self.r_clean, &self.weakly_r_clean_t2, "regular, idempotent"),
            "strongly_clean" => plus(&self.strongly_clean, "commuting unit, idempotent"),
            "exchange" => ex(&self.exchange),
            "weakly_exchange" => ex(&self.weakly_exchange),
            "exchange_left" => ex(&self.exchange_left),
            "weakly_exchange_left" => ex(&self.weakly_exchange_left),
            _ => {
                return match element_flag_family(name)? {
                    Family::Base => None,
                    Family::Star => {
                        let s = self.star.as_ref()?;
                        Some(match name {
                            "projection" => (s.projection, Shown::Plain),
                            "self_adjoint" => (s.self_adjoint, Shown::Plain),
                            "star_clean" | "weakly_star_clean_t1" => plus(&s.star_clean, "unit, projection"),
                            "weakly_star_clean_t2" => minus(&s.weakly_star_clean_t2, "unit, projection"),
                            "weakly_star_clean" => {
                                either(&s.star_clean, &s.weakly_star_clean_t2, "unit, projection")
                            }
                            "star_r_clean" => plus(&s.star_r_clean, "regular, projection"),
                            "strongly_star_clean" => plus(&s.strongly_star_clean, "commuting unit, projection"),
                            "sasr1_decomp" => plus(&s.sasr1, "unit, self-adjoint square root of 1"),
                            "two_p_plus_one_decomp" => match &s.two_p_plus_one {
                                Some(d) => (true, Shown::TwoP(d)),
                                None => (false, Shown::Plain),
                            },
                            _ => unreachable!("registered star flag {name}"),
                        })
                    }
                    Family::G => {
                        let g = self.g.as_ref()?;
                        Some(match name {
                            "g_root" => (g.root, Shown::Plain),
                            "g_clean" => plus(&g.g_clean, "unit, root of g"),
                            "strongly_g_clean" => plus(&g.strongly_g_clean, "commuting unit, root of g"),
                            "g_r_clean" | "weakly_g_r_clean_t1" => plus(&g.g_r_clean, "regular, root of g"),
                            "weakly_g_r_clean_t2" => minus(&g.weakly_g_r_clean_t2, "regular, root of g"),
                            "weakly_g_r_clean" => either(&g.g_r_clean, &g.weakly_g_r_clean_t2, "regular, root of g"),
                            _ => unreachable!("registered g flag {name}"),
                        })
                    }
                };
            }
        };
        Some(v)
    }

    pub fn is_weakly_clean(&self) -> bool {
        self.clean.is_some() || self.weakly_clean_t2.is_some()
    }

    pub fn is_weakly_r_clean(&self) -> bool {
        self.r_clean.is_some() || self.weakly_r_clean_t2.is_some()
    }

    /// Re-check every stored witness with plain table arithmetic, without
    /// the precomputed sets. Returns the first flag whose witness fails.
    pub fn verify(
        &self,
        ring: &FiniteRing,
        inv: Option<&Involution>,
        g: Option<&CentralPolynomial>,
    ) -> Result<(), String> {
        let x = self.element;
        let one = ring.one();
        let is_unit = |u: Elem| ring.elements().any(|v| ring.mul(u, v) == one && ring.mul(v, u) == one);
        let is_idem = |e: Elem| ring.mul(e, e) == e;
        let is_reg = |r: Elem| ring.elements().any(|y| ring.mul3(r, y, r) == r);
        let commute = |a: Elem, b: Elem| ring.mul(a, b) == ring.mul(b, a);
        let fail = |what: &str| Err(format!("{what} witness for {} does not verify", ring.name(x)));
        let check_plus = |d: &Option<Decomp>, ok: &dyn Fn(Elem, Elem) -> bool, what: &str| match d {
            Some(d) if ring.add(d.first, d.second) != x || !ok(d.first, d.second) => fail(what),
            _ => Ok(()),
        };
        let check_minus = |d: &Option<Decomp>, ok: &dyn Fn(Elem, Elem) -> bool, what: &str| match d {
            Some(d) if ring.sub(d.first, d.second) != x || !ok(d.first, d.second) => fail(what),
            _ => Ok(()),
        };
        if let Some(u) = self.unit {
            if ring.mul(x, u) != one || ring.mul(u, x) != one {
                return fail("unit");
            }
        }
        if self.idempotent != is_idem(x) {
            return fail("idempotent");
        }
        if let Some(y) = self.regular {
            if ring.mul3(x, y, x) != x {
                return fail("regular");
            }
        }
        if let Some(k) = self.nilpotent {
            if ring.pow(x, k) != ring.zero() {
                return fail("nilpotent");
            }
        }
        let ue = |u: Elem, e: Elem| is_unit(u) && is_idem(e);
        let re = |r: Elem, e: Elem| is_reg(r) && is_idem(e);
        check_plus(&self.clean, &ue, "clean")?;
        check_minus(&self.weakly_clean_t2, &ue, "weakly_clean_t2")?;
        check_plus(&self.r_clean, &re, "r_clean")?;
        check_minus(&self.weakly_r_clean_t2, &re, "weakly_r_clean_t2")?;
        check_plus(&self.strongly_clean, &|u, e| ue(u, e) && commute(u, e), "strongly_clean")?;
        for (w, name) in [
            (&self.exchange, "exchange"),
            (&self.weakly_exchange, "weakly_exchange"),
            (&self.exchange_left, "exchange_left"),
            (&self.weakly_exchange_left, "weakly_exchange_left"),
        ] {
            if let Some(w) = w {
                if !verify_exchange(ring, x, w) || (name.starts_with("exchange") && w.branch != Branch::OneMinusX) {
                    return fail(name);
                }
            }
        }
        if let (Some(s), Some(inv)) = (&self.star, inv) {
            let proj = |p: Elem| is_idem(p) && inv.apply(p) == p;
            let up = |u: Elem, p: Elem| is_unit(u) && proj(p);
            if s.projection != proj(x) || s.self_adjoint != (inv.apply(x) == x) {
                return fail("projection");
            }
            check_plus(&s.star_clean, &up, "star_clean")?;
            check_minus(&s.weakly_star_clean_t2, &up, "weakly_star_clean_t2")?;
            check_plus(&s.star_r_clean, &|r, p| is_reg(r) && proj(p), "star_r_clean")?;
            check_plus(&s.strongly_star_clean, &|u, p| up(u, p) && commute(u, p), "strongly_star_clean")?;
            check_plus(
                &s.sasr1,
                &|u, t| is_unit(u) && ring.mul(t, t) == one && inv.apply(t) == t,
                "sasr1_decomp",
            )?;
            if let Some(d) = &s.two_p_plus_one {
                let v = ring.add(ring.add(d.second, d.second), one);
                if ring.add(d.first, v) != x || !up(d.first, d.second) {
                    return fail("two_p_plus_one_decomp");
                }
            }
        }
        if let (Some(gp), Some(g)) = (&self.g, g) {
            let root = |s: Elem| g.eval(s) == ring.zero();
            if gp.root != root(x) {
                return fail("g_root");
            }
            check_plus(&gp.g_clean, &|u, s| is_unit(u) && root(s), "g_clean")?;
            check_plus(&gp.strongly_g_clean, &|u, s| is_unit(u) && root(s) && commute(u, s), "strongly_g_clean")?;
            check_plus(&gp.g_r_clean, &|r, s| is_reg(r) && root(s), "g_r_clean")?;
            check_minus(&gp.weakly_g_r_clean_t2, &|r, s| is_reg(r) && root(s), "weakly_g_r_clean_t2")?;
        }
        Ok(())
    }
}

fn verify_exchange(ring: &FiniteRing, x: Elem, w: &ExchangeWitness) -> bool {
    let one = ring.one();
    let e = w.e;
    let cof = match w.branch {
        Branch::OneMinusX => ring.sub(one, x),
        Branch::OnePlusX => ring.add(one, x),
    };
    let f = ring.sub(one, e);
    let in_multiples = |a: Elem, target: Elem| match w.side {
        Side::Right => ring.elements().any(|r| ring.mul(a, r) == target),
        Side::Left => ring.elements().any(|r| ring.mul(r, a) == target),
    };
    ring.mul(e, e) == e && in_multiples(x, e) && in_multiples(cof, f)
}
