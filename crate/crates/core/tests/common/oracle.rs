//! Brute-force evaluation of every flag straight from the definitions. Uses
//! only the ring's `+`, `·`, negation and constants; nothing from the
//! classifier.

use finring::classify::{ELEMENT_FLAGS, RING_FLAGS};
use finring::{ring_census, CentralPolynomial, Elem, FiniteRing, Involution};

/// Rings up to this size are compared flag-for-flag against the engine.
pub const ORACLE_RING_CAP: usize = 36;

pub struct Oracle<'a> {
    r: &'a FiniteRing,
    inv: Option<&'a Involution>,
    g: Option<&'a CentralPolynomial>,
    unit: Vec<bool>,
    idem: Vec<bool>,
    reg: Vec<bool>,
    proj: Vec<bool>,
    root: Vec<bool>,
}

impl<'a> Oracle<'a> {
    pub fn new(r: &'a FiniteRing, inv: Option<&'a Involution>, g: Option<&'a CentralPolynomial>) -> Self {
        let one = r.one();
        let unit = r
            .elements()
            .map(|x| r.elements().any(|y| r.mul(x, y) == one && r.mul(y, x) == one))
            .collect();
        let idem: Vec<bool> = r.elements().map(|x| r.mul(x, x) == x).collect();
        let reg = r
            .elements()
            .map(|x| r.elements().any(|y| r.mul(r.mul(x, y), x) == x))
            .collect();
        let proj = r
            .elements()
            .map(|x| inv.is_some_and(|i| idem[x] && i.apply(x) == x))
            .collect();
        let root = r.elements().map(|x| g.is_some_and(|g| eval(r, g.coeffs(), x) == r.zero())).collect();
        Oracle { r, inv, g, unit, idem, reg, proj, root }
    }

    fn sum_of(&self, x: Elem, first: &[bool], second: &[bool], sign: bool, commute: bool) -> bool {
        let r = self.r;
        r.elements().any(|a| {
            first[a]
                && r.elements().any(|b| {
                    second[b]
                        && (if sign { r.add(a, b) } else { r.sub(a, b) }) == x
                        && (!commute || r.mul(a, b) == r.mul(b, a))
                })
        })
    }

    fn in_right(&self, target: Elem, x: Elem) -> bool {
        self.r.elements().any(|a| self.r.mul(x, a) == target)
    }

    fn in_left(&self, target: Elem, x: Elem) -> bool {
        self.r.elements().any(|a| self.r.mul(a, x) == target)
    }

    fn exchange(&self, x: Elem, left: bool, weakly: bool) -> bool {
        let r = self.r;
        let mem = |t: Elem, y: Elem| if left { self.in_left(t, y) } else { self.in_right(t, y) };
        r.elements().any(|e| {
            let ce = r.sub(r.one(), e);
            self.idem[e]
                && mem(e, x)
                && (mem(ce, r.sub(r.one(), x)) || (weakly && mem(ce, r.add(r.one(), x))))
        })
    }

    /// Value of an element flag, `None` when its attachment is missing.
    pub fn element_flag(&self, name: &str, x: Elem) -> Option<bool> {
        let r = self.r;
        let one = r.one();
        let (u, e, rg, p, s) = (&self.unit, &self.idem, &self.reg, &self.proj, &self.root);
        let star = self.inv.is_some();
        let gg = self.g.is_some();
        let v = match name {
            "unit" => u[x],
            "idempotent" => e[x],
            "regular" => rg[x],
            "nilpotent" => (1..=r.size() as u32).any(|k| r.pow(x, k) == r.zero()),
            "central" => r.elements().all(|y| r.mul(x, y) == r.mul(y, x)),
            "jacobson" => r.elements().all(|y| u[r.sub(one, r.mul(y, x))]),
            "clean" | "weakly_clean_t1" => self.sum_of(x, u, e, true, false),
            "weakly_clean_t2" => self.sum_of(x, u, e, false, false),
            "weakly_clean" => self.sum_of(x, u, e, true, false) || self.sum_of(x, u, e, false, false),
            "r_clean" | "weakly_r_clean_t1" => self.sum_of(x, rg, e, true, false),
            "weakly_r_clean_t2" => self.sum_of(x, rg, e, false, false),
            "weakly_r_clean" => self.sum_of(x, rg, e, true, false) || self.sum_of(x, rg, e, false, false),
            "strongly_clean" => self.sum_of(x, u, e, true, true),
            "exchange" => self.exchange(x, false, false),
            "weakly_exchange" => self.exchange(x, false, true),
            "exchange_left" => self.exchange(x, true, false),
            "weakly_exchange_left" => self.exchange(x, true, true),
            _ if !star && is_star(name) => return None,
            "projection" => p[x],
            "self_adjoint" => self.inv.unwrap().apply(x) == x,
            "star_clean" | "weakly_star_clean_t1" => self.sum_of(x, u, p, true, false),
            "weakly_star_clean_t2" => self.sum_of(x, u, p, false, false),
            "weakly_star_clean" => self.sum_of(x, u, p, true, false) || self.sum_of(x, u, p, false, false),
            "star_r_clean" => self.sum_of(x, rg, p, true, false),
            "strongly_star_clean" => self.sum_of(x, u, p, true, true),
            "sasr1_decomp" => {
                let inv = self.inv.unwrap();
                let sa: Vec<bool> = r.elements().map(|t| r.mul(t, t) == one && inv.apply(t) == t).collect();
                self.sum_of(x, u, &sa, true, false)
            }
            "two_p_plus_one_decomp" => {
                let tp: Vec<bool> = r
                    .elements()
                    .map(|t| r.elements().any(|q| p[q] && r.add(r.add(q, q), one) == t))
                    .collect();
                self.sum_of(x, u, &tp, true, false)
            }
            _ if !gg => return None,
            "g_root" => s[x],
            "g_clean" => self.sum_of(x, u, s, true, false),
            "strongly_g_clean" => self.sum_of(x, u, s, true, true),
            "g_r_clean" | "weakly_g_r_clean_t1" => self.sum_of(x, rg, s, true, false),
            "weakly_g_r_clean_t2" => self.sum_of(x, rg, s, false, false),
            "weakly_g_r_clean" => self.sum_of(x, rg, s, true, false) || self.sum_of(x, rg, s, false, false),
            other => panic!("oracle does not know {other}"),
        };
        Some(v)
    }

    /// Value of a ring flag.
    pub fn ring_flag(&self, name: &str) -> Option<bool> {
        let r = self.r;
        let all = |f: &dyn Fn(Elem) -> bool| r.elements().all(f);
        let agg = |el: &str| -> Option<bool> {
            let mut v = true;
            for x in r.elements() {
                v &= self.element_flag(el, x)?;
            }
            Some(v)
        };
        let star = self.inv.is_some();
        Some(match name {
            "commutative" => all(&|a| all(&|b| r.mul(a, b) == r.mul(b, a))),
            "abelian" => all(&|e| !self.idem[e] || all(&|b| r.mul(e, b) == r.mul(b, e))),
            "boolean" => all(&|a| self.idem[a]),
            "no_zero_divisors" => all(&|a| a == r.zero() || all(&|b| b == r.zero() || r.mul(a, b) != r.zero())),
            "two_invertible" => self.unit[r.add(r.one(), r.one())],
            "trivial_idempotents_only" => all(&|e| !self.idem[e] || e == r.zero() || e == r.one()),
            "star_is_identity" if star => all(&|x| self.inv.unwrap().apply(x) == x),
            "all_idempotents_projections" if star => all(&|e| !self.idem[e] || self.proj[e]),
            "units_self_adjoint" if star => all(&|u| !self.unit[u] || self.inv.unwrap().apply(u) == u),
            "square_roots_of_one_self_adjoint" if star => {
                all(&|u| r.mul(u, u) != r.one() || self.inv.unwrap().apply(u) == u)
            }
            "is_sasr1_or_two_p_plus_one" if star => all(&|x| {
                self.element_flag("sasr1_decomp", x).unwrap() || self.element_flag("two_p_plus_one_decomp", x).unwrap()
            }),
            "star_is_identity"
            | "all_idempotents_projections"
            | "units_self_adjoint"
            | "square_roots_of_one_self_adjoint"
            | "is_sasr1_or_two_p_plus_one" => return None,
            other => {
                let el = other.strip_prefix("is_")?;
                return agg(el)
            },
        })
    }
}

fn is_star(name: &str) -> bool {
    [
        "projection",
        "self_adjoint",
        "star_clean",
        "weakly_star_clean_t1",
        "weakly_star_clean_t2",
        "weakly_star_clean",
        "star_r_clean",
        "strongly_star_clean",
        "sasr1_decomp",
        "two_p_plus_one_decomp",
    ]
    .contains(&name)
}

/// `Σ c_i x^i` by explicit powers.
pub fn eval(r: &FiniteRing, coeffs: &[Elem], x: Elem) -> Elem {
    coeffs
        .iter()
        .enumerate()
        .fold(r.zero(), |acc, (i, &c)| r.add(acc, r.mul(c, r.pow(x, i as u32))))
}

/// Every element and ring flag of the engine against the oracle; the first
/// disagreement as an error.
pub fn compare(r: &FiniteRing, inv: Option<&Involution>, g: Option<&CentralPolynomial>) -> Result<(), String> {
    let census = ring_census(r, inv, g);
    let oracle = Oracle::new(r, inv, g);
    for x in r.elements() {
        let p = census.profile(x);
        for &(name, _) in ELEMENT_FLAGS {
            let (a, b) = (p.flag(name), oracle.element_flag(name, x));
            if a != b {
                return Err(format!("{} {name} at {}: engine {a:?}, oracle {b:?}", r.provenance(), r.name(x)));
            }
        }
    }
    for &(name, _, _) in RING_FLAGS {
        let (a, b) = (census.flag(name), oracle.ring_flag(name));
        if a != b {
            return Err(format!("{} ring flag {name}: engine {a:?}, oracle {b:?}", r.provenance()));
        }
    }
    Ok(())
}
