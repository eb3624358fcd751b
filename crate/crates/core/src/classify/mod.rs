//! Element and ring classification with explicit witnesses.
//!
//! Every search walks its first component in ascending id order and solves
//! for the second, so the reported witness is the lexicographically least
//! pair and does not depend on thread scheduling.

mod census;
mod poly;
mod profile;

use std::sync::Arc;

use rayon::prelude::*;

use crate::ring::{Elem, FiniteRing};
use crate::star::Involution;

pub use census::{Census, Counts, RingFlag, RING_FLAGS};
pub use poly::{CentralPolynomial, PolyError};
pub use profile::{
    Branch, Decomp, ElementProfile, ExchangeWitness, Family, GProfile, Side, StarProfile, ELEMENT_FLAGS,
};

/// How regularity (`x = x·y·x`) is decided. Only [`RegularityRule::VonNeumann`]
/// is correct; the other variant exists to show the theorem checks can fail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RegularityRule {
    #[default]
    VonNeumann,
    /// Accept `x = x·y`, dropping the right factor. Every element passes.
    DropRightFactor,
}

/// The basic element sets of a ring, with lookup tables.
#[derive(Debug)]
pub struct BasicSets {
    pub units: Vec<Elem>,
    pub idempotents: Vec<Elem>,
    pub regulars: Vec<Elem>,
    pub nilpotents: Vec<Elem>,
    pub central: Vec<Elem>,
    pub jacobson: Vec<Elem>,
    inverse: Vec<Option<Elem>>,
    idem: Vec<bool>,
    reg_witness: Vec<Option<Elem>>,
    nil_index: Vec<Option<u32>>,
    is_central: Vec<bool>,
    in_jacobson: Vec<bool>,
}

impl BasicSets {
    pub fn compute(ring: &FiniteRing, rule: RegularityRule) -> BasicSets {
        let inverse = ring.inverses();
        let idem: Vec<bool> = ring.elements().map(|x| ring.mul(x, x) == x).collect();
        let reg_witness: Vec<Option<Elem>> = ring
            .elements()
            .into_par_iter()
            .map(|x| match rule {
                RegularityRule::VonNeumann => ring.elements().find(|&y| ring.mul3(x, y, x) == x),
                RegularityRule::DropRightFactor => ring.elements().find(|&y| ring.mul(x, y) == x),
            })
            .collect();
        let nil_index = ring.elements().map(|x| nilpotency_index(ring, x)).collect::<Vec<_>>();
        let is_central: Vec<bool> = ring
            .elements()
            .into_par_iter()
            .map(|c| ring.elements().all(|r| ring.mul(c, r) == ring.mul(r, c)))
            .collect();
        let in_jacobson: Vec<bool> = ring
            .elements()
            .into_par_iter()
            .map(|x| ring.elements().all(|r| inverse[ring.sub(ring.one(), ring.mul(r, x))].is_some()))
            .collect();
        let pick = |mask: &dyn Fn(Elem) -> bool| ring.elements().filter(|&x| mask(x)).collect::<Vec<_>>();
        BasicSets {
            units: pick(&|x| inverse[x].is_some()),
            idempotents: pick(&|x| idem[x]),
            regulars: pick(&|x| reg_witness[x].is_some()),
            nilpotents: pick(&|x| nil_index[x].is_some()),
            central: pick(&|x| is_central[x]),
            jacobson: pick(&|x| in_jacobson[x]),
            inverse,
            idem,
            reg_witness,
            nil_index,
            is_central,
            in_jacobson,
        }
    }

    pub fn inverse(&self, x: Elem) -> Option<Elem> {
        self.inverse[x]
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        self.inverse[x].is_some()
    }

    pub fn is_idempotent(&self, x: Elem) -> bool {
        self.idem[x]
    }

    /// Least `y` with `x = xyx` (under the active rule).
    pub fn regular_witness(&self, x: Elem) -> Option<Elem> {
        self.reg_witness[x]
    }

    pub fn is_regular(&self, x: Elem) -> bool {
        self.reg_witness[x].is_some()
    }

    /// Least `k ≥ 1` with `x^k = 0`.
    pub fn nilpotency_index(&self, x: Elem) -> Option<u32> {
        self.nil_index[x]
    }

    pub fn is_central(&self, x: Elem) -> bool {
        self.is_central[x]
    }

    pub fn in_jacobson(&self, x: Elem) -> bool {
        self.in_jacobson[x]
    }
}

fn nilpotency_index(ring: &FiniteRing, x: Elem) -> Option<u32> {
    let mut p = x;
    for k in 1..=ring.size() as u32 {
        if p == ring.zero() {
            return Some(k);
        }
        p = ring.mul(p, x);
    }
    None
}

/// Entry point for all classification. The default classifier is correct;
/// a non-default [`RegularityRule`] is a deliberate fault for testing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Classifier {
    pub regularity: RegularityRule,
}

impl Classifier {
    pub fn mutated(regularity: RegularityRule) -> Classifier {
        Classifier { regularity }
    }

    /// Basic sets, cached on the ring for the default rule.
    pub fn sets(&self, ring: &FiniteRing) -> Arc<BasicSets> {
        if self.regularity == RegularityRule::VonNeumann {
            ring.data()
                .sets
                .get_or_init(|| Arc::new(BasicSets::compute(ring, RegularityRule::VonNeumann)))
                .clone()
        } else {
            Arc::new(BasicSets::compute(ring, self.regularity))
        }
    }

    pub fn analyzer<'a>(
        &self,
        ring: &'a FiniteRing,
        inv: Option<&'a Involution>,
        g: Option<&'a CentralPolynomial>,
    ) -> Analyzer<'a> {
        Analyzer::new(self.sets(ring), ring, inv, g)
    }

    pub fn profile(
        &self,
        ring: &FiniteRing,
        inv: Option<&Involution>,
        g: Option<&CentralPolynomial>,
        x: Elem,
    ) -> ElementProfile {
        self.analyzer(ring, inv, g).profile(x)
    }

    pub fn census(&self, ring: &FiniteRing, inv: Option<&Involution>, g: Option<&CentralPolynomial>) -> Census {
        Census::compute(&self.analyzer(ring, inv, g))
    }

    /// Census from freshly computed basic sets, bypassing the ring's cache.
    pub fn census_uncached(
        &self,
        ring: &FiniteRing,
        inv: Option<&Involution>,
        g: Option<&CentralPolynomial>,
    ) -> Census {
        let sets = Arc::new(BasicSets::compute(ring, self.regularity));
        Census::compute(&Analyzer::new(sets, ring, inv, g))
    }
}

/// Basic sets under the correct rule.
pub fn basic_sets(ring: &FiniteRing) -> Arc<BasicSets> {
    Classifier::default().sets(ring)
}

pub fn ring_census(ring: &FiniteRing, inv: Option<&Involution>, g: Option<&CentralPolynomial>) -> Census {
    Classifier::default().census(ring, inv, g)
}

/// Per-ring precomputation shared by all element profiles.
pub struct Analyzer<'a> {
    ring: &'a FiniteRing,
    sets: Arc<BasicSets>,
    inv: Option<&'a Involution>,
    g: Option<&'a CentralPolynomial>,
    projections: Vec<Elem>,
    is_projection: Vec<bool>,
    /// `s² = 1` and `s⋆ = s`.
    sa_root_of_one: Vec<Elem>,
    /// `v ↦` least projection `p` with `2p + 1 = v`.
    two_p_plus_one: Vec<Option<Elem>>,
    roots: Vec<Elem>,
    is_root: Vec<bool>,
}

impl<'a> Analyzer<'a> {
    fn new(
        sets: Arc<BasicSets>,
        ring: &'a FiniteRing,
        inv: Option<&'a Involution>,
        g: Option<&'a CentralPolynomial>,
    ) -> Analyzer<'a> {
        let n = ring.size();
        let mut projections = Vec::new();
        let mut is_projection = vec![false; n];
        let mut sa_root_of_one = Vec::new();
        let mut two_p_plus_one = vec![None; n];
        if let Some(inv) = inv {
            assert!(inv.ring() == ring, "involution belongs to a different ring");
            for x in ring.elements() {
                if inv.is_projection(x) {
                    projections.push(x);
                    is_projection[x] = true;
                    let v = ring.add(ring.add(x, x), ring.one());
                    two_p_plus_one[v].get_or_insert(x);
                }
                if inv.is_self_adjoint(x) && ring.mul(x, x) == ring.one() {
                    sa_root_of_one.push(x);
                }
            }
        }
        let mut roots = Vec::new();
        let mut is_root = vec![false; n];
        if let Some(g) = g {
            assert!(g.ring() == ring, "polynomial belongs to a different ring");
            roots = g.roots();
            for &s in &roots {
                is_root[s] = true;
            }
        }
        Analyzer {
            ring,
            sets,
            inv,
            g,
            projections,
            is_projection,
            sa_root_of_one,
            two_p_plus_one,
            roots,
            is_root,
        }
    }

    pub fn ring(&self) -> &FiniteRing {
        self.ring
    }

    pub fn sets(&self) -> &BasicSets {
        &self.sets
    }

    pub fn involution(&self) -> Option<&Involution> {
        self.inv
    }

    pub fn polynomial(&self) -> Option<&CentralPolynomial> {
        self.g
    }

    pub fn projections(&self) -> &[Elem] {
        &self.projections
    }

    pub fn roots(&self) -> &[Elem] {
        &self.roots
    }

    /// Least `(a, b)` with `a` in `firsts` (ascending), `b = solve(a)` and
    /// `accept(a, b)`.
    fn least_pair(
        firsts: &[Elem],
        solve: impl Fn(Elem) -> Elem,
        accept: impl Fn(Elem, Elem) -> bool,
    ) -> Option<Decomp> {
        firsts.iter().find_map(|&a| {
            let b = solve(a);
            accept(a, b).then_some(Decomp { first: a, second: b })
        })
    }

    /// `x = a + b` with `a ∈ firsts` and `b` accepted.
    fn plus(&self, x: Elem, firsts: &[Elem], ok: impl Fn(Elem, Elem) -> bool) -> Option<Decomp> {
        let r = self.ring;
        Self::least_pair(firsts, |a| r.sub(x, a), ok)
    }

    /// `x = a − b` with `a ∈ firsts` and `b` accepted.
    fn minus(&self, x: Elem, firsts: &[Elem], ok: impl Fn(Elem, Elem) -> bool) -> Option<Decomp> {
        let r = self.ring;
        Self::least_pair(firsts, |a| r.sub(a, x), ok)
    }

    fn commute(&self, a: Elem, b: Elem) -> bool {
        self.ring.mul(a, b) == self.ring.mul(b, a)
    }

    pub fn clean(&self, x: Elem) -> Option<Decomp> {
        self.plus(x, &self.sets.units, |_, e| self.sets.is_idempotent(e))
    }

    pub fn weakly_clean_t2(&self, x: Elem) -> Option<Decomp> {
        self.minus(x, &self.sets.units, |_, e| self.sets.is_idempotent(e))
    }

    pub fn r_clean(&self, x: Elem) -> Option<Decomp> {
        self.plus(x, &self.sets.regulars, |_, e| self.sets.is_idempotent(e))
    }

    pub fn weakly_r_clean_t2(&self, x: Elem) -> Option<Decomp> {
        self.minus(x, &self.sets.regulars, |_, e| self.sets.is_idempotent(e))
    }

    pub fn strongly_clean(&self, x: Elem) -> Option<Decomp> {
        self.plus(x, &self.sets.units, |u, e| self.sets.is_idempotent(e) && self.commute(u, e))
    }

    /// Least idempotent `e ∈ xR` (or `Rx`) with `1 − e` in one of the
    /// allowed cofactor sets.
    pub fn exchange(&self, x: Elem, side: Side, weakly: bool) -> Option<ExchangeWitness> {
        let r = self.ring;
        let one = r.one();
        let multiples = |a: Elem| match side {
            Side::Right => r.right_multiples(a),
            Side::Left => r.left_multiples(a),
        };
        let in_x = multiples(x);
        let minus = multiples(r.sub(one, x));
        let plus = if weakly { Some(multiples(r.add(one, x))) } else { None };
        self.sets.idempotents.iter().find_map(|&e| {
            if !in_x[e] {
                return None;
            }
            let f = r.sub(one, e);
            if minus[f] {
                Some(ExchangeWitness { e, branch: Branch::OneMinusX, side })
            } else if plus.as_ref().is_some_and(|p| p[f]) {
                Some(ExchangeWitness { e, branch: Branch::OnePlusX, side })
            } else {
                None
            }
        })
    }

    pub fn star_part(&self, x: Elem) -> Option<StarProfile> {
        let inv = self.inv?;
        let proj = |_: Elem, p: Elem| self.is_projection[p];
        let units = &self.sets.units;
        Some(StarProfile {
            projection: self.is_projection[x],
            self_adjoint: inv.is_self_adjoint(x),
            star_clean: self.plus(x, units, proj),
            weakly_star_clean_t2: self.minus(x, units, proj),
            star_r_clean: self.plus(x, &self.sets.regulars, proj),
            strongly_star_clean: self.plus(x, units, |u, p| self.is_projection[p] && self.commute(u, p)),
            sasr1: {
                let mut best: Option<Decomp> = None;
                for &u in units {
                    let s = self.ring.sub(x, u);
                    if self.sa_root_of_one.binary_search(&s).is_ok() {
                        best = Some(Decomp { first: u, second: s });
                        break;
                    }
                }
                best
            },
            two_p_plus_one: units.iter().find_map(|&u| {
                self.two_p_plus_one[self.ring.sub(x, u)].map(|p| Decomp { first: u, second: p })
            }),
        })
    }

    pub fn g_part(&self, x: Elem) -> Option<GProfile> {
        self.g?;
        let root = |_: Elem, s: Elem| self.is_root[s];
        let units = &self.sets.units;
        Some(GProfile {
            root: self.is_root[x],
            g_clean: self.plus(x, units, root),
            strongly_g_clean: self.plus(x, units, |u, s| self.is_root[s] && self.commute(u, s)),
            g_r_clean: self.plus(x, &self.sets.regulars, root),
            weakly_g_r_clean_t2: self.minus(x, &self.sets.regulars, root),
        })
    }

    /// Weakly g-r-clean: `x = r ± s` with `g(s) = 0`.
    pub fn weakly_g_r_clean(&self, x: Elem) -> bool {
        let root = |_: Elem, s: Elem| self.is_root[s];
        self.plus(x, &self.sets.regulars, root).is_some() || self.minus(x, &self.sets.regulars, root).is_some()
    }

    pub fn profile(&self, x: Elem) -> ElementProfile {
        let s = &self.sets;
        ElementProfile {
            element: x,
            unit: s.inverse(x),
            idempotent: s.is_idempotent(x),
            regular: s.regular_witness(x),
            nilpotent: s.nilpotency_index(x),
            central: s.is_central(x),
            jacobson: s.in_jacobson(x),
            clean: self.clean(x),
            weakly_clean_t2: self.weakly_clean_t2(x),
            r_clean: self.r_clean(x),
            weakly_r_clean_t2: self.weakly_r_clean_t2(x),
            strongly_clean: self.strongly_clean(x),
            exchange: self.exchange(x, Side::Right, false),
            weakly_exchange: self.exchange(x, Side::Right, true),
            exchange_left: self.exchange(x, Side::Left, false),
            weakly_exchange_left: self.exchange(x, Side::Left, true),
            star: self.star_part(x),
            g: self.g_part(x),
        }
    }

    /// Profiles of every element, computed in parallel, in id order.
    pub fn all_profiles(&self) -> Vec<ElementProfile> {
        self.ring.elements().into_par_iter().map(|x| self.profile(x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{direct_product, make_poly_quotient, make_zn, matrix_ring};
    use crate::star::swap_involution;

    #[test]
    fn z6_and_z4_sets() {
        let z6 = make_zn(6).unwrap();
        let s = basic_sets(&z6);
        assert_eq!(s.units, vec![1, 5]);
        assert_eq!(s.idempotents, vec![0, 1, 3, 4]);
        assert_eq!(s.regulars, (0..6).collect::<Vec<_>>());
        assert_eq!(s.nilpotents, vec![0]);
        let z4 = make_zn(4).unwrap();
        let s = basic_sets(&z4);
        assert_eq!(s.units, vec![1, 3]);
        assert_eq!(s.idempotents, vec![0, 1]);
        assert_eq!(s.regulars, vec![0, 1, 3]);
        assert_eq!(s.nilpotents, vec![0, 2]);
        assert_eq!(s.jacobson, vec![0, 2]);
        assert_eq!(s.nilpotency_index(2), Some(2));
    }

    #[test]
    fn fields_are_regular() {
        let f4 = make_poly_quotient(2, "x^2+x+1").unwrap();
        let s = basic_sets(&f4);
        assert_eq!(s.regulars.len(), 4);
        assert_eq!(s.idempotents, vec![0, 1]);
    }

    #[test]
    fn lowest_witnesses() {
        let z4 = make_zn(4).unwrap();
        let a = Classifier::default().analyzer(&z4, None, None);
        assert_eq!(a.clean(2), Some(Decomp { first: 1, second: 1 }));
        assert_eq!(a.exchange(3, Side::Right, false).map(|w| w.e), Some(1));
        assert_eq!(a.exchange(0, Side::Right, false).map(|w| w.e), Some(0));
        let z6 = make_zn(6).unwrap();
        let a = Classifier::default().analyzer(&z6, None, None);
        assert!(a.r_clean(2).is_some());
    }

    #[test]
    fn swap_star_profile() {
        let z2 = make_zn(2).unwrap();
        let r = direct_product(&[z2.clone(), z2]).unwrap();
        let inv = swap_involution(&r).unwrap();
        let a = Classifier::default().analyzer(&r, Some(&inv), None);
        let p = a.star_part(1).unwrap();
        assert!(p.star_clean.is_none() && p.weakly_star_clean_t2.is_none());
        assert!(a.clean(1).is_some());
    }

    #[test]
    fn mutated_rule_accepts_everything() {
        let z4 = make_zn(4).unwrap();
        let s = Classifier::mutated(RegularityRule::DropRightFactor).sets(&z4);
        assert_eq!(s.regulars.len(), 4);
        // the default cache is untouched
        assert_eq!(basic_sets(&z4).regulars.len(), 3);
    }

    #[test]
    fn noncommutative_units() {
        let m = matrix_ring(&make_zn(2).unwrap(), 2).unwrap();
        let s = basic_sets(&m);
        assert_eq!(s.units.len(), 6);
        assert_eq!(s.central.len(), 2);
        assert_eq!(s.regulars.len(), 16);
    }
}
