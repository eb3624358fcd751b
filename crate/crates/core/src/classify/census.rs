use crate::ring::{Elem, FiniteRing};
use crate::star::Involution;

use super::profile::Family;
use super::{Analyzer, CentralPolynomial, ElementProfile};

/// Cardinalities of the basic sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counts {
    pub units: usize,
    pub idempotents: usize,
    pub regulars: usize,
    pub nilpotents: usize,
    pub jacobson: usize,
    pub central: usize,
    pub projections: Option<usize>,
}

/// A ring-level verdict. When it fails, `witness` holds the least
/// offending element (or pair).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingFlag {
    pub name: &'static str,
    pub holds: bool,
    pub witness: Vec<Elem>,
}

/// Registered ring-level flags. Flags that aggregate an element flag name it
/// in the second slot.
pub const RING_FLAGS: &[(&str, Family, Option<&str>)] = &[
    ("commutative", Family::Base, None),
    ("abelian", Family::Base, None),
    ("boolean", Family::Base, None),
    ("no_zero_divisors", Family::Base, None),
    ("two_invertible", Family::Base, None),
    ("trivial_idempotents_only", Family::Base, None),
    ("is_regular", Family::Base, Some("regular")),
    ("is_clean", Family::Base, Some("clean")),
    ("is_weakly_clean", Family::Base, Some("weakly_clean")),
    ("is_r_clean", Family::Base, Some("r_clean")),
    ("is_weakly_r_clean", Family::Base, Some("weakly_r_clean")),
    ("is_strongly_clean", Family::Base, Some("strongly_clean")),
    ("is_exchange", Family::Base, Some("exchange")),
    ("is_weakly_exchange", Family::Base, Some("weakly_exchange")),
    ("is_exchange_left", Family::Base, Some("exchange_left")),
    ("is_weakly_exchange_left", Family::Base, Some("weakly_exchange_left")),
    ("star_is_identity", Family::Star, None),
    ("all_idempotents_projections", Family::Star, None),
    ("units_self_adjoint", Family::Star, None),
    ("square_roots_of_one_self_adjoint", Family::Star, None),
    ("is_star_clean", Family::Star, Some("star_clean")),
    ("is_weakly_star_clean", Family::Star, Some("weakly_star_clean")),
    ("is_star_r_clean", Family::Star, Some("star_r_clean")),
    ("is_strongly_star_clean", Family::Star, Some("strongly_star_clean")),
    ("is_sasr1_or_two_p_plus_one", Family::Star, None),
    ("is_g_clean", Family::G, Some("g_clean")),
    ("is_strongly_g_clean", Family::G, Some("strongly_g_clean")),
    ("is_g_r_clean", Family::G, Some("g_r_clean")),
    ("is_weakly_g_r_clean", Family::G, Some("weakly_g_r_clean")),
];

/// Every element profile of a ring plus the ring-level summary.
#[derive(Clone, Debug)]
pub struct Census {
    pub ring: FiniteRing,
    pub involution: Option<Involution>,
    pub polynomial: Option<CentralPolynomial>,
    pub counts: Counts,
    pub profiles: Vec<ElementProfile>,
    pub flags: Vec<RingFlag>,
}

impl Census {
    pub(crate) fn compute(an: &Analyzer<'_>) -> Census {
        let ring = an.ring();
        let sets = an.sets();
        let profiles = an.all_profiles();
        let counts = Counts {
            units: sets.units.len(),
            idempotents: sets.idempotents.len(),
            regulars: sets.regulars.len(),
            nilpotents: sets.nilpotents.len(),
            jacobson: sets.jacobson.len(),
            central: sets.central.len(),
            projections: an.involution().map(|_| an.projections().len()),
        };
        let mut flags = Vec::new();
        for &(name, family, element_flag) in RING_FLAGS {
            let attached = match family {
                Family::Base => true,
                Family::Star => an.involution().is_some(),
                Family::G => an.polynomial().is_some(),
            };
            if !attached {
                continue;
            }
            let witness = match element_flag {
                Some(ef) => profiles
                    .iter()
                    .find(|p| p.flag(ef) != Some(true))
                    .map(|p| vec![p.element]),
                None => structural_witness(an, &profiles, name),
            };
            flags.push(RingFlag { name, holds: witness.is_none(), witness: witness.unwrap_or_default() });
        }
        Census {
            ring: ring.clone(),
            involution: an.involution().cloned(),
            polynomial: an.polynomial().cloned(),
            counts,
            profiles,
            flags,
        }
    }

    /// Value of a registered ring flag, `None` if unknown or not attached.
    pub fn flag(&self, name: &str) -> Option<bool> {
        self.ring_flag(name).map(|f| f.holds)
    }

    pub fn ring_flag(&self, name: &str) -> Option<&RingFlag> {
        self.flags.iter().find(|f| f.name == name)
    }

    pub fn profile(&self, x: Elem) -> &ElementProfile {
        &self.profiles[x]
    }

    /// Elements on which an element flag holds, in id order.
    pub fn elements_with(&self, flag: &str) -> Vec<Elem> {
        self.profiles.iter().filter(|p| p.flag(flag) == Some(true)).map(|p| p.element).collect()
    }
}

/// `Some(witness)` when the structural flag fails.
fn structural_witness(an: &Analyzer<'_>, profiles: &[ElementProfile], name: &str) -> Option<Vec<Elem>> {
    let r = an.ring();
    let sets = an.sets();
    let pairs = || r.elements().flat_map(move |a| r.elements().map(move |b| (a, b)));
    match name {
        "commutative" => pairs().find(|&(a, b)| r.mul(a, b) != r.mul(b, a)).map(|(a, b)| vec![a, b]),
        "abelian" => sets
            .idempotents
            .iter()
            .find_map(|&e| r.elements().find(|&x| r.mul(e, x) != r.mul(x, e)).map(|x| vec![e, x])),
        "boolean" => r.elements().find(|&x| r.mul(x, x) != x).map(|x| vec![x]),
        "no_zero_divisors" => pairs()
            .find(|&(a, b)| a != r.zero() && b != r.zero() && r.mul(a, b) == r.zero())
            .map(|(a, b)| vec![a, b]),
        "two_invertible" => {
            let two = r.from_int(2);
            (!sets.is_unit(two)).then(|| vec![two])
        }
        "trivial_idempotents_only" => sets
            .idempotents
            .iter()
            .find(|&&e| e != r.zero() && e != r.one())
            .map(|&e| vec![e]),
        "star_is_identity" => {
            let inv = an.involution()?;
            r.elements().find(|&x| inv.apply(x) != x).map(|x| vec![x])
        }
        "all_idempotents_projections" => {
            let inv = an.involution()?;
            sets.idempotents.iter().find(|&&e| inv.apply(e) != e).map(|&e| vec![e])
        }
        "units_self_adjoint" => {
            let inv = an.involution()?;
            sets.units.iter().find(|&&u| inv.apply(u) != u).map(|&u| vec![u])
        }
        "square_roots_of_one_self_adjoint" => {
            let inv = an.involution()?;
            r.elements()
                .find(|&u| r.mul(u, u) == r.one() && inv.apply(u) != u)
                .map(|u| vec![u])
        }
        "is_sasr1_or_two_p_plus_one" => profiles
            .iter()
            .find(|p| p.flag("sasr1_decomp") != Some(true) && p.flag("two_p_plus_one_decomp") != Some(true))
            .map(|p| vec![p.element]),
        other => unreachable!("unregistered structural flag {other}"),
    }
}
