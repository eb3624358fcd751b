use std::collections::BTreeSet;

use super::{Elem, FiniteRing, RingError, RingKind, RingMap};

/// A two-sided ideal, members sorted by id.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: FiniteRing,
    members: Vec<Elem>,
    mask: Vec<bool>,
    generators: Option<Vec<Elem>>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.members == other.members
    }
}

impl Ideal {
    /// Validate an explicit member set as a two-sided ideal.
    pub fn new(ring: &FiniteRing, members: impl IntoIterator<Item = Elem>) -> Result<Ideal, RingError> {
        let mut mask = vec![false; ring.size()];
        for m in members {
            if m >= ring.size() {
                return Err(RingError::BadElement(m));
            }
            mask[m] = true;
        }
        let members: Vec<Elem> = ring.elements().filter(|&x| mask[x]).collect();
        if !mask[ring.zero()] {
            return Err(RingError::NotSubring("ideal must contain zero".into()));
        }
        for &a in &members {
            for &b in &members {
                if !mask[ring.add(a, b)] {
                    return Err(RingError::NotSubring(format!("not closed under addition at ({a}, {b})")));
                }
            }
            for r in ring.elements() {
                if !mask[ring.mul(r, a)] || !mask[ring.mul(a, r)] {
                    return Err(RingError::NotSubring(format!("does not absorb {r} at {a}")));
                }
            }
        }
        Ok(Ideal { ring: ring.clone(), members, mask, generators: None })
    }

    pub fn zero(ring: &FiniteRing) -> Ideal {
        ideal_closure(ring, &[])
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.mask[x]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_proper(&self) -> bool {
        !self.mask[self.ring.one()]
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    /// Generators recorded by [`ideal_closure`], used for display.
    pub fn generators(&self) -> Option<&[Elem]> {
        self.generators.as_deref()
    }

    /// Short display form: generator names if known, else all members.
    pub fn describe(&self) -> String {
        let ids = self.generators.as_deref().unwrap_or(&self.members);
        let names: Vec<&str> = ids.iter().map(|&x| self.ring.name(x)).collect();
        format!("({})", names.join(","))
    }
}

/// Smallest two-sided ideal containing `gens`.
pub fn ideal_closure(ring: &FiniteRing, gens: &[Elem]) -> Ideal {
    let n = ring.size();
    let mut mask = vec![false; n];
    let mut members = Vec::new();
    let push = |x: Elem, mask: &mut Vec<bool>, members: &mut Vec<Elem>| {
        if !mask[x] {
            mask[x] = true;
            members.push(x);
        }
    };
    push(ring.zero(), &mut mask, &mut members);
    for &g in gens {
        push(g, &mut mask, &mut members);
    }
    let mut i = 0;
    while i < members.len() {
        let a = members[i];
        for r in ring.elements() {
            push(ring.mul(r, a), &mut mask, &mut members);
            push(ring.mul(a, r), &mut mask, &mut members);
        }
        for j in 0..=i {
            let b = members[j];
            push(ring.add(a, b), &mut mask, &mut members);
        }
        i += 1;
        // Sums with members discovered later are handled when they are visited.
    }
    members.sort_unstable();
    let mut sorted_gens: Vec<Elem> = gens.to_vec();
    sorted_gens.sort_unstable();
    sorted_gens.dedup();
    Ideal { ring: ring.clone(), members, mask, generators: Some(sorted_gens) }
}

/// `J(R) = {x : 1 − r·x is a unit for all r}`.
pub fn jacobson_radical(ring: &FiniteRing) -> Ideal {
    let unit: Vec<bool> = ring.inverses().iter().map(Option::is_some).collect();
    let members: Vec<Elem> = ring
        .elements()
        .filter(|&x| ring.elements().all(|r| unit[ring.sub(ring.one(), ring.mul(r, x))]))
        .collect();
    let mut mask = vec![false; ring.size()];
    for &m in &members {
        mask[m] = true;
    }
    Ideal { ring: ring.clone(), members, mask, generators: None }
}

/// Distinct principal ideals `(x)` for every element, zero ideal first,
/// ordered by least generator.
pub fn principal_ideals(ring: &FiniteRing) -> Vec<Ideal> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in ring.elements() {
        let id = ideal_closure(ring, &[x]);
        if seen.insert(id.members.clone()) {
            out.push(id);
        }
    }
    out
}

/// `R/I` with cosets named `[rep]` by least representative, plus the
/// canonical surjection.
pub fn quotient_ring(ring: &FiniteRing, ideal: &Ideal) -> Result<(FiniteRing, RingMap), RingError> {
    if ideal.ring() != ring {
        return Err(RingError::NotSubring("ideal belongs to a different ring".into()));
    }
    if !ideal.is_proper() {
        return Err(RingError::ImproperIdeal);
    }
    let rep: Vec<Elem> = ring
        .elements()
        .map(|x| ideal.members.iter().map(|&i| ring.add(x, i)).min().expect("ideal contains zero"))
        .collect();
    let mut reps: Vec<Elem> = rep.clone();
    reps.sort_unstable();
    reps.dedup();
    let mut index = vec![usize::MAX; ring.size()];
    for (k, &r) in reps.iter().enumerate() {
        index[r] = k;
    }
    let q = reps.len();
    let proj = |x: Elem| index[rep[x]];
    let mut add = Vec::with_capacity(q * q);
    let mut mul = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            add.push(proj(ring.add(a, b)));
            mul.push(proj(ring.mul(a, b)));
        }
    }
    let names = reps.iter().map(|&r| format!("[{}]", ring.name(r))).collect();
    let provenance = quotient_provenance(ring, ideal);
    let quotient = FiniteRing::from_flat(
        q,
        &add,
        &mul,
        proj(ring.zero()),
        proj(ring.one()),
        Some(names),
        provenance,
        RingKind::Quotient { parent: ring.clone(), representatives: reps.clone() },
    )?;
    let image: Vec<Elem> = ring.elements().map(proj).collect();
    let map = RingMap::new_unchecked(ring, &quotient, image, "quotient".into());
    Ok((quotient, map))
}

fn quotient_provenance(ring: &FiniteRing, ideal: &Ideal) -> String {
    let ids = ideal.generators.as_deref().unwrap_or(&ideal.members);
    let mut parts = vec![ring.provenance().to_string()];
    parts.extend(ids.iter().map(|&x| format!("\"{}\"", ring.name(x))));
    format!("quot({})", parts.join(","))
}

/// Every `a ∈ I` has some `b ∈ I` with `a = a·b·a`. Returns the least
/// failing `a` otherwise.
pub fn is_regular_ideal(ring: &FiniteRing, ideal: &Ideal) -> Result<(), Elem> {
    for &a in &ideal.members {
        if !ideal.members.iter().any(|&b| ring.mul3(a, b, a) == a) {
            return Err(a);
        }
    }
    Ok(())
}

/// Every idempotent of `R/I` is the image of an idempotent of `R`. Returns
/// the least representative of an unliftable coset otherwise.
pub fn idempotents_lift(ring: &FiniteRing, ideal: &Ideal) -> Result<(), Elem> {
    if !ideal.is_proper() {
        return Ok(());
    }
    let (q, map) = quotient_ring(ring, ideal).expect("proper ideal");
    let mut lifted = vec![false; q.size()];
    for e in ring.elements() {
        if ring.mul(e, e) == e {
            lifted[map.apply(e)] = true;
        }
    }
    let RingKind::Quotient { representatives, .. } = q.kind() else { unreachable!() };
    for c in q.elements() {
        if q.mul(c, c) == c && !lifted[c] {
            return Err(representatives[c]);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_poly_quotient, make_zn};

    #[test]
    fn closures() {
        let z6 = make_zn(6).unwrap();
        assert_eq!(ideal_closure(&z6, &[3]).members(), &[0, 3]);
        assert_eq!(ideal_closure(&z6, &[]).members(), &[0]);
        assert_eq!(ideal_closure(&z6, &[4]).members(), &[0, 2, 4]);
        let z4 = make_zn(4).unwrap();
        assert_eq!(ideal_closure(&z4, &[2]).members(), &[0, 2]);
        assert_eq!(principal_ideals(&z6).len(), 4);
    }

    #[test]
    fn explicit_ideal_validation() {
        let z6 = make_zn(6).unwrap();
        assert!(Ideal::new(&z6, [0, 3]).is_ok());
        assert!(Ideal::new(&z6, [0, 2]).is_err());
        assert!(Ideal::new(&z6, [3]).is_err());
    }

    #[test]
    fn quotient_z6_by_3() {
        let z6 = make_zn(6).unwrap();
        let (q, map) = quotient_ring(&z6, &ideal_closure(&z6, &[3])).unwrap();
        assert_eq!(q.size(), 3);
        assert_eq!(q.characteristic(), 3);
        assert_eq!(map.image(), &[0, 1, 2, 0, 1, 2]);
        assert_eq!(q.provenance(), "quot(Zn(6),\"3\")");
        assert_eq!(q.name(2), "[2]");
        // canonical surjection is a unital homomorphism
        RingMap::new(&z6, &q, map.image().to_vec(), "check").unwrap();
    }

    #[test]
    fn quotient_by_zero_is_copy() {
        let z6 = make_zn(6).unwrap();
        let (q, _) = quotient_ring(&z6, &Ideal::zero(&z6)).unwrap();
        assert_eq!(q.size(), 6);
        for a in z6.elements() {
            for b in z6.elements() {
                assert_eq!(q.mul(a, b), z6.mul(a, b));
            }
        }
    }

    #[test]
    fn quotient_z4_by_2_and_improper() {
        let z4 = make_zn(4).unwrap();
        let (q, _) = quotient_ring(&z4, &ideal_closure(&z4, &[2])).unwrap();
        assert_eq!(q.size(), 2);
        assert!(matches!(quotient_ring(&z4, &ideal_closure(&z4, &[1])), Err(RingError::ImproperIdeal)));
    }

    #[test]
    fn regular_ideals() {
        let z6 = make_zn(6).unwrap();
        assert_eq!(is_regular_ideal(&z6, &ideal_closure(&z6, &[3])), Ok(()));
        let z4 = make_zn(4).unwrap();
        assert_eq!(is_regular_ideal(&z4, &ideal_closure(&z4, &[2])), Err(2));
        assert_eq!(is_regular_ideal(&z4, &Ideal::zero(&z4)), Ok(()));
    }

    #[test]
    fn radicals() {
        let z4 = make_zn(4).unwrap();
        assert_eq!(jacobson_radical(&z4).members(), &[0, 2]);
        let z6 = make_zn(6).unwrap();
        assert_eq!(jacobson_radical(&z6).members(), &[0]);
        let d = make_poly_quotient(2, "x^2").unwrap();
        assert_eq!(jacobson_radical(&d).members(), &[0, 2]);
        let j = jacobson_radical(&d);
        assert!(Ideal::new(&d, j.members().iter().copied()).is_ok());
    }

    #[test]
    fn lifting() {
        let z6 = make_zn(6).unwrap();
        assert_eq!(idempotents_lift(&z6, &ideal_closure(&z6, &[3])), Ok(()));
        let z4 = make_zn(4).unwrap();
        assert_eq!(idempotents_lift(&z4, &ideal_closure(&z4, &[2])), Ok(()));
        assert_eq!(idempotents_lift(&z4, &Ideal::zero(&z4)), Ok(()));
        let d = make_poly_quotient(2, "x^2").unwrap();
        assert_eq!(idempotents_lift(&d, &ideal_closure(&d, &[2])), Ok(()));
    }
}
