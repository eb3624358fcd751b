//! Involutions (`⋆`): additive, anti-multiplicative maps of order at most two.

use std::fmt;

use thiserror::Error;

use crate::ring::{frobenius, AdditiveSearch, Elem, FiniteRing, Ideal, RingKind, RingMap, Variance};

/// Default size limit for [`enumerate_involutions`].
pub const INVOLUTION_SEARCH_CAP: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StarError {
    #[error("table has {got} entries, expected {expected}")]
    BadLength { got: usize, expected: usize },
    #[error("table is not a permutation of element ids (at {0})")]
    NotPermutation(Elem),
    #[error("(x+y)* != x*+y* at ({0}, {1})")]
    NotAdditive(Elem, Elem),
    #[error("(xy)* != y*x* at ({0}, {1})")]
    NotAntiMultiplicative(Elem, Elem),
    #[error("(x*)* != x at {0}")]
    NotInvolutive(Elem),
    #[error("ideal is not *-invariant: {0} is in it but its star is not")]
    NotStarInvariant(Elem),
    #[error("ring has {size} elements, above the search cap of {cap}")]
    SearchCapExceeded { size: usize, cap: usize },
    #[error("no such involution: {0}")]
    Unavailable(String),
}

/// A validated involution on a ring.
#[derive(Clone)]
pub struct Involution {
    ring: FiniteRing,
    star: Vec<Elem>,
    label: String,
}

impl fmt::Debug for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Involution({} on {})", self.label, self.ring.provenance())
    }
}

impl PartialEq for Involution {
    fn eq(&self, other: &Self) -> bool {
        self.star == other.star && self.ring == other.ring
    }
}

impl Involution {
    pub fn identity(ring: &FiniteRing) -> Result<Involution, StarError> {
        validate_involution(ring, ring.elements().collect(), "id")
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.star[x]
    }

    pub fn table(&self) -> &[Elem] {
        &self.star
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Involution {
        self.label = label.into();
        self
    }

    pub fn is_identity(&self) -> bool {
        self.star.iter().enumerate().all(|(i, &s)| i == s)
    }

    pub fn is_self_adjoint(&self, x: Elem) -> bool {
        self.star[x] == x
    }

    /// `p² = p = p⋆`.
    pub fn is_projection(&self, p: Elem) -> bool {
        self.star[p] == p && self.ring.mul(p, p) == p
    }

    /// `I⋆ = I`; returns the least `i ∈ I` with `i⋆ ∉ I` otherwise.
    pub fn preserves_ideal(&self, ideal: &Ideal) -> Result<(), Elem> {
        match ideal.members().iter().find(|&&i| !ideal.contains(self.star[i])) {
            Some(&i) => Err(i),
            None => Ok(()),
        }
    }

    /// `θ(x⋆) = θ(x)⋆` for a map into the ring carrying `other`. Returns the
    /// least failing `x` otherwise.
    pub fn intertwines(&self, map: &RingMap, other: &Involution) -> Result<(), Elem> {
        match self.ring.elements().find(|&x| map.apply(self.star[x]) != other.apply(map.apply(x))) {
            Some(x) => Err(x),
            None => Ok(()),
        }
    }
}

/// Check the three involution axioms exhaustively.
pub fn validate_involution(ring: &FiniteRing, table: Vec<Elem>, label: impl Into<String>) -> Result<Involution, StarError> {
    let n = ring.size();
    if table.len() != n {
        return Err(StarError::BadLength { got: table.len(), expected: n });
    }
    let mut seen = vec![false; n];
    for &s in &table {
        if s >= n || seen[s] {
            return Err(StarError::NotPermutation(s));
        }
        seen[s] = true;
    }
    for a in ring.elements() {
        for b in ring.elements() {
            if table[ring.add(a, b)] != ring.add(table[a], table[b]) {
                return Err(StarError::NotAdditive(a, b));
            }
        }
    }
    for a in ring.elements() {
        for b in ring.elements() {
            if table[ring.mul(a, b)] != ring.mul(table[b], table[a]) {
                return Err(StarError::NotAntiMultiplicative(a, b));
            }
        }
    }
    if let Some(a) = ring.elements().find(|&a| table[table[a]] != a) {
        return Err(StarError::NotInvolutive(a));
    }
    debug_assert_eq!(table[ring.one()], ring.one());
    Ok(Involution { ring: ring.clone(), star: table, label: label.into() })
}

/// Involutions that come with the constructor: identity on commutative
/// rings, Frobenius when it has order two, swap on `A × A`, transpose on
/// matrices over a commutative base, and componentwise combinations on
/// products. Deduplicated by table, first label wins.
pub fn standard_involutions(ring: &FiniteRing) -> Vec<Involution> {
    let mut out: Vec<Involution> = Vec::new();
    let push = |inv: Involution, out: &mut Vec<Involution>| {
        if !out.iter().any(|o| o.star == inv.star) {
            out.push(inv);
        }
    };
    if ring.is_commutative() {
        push(Involution::identity(ring).expect("identity on a commutative ring"), &mut out);
        if let Ok(f) = frobenius(ring) {
            if let Ok(inv) = validate_involution(ring, f.image().to_vec(), "frobenius") {
                push(inv, &mut out);
            }
        }
    }
    match ring.kind() {
        RingKind::Product(factors) => {
            if factors.len() == 2 && factors[0] == factors[1] {
                if let Ok(inv) = swap_involution(ring) {
                    push(inv, &mut out);
                }
            }
            let per_factor: Vec<Vec<Involution>> = factors.iter().map(standard_involutions).collect();
            if per_factor.iter().all(|l| !l.is_empty()) {
                let mut choice = vec![0usize; factors.len()];
                loop {
                    let parts: Vec<&Involution> = choice.iter().enumerate().map(|(i, &c)| &per_factor[i][c]).collect();
                    if let Ok(inv) = componentwise(ring, &parts) {
                        push(inv, &mut out);
                    }
                    let mut i = 0;
                    while i < choice.len() {
                        choice[i] += 1;
                        if choice[i] < per_factor[i].len() {
                            break;
                        }
                        choice[i] = 0;
                        i += 1;
                    }
                    if i == choice.len() {
                        break;
                    }
                }
            }
        }
        RingKind::Matrix { .. } => {
            if let Ok(inv) = transpose_involution(ring) {
                push(inv, &mut out);
            }
        }
        _ => {}
    }
    out
}

/// `(a, b)⋆ = (b, a)` on `A × A`.
pub fn swap_involution(ring: &FiniteRing) -> Result<Involution, StarError> {
    let RingKind::Product(factors) = ring.kind() else {
        return Err(StarError::Unavailable("swap needs a product ring".into()));
    };
    if factors.len() != 2 || factors[0] != factors[1] {
        return Err(StarError::Unavailable("swap needs two equal factors".into()));
    }
    let q = factors[0].size();
    let table = ring.elements().map(|x| (x % q) * q + x / q).collect();
    validate_involution(ring, table, "swap")
}

/// Matrix transpose; valid when the base ring is commutative.
pub fn transpose_involution(ring: &FiniteRing) -> Result<Involution, StarError> {
    let RingKind::Matrix { base, dim } = ring.kind() else {
        return Err(StarError::Unavailable("transpose needs a matrix ring".into()));
    };
    let (q, k) = (base.size(), *dim);
    let table = ring
        .elements()
        .map(|x| {
            let entries = digits(x, q, k * k);
            let t: Vec<Elem> = (0..k * k).map(|idx| entries[(idx % k) * k + idx / k]).collect();
            undigits(&t, q)
        })
        .collect();
    validate_involution(ring, table, "transpose")
}

/// `(x_1, …, x_k)⋆ = (x_1⋆, …, x_k⋆)` on a product ring.
pub fn componentwise(ring: &FiniteRing, parts: &[&Involution]) -> Result<Involution, StarError> {
    let RingKind::Product(factors) = ring.kind() else {
        return Err(StarError::Unavailable("componentwise needs a product ring".into()));
    };
    if factors.len() != parts.len() || factors.iter().zip(parts).any(|(f, p)| f != p.ring()) {
        return Err(StarError::Unavailable("involutions do not match the factors".into()));
    }
    let table = ring
        .elements()
        .map(|mut x| {
            let mut coords = Vec::with_capacity(factors.len());
            for f in factors {
                coords.push(x % f.size());
                x /= f.size();
            }
            factors
                .iter()
                .zip(parts)
                .zip(&coords)
                .rev()
                .fold(0, |acc, ((f, p), &c)| acc * f.size() + p.apply(c))
        })
        .collect();
    let label = if parts.iter().all(|p| p.is_identity()) && ring.is_commutative() {
        "id".to_string()
    } else {
        format!("componentwise({})", parts.iter().map(|p| p.label()).collect::<Vec<_>>().join(","))
    };
    validate_involution(ring, table, label)
}

/// Every involution of a ring of at most `cap` elements, labelled
/// `enumerated:k` in table order.
pub fn enumerate_involutions_capped(ring: &FiniteRing, cap: usize) -> Result<Vec<Involution>, StarError> {
    if ring.size() > cap {
        return Err(StarError::SearchCapExceeded { size: ring.size(), cap });
    }
    AdditiveSearch::new(ring, Variance::AntiMultiplicative, true)
        .run()
        .into_iter()
        .enumerate()
        .map(|(k, table)| validate_involution(ring, table, format!("enumerated:{k}")))
        .collect()
}

pub fn enumerate_involutions(ring: &FiniteRing) -> Result<Vec<Involution>, StarError> {
    enumerate_involutions_capped(ring, INVOLUTION_SEARCH_CAP)
}

/// `P(R) = {p : p² = p = p⋆}` in id order.
pub fn projections(inv: &Involution) -> Vec<Elem> {
    inv.ring.elements().filter(|&p| inv.is_projection(p)).collect()
}

/// The involution `π(x)⋆ = π(x⋆)` on `R/I`, given the canonical surjection.
pub fn induced_on_quotient(inv: &Involution, ideal: &Ideal, quotient: &RingMap) -> Result<Involution, StarError> {
    inv.preserves_ideal(ideal).map_err(StarError::NotStarInvariant)?;
    let target = quotient.target();
    let mut table = vec![usize::MAX; target.size()];
    for x in inv.ring.elements() {
        table[quotient.apply(x)] = quotient.apply(inv.apply(x));
    }
    validate_involution(target, table, inv.label.clone())
}

/// Coefficientwise `(Σ a_i t^i)⋆ = Σ a_i⋆ t^i` on a truncated series with
/// identity twist over the involution's ring.
pub fn induced_on_series(inv: &Involution, series: &FiniteRing) -> Result<Involution, StarError> {
    let RingKind::SkewSeries { base, twist, length } = series.kind() else {
        return Err(StarError::Unavailable("not a truncated series ring".into()));
    };
    if base != inv.ring() || !twist.is_identity() {
        return Err(StarError::Unavailable("series must use the identity twist over the same base".into()));
    }
    let q = base.size();
    let table = series
        .elements()
        .map(|x| {
            let cs: Vec<Elem> = digits(x, q, *length).into_iter().map(|c| inv.apply(c)).collect();
            undigits(&cs, q)
        })
        .collect();
    validate_involution(series, table, inv.label.clone())
}

fn digits(mut id: usize, q: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(id % q);
        id /= q;
    }
    out
}

fn undigits(ds: &[usize], q: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * q + d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{
        direct_product, ideal_closure, make_poly_quotient, make_zn, matrix_ring, quotient_ring, truncated_skew_series,
    };

    fn z2z2() -> FiniteRing {
        let z2 = make_zn(2).unwrap();
        direct_product(&[z2.clone(), z2]).unwrap()
    }

    #[test]
    fn swap_is_valid_and_projections_are_diagonal() {
        let r = z2z2();
        let s = swap_involution(&r).unwrap();
        let names: Vec<&str> = projections(&s).iter().map(|&p| r.name(p)).collect();
        assert_eq!(names, ["(0,0)", "(1,1)"]);
        let std: Vec<String> = standard_involutions(&r).iter().map(|i| i.label().to_string()).collect();
        assert_eq!(std, ["id", "swap"]);
    }

    #[test]
    fn identity_on_matrices_is_rejected() {
        let m = matrix_ring(&make_zn(2).unwrap(), 2).unwrap();
        assert!(matches!(
            validate_involution(&m, m.elements().collect(), "id"),
            Err(StarError::NotAntiMultiplicative(..))
        ));
        let t = transpose_involution(&m).unwrap();
        let p = projections(&t);
        for name in ["[[0,0],[0,0]]", "[[1,0],[0,1]]", "[[1,0],[0,0]]", "[[0,0],[0,1]]"] {
            assert!(p.contains(&m.element_by_name(name).unwrap()), "{name}");
        }
    }

    #[test]
    fn standard_lists() {
        let z6 = make_zn(6).unwrap();
        assert_eq!(standard_involutions(&z6).len(), 1);
        let m3 = matrix_ring(&make_zn(3).unwrap(), 2).unwrap();
        let l = standard_involutions(&m3);
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].label(), "transpose");
        let f4 = make_poly_quotient(2, "x^2+x+1").unwrap();
        assert_eq!(standard_involutions(&f4).len(), 2);
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_involutions(&make_zn(2).unwrap()).unwrap().len(), 1);
        assert_eq!(enumerate_involutions(&z2z2()).unwrap().len(), 2);
        let z3 = make_zn(3).unwrap();
        assert_eq!(enumerate_involutions(&direct_product(&[z3.clone(), z3]).unwrap()).unwrap().len(), 2);
        assert!(matches!(
            enumerate_involutions(&make_zn(33).unwrap()),
            Err(StarError::SearchCapExceeded { .. })
        ));
    }

    #[test]
    fn quotient_induction() {
        let r = z2z2();
        let s = swap_involution(&r).unwrap();
        let diag = r.element_by_name("(1,1)").unwrap();
        let ideal = ideal_closure(&r, &[diag]);
        assert!(!ideal.is_proper());
        let e = r.element_by_name("(1,0)").unwrap();
        let i = ideal_closure(&r, &[e]);
        assert_eq!(s.preserves_ideal(&i), Err(e));
        let (_, pi) = quotient_ring(&r, &i).unwrap();
        assert!(matches!(induced_on_quotient(&s, &i, &pi), Err(StarError::NotStarInvariant(_))));

        let z6 = make_zn(6).unwrap();
        let id = Involution::identity(&z6).unwrap();
        let i3 = ideal_closure(&z6, &[3]);
        let (_, pi) = quotient_ring(&z6, &i3).unwrap();
        assert!(induced_on_quotient(&id, &i3, &pi).unwrap().is_identity());
    }

    #[test]
    fn series_induction() {
        let z3 = make_zn(3).unwrap();
        let s = truncated_skew_series(&z3, &RingMap::identity(&z3), 2).unwrap();
        let inv = induced_on_series(&Involution::identity(&z3).unwrap(), &s).unwrap();
        assert_eq!(s.size(), 9);
        assert!(inv.is_identity());
    }
}
