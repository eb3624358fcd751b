//! Ring homomorphisms and the backtracking search for additive maps.

use std::fmt;

use thiserror::Error;

use super::{Elem, FiniteRing};

/// Default size limit for [`endomorphisms`].
pub const ENDOMORPHISM_SEARCH_CAP: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("image table has {got} entries, expected {expected}")]
    BadLength { got: usize, expected: usize },
    #[error("image {0} out of range")]
    OutOfRange(Elem),
    #[error("map does not preserve addition at ({0}, {1})")]
    NotAdditive(Elem, Elem),
    #[error("map does not preserve multiplication at ({0}, {1})")]
    NotMultiplicative(Elem, Elem),
    #[error("map does not send one to one")]
    NotUnital,
    #[error("map is not an endomorphism of the given ring")]
    NotEndomorphism,
    #[error("ring has {size} elements, above the search cap of {cap}")]
    SearchCapExceeded { size: usize, cap: usize },
    #[error("no Frobenius map: {0}")]
    NoFrobenius(String),
}

/// A unital ring homomorphism, stored as its image table.
#[derive(Clone)]
pub struct RingMap {
    source: FiniteRing,
    target: FiniteRing,
    image: Vec<Elem>,
    label: String,
}

impl fmt::Debug for RingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingMap({} : {} -> {})", self.label, self.source.provenance(), self.target.provenance())
    }
}

impl PartialEq for RingMap {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image && self.source == other.source && self.target == other.target
    }
}

impl RingMap {
    /// Validate `image` as a unital homomorphism `source → target`.
    pub fn new(
        source: &FiniteRing,
        target: &FiniteRing,
        image: Vec<Elem>,
        label: impl Into<String>,
    ) -> Result<RingMap, MapError> {
        if image.len() != source.size() {
            return Err(MapError::BadLength { got: image.len(), expected: source.size() });
        }
        if let Some(&bad) = image.iter().find(|&&y| y >= target.size()) {
            return Err(MapError::OutOfRange(bad));
        }
        for a in source.elements() {
            for b in source.elements() {
                if image[source.add(a, b)] != target.add(image[a], image[b]) {
                    return Err(MapError::NotAdditive(a, b));
                }
                if image[source.mul(a, b)] != target.mul(image[a], image[b]) {
                    return Err(MapError::NotMultiplicative(a, b));
                }
            }
        }
        if image[source.one()] != target.one() {
            return Err(MapError::NotUnital);
        }
        Ok(RingMap { source: source.clone(), target: target.clone(), image, label: label.into() })
    }

    pub(crate) fn new_unchecked(source: &FiniteRing, target: &FiniteRing, image: Vec<Elem>, label: String) -> RingMap {
        RingMap { source: source.clone(), target: target.clone(), image, label }
    }

    pub fn identity(ring: &FiniteRing) -> RingMap {
        RingMap::new_unchecked(ring, ring, ring.elements().collect(), "id".into())
    }

    pub fn source(&self) -> &FiniteRing {
        &self.source
    }

    pub fn target(&self) -> &FiniteRing {
        &self.target
    }

    pub fn image(&self) -> &[Elem] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.image[x]
    }

    /// Name used in constructor expressions: `id`, `frobenius`, `enumerated:k`, ...
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> RingMap {
        self.label = label.into();
        self
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &y)| i == y)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        for &y in &self.image {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// Greedy additive generating set: walk ids upward, keep each element not
/// already in the subgroup spanned so far.
pub fn additive_generators(ring: &FiniteRing) -> Vec<Elem> {
    let n = ring.size();
    let mut span = vec![false; n];
    span[ring.zero()] = true;
    let mut members = vec![ring.zero()];
    let mut gens = Vec::new();
    for g in ring.elements() {
        if span[g] {
            continue;
        }
        gens.push(g);
        // span + <g>
        let mut i = 0;
        while i < members.len() {
            let s = ring.add(members[i], g);
            if !span[s] {
                span[s] = true;
                members.push(s);
            }
            i += 1;
        }
    }
    gens
}

/// Which multiplicative law the searched maps must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    /// `f(ab) = f(a) f(b)`
    Multiplicative,
    /// `f(ab) = f(b) f(a)`
    AntiMultiplicative,
}

/// Backtracking enumeration of unital additive maps `R → R` that are
/// (anti-)multiplicative, assigning images to additive generators one at a
/// time and propagating along `a ↦ a + g`.
pub struct AdditiveSearch<'r> {
    ring: &'r FiniteRing,
    variance: Variance,
    involutive: bool,
    gens: Vec<Elem>,
    orders: Vec<usize>,
    inverses: Vec<Option<Elem>>,
}

const UNSET: Elem = Elem::MAX;

impl<'r> AdditiveSearch<'r> {
    pub fn new(ring: &'r FiniteRing, variance: Variance, involutive: bool) -> Self {
        let gens = additive_generators(ring);
        let orders = ring.elements().map(|a| ring.additive_order(a)).collect();
        AdditiveSearch { ring, variance, involutive, gens, orders, inverses: ring.inverses() }
    }

    /// All maps found, sorted by image table.
    pub fn run(&self) -> Vec<Vec<Elem>> {
        let mut img = vec![UNSET; self.ring.size()];
        img[self.ring.zero()] = self.ring.zero();
        let mut out = Vec::new();
        self.descend(0, img, &mut out);
        out.sort();
        out.dedup();
        out
    }

    fn descend(&self, level: usize, img: Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if level == self.gens.len() {
            if self.full_check(&img) {
                out.push(img);
            }
            return;
        }
        let g = self.gens[level];
        for h in self.ring.elements() {
            if !self.orders[g].is_multiple_of(self.orders[h]) {
                continue;
            }
            if self.inverses[g].is_some() && self.inverses[h].is_none() {
                continue;
            }
            let mut next = img.clone();
            if self.extend(&mut next, g, h) && self.partial_ok(&next) {
                self.descend(level + 1, next, out);
            }
        }
    }

    /// Propagate `f(a + g) = f(a) + h` from every defined `a`.
    fn extend(&self, img: &mut [Elem], g: Elem, h: Elem) -> bool {
        let r = self.ring;
        if img[g] != UNSET {
            return img[g] == h;
        }
        let mut queue: Vec<Elem> = r.elements().filter(|&a| img[a] != UNSET).collect();
        let mut i = 0;
        while i < queue.len() {
            let a = queue[i];
            let b = r.add(a, g);
            let v = r.add(img[a], h);
            if img[b] == UNSET {
                img[b] = v;
                queue.push(b);
            } else if img[b] != v {
                return false;
            }
            i += 1;
        }
        true
    }

    fn partial_ok(&self, img: &[Elem]) -> bool {
        let r = self.ring;
        if img[r.one()] != UNSET && img[r.one()] != r.one() {
            return false;
        }
        let defined: Vec<Elem> = r.elements().filter(|&a| img[a] != UNSET).collect();
        if self.involutive {
            let mut seen = vec![false; r.size()];
            for &a in &defined {
                if seen[img[a]] {
                    return false;
                }
                seen[img[a]] = true;
                let back = img[img[a]];
                if back != UNSET && back != a {
                    return false;
                }
            }
        }
        for &a in &defined {
            for &b in &defined {
                let p = img[r.mul(a, b)];
                if p == UNSET {
                    continue;
                }
                let expect = match self.variance {
                    Variance::Multiplicative => r.mul(img[a], img[b]),
                    Variance::AntiMultiplicative => r.mul(img[b], img[a]),
                };
                if p != expect {
                    return false;
                }
            }
        }
        true
    }

    fn full_check(&self, img: &[Elem]) -> bool {
        let r = self.ring;
        img.iter().all(|&v| v != UNSET)
            && img[r.one()] == r.one()
            && (!self.involutive || r.elements().all(|a| img[img[a]] == a))
            && self.partial_ok(img)
    }
}

/// Every unital ring endomorphism, identity included, in image-table order.
/// Maps are labelled `enumerated:k` by position.
pub fn endomorphisms(ring: &FiniteRing) -> Result<Vec<RingMap>, MapError> {
    endomorphisms_capped(ring, ENDOMORPHISM_SEARCH_CAP)
}

pub fn endomorphisms_capped(ring: &FiniteRing, cap: usize) -> Result<Vec<RingMap>, MapError> {
    if ring.size() > cap {
        return Err(MapError::SearchCapExceeded { size: ring.size(), cap });
    }
    Ok(AdditiveSearch::new(ring, Variance::Multiplicative, false)
        .run()
        .into_iter()
        .enumerate()
        .map(|(k, img)| RingMap::new_unchecked(ring, ring, img, format!("enumerated:{k}")))
        .collect())
}

/// `x ↦ x^p` for a commutative ring of prime characteristic `p`.
pub fn frobenius(ring: &FiniteRing) -> Result<RingMap, MapError> {
    let p = ring.characteristic();
    if !is_prime(p) {
        return Err(MapError::NoFrobenius(format!("characteristic {p} is not prime")));
    }
    if !ring.is_commutative() {
        return Err(MapError::NoFrobenius("ring is not commutative".into()));
    }
    let image = ring.elements().map(|x| ring.pow(x, p as u32)).collect();
    RingMap::new(ring, ring, image, "frobenius")
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{direct_product, make_poly_quotient, make_zn};

    #[test]
    fn zn_has_only_identity() {
        for n in [2, 3, 4, 6, 12] {
            let z = make_zn(n).unwrap();
            let e = endomorphisms(&z).unwrap();
            assert_eq!(e.len(), 1, "Z_{n}");
            assert!(e[0].is_identity());
        }
    }

    #[test]
    fn f4_identity_and_frobenius() {
        let f4 = make_poly_quotient(2, "x^2+x+1").unwrap();
        let e = endomorphisms(&f4).unwrap();
        assert_eq!(e.len(), 2);
        let frob = frobenius(&f4).unwrap();
        assert!(!frob.is_identity());
        assert!(e.iter().any(|m| m == &frob));
        assert!(e.iter().any(|m| m.is_identity()));
    }

    #[test]
    fn z2xz2_has_swap() {
        let z2 = make_zn(2).unwrap();
        let p = direct_product(&[z2.clone(), z2]).unwrap();
        let e = endomorphisms(&p).unwrap();
        // id, swap, and the two maps through the diagonal (a,b) -> (a,a), (b,b)
        let swap: Vec<Elem> = p.elements().map(|x| (x % 2) * 2 + x / 2).collect();
        assert!(e.iter().any(|m| m.image() == swap.as_slice()));
        assert_eq!(e.len(), 4);
        for m in &e {
            RingMap::new(&p, &p, m.image().to_vec(), "check").unwrap();
        }
    }

    #[test]
    fn generators_span() {
        let z2 = make_zn(2).unwrap();
        let p = direct_product(&[z2.clone(), z2.clone(), z2]).unwrap();
        assert_eq!(additive_generators(&p).len(), 3);
        let z36 = make_zn(36).unwrap();
        assert_eq!(additive_generators(&z36), vec![1]);
    }

    #[test]
    fn map_validation_errors() {
        let z2 = make_zn(2).unwrap();
        let z4 = make_zn(4).unwrap();
        assert!(matches!(RingMap::new(&z4, &z2, vec![0, 1], "x"), Err(MapError::BadLength { .. })));
        // reduction mod 2 is fine
        assert!(RingMap::new(&z4, &z2, vec![0, 1, 0, 1], "mod2").is_ok());
        // zero map is not unital
        assert!(matches!(RingMap::new(&z4, &z2, vec![0; 4], "zero"), Err(MapError::NotUnital)));
        assert!(matches!(RingMap::new(&z2, &z4, vec![0, 1], "incl"), Err(MapError::NotAdditive(1, 1))));
        assert!(matches!(frobenius(&z4), Err(MapError::NoFrobenius(_))));
        let big = make_zn(65).unwrap();
        assert!(matches!(endomorphisms(&big), Err(MapError::SearchCapExceeded { .. })));
    }
}
