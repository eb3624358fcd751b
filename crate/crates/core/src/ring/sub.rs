use super::{Elem, FiniteRing, RingError, RingKind};

/// Inclusion of a subset-ring into its parent. Preserves `+` and `·`; it is
/// unital only when the sub-ring's one is the parent's one.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub sub: FiniteRing,
    pub parent: FiniteRing,
    image: Vec<Elem>,
}

impl Embedding {
    pub fn apply(&self, x: Elem) -> Elem {
        self.image[x]
    }

    pub fn image(&self) -> &[Elem] {
        &self.image
    }

    /// Preimage of a parent element, if it lies in the sub-ring.
    pub fn preimage(&self, y: Elem) -> Option<Elem> {
        self.image.binary_search(&y).ok()
    }

    pub fn is_unital(&self) -> bool {
        self.image[self.sub.one()] == self.parent.one()
    }
}

/// The ring on `members` (closed under `+`, `·`) with unity `one`.
pub fn subring(
    ring: &FiniteRing,
    members: &[Elem],
    one: Elem,
    provenance: String,
) -> Result<(FiniteRing, Embedding), RingError> {
    let mut members: Vec<Elem> = members.to_vec();
    members.sort_unstable();
    members.dedup();
    let index = |x: Elem| members.binary_search(&x);
    let k = members.len();
    let mut add = Vec::with_capacity(k * k);
    let mut mul = Vec::with_capacity(k * k);
    for &a in &members {
        for &b in &members {
            let s = index(ring.add(a, b))
                .map_err(|_| RingError::NotSubring(format!("{} + {} escapes", ring.name(a), ring.name(b))))?;
            let p = index(ring.mul(a, b))
                .map_err(|_| RingError::NotSubring(format!("{} * {} escapes", ring.name(a), ring.name(b))))?;
            add.push(s);
            mul.push(p);
        }
    }
    let zero = index(ring.zero()).map_err(|_| RingError::NotSubring("missing zero".into()))?;
    let one = index(one).map_err(|_| RingError::NotSubring("missing unity".into()))?;
    let names = members.iter().map(|&m| ring.name(m).to_string()).collect();
    let sub = FiniteRing::from_flat(
        k,
        &add,
        &mul,
        zero,
        one,
        Some(names),
        provenance,
        RingKind::Sub { parent: ring.clone(), members: members.clone() },
    )?;
    Ok((sub.clone(), Embedding { sub, parent: ring.clone(), image: members }))
}

/// `eRe` for an idempotent `e ≠ 0`, with unity `e`.
pub fn corner_ring(ring: &FiniteRing, e: Elem) -> Result<(FiniteRing, Embedding), RingError> {
    if e >= ring.size() {
        return Err(RingError::BadElement(e));
    }
    if ring.mul(e, e) != e {
        return Err(RingError::NotIdempotent(e));
    }
    if e == ring.zero() {
        return Err(RingError::ZeroCorner);
    }
    let members: Vec<Elem> = ring.elements().map(|r| ring.mul3(e, r, e)).collect();
    subring(ring, &members, e, format!("corner({},\"{}\")", ring.provenance(), ring.name(e)))
}

/// `C(R) = {c : cr = rc for all r}`.
pub fn center(ring: &FiniteRing) -> (FiniteRing, Embedding) {
    let members: Vec<Elem> = ring
        .elements()
        .filter(|&c| ring.elements().all(|r| ring.mul(c, r) == ring.mul(r, c)))
        .collect();
    subring(ring, &members, ring.one(), format!("center({})", ring.provenance()))
        .expect("the center is a unital subring")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_zn, matrix_ring, triangular_ring};

    #[test]
    fn corner_of_matrix_unit() {
        let m = matrix_ring(&make_zn(2).unwrap(), 2).unwrap();
        let e11 = m.element_by_name("[[1,0],[0,0]]").unwrap();
        let (c, emb) = corner_ring(&m, e11).unwrap();
        assert_eq!(c.size(), 2);
        assert_eq!(emb.apply(c.one()), e11);
        assert!(!emb.is_unital());
        assert!(matches!(corner_ring(&m, m.zero()), Err(RingError::ZeroCorner)));
        let n = m.element_by_name("[[0,1],[0,0]]").unwrap();
        assert!(matches!(corner_ring(&m, n), Err(RingError::NotIdempotent(_))));
    }

    #[test]
    fn corner_of_one_is_whole_ring() {
        let z6 = make_zn(6).unwrap();
        let (c, emb) = corner_ring(&z6, 1).unwrap();
        assert_eq!(c, z6);
        assert!(emb.is_unital());
    }

    #[test]
    fn centers() {
        let m = matrix_ring(&make_zn(2).unwrap(), 2).unwrap();
        let (c, emb) = center(&m);
        assert_eq!(c.size(), 2);
        assert_eq!(emb.image(), &[m.zero(), m.one()]);
        let z6 = make_zn(6).unwrap();
        assert_eq!(center(&z6).0.size(), 6);
        let t = triangular_ring(&make_zn(2).unwrap()).unwrap();
        let (ct, e) = center(&t);
        assert_eq!(ct.size(), 2);
        assert_eq!(t.name(e.apply(ct.one())), "[[1,0],[0,1]]");
    }
}
