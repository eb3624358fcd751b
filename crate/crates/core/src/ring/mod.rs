//! Finite unital rings stored as dense Cayley tables.
//!
//! Every ring in this crate is a [`FiniteRing`]: a cheap-to-clone handle to a
//! validated pair of `size × size` tables plus the designated zero and one.
//! Constructors in [`construct`] record how a ring was built (its
//! [`RingKind`]) so later stages can print structured element names and pick
//! standard involutions.

mod construct;
mod grading;
mod ideal;
mod map;
pub mod poly;
mod sub;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

pub use construct::{
    direct_product, make_poly_quotient, make_zn, matrix_ring, triangular_ring,
    truncated_skew_series,
};
pub use grading::{grading_validate, natural_gradings, Grading, GradingError};
pub use ideal::{
    ideal_closure, idempotents_lift, is_regular_ideal, jacobson_radical, principal_ideals, quotient_ring, Ideal,
};
pub use map::{
    additive_generators, endomorphisms, endomorphisms_capped, frobenius, AdditiveSearch, MapError, RingMap,
    Variance, ENDOMORPHISM_SEARCH_CAP,
};
pub use sub::{center, corner_ring, subring, Embedding};

/// Element identifier: an index into the ring's tables.
pub type Elem = usize;

/// Hard cap on the number of elements of any constructed ring.
pub const MAX_RING_SIZE: usize = 4096;

/// Rings up to this size get an exhaustive O(n³) axiom scan; larger rings
/// are spot-checked on [`SAMPLED_TRIPLES`] random triples.
pub const FULL_VALIDATION_LIMIT: usize = 512;

pub const SAMPLED_TRIPLES: usize = 100_000;

/// One failed ring axiom, with the first offending tuple in id order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `(R, +)` is not an abelian group; `detail` names the failing law.
    NotAGroup { detail: &'static str, witness: Vec<Elem> },
    NotAssociative { a: Elem, b: Elem, c: Elem },
    /// `side` is `"left"` for `a(b+c) ≠ ab+ac`, `"right"` for `(a+b)c ≠ ac+bc`.
    NotDistributive { side: &'static str, a: Elem, b: Elem, c: Elem },
    /// The designated zero or one is not an identity.
    BadIdentity { which: &'static str, witness: Elem },
    ZeroEqualsOne,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::NotAGroup { detail, witness } => {
                write!(f, "NotAGroup: {detail} fails at {witness:?}")
            }
            AxiomViolation::NotAssociative { a, b, c } => {
                write!(f, "NotAssociative: a(bc) != (ab)c at ({a}, {b}, {c})")
            }
            AxiomViolation::NotDistributive { side, a, b, c } => {
                write!(f, "NotDistributive ({side}) at ({a}, {b}, {c})")
            }
            AxiomViolation::BadIdentity { which, witness } => {
                write!(f, "BadIdentity: {which} is not an identity for element {witness}")
            }
            AxiomViolation::ZeroEqualsOne => write!(f, "ZeroEqualsOne"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("malformed tables: {0}")]
    Shape(String),
    #[error("ring axioms violated: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Axioms(Vec<AxiomViolation>),
    #[error("ring would have {size} elements, above the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("Z_n needs n >= 2, got {0}")]
    ModulusTooSmall(usize),
    #[error(transparent)]
    Parse(#[from] poly::ParseError),
    #[error("polynomial {0} is not monic of degree >= 1")]
    NonMonic(String),
    #[error("a direct product needs at least two factors, got {0}")]
    TooFewFactors(usize),
    #[error("matrix size must be at least 1")]
    BadDimension,
    #[error("series length must be at least 2, got {0}")]
    BadSeriesLength(usize),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("element {0} is not idempotent")]
    NotIdempotent(Elem),
    #[error("the corner of 0 is the zero ring")]
    ZeroCorner,
    #[error("ideal is the whole ring; the quotient would have zero = one")]
    ImproperIdeal,
    #[error("subset is not a subring: {0}")]
    NotSubring(String),
    #[error("element id {0} out of range")]
    BadElement(Elem),
}

/// How a ring was produced. Composite variants keep their inputs so element
/// names and standard involutions can be derived from the structure.
#[derive(Clone, Debug)]
pub enum RingKind {
    Tables,
    Zn(usize),
    /// `Z_n[x]/(f)` with `f` monic, coefficients constant-first.
    PolyQuotient { modulus: usize, poly: Vec<usize> },
    /// Element ids are little-endian mixed radix over the factors.
    Product(Vec<FiniteRing>),
    /// `dim × dim` matrices, entries row-major, little-endian ids.
    Matrix { base: FiniteRing, dim: usize },
    /// Lower triangular `[[a,0],[m,b]]`; id = a + q·m + q²·b.
    Triangular { base: FiniteRing },
    /// `base[t; α]/(t^length)`, coefficients little-endian.
    SkewSeries { base: FiniteRing, twist: RingMap, length: usize },
    /// Cosets listed by their least representative in `parent`.
    Quotient { parent: FiniteRing, representatives: Vec<Elem> },
    /// A subset of `parent` closed under the operations; `members` sorted.
    Sub { parent: FiniteRing, members: Vec<Elem> },
}

pub(crate) struct RingData {
    size: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    zero: Elem,
    one: Elem,
    names: Vec<String>,
    provenance: String,
    kind: RingKind,
    lookup: HashMap<String, Elem>,
    pub(crate) sets: OnceLock<Arc<crate::classify::BasicSets>>,
}

/// A validated finite unital ring. Cloning shares the underlying tables.
#[derive(Clone)]
pub struct FiniteRing(Arc<RingData>);

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("provenance", &self.0.provenance)
            .field("size", &self.0.size)
            .finish()
    }
}

impl PartialEq for FiniteRing {
    /// Same tables and identities; names and provenance are ignored.
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.size == other.0.size
                && self.0.zero == other.0.zero
                && self.0.one == other.0.one
                && self.0.add == other.0.add
                && self.0.mul == other.0.mul)
    }
}

impl Eq for FiniteRing {}

pub(crate) fn normalize_name(name: &str) -> String {
    name.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Validate raw tables and return a ring with default `#id` names.
///
/// On failure, the error carries the first failing tuple for each axiom that
/// does not hold.
pub fn build_ring(
    add: Vec<Vec<Elem>>,
    mul: Vec<Vec<Elem>>,
    zero: Elem,
    one: Elem,
) -> Result<FiniteRing, RingError> {
    let size = add.len();
    if size < 2 {
        return Err(RingError::Shape(format!("need at least 2 elements, got {size}")));
    }
    if size > MAX_RING_SIZE {
        return Err(RingError::CapExceeded { size, cap: MAX_RING_SIZE });
    }
    if mul.len() != size {
        return Err(RingError::Shape("add and mul tables differ in size".into()));
    }
    let mut flat_add = Vec::with_capacity(size * size);
    let mut flat_mul = Vec::with_capacity(size * size);
    for (row_a, row_m) in add.iter().zip(&mul) {
        if row_a.len() != size || row_m.len() != size {
            return Err(RingError::Shape("tables are not square".into()));
        }
        for (&a, &m) in row_a.iter().zip(row_m) {
            if a >= size || m >= size {
                return Err(RingError::Shape(format!("entry {} out of range", a.max(m))));
            }
            flat_add.push(a);
            flat_mul.push(m);
        }
    }
    if zero >= size || one >= size {
        return Err(RingError::Shape("zero or one out of range".into()));
    }
    FiniteRing::from_flat(
        size,
        &flat_add,
        &flat_mul,
        zero,
        one,
        None,
        "tables".to_string(),
        RingKind::Tables,
    )
}

impl FiniteRing {
    /// Assemble a ring from flat row-major tables and run validation.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_flat(
        size: usize,
        add: &[Elem],
        mul: &[Elem],
        zero: Elem,
        one: Elem,
        names: Option<Vec<String>>,
        provenance: String,
        kind: RingKind,
    ) -> Result<FiniteRing, RingError> {
        if size > MAX_RING_SIZE {
            return Err(RingError::CapExceeded { size, cap: MAX_RING_SIZE });
        }
        let add16: Vec<u16> = add.iter().map(|&x| x as u16).collect();
        let mul16: Vec<u16> = mul.iter().map(|&x| x as u16).collect();
        let violations = validate_tables(size, &add16, &mul16, zero, one);
        if !violations.is_empty() {
            return Err(RingError::Axioms(violations));
        }
        let mut neg = vec![0u16; size];
        for a in 0..size {
            let b = (0..size)
                .find(|&b| add16[a * size + b] as usize == zero)
                .expect("validated group has inverses");
            neg[a] = b as u16;
        }
        let names = names.unwrap_or_else(|| (0..size).map(|i| format!("#{i}")).collect());
        let mut lookup = HashMap::with_capacity(size);
        for (i, n) in names.iter().enumerate() {
            lookup.entry(normalize_name(n)).or_insert(i);
        }
        Ok(FiniteRing(Arc::new(RingData {
            size,
            add: add16,
            mul: mul16,
            neg,
            zero,
            one,
            names,
            provenance,
            kind,
            lookup,
            sets: OnceLock::new(),
        })))
    }

    pub(crate) fn data(&self) -> &RingData {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn zero(&self) -> Elem {
        self.0.zero
    }

    pub fn one(&self) -> Elem {
        self.0.one
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.0.size
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.0.add[a * self.0.size + b] as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul[a * self.0.size + b] as Elem
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a] as Elem
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `a·b·c`, associated left to right.
    #[inline]
    pub fn mul3(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        self.mul(self.mul(a, b), c)
    }

    pub fn pow(&self, a: Elem, exp: u32) -> Elem {
        (0..exp).fold(self.one(), |acc, _| self.mul(acc, a))
    }

    /// The image of the integer `k` under `Z → R`.
    pub fn from_int(&self, k: i64) -> Elem {
        let mut acc = self.zero();
        for _ in 0..k.unsigned_abs() {
            acc = self.add(acc, self.one());
        }
        if k < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }

    pub fn additive_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.zero() {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    /// Additive order of one.
    pub fn characteristic(&self) -> usize {
        self.additive_order(self.one())
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.0.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    /// Canonical constructor expression, e.g. `product(Zn(2),Zn(2))`.
    pub fn provenance(&self) -> &str {
        &self.0.provenance
    }

    pub fn kind(&self) -> &RingKind {
        &self.0.kind
    }

    /// Resolve an element by display name (whitespace-insensitive) or `#id`.
    pub fn element_by_name(&self, name: &str) -> Option<Elem> {
        let key = normalize_name(name);
        if let Some(&e) = self.0.lookup.get(&key) {
            return Some(e);
        }
        key.strip_prefix('#')
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&i| i < self.size())
    }

    /// Row `a` of the multiplication table: `{a·r}` as a membership mask.
    pub fn right_multiples(&self, a: Elem) -> Vec<bool> {
        let mut mask = vec![false; self.size()];
        for r in self.elements() {
            mask[self.mul(a, r)] = true;
        }
        mask
    }

    /// `{r·a}` as a membership mask.
    pub fn left_multiples(&self, a: Elem) -> Vec<bool> {
        let mut mask = vec![false; self.size()];
        for r in self.elements() {
            mask[self.mul(r, a)] = true;
        }
        mask
    }

    /// Two-sided inverse of each element, if any, by table scan.
    pub fn inverses(&self) -> Vec<Option<Elem>> {
        let one = self.one();
        self.elements()
            .map(|a| {
                self.elements()
                    .find(|&b| self.mul(a, b) == one && self.mul(b, a) == one)
            })
            .collect()
    }
}

/// Full or sampled axiom scan. Returns at most one violation per axiom.
fn validate_tables(size: usize, add: &[u16], mul: &[u16], zero: Elem, one: Elem) -> Vec<AxiomViolation> {
    let mut out = Vec::new();
    if zero == one {
        out.push(AxiomViolation::ZeroEqualsOne);
    }
    let ad = |a: usize, b: usize| add[a * size + b] as usize;
    let mu = |a: usize, b: usize| mul[a * size + b] as usize;

    // Additive identity, inverses and commutativity are O(n²) and always full.
    if let Some(a) = (0..size).find(|&a| ad(zero, a) != a || ad(a, zero) != a) {
        out.push(AxiomViolation::BadIdentity { which: "zero", witness: a });
    }
    if let Some(a) = (0..size).find(|&a| !(0..size).any(|b| ad(a, b) == zero)) {
        out.push(AxiomViolation::NotAGroup { detail: "additive inverse", witness: vec![a] });
    }
    if let Some((a, b)) =
        (0..size).flat_map(|a| (0..size).map(move |b| (a, b))).find(|&(a, b)| ad(a, b) != ad(b, a))
    {
        out.push(AxiomViolation::NotAGroup { detail: "commutativity", witness: vec![a, b] });
    }
    if let Some(a) = (0..size).find(|&a| mu(one, a) != a || mu(a, one) != a) {
        out.push(AxiomViolation::BadIdentity { which: "one", witness: a });
    }

    let triples: Box<dyn Iterator<Item = (usize, usize, usize)>> = if size <= FULL_VALIDATION_LIMIT {
        Box::new(
            (0..size).flat_map(move |a| (0..size).flat_map(move |b| (0..size).map(move |c| (a, b, c)))),
        )
    } else {
        let mut rng = StdRng::seed_from_u64(0x5eed_0f_f1e1d);
        let sample: Vec<_> = (0..SAMPLED_TRIPLES)
            .map(|_| (rng.gen_range(0..size), rng.gen_range(0..size), rng.gen_range(0..size)))
            .collect();
        Box::new(sample.into_iter())
    };
    let mut add_assoc = None;
    let mut mul_assoc = None;
    let mut left = None;
    let mut right = None;
    for (a, b, c) in triples {
        if add_assoc.is_none() && ad(ad(a, b), c) != ad(a, ad(b, c)) {
            add_assoc = Some(vec![a, b, c]);
        }
        if mul_assoc.is_none() && mu(mu(a, b), c) != mu(a, mu(b, c)) {
            mul_assoc = Some((a, b, c));
        }
        if left.is_none() && mu(a, ad(b, c)) != ad(mu(a, b), mu(a, c)) {
            left = Some((a, b, c));
        }
        if right.is_none() && mu(ad(a, b), c) != ad(mu(a, c), mu(b, c)) {
            right = Some((a, b, c));
        }
        if add_assoc.is_some() && mul_assoc.is_some() && left.is_some() && right.is_some() {
            break;
        }
    }
    if let Some(w) = add_assoc {
        out.push(AxiomViolation::NotAGroup { detail: "associativity", witness: w });
    }
    if let Some((a, b, c)) = mul_assoc {
        out.push(AxiomViolation::NotAssociative { a, b, c });
    }
    if let Some((a, b, c)) = left {
        out.push(AxiomViolation::NotDistributive { side: "left", a, b, c });
    }
    if let Some((a, b, c)) = right {
        out.push(AxiomViolation::NotDistributive { side: "right", a, b, c });
    }
    out
}
