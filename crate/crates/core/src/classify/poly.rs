use thiserror::Error;

use crate::ring::poly::{parse_integer_poly, IntPoly, ParseError};
use crate::ring::{Elem, FiniteRing, RingMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("coefficient {index} ({name}) is not central")]
    NotCentral { index: usize, name: String },
    #[error("polynomial has degree < 1 after reduction in this ring")]
    DegreeTooLow,
    #[error("coefficient id {0} out of range")]
    BadElement(Elem),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// `g(x) = Σ a_i x^i` with every `a_i` in the center, constant term first.
#[derive(Clone, Debug)]
pub struct CentralPolynomial {
    ring: FiniteRing,
    coeffs: Vec<Elem>,
    label: String,
}

impl PartialEq for CentralPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.ring == other.ring
    }
}

impl CentralPolynomial {
    /// Validate coefficients; trailing zeros are dropped before the degree
    /// check.
    pub fn new(ring: &FiniteRing, coeffs: Vec<Elem>, label: impl Into<String>) -> Result<Self, PolyError> {
        let mut coeffs = coeffs;
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= ring.size()) {
            return Err(PolyError::BadElement(bad));
        }
        while coeffs.len() > 1 && *coeffs.last().unwrap() == ring.zero() {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(PolyError::DegreeTooLow);
        }
        for (index, &c) in coeffs.iter().enumerate() {
            if ring.elements().any(|r| ring.mul(c, r) != ring.mul(r, c)) {
                return Err(PolyError::NotCentral { index, name: ring.name(c).to_string() });
            }
        }
        Ok(CentralPolynomial { ring: ring.clone(), coeffs, label: label.into() })
    }

    /// Integer coefficients mapped through `k ↦ k·1`, which is always central.
    pub fn from_integers(ring: &FiniteRing, coeffs: &[i64]) -> Result<Self, PolyError> {
        let ids = coeffs.iter().map(|&k| ring.from_int(k)).collect();
        CentralPolynomial::new(ring, ids, IntPoly(coeffs).to_string())
    }

    /// Parse `g` in the polynomial grammar (signed integer coefficients).
    pub fn parse(ring: &FiniteRing, text: &str) -> Result<Self, PolyError> {
        let coeffs = parse_integer_poly(text)?;
        CentralPolynomial::from_integers(ring, &coeffs)
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Horner evaluation; the coefficients commute with `x`.
    pub fn eval(&self, x: Elem) -> Elem {
        let r = &self.ring;
        self.coeffs.iter().rev().fold(r.zero(), |acc, &c| r.add(r.mul(acc, x), c))
    }

    pub fn is_root(&self, x: Elem) -> bool {
        self.eval(x) == self.ring.zero()
    }

    /// `{s : g(s) = 0}` in id order.
    pub fn roots(&self) -> Vec<Elem> {
        self.ring.elements().filter(|&s| self.is_root(s)).collect()
    }

    /// `θ'(g)`: apply a surjection to each coefficient. The degree may drop
    /// (even to zero) when the leading coefficient dies in the target.
    pub fn image(&self, theta: &RingMap) -> CentralPolynomial {
        let target = theta.target();
        let mut coeffs: Vec<Elem> = self.coeffs.iter().map(|&c| theta.apply(c)).collect();
        while coeffs.len() > 1 && *coeffs.last().unwrap() == target.zero() {
            coeffs.pop();
        }
        CentralPolynomial { ring: target.clone(), coeffs, label: self.label.clone() }
    }
}
