//! Shared fixtures for the benchmarks.

use finring::{build_spec, FiniteRing, Involution};

/// Rings of increasing size across the constructor families.
pub const CENSUS_SPECS: &[&str] = &[
    "Zn(36)",
    "product(Zn(6),Zn(10))",
    "M(Zn(2),2)",
    "tri(Zn(3))",
    "trunc(polyq(2,\"x^2+x+1\"),frobenius,2)",
    "M(Zn(3),2)",
    "product(Zn(16),Zn(16))",
];

pub fn ring(spec: &str) -> FiniteRing {
    build_spec(spec).expect("fixture spec builds").ring
}

pub fn starred(spec: &str) -> (FiniteRing, Involution) {
    let b = build_spec(spec).expect("fixture spec builds");
    (b.ring, b.involution.expect("fixture has an involution"))
}
