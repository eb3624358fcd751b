use super::poly::{format_ascending, format_descending, parse_integer_poly, reduce_mod};
use super::{Elem, FiniteRing, RingError, RingKind, RingMap, MAX_RING_SIZE};

fn checked_size(base: usize, exp: usize) -> Result<usize, RingError> {
    let mut size: usize = 1;
    for _ in 0..exp {
        size = size.saturating_mul(base);
        if size > MAX_RING_SIZE {
            return Err(RingError::CapExceeded { size, cap: MAX_RING_SIZE });
        }
    }
    Ok(size)
}

/// Little-endian digits of `id` in base `q`.
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

/// Fill flat tables from closures over element ids.
fn tables(size: usize, add: impl Fn(Elem, Elem) -> Elem, mul: impl Fn(Elem, Elem) -> Elem) -> (Vec<Elem>, Vec<Elem>) {
    let mut a = Vec::with_capacity(size * size);
    let mut m = Vec::with_capacity(size * size);
    for x in 0..size {
        for y in 0..size {
            a.push(add(x, y));
            m.push(mul(x, y));
        }
    }
    (a, m)
}

/// Parenthesize a coefficient name when it is a sum.
fn atom(name: &str) -> String {
    if name.contains('+') || name.contains('-') {
        format!("({name})")
    } else {
        name.to_string()
    }
}

/// Integers mod `n`, with names `"0"..."n-1"`.
pub fn make_zn(n: usize) -> Result<FiniteRing, RingError> {
    if n < 2 {
        return Err(RingError::ModulusTooSmall(n));
    }
    if n > MAX_RING_SIZE {
        return Err(RingError::CapExceeded { size: n, cap: MAX_RING_SIZE });
    }
    let (add, mul) = tables(n, |a, b| (a + b) % n, |a, b| (a * b) % n);
    FiniteRing::from_flat(
        n,
        &add,
        &mul,
        0,
        1 % n,
        Some((0..n).map(|i| i.to_string()).collect()),
        format!("Zn({n})"),
        RingKind::Zn(n),
    )
}

/// `Z_n[x]/(f)` for a monic `f` given in the polynomial grammar.
pub fn make_poly_quotient(n: usize, f: &str) -> Result<FiniteRing, RingError> {
    if n < 2 {
        return Err(RingError::ModulusTooSmall(n));
    }
    let poly = reduce_mod(&parse_integer_poly(f)?, n);
    let d = poly.len() - 1;
    if d == 0 || poly[d] != 1 {
        return Err(RingError::NonMonic(f.to_string()));
    }
    let size = checked_size(n, d)?;
    let coeffs: Vec<Vec<usize>> = (0..size).map(|id| digits(id, n, d)).collect();
    let add = |a: Elem, b: Elem| {
        let s: Vec<usize> = coeffs[a].iter().zip(&coeffs[b]).map(|(x, y)| (x + y) % n).collect();
        undigits(&s, n)
    };
    let mul = |a: Elem, b: Elem| {
        let mut prod = vec![0usize; 2 * d - 1];
        for (i, &x) in coeffs[a].iter().enumerate() {
            for (j, &y) in coeffs[b].iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % n;
            }
        }
        // x^d = -(f_0 + ... + f_{d-1} x^{d-1})
        for k in (d..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &fi) in poly[..d].iter().enumerate() {
                let idx = k - d + i;
                prod[idx] = (prod[idx] + c * ((n - fi) % n)) % n;
            }
        }
        undigits(&prod[..d], n)
    };
    let (add, mul) = tables(size, add, mul);
    let names = coeffs.iter().map(|c| format_ascending(c)).collect();
    let provenance = format!("polyq({n},\"{}\")", format_descending(&poly));
    FiniteRing::from_flat(
        size,
        &add,
        &mul,
        0,
        1,
        Some(names),
        provenance,
        RingKind::PolyQuotient { modulus: n, poly },
    )
}

/// Componentwise product. Ids are little-endian mixed radix: the first
/// factor's coordinate varies fastest.
pub fn direct_product(factors: &[FiniteRing]) -> Result<FiniteRing, RingError> {
    if factors.len() < 2 {
        return Err(RingError::TooFewFactors(factors.len()));
    }
    let mut size: usize = 1;
    for f in factors {
        size = size.saturating_mul(f.size());
        if size > MAX_RING_SIZE {
            return Err(RingError::CapExceeded { size, cap: MAX_RING_SIZE });
        }
    }
    let coords: Vec<Vec<Elem>> = (0..size)
        .map(|mut id| {
            factors
                .iter()
                .map(|f| {
                    let c = id % f.size();
                    id /= f.size();
                    c
                })
                .collect()
        })
        .collect();
    let encode = |cs: &mut dyn Iterator<Item = Elem>| {
        let cs: Vec<Elem> = cs.collect();
        factors.iter().zip(&cs).rev().fold(0, |acc, (f, &c)| acc * f.size() + c)
    };
    let add = |a: Elem, b: Elem| {
        encode(&mut factors.iter().enumerate().map(|(i, f)| f.add(coords[a][i], coords[b][i])))
    };
    let mul = |a: Elem, b: Elem| {
        encode(&mut factors.iter().enumerate().map(|(i, f)| f.mul(coords[a][i], coords[b][i])))
    };
    let (add, mul) = tables(size, add, mul);
    let zero = encode(&mut factors.iter().map(|f| f.zero()));
    let one = encode(&mut factors.iter().map(|f| f.one()));
    let names = coords
        .iter()
        .map(|cs| {
            let parts: Vec<&str> = factors.iter().zip(cs).map(|(f, &c)| f.name(c)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let provenance = format!(
        "product({})",
        factors.iter().map(|f| f.provenance()).collect::<Vec<_>>().join(",")
    );
    FiniteRing::from_flat(size, &add, &mul, zero, one, Some(names), provenance, RingKind::Product(factors.to_vec()))
}

/// Full `dim × dim` matrix ring over `base`.
pub fn matrix_ring(base: &FiniteRing, dim: usize) -> Result<FiniteRing, RingError> {
    if dim == 0 {
        return Err(RingError::BadDimension);
    }
    let q = base.size();
    let size = checked_size(q, dim * dim)?;
    let entries: Vec<Vec<Elem>> = (0..size).map(|id| digits(id, q, dim * dim)).collect();
    let add = |a: Elem, b: Elem| {
        let s: Vec<Elem> = entries[a].iter().zip(&entries[b]).map(|(&x, &y)| base.add(x, y)).collect();
        undigits(&s, q)
    };
    let mul = |a: Elem, b: Elem| {
        let (x, y) = (&entries[a], &entries[b]);
        let mut out = vec![base.zero(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = base.zero();
                for l in 0..dim {
                    acc = base.add(acc, base.mul(x[i * dim + l], y[l * dim + j]));
                }
                out[i * dim + j] = acc;
            }
        }
        undigits(&out, q)
    };
    let (add, mul) = tables(size, add, mul);
    let mut id_entries = vec![base.zero(); dim * dim];
    for i in 0..dim {
        id_entries[i * dim + i] = base.one();
    }
    let zero = undigits(&vec![base.zero(); dim * dim], q);
    let one = undigits(&id_entries, q);
    let names = entries
        .iter()
        .map(|e| {
            let rows: Vec<String> = (0..dim)
                .map(|i| {
                    let row: Vec<&str> = (0..dim).map(|j| base.name(e[i * dim + j])).collect();
                    format!("[{}]", row.join(","))
                })
                .collect();
            format!("[{}]", rows.join(","))
        })
        .collect();
    FiniteRing::from_flat(
        size,
        &add,
        &mul,
        zero,
        one,
        Some(names),
        format!("M({},{dim})", base.provenance()),
        RingKind::Matrix { base: base.clone(), dim },
    )
}

/// Lower triangular matrices `[[a,0],[m,b]]` with `a, m, b` in `base`.
pub fn triangular_ring(base: &FiniteRing) -> Result<FiniteRing, RingError> {
    let q = base.size();
    let size = checked_size(q, 3)?;
    let parts: Vec<[Elem; 3]> = (0..size).map(|id| [id % q, (id / q) % q, id / (q * q)]).collect();
    let enc = |[a, m, b]: [Elem; 3]| a + q * m + q * q * b;
    let add = |x: Elem, y: Elem| {
        let (u, v) = (parts[x], parts[y]);
        enc([base.add(u[0], v[0]), base.add(u[1], v[1]), base.add(u[2], v[2])])
    };
    let mul = |x: Elem, y: Elem| {
        let ([a, m, b], [a2, m2, b2]) = (parts[x], parts[y]);
        enc([
            base.mul(a, a2),
            base.add(base.mul(m, a2), base.mul(b, m2)),
            base.mul(b, b2),
        ])
    };
    let (add, mul) = tables(size, add, mul);
    let names = parts
        .iter()
        .map(|&[a, m, b]| format!("[[{},{}],[{},{}]]", base.name(a), base.name(base.zero()), base.name(m), base.name(b)))
        .collect();
    FiniteRing::from_flat(
        size,
        &add,
        &mul,
        enc([base.zero(), base.zero(), base.zero()]),
        enc([base.one(), base.zero(), base.one()]),
        Some(names),
        format!("tri({})", base.provenance()),
        RingKind::Triangular { base: base.clone() },
    )
}

/// `base[t; α]/(t^length)`: polynomials `a_0 + a_1 t + …` with `t·r = α(r)·t`.
pub fn truncated_skew_series(base: &FiniteRing, twist: &RingMap, length: usize) -> Result<FiniteRing, RingError> {
    if length < 2 {
        return Err(RingError::BadSeriesLength(length));
    }
    if twist.source() != base || twist.target() != base {
        return Err(RingError::Map(super::MapError::NotEndomorphism));
    }
    let q = base.size();
    let size = checked_size(q, length)?;
    // twist_pow[i][r] = α^i(r)
    let mut twist_pow: Vec<Vec<Elem>> = vec![base.elements().collect()];
    for i in 1..length {
        let prev = &twist_pow[i - 1];
        twist_pow.push(prev.iter().map(|&r| twist.apply(r)).collect());
    }
    let coeffs: Vec<Vec<Elem>> = (0..size).map(|id| digits(id, q, length)).collect();
    let add = |a: Elem, b: Elem| {
        let s: Vec<Elem> = coeffs[a].iter().zip(&coeffs[b]).map(|(&x, &y)| base.add(x, y)).collect();
        undigits(&s, q)
    };
    let mul = |a: Elem, b: Elem| {
        let mut out = vec![base.zero(); length];
        for (i, &x) in coeffs[a].iter().enumerate() {
            for (j, &y) in coeffs[b].iter().enumerate().take(length - i) {
                out[i + j] = base.add(out[i + j], base.mul(x, twist_pow[i][y]));
            }
        }
        undigits(&out, q)
    };
    let (add, mul) = tables(size, add, mul);
    let mut one = vec![base.zero(); length];
    one[0] = base.one();
    let names = coeffs
        .iter()
        .map(|cs| {
            let terms: Vec<String> = cs
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c != base.zero())
                .map(|(i, &c)| {
                    let name = base.name(c);
                    match (i, name == base.name(base.one())) {
                        (0, _) => name.to_string(),
                        (1, true) => "t".to_string(),
                        (1, false) => format!("{}*t", atom(name)),
                        (i, true) => format!("t^{i}"),
                        (i, false) => format!("{}*t^{i}", atom(name)),
                    }
                })
                .collect();
            if terms.is_empty() {
                base.name(base.zero()).to_string()
            } else {
                terms.join("+")
            }
        })
        .collect();
    FiniteRing::from_flat(
        size,
        &add,
        &mul,
        undigits(&vec![base.zero(); length], q),
        undigits(&one, q),
        Some(names),
        format!("trunc({},{},{length})", base.provenance(), twist.label()),
        RingKind::SkewSeries { base: base.clone(), twist: twist.clone(), length },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(ring: &FiniteRing, pred: impl Fn(Elem) -> bool) -> usize {
        ring.elements().filter(|&x| pred(x)).count()
    }

    #[test]
    fn zn_basics() {
        assert!(matches!(make_zn(1), Err(RingError::ModulusTooSmall(1))));
        let z2 = make_zn(2).unwrap();
        assert_eq!(z2.size(), 2);
        assert_eq!(z2.provenance(), "Zn(2)");
        let z6 = make_zn(6).unwrap();
        assert_eq!(z6.mul(4, 5), 2);
        assert_eq!(z6.name(5), "5");
    }

    #[test]
    fn poly_quotient_dual_numbers() {
        let r = make_poly_quotient(2, "x^2").unwrap();
        let names: Vec<&str> = r.elements().map(|e| r.name(e)).collect();
        assert_eq!(names, ["0", "1", "x", "1+x"]);
        let x = r.element_by_name("x").unwrap();
        assert_eq!(r.mul(x, x), r.zero());
        assert_eq!(r.provenance(), "polyq(2,\"x^2\")");
    }

    #[test]
    fn poly_quotient_field_f4() {
        let f4 = make_poly_quotient(2, "x^2+x+1").unwrap();
        let inv = f4.inverses();
        assert_eq!(inv.iter().filter(|i| i.is_some()).count(), 3);
        let x = f4.element_by_name("x").unwrap();
        assert_eq!(f4.name(f4.mul(x, x)), "1+x");
    }

    #[test]
    fn poly_quotient_degree_one_collapses() {
        let r = make_poly_quotient(3, "x^1").unwrap();
        assert_eq!(r.size(), 3);
        assert!(r.is_commutative());
        assert_eq!(r.characteristic(), 3);
    }

    #[test]
    fn poly_quotient_errors() {
        assert!(matches!(make_poly_quotient(4, "2x^2+1"), Err(RingError::NonMonic(_))));
        assert!(matches!(make_poly_quotient(2, "1"), Err(RingError::NonMonic(_))));
        assert!(matches!(make_poly_quotient(2, "x^^2"), Err(RingError::Parse(_))));
        // 2x^2 + x^2 = 3x^2 ≡ x^2 mod 2: monic after reduction
        assert!(make_poly_quotient(2, "3x^2+1").is_ok());
    }

    #[test]
    fn product_ids_little_endian() {
        let z2 = make_zn(2).unwrap();
        let z3 = make_zn(3).unwrap();
        let p = direct_product(&[z2.clone(), z3]).unwrap();
        assert_eq!(p.size(), 6);
        assert_eq!(p.name(1), "(1,0)");
        assert_eq!(p.name(2), "(0,1)");
        assert_eq!(p.characteristic(), 6);
        assert!(matches!(direct_product(&[z2]), Err(RingError::TooFewFactors(1))));
    }

    #[test]
    fn matrix_ring_over_z2() {
        let z2 = make_zn(2).unwrap();
        let m = matrix_ring(&z2, 2).unwrap();
        assert_eq!(m.size(), 16);
        assert!(!m.is_commutative());
        assert_eq!(m.name(m.one()), "[[1,0],[0,1]]");
        let inv = m.inverses();
        assert_eq!(inv.iter().filter(|i| i.is_some()).count(), 6);
        assert_eq!(count(&m, |x| m.mul(x, x) == x), 8);
        let m1 = matrix_ring(&z2, 1).unwrap();
        assert_eq!(m1.size(), 2);
        assert_eq!(m1.name(1), "[[1]]");
    }

    #[test]
    fn matrix_cap() {
        let z3 = make_zn(3).unwrap();
        assert!(matches!(matrix_ring(&z3, 3), Err(RingError::CapExceeded { .. })));
    }

    #[test]
    fn triangular_over_z2() {
        let z2 = make_zn(2).unwrap();
        let t = triangular_ring(&z2).unwrap();
        assert_eq!(t.size(), 8);
        assert_eq!(t.name(t.one()), "[[1,0],[0,1]]");
        let e = t.element_by_name("[[1,0],[1,0]]").unwrap();
        assert_eq!(t.mul(e, e), e);
        assert!(!t.is_commutative());
    }

    #[test]
    fn truncated_series_identity_twist() {
        let z2 = make_zn(2).unwrap();
        let s = truncated_skew_series(&z2, &RingMap::identity(&z2), 3).unwrap();
        assert_eq!(s.size(), 8);
        assert_eq!(s.provenance(), "trunc(Zn(2),id,3)");
        let t = s.element_by_name("t").unwrap();
        assert_eq!(s.pow(t, 3), s.zero());
        assert_ne!(s.pow(t, 2), s.zero());
        assert!(matches!(
            truncated_skew_series(&z2, &RingMap::identity(&z2), 1),
            Err(RingError::BadSeriesLength(1))
        ));
    }
}
