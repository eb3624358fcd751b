use crate::ring::{
    jacobson_radical, natural_gradings, principal_ideals, quotient_ring, Elem, FiniteRing, Ideal, RingKind, RingMap,
};
use crate::search::CorpusEntry;
use crate::star::{standard_involutions, Involution};

use super::{coords, CheckId, CheckInput};

/// Rings above this size skip the ideal, grading and polynomial sweeps.
pub const SWEEP_RING_CAP: usize = 64;
/// Size limits for truncated series built from star rings.
pub const STAR_SERIES_CAPS: [(usize, usize); 2] = [(2, 9), (3, 6)];
/// Integer polynomials used for the product check over `Z[x]`.
pub const PRODUCT_POLYNOMIALS: &[&[i64]] = &[&[0, -1, 1], &[0, 1, 1], &[0, -1, 0, 1], &[1, 1]];

fn proper_nonzero_ideals(r: &FiniteRing) -> Vec<Ideal> {
    let mut out: Vec<Ideal> = principal_ideals(r)
        .into_iter()
        .filter(|i| i.is_proper() && !i.is_zero())
        .collect();
    let j = jacobson_radical(r);
    if j.is_proper() && !j.is_zero() && !out.iter().any(|i| i.members() == j.members()) {
        out.push(j);
    }
    out
}

fn projection_maps(p: &FiniteRing) -> Vec<RingMap> {
    let RingKind::Product(factors) = p.kind() else { return Vec::new() };
    (0..factors.len())
        .map(|k| {
            let image: Vec<Elem> = p.elements().map(|x| coords(factors, x)[k]).collect();
            RingMap::new(p, &factors[k], image, format!("projection {}", k + 1)).expect("projections are homomorphisms")
        })
        .collect()
}

fn cartesian(lists: &[Vec<Involution>]) -> Vec<Vec<Involution>> {
    lists.iter().fold(vec![Vec::new()], |acc, l| {
        acc.iter()
            .flat_map(|prefix| {
                l.iter().map(move |i| {
                    let mut v = prefix.clone();
                    v.push(i.clone());
                    v
                })
            })
            .collect()
    })
}

/// Every applicable `(check, input)` pairing for a corpus, in catalog order,
/// then corpus order.
pub fn corpus_inputs(corpus: &[CorpusEntry]) -> Vec<(CheckId, CheckInput)> {
    let mut out = Vec::new();
    let id = |n| CheckId::new(n).unwrap();
    let small = |e: &&CorpusEntry| e.ring.size() <= SWEEP_RING_CAP;
    let ideals: Vec<Vec<Ideal>> = corpus
        .iter()
        .map(|e| if e.ring.size() <= SWEEP_RING_CAP { proper_nonzero_ideals(&e.ring) } else { Vec::new() })
        .collect();
    let with_ideals = || corpus.iter().zip(&ideals);

    // C01: quotients and product projections
    for (e, is) in with_ideals() {
        for i in is {
            out.push((id(1), CheckInput::Quotient { ring: e.ring.clone(), ideal: i.clone() }));
        }
        for m in projection_maps(&e.ring) {
            out.push((id(1), CheckInput::Surjection(m)));
        }
    }
    for e in corpus {
        if let RingKind::Product(fs) = e.ring.kind() {
            out.push((id(2), CheckInput::Factors(fs.clone())));
        }
    }
    for n in 3..=8 {
        for e in corpus {
            out.push((id(n), CheckInput::Ring(e.ring.clone())));
        }
    }
    for e in corpus {
        if let RingKind::SkewSeries { twist, length, .. } = e.ring.kind() {
            out.push((id(9), CheckInput::Series { twist: twist.clone(), length: *length }));
        }
    }
    for (e, is) in with_ideals() {
        for i in is {
            out.push((id(10), CheckInput::Quotient { ring: e.ring.clone(), ideal: i.clone() }));
        }
    }
    for e in corpus {
        if matches!(e.ring.kind(), RingKind::Triangular { .. }) {
            out.push((id(11), CheckInput::Ring(e.ring.clone())));
        }
    }
    for e in corpus {
        out.push((id(12), CheckInput::Ring(e.ring.clone())));
    }
    for e in corpus.iter().filter(small) {
        for g in natural_gradings(&e.ring).into_iter().filter(|g| g.parts().len() > 1) {
            out.push((id(13), CheckInput::Graded(g)));
        }
    }
    // C14: polynomial images under quotient maps
    for (e, is) in with_ideals() {
        for i in is {
            let (_, map) = quotient_ring(&e.ring, i).expect("proper ideal");
            for g in &e.polynomials {
                out.push((id(14), CheckInput::GEpimorphism { map: map.clone(), g: g.clone() }));
            }
        }
    }
    for e in corpus.iter().filter(small) {
        if let RingKind::Product(fs) = e.ring.kind() {
            for g in PRODUCT_POLYNOMIALS {
                out.push((id(15), CheckInput::FactorsG { factors: fs.clone(), g: g.to_vec() }));
            }
        }
    }
    for e in corpus.iter().filter(|e| e.ring.size() <= super::g_checks::GRID_RING_CAP) {
        out.push((id(16), CheckInput::Ring(e.ring.clone())));
    }
    for n in 17..=19 {
        for e in corpus.iter().filter(small) {
            for deg in [2, 3] {
                out.push((id(n), CheckInput::RingDegree { ring: e.ring.clone(), n: deg }));
            }
        }
    }
    let stars = || corpus.iter().flat_map(|e| e.involutions.iter());
    for n in 20..=23 {
        for inv in stars() {
            out.push((id(n), CheckInput::StarRing(inv.clone())));
        }
    }
    let star_quotients: Vec<(Involution, Ideal)> = with_ideals()
        .flat_map(|(e, is)| {
            e.involutions.iter().flat_map(move |inv| {
                is.iter()
                    .filter(|i| inv.preserves_ideal(i).is_ok())
                    .map(move |i| (inv.clone(), i.clone()))
            })
        })
        .collect();
    for (inv, ideal) in &star_quotients {
        out.push((id(24), CheckInput::StarQuotient { inv: inv.clone(), ideal: ideal.clone() }));
    }
    for inv in stars() {
        for (length, cap) in STAR_SERIES_CAPS {
            if inv.ring().size() <= cap {
                out.push((id(25), CheckInput::StarSeries { inv: inv.clone(), length }));
            }
        }
    }
    for (inv, ideal) in &star_quotients {
        out.push((id(26), CheckInput::StarQuotient { inv: inv.clone(), ideal: ideal.clone() }));
    }
    for e in corpus {
        let maps = projection_maps(&e.ring);
        for inv in &e.involutions {
            for m in &maps {
                for target in standard_involutions(m.target()) {
                    out.push((
                        id(26),
                        CheckInput::StarSurjection { map: m.clone(), source: inv.clone(), target },
                    ));
                }
            }
        }
    }
    for e in corpus {
        if let RingKind::Product(fs) = e.ring.kind() {
            let lists: Vec<Vec<Involution>> = fs.iter().map(standard_involutions).collect();
            for parts in cartesian(&lists) {
                out.push((id(27), CheckInput::StarFactors(parts)));
            }
        }
    }
    for n in 28..=33 {
        for inv in stars() {
            out.push((id(n), CheckInput::StarRing(inv.clone())));
        }
    }
    out
}
