use thiserror::Error;

use super::{Elem, FiniteRing, RingKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradingError {
    #[error("no parts given")]
    Empty,
    #[error("part {part} is not an additive subgroup (witness {witness:?})")]
    NotSubgroup { part: usize, witness: Vec<Elem> },
    #[error("parts do not form an internal direct sum (witness {witness})")]
    NotDirectSum { witness: Elem },
    #[error("one is not in the degree-0 part")]
    OneNotInG0,
    #[error("G_{n}·G_{m} escapes G_{}: {a}·{b}", .n + .m)]
    ProductLeak { n: usize, m: usize, a: Elem, b: Elem },
}

/// `R = G_0 ⊕ … ⊕ G_k` with `G_n G_m ⊆ G_{n+m}` (and `G_j = 0` for `j > k`).
#[derive(Clone, Debug)]
pub struct Grading {
    ring: FiniteRing,
    parts: Vec<Vec<Elem>>,
    label: String,
}

impl Grading {
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn parts(&self) -> &[Vec<Elem>] {
        &self.parts
    }

    pub fn degree_zero(&self) -> &[Elem] {
        &self.parts[0]
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Homogeneous components of `x`, one per part.
    pub fn decompose(&self, x: Elem) -> Vec<Elem> {
        let r = &self.ring;
        let mut found = None;
        let mut choice = vec![0usize; self.parts.len()];
        'outer: loop {
            let sum = choice.iter().enumerate().fold(r.zero(), |acc, (i, &c)| r.add(acc, self.parts[i][c]));
            if sum == x {
                found = Some(choice.iter().enumerate().map(|(i, &c)| self.parts[i][c]).collect());
                break;
            }
            for i in 0..choice.len() {
                choice[i] += 1;
                if choice[i] < self.parts[i].len() {
                    continue 'outer;
                }
                choice[i] = 0;
            }
            break;
        }
        found.expect("validated grading decomposes every element")
    }
}

pub fn grading_validate(ring: &FiniteRing, parts: Vec<Vec<Elem>>) -> Result<Grading, GradingError> {
    grading_with_label(ring, parts, "custom")
}

fn grading_with_label(ring: &FiniteRing, parts: Vec<Vec<Elem>>, label: &str) -> Result<Grading, GradingError> {
    if parts.is_empty() {
        return Err(GradingError::Empty);
    }
    let n = ring.size();
    let mut masks = Vec::with_capacity(parts.len());
    let mut sorted_parts = Vec::with_capacity(parts.len());
    for (i, p) in parts.iter().enumerate() {
        let mut mask = vec![false; n];
        for &x in p {
            if x >= n {
                return Err(GradingError::NotSubgroup { part: i, witness: vec![x] });
            }
            mask[x] = true;
        }
        if !mask[ring.zero()] {
            return Err(GradingError::NotSubgroup { part: i, witness: vec![ring.zero()] });
        }
        let members: Vec<Elem> = ring.elements().filter(|&x| mask[x]).collect();
        for &a in &members {
            for &b in &members {
                if !mask[ring.add(a, b)] {
                    return Err(GradingError::NotSubgroup { part: i, witness: vec![a, b] });
                }
            }
        }
        masks.push(mask);
        sorted_parts.push(members);
    }
    // Direct sum: the sum map from the product of parts is a bijection.
    let total: usize = sorted_parts.iter().map(|p| p.len()).product();
    if total != n {
        let mut span = vec![false; n];
        span[ring.zero()] = true;
        for p in &sorted_parts {
            let cur: Vec<Elem> = ring.elements().filter(|&x| span[x]).collect();
            for &s in &cur {
                for &x in p {
                    span[ring.add(s, x)] = true;
                }
            }
        }
        let witness = ring.elements().find(|&x| !span[x]).unwrap_or(ring.zero());
        return Err(GradingError::NotDirectSum { witness });
    }
    let mut hit = vec![false; n];
    let mut sums = vec![ring.zero()];
    for p in &sorted_parts {
        sums = sums.iter().flat_map(|&s| p.iter().map(move |&x| ring.add(s, x))).collect();
    }
    for s in sums {
        if hit[s] {
            return Err(GradingError::NotDirectSum { witness: s });
        }
        hit[s] = true;
    }
    if !masks[0][ring.one()] {
        return Err(GradingError::OneNotInG0);
    }
    let k = sorted_parts.len();
    for i in 0..k {
        for j in 0..k {
            for &a in &sorted_parts[i] {
                for &b in &sorted_parts[j] {
                    let p = ring.mul(a, b);
                    let ok = if i + j < k { masks[i + j][p] } else { p == ring.zero() };
                    if !ok {
                        return Err(GradingError::ProductLeak { n: i, m: j, a, b });
                    }
                }
            }
        }
    }
    Ok(Grading { ring: ring.clone(), parts: sorted_parts, label: label.to_string() })
}

/// Gradings that come with the constructor: the trivial one for every ring,
/// plus degree gradings of `Z_n[x]/(x^d)` and truncated series, and the
/// diagonal/off-diagonal grading of triangular rings.
pub fn natural_gradings(ring: &FiniteRing) -> Vec<Grading> {
    let mut out = vec![grading_with_label(ring, vec![ring.elements().collect()], "trivial")
        .expect("trivial grading is valid")];
    let graded: Option<(Vec<Vec<Elem>>, &str)> = match ring.kind() {
        RingKind::PolyQuotient { modulus, poly } if poly[..poly.len() - 1].iter().all(|&c| c == 0) => {
            let d = poly.len() - 1;
            let parts = (0..d)
                .map(|deg| (0..*modulus).map(|c| c * modulus.pow(deg as u32)).collect())
                .collect();
            Some((parts, "degree"))
        }
        RingKind::SkewSeries { base, length, .. } => {
            let q = base.size();
            let parts = (0..*length).map(|deg| (0..q).map(|c| c * q.pow(deg as u32)).collect()).collect();
            Some((parts, "degree"))
        }
        RingKind::Triangular { base } => {
            let q = base.size();
            let diag = (0..q).flat_map(|a| (0..q).map(move |b| a + q * q * b)).collect();
            let off = (0..q).map(|m| q * m).collect();
            Some((vec![diag, off], "diagonal"))
        }
        _ => None,
    };
    if let Some((parts, label)) = graded {
        if parts.len() > 1 {
            if let Ok(g) = grading_with_label(ring, parts, label) {
                out.push(g);
            }
        }
    }
    out
}
