use crate::classify::{CentralPolynomial, Decomp};
use crate::ring::{corner_ring, direct_product, Elem, FiniteRing, RingMap};

use super::{coords, Ctx, Outcome};

/// Size limit for the coefficient grid of C16.
pub const GRID_RING_CAP: usize = 36;

fn x_pow_minus_x(ring: &FiniteRing, n: u32) -> CentralPolynomial {
    let mut coeffs = vec![0i64; n as usize + 1];
    coeffs[1] = -1;
    coeffs[n as usize] += 1;
    CentralPolynomial::from_integers(ring, &coeffs).expect("x^n - x has degree n ≥ 2")
}

/// `(decomposition, plus)` for a weakly g-r-clean element.
fn g_decomp(p: &crate::classify::GProfile) -> Option<(Decomp, bool)> {
    p.g_r_clean.map(|d| (d, true)).or(p.weakly_g_r_clean_t2.map(|d| (d, false)))
}

pub(super) fn c14(ctx: &Ctx, theta: &RingMap, g: &CentralPolynomial) -> Outcome {
    let (r, s) = (theta.source(), theta.target());
    if g.ring().provenance() != r.provenance() || g.ring().size() != r.size() {
        return Outcome::na("polynomial lives over the source", g.ring().provenance());
    }
    if !theta.is_surjective() {
        let missing = s.elements().find(|y| !theta.image().contains(y)).unwrap();
        return Outcome::na("map is surjective", s.name(missing));
    }
    let an = ctx.cl.analyzer(r, None, Some(g));
    let mut decomps = Vec::with_capacity(r.size());
    for x in r.elements() {
        match g_decomp(&an.g_part(x).unwrap()) {
            Some(d) => decomps.push(d),
            None => return Outcome::na("is_weakly_g_r_clean(source)", r.name(x)),
        }
    }
    let gs = g.image(theta);
    let ss = ctx.cl.sets(s);
    for (x, (d, plus)) in decomps.iter().enumerate() {
        let (a, b) = (theta.apply(d.first), theta.apply(d.second));
        let sum = if *plus { s.add(a, b) } else { s.sub(a, b) };
        if !ss.is_regular(a) || !gs.is_root(b) || sum != theta.apply(x) {
            return Outcome::cex(r.name(x), "image decomposition fails for θ'(g)", x + 1);
        }
    }
    let target_an = ctx.cl.analyzer(s, None, Some(&gs));
    if let Some(y) = s.elements().find(|&y| !target_an.weakly_g_r_clean(y)) {
        return Outcome::cex(s.name(y), "target is not weakly θ'(g)-r-clean", r.size() + s.size());
    }
    Outcome::verified(
        format!("θ'(g) has degree {}; every image decomposition holds", gs.degree()),
        r.size() + s.size(),
    )
}

pub(super) fn c15(ctx: &Ctx, factors: &[FiniteRing], g: &[i64]) -> Outcome {
    let p = match direct_product(factors) {
        Ok(p) => p,
        Err(e) => return Outcome::na("product fits the size cap", e.to_string()),
    };
    let mut polys = Vec::new();
    for f in factors.iter().chain(std::iter::once(&p)) {
        match CentralPolynomial::from_integers(f, g) {
            Ok(q) => polys.push(q),
            Err(e) => return Outcome::na("g keeps positive degree in every factor", format!("{}: {e}", f.provenance())),
        }
    }
    let gp = polys.pop().unwrap();
    let profiles = |ring: &FiniteRing, q: &CentralPolynomial| {
        let an = ctx.cl.analyzer(ring, None, Some(q));
        ring.elements().map(|x| an.g_part(x).unwrap()).collect::<Vec<_>>()
    };
    let fp: Vec<_> = factors.iter().zip(&polys).map(|(f, q)| profiles(f, q)).collect();
    let pp = profiles(&p, &gp);
    let weak = |v: &[crate::classify::GProfile]| v.iter().all(|x| g_decomp(x).is_some());
    let full = |v: &[crate::classify::GProfile]| v.iter().all(|x| x.g_r_clean.is_some());
    let lhs = weak(&pp);
    let all_weak = fp.iter().all(|v| weak(v));
    let not_full = fp.iter().filter(|v| !full(v)).count();
    let rhs = all_weak && not_full <= 1;
    for x in p.elements() {
        let cs = coords(factors, x);
        let t1 = cs.iter().zip(&fp).all(|(&c, v)| v[c].g_r_clean.is_some());
        let t2 = cs.iter().zip(&fp).all(|(&c, v)| v[c].weakly_g_r_clean_t2.is_some());
        if pp[x].g_r_clean.is_some() != t1 || pp[x].weakly_g_r_clean_t2.is_some() != t2 {
            return Outcome::cex(p.name(x), "decomposition types disagree with the coordinates", x + 1);
        }
    }
    if lhs != rhs {
        return Outcome::cex(
            p.provenance(),
            format!("product weakly g-r-clean = {lhs}, factor condition = {rhs} (factors not g-r-clean: {not_full})"),
            p.size(),
        );
    }
    Outcome::verified(format!("both sides {lhs}; factors not g-r-clean: {not_full}"), p.size())
}

pub(super) fn c16(ctx: &Ctx, r: &FiniteRing) -> Outcome {
    if r.size() > GRID_RING_CAP {
        return Outcome::na(format!("size ≤ {GRID_RING_CAP}"), r.size().to_string());
    }
    let sets = ctx.cl.sets(r);
    let mut scanned = 0;
    for &a in sets.central.iter().filter(|&&a| a != r.zero()) {
        for &b in &sets.central {
            for n in [1usize, 2] {
                let build = |sign_b: Elem| {
                    let mut c = vec![r.zero(); 2 * n + 1];
                    c[1] = sign_b;
                    c[2 * n] = a;
                    CentralPolynomial::new(r, c, "grid").expect("central coefficients, a ≠ 0")
                };
                let (gm, gp) = (build(r.neg(b)), build(b));
                let (am, ap) = (ctx.cl.analyzer(r, None, Some(&gm)), ctx.cl.analyzer(r, None, Some(&gp)));
                for x in r.elements() {
                    scanned += 1;
                    if am.weakly_g_r_clean(x) != ap.weakly_g_r_clean(r.neg(x)) {
                        return Outcome::cex(
                            format!("a={}, b={}, n={n}, x={}", r.name(a), r.name(b), r.name(x)),
                            "x and −x disagree under the two signs",
                            scanned,
                        );
                    }
                }
            }
        }
    }
    Outcome::verified(format!("{scanned} (a, b, n, x) cases agree"), scanned)
}

pub(super) fn c17(ctx: &Ctx, r: &FiniteRing, n: u32) -> Outcome {
    if n < 2 {
        return Outcome::na("n ≥ 2", n.to_string());
    }
    let sets = ctx.cl.sets(r);
    let ts: Vec<Elem> = r.elements().filter(|&t| r.pow(t, n - 1) == r.one()).collect();
    let hyp = |a: Elem| {
        ts.iter()
            .any(|&t| sets.is_regular(r.sub(a, t)) || sets.is_regular(r.add(a, t)))
    };
    if let Some(a) = r.elements().find(|&a| !hyp(a)) {
        return Outcome::na(format!("every a = r ± t with t^{} = 1", n - 1), r.name(a));
    }
    let g = x_pow_minus_x(r, n);
    if let Some(&t) = ts.iter().find(|&&t| !g.is_root(t)) {
        return Outcome::cex(r.name(t), "t is not a root of x^n − x", r.size());
    }
    let an = ctx.cl.analyzer(r, None, Some(&g));
    if let Some(x) = r.elements().find(|&x| !an.weakly_g_r_clean(x)) {
        return Outcome::cex(r.name(x), "not weakly (x^n − x)-r-clean", r.size());
    }
    Outcome::verified(format!("n = {n}; {} admissible t", ts.len()), r.size())
}

pub(super) fn c18(ctx: &Ctx, r: &FiniteRing, n: u32) -> Outcome {
    if n < 2 {
        return Outcome::na("n ≥ 2", n.to_string());
    }
    let g = x_pow_minus_x(r, n);
    let an_r = ctx.cl.analyzer(r, None, Some(&g));
    let sets = ctx.cl.sets(r);
    let mut seen = Vec::new();
    let mut scanned = 0;
    for e in g.roots() {
        let big_e = r.pow(e, n - 1);
        if big_e == r.zero() || seen.contains(&big_e) {
            continue;
        }
        seen.push(big_e);
        let (corner, emb) = corner_ring(r, big_e).expect("e^{n-1} is a nonzero idempotent");
        let gc = x_pow_minus_x(&corner, n);
        let an = ctx.cl.analyzer(&corner, None, Some(&gc));
        let cs = ctx.cl.sets(&corner);
        let ce = r.sub(r.one(), big_e);
        for a in corner.elements() {
            let Some(d) = an.g_part(a).unwrap().strongly_g_clean else { continue };
            scanned += 1;
            let w = cs.inverse(d.first).unwrap();
            let v = r.sub(emb.apply(d.first), ce);
            let vinv = r.sub(emb.apply(w), ce);
            let s = r.add(emb.apply(d.second), ce);
            let big_a = emb.apply(a);
            let ok = r.mul(v, vinv) == r.one()
                && r.mul(vinv, v) == r.one()
                && g.is_root(s)
                && r.mul(v, s) == r.mul(s, v)
                && r.add(v, s) == big_a
                && sets.is_unit(v)
                && an_r.g_part(big_a).unwrap().strongly_g_clean.is_some();
            if !ok {
                return Outcome::cex(
                    format!("e={}, a={}", r.name(e), r.name(big_a)),
                    "lifted strongly g-clean decomposition fails",
                    scanned,
                );
            }
        }
    }
    if scanned == 0 {
        return Outcome::na("some corner element is strongly g-clean", r.provenance());
    }
    Outcome::verified(format!("n = {n}; {scanned} corner decompositions lifted"), scanned)
}

pub(super) fn c19(ctx: &Ctx, r: &FiniteRing, n: u32) -> Outcome {
    if n < 2 {
        return Outcome::na("n ≥ 2", n.to_string());
    }
    let c = ctx.census(r);
    if !Ctx::flag(&c, "abelian") {
        return Outcome::na("abelian", Ctx::flag_witness(&c, "abelian"));
    }
    let g = x_pow_minus_x(r, n);
    let an = ctx.cl.analyzer(r, None, Some(&g));
    let sets = ctx.cl.sets(r);
    let roots = g.roots();
    let mut scanned = 0;
    for a in r.elements() {
        let Some(d) = an.g_part(a).unwrap().g_clean else { continue };
        let uinv = sets.inverse(d.first).unwrap();
        for &e in &roots {
            scanned += 1;
            let big_e = r.pow(e, n - 1);
            let ce = r.sub(r.one(), big_e);
            let v = r.sub(r.mul(d.first, big_e), ce);
            let vinv = r.sub(r.mul(uinv, big_e), ce);
            let s = r.add(r.mul(d.second, big_e), ce);
            let target = r.mul(a, big_e);
            let ok = r.mul(v, vinv) == r.one()
                && r.mul(vinv, v) == r.one()
                && g.is_root(s)
                && r.add(v, s) == target
                && an.g_part(target).unwrap().g_clean.is_some();
            if !ok {
                return Outcome::cex(format!("a={}, e={}", r.name(a), r.name(e)), "a·e^{n−1} decomposition fails", scanned);
            }
        }
    }
    Outcome::verified(format!("n = {n}; {scanned} pairs (a, e) checked"), scanned)
}
