use crate::classify::Decomp;
use crate::ring::{
    corner_ring, center, idempotents_lift, is_regular_ideal, quotient_ring, subring, truncated_skew_series,
    Elem, FiniteRing, Grading, Ideal, RingKind, RingMap,
};

use super::{coords, names, Ctx, Outcome};

/// Either decomposition of a weakly r-clean element, with its sign.
fn r_decomp(p: &crate::classify::ElementProfile) -> Option<(Decomp, bool)> {
    p.r_clean.map(|d| (d, true)).or(p.weakly_r_clean_t2.map(|d| (d, false)))
}

pub(super) fn c01(ctx: &Ctx, theta: &RingMap) -> Outcome {
    let (r, s) = (theta.source(), theta.target());
    if !theta.is_surjective() {
        let missing = s.elements().find(|y| !theta.image().contains(y)).unwrap();
        return Outcome::na("map is surjective", s.name(missing));
    }
    let cr = ctx.census(r);
    if !Ctx::flag(&cr, "is_weakly_r_clean") {
        return Outcome::na("is_weakly_r_clean(source)", Ctx::flag_witness(&cr, "is_weakly_r_clean"));
    }
    let ss = ctx.cl.sets(s);
    for p in &cr.profiles {
        let (d, plus) = r_decomp(p).expect("source is weakly r-clean");
        let (a, b) = (theta.apply(d.first), theta.apply(d.second));
        let sum = if plus { s.add(a, b) } else { s.sub(a, b) };
        if !ss.is_regular(a) || !ss.is_idempotent(b) || sum != theta.apply(p.element) {
            return Outcome::cex(
                r.name(p.element),
                format!("image decomposition {} {} {} fails in target", s.name(a), if plus { "+" } else { "-" }, s.name(b)),
                p.element + 1,
            );
        }
    }
    let cs = ctx.census(s);
    if !Ctx::flag(&cs, "is_weakly_r_clean") {
        return Outcome::cex(Ctx::flag_witness(&cs, "is_weakly_r_clean"), "target is not weakly r-clean", r.size());
    }
    Outcome::verified("every image decomposition is a decomposition in the target", r.size() + s.size())
}

pub(super) fn c02(ctx: &Ctx, factors: &[FiniteRing]) -> Outcome {
    let p = match crate::ring::direct_product(factors) {
        Ok(p) => p,
        Err(e) => return Outcome::na("product fits the size cap", e.to_string()),
    };
    let cp = ctx.census(&p);
    let cf: Vec<_> = factors.iter().map(|f| ctx.census(f)).collect();
    let lhs = Ctx::flag(&cp, "is_weakly_r_clean");
    let all_weak = cf.iter().all(|c| Ctx::flag(c, "is_weakly_r_clean"));
    let not_r = cf.iter().filter(|c| !Ctx::flag(c, "is_r_clean")).count();
    let rhs = all_weak && not_r <= 1;
    if lhs != rhs {
        return Outcome::cex(
            p.provenance(),
            format!("product weakly r-clean = {lhs}, factor condition = {rhs}"),
            p.size(),
        );
    }
    for x in p.elements() {
        let cs = coords(factors, x);
        let px = cp.profile(x);
        let t1 = cs.iter().zip(&cf).all(|(&c, f)| f.profile(c).r_clean.is_some());
        let t2 = cs.iter().zip(&cf).all(|(&c, f)| f.profile(c).weakly_r_clean_t2.is_some());
        if px.r_clean.is_some() != t1 || px.weakly_r_clean_t2.is_some() != t2 {
            return Outcome::cex(p.name(x), "decomposition types disagree with the coordinates", x + 1);
        }
    }
    Outcome::verified(
        format!(
            "both sides {lhs}; factors not r-clean: {not_r} (every finite ring is clean, so the count clause is vacuous)"
        ),
        p.size(),
    )
}

pub(super) fn c03(ctx: &Ctx, r: &FiniteRing) -> Outcome {
    let c = ctx.census(r);
    if !Ctx::flag(&c, "no_zero_divisors") {
        return Outcome::na("no_zero_divisors", Ctx::flag_witness(&c, "no_zero_divisors"));
    }
    let sets = ctx.cl.sets(r);
    for &x in &sets.regulars {
        if x == r.zero() {
            continue;
        }
        let y = sets.regular_witness(x).unwrap();
        let yx = r.mul(y, x);
        if r.mul(x, r.sub(r.one(), yx)) != r.zero() || yx != r.one() || !sets.is_unit(x) {
            return Outcome::cex(r.name(x), "nonzero regular element is not a unit", x + 1);
        }
    }
    let (a, b) = (Ctx::flag(&c, "is_weakly_clean"), Ctx::flag(&c, "is_weakly_r_clean"));
    if a != b {
        return Outcome::cex(r.provenance(), format!("weakly clean = {a}, weakly r-clean = {b}"), r.size());
    }
    Outcome::verified(format!("both sides {a}; nonzero regular elements are units"), r.size())
}

pub(super) fn c04(ctx: &Ctx, r: &FiniteRing) -> Outcome {
    let sets = ctx.cl.sets(r);
    let mut scanned = 0;
    for &e in &sets.idempotents {
        if e == r.zero() {
            continue;
        }
        let (corner, emb) = corner_ring(r, e).expect("nonzero idempotent");
        let cs = ctx.cl.sets(&corner);
        let an = ctx.cl.analyzer(&corner, None, None);
        let ce = r.sub(r.one(), e);
        for a in corner.elements() {
            let Some(d) = an.weakly_clean_t2(a) else { continue };
            scanned += 1;
            let w = cs.inverse(d.first).expect("corner unit");
            let v = r.add(emb.apply(d.first), ce);
            let vinv = r.add(emb.apply(w), ce);
            let ebar = r.add(emb.apply(d.second), ce);
            let ok = r.mul(v, vinv) == r.one()
                && r.mul(vinv, v) == r.one()
                && r.mul(ebar, ebar) == ebar
                && r.sub(v, ebar) == emb.apply(a);
            if !ok {
                return Outcome::cex(
                    format!("e={}, a={}", r.name(e), r.name(emb.apply(a))),
                    "lifted unit or idempotent fails",
                    scanned,
                );
            }
        }
    }
    if scanned == 0 {
        return Outcome::na("some corner element has a unit-minus-idempotent form", r.provenance());
    }
    Outcome::verified(format!("{scanned} corner decompositions lifted"), scanned)
}

fn abelian_or_na(ctx: &Ctx, r: &FiniteRing) -> Result<crate::classify::Census, Outcome> {
    let c = ctx.census(r);
    if Ctx::flag(&c, "abelian") {
        Ok(c)
    } else {
        Err(Outcome::na("abelian", Ctx::flag_witness(&c, "abelian")))
    }
}

pub(super) fn c05(ctx: &Ctx, r: &FiniteRing) -> Outcome {
    let c = match abelian_or_na(ctx, r) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let sets = ctx.cl.sets(r);
    let mut scanned = 0;
    for p in c.profiles.iter().filter(|p| p.is_weakly_clean()) {
        let a = p.element;
        for &e in &sets.idempotents {
            scanned += 1;
            let ae = r.mul(a, e);
            if !c.profile(ae).is_weakly_clean() {
                return Outcome::cex(format!("a={}, e={}", r.name(a), r.name(e)), "ae is not weakly clean", scanned);
            }
            if let Some(d) = p.weakly_clean_t2 {
                let ce = r.sub(r.one(), e);
                let v = r.add(r.mul(d.first, e), ce);
                let vinv = r.add(r.mul(sets.inverse(d.first).unwrap(), e), ce);
                let ebar = r.add(r.mul(d.second, e), ce);
                let ok = r.mul(v, vinv) == r.one()
                    && r.mul(vinv, v) == r.one()
                    && r.mul(ebar, ebar) == ebar
                    && r.sub(v, ebar) == ae;
                if !ok {
                    return Outcome::cex(
                        format!("a={}, e={}", r.name(a), r.name(e)),
                        "ue + (1−e) or e'e + (1−e) fails",
                        scanned,
                    );
                }
            }
        }
    }
    Outcome::verified(format!("{scanned} products ae checked"), scanned)
}

pub(super) fn c06(ctx: &Ctx, r: &FiniteRing) -> Outcome {
    let c = match abelian_or_na(ctx, r) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let sets = ctx.cl.sets(r);
    let mut scanned = 0;
    for a in r.elements() {
        let (Some(d), Some(dn)) = (c.profile(a).clean, c.profile(r.neg(a)).clean) else { continue };
        let (u, e1, u2, e2) = (d.first, d.second, dn.first, dn.second);
        for &e in &sets.idempotents {
            scanned += 1;
            let w = format!("a={}, e={}", r.name(a), r.name(e));
            if c.profile(r.add(a, e)).clean.is_none() {
                return Outcome::cex(w, "a + e is not clean", scanned);
            }
            let ce = r.sub(r.one(), e);
            let idem = r.add(r.mul(r.sub(r.one(), e1), e), r.mul(e2, ce));
            let unit = r.sub(r.mul(u, e), r.mul(u2, ce));
            let ok = sets.is_unit(unit) && r.mul(idem, idem) == idem && r.sub(unit, idem) == r.sub(a, e);
            if !ok || !c.profile(r.sub(a, e)).is_weakly_clean() {
                return Outcome::cex(w, "a − e decomposition fails", scanned);
            }
        }
    }
    if scanned == 0 {
        return Outcome::na("some a with a and −a clean", r.provenance());
    }
    Outcome::verified(format!("{scanned} pairs (a, e) checked"), scanned)
}

pub(super) fn c07(ctx: &Ctx, r: &FiniteRing) -> Outcome {
    let c = match abelian_or_na(ctx, r) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let sets = ctx.cl.sets(r);
    for &x in &sets.regulars {
        let y = sets.regular_witness(x).unwrap();
        let e = r.mul(y, x);
        let ce = r.sub(r.one(), e);
        let u = r.add(r.mul(x, e), ce);
        let uinv = r.add(r.mul(y, e), ce);
        let ok = r.mul(e, e) == e
            && r.mul(u, uinv) == r.one()
            && r.mul(uinv, u) == r.one()
            && r.mul(u, e) == x;
        if !ok {
            return Outcome::cex(
                format!("r={}, y={}", r.name(x), r.name(y)),
                format!("e = yr = {} does not give a unit u with ue = r", r.name(e)),
                x + 1,
            );
        }
    }
    if let Some(p) = c.profiles.iter().find(|p| p.is_weakly_clean() != p.is_weakly_r_clean()) {
        return Outcome::cex(r.name(p.element), "element is weakly clean on one side only", r.size());
    }
    let v = Ctx::flag(&c, "is_weakly_clean");
    Outcome::verified(format!("both sides {v}; element sets agree"), r.size())
}

pub(super) fn c08(ctx: &Ctx, r: &FiniteRing) -> Outcome {
    let c = match abelian_or_na(ctx, r) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let sets = ctx.cl.sets(r);
    for p in &c.profiles {
        let Some(d) = p.weakly_clean_t2 else { continue };
        let x = p.element;
        let uinv = sets.inverse(d.first).unwrap();
        let f = r.mul3(uinv, r.sub(r.one(), d.second), d.first);
        if r.mul(f, f) != f || r.mul(d.first, r.add(x, f)) != r.add(r.mul(x, x), x) {
            return Outcome::cex(r.name(x), "u⁻¹(1−e)u fails as an exchange idempotent", x + 1);
        }
    }
    let a = Ctx::flag(&c, "is_weakly_r_clean");
    for side in ["is_weakly_exchange", "is_weakly_exchange_left"] {
        if Ctx::flag(&c, side) != a {
            return Outcome::cex(r.provenance(), format!("weakly r-clean = {a}, {side} = {}", !a), r.size());
        }
    }
    Outcome::verified(format!("all three verdicts {a}"), r.size())
}

pub(super) fn c09(ctx: &Ctx, twist: &RingMap, length: usize) -> Outcome {
    let base = twist.source();
    if let Err(o) = abelian_or_na(ctx, base) {
        return o;
    }
    let s = match truncated_skew_series(base, twist, length) {
        Ok(s) => s,
        Err(e) => return Outcome::na("series fits the size cap", e.to_string()),
    };
    // constant term is a surjective homomorphism onto the base
    let image: Vec<Elem> = s.elements().map(|x| x % base.size()).collect();
    if let Err(e) = RingMap::new(&s, base, image, "constant term") {
        return Outcome::cex(s.provenance(), format!("constant term map: {e}"), s.size());
    }
    let (a, b) = (
        Ctx::flag(&ctx.census(base), "is_weakly_r_clean"),
        Ctx::flag(&ctx.census(&s), "is_weakly_r_clean"),
    );
    if a != b {
        return Outcome::cex(s.provenance(), format!("base {a}, series {b}"), s.size());
    }
    Outcome::verified(format!("both sides {a}"), s.size() + base.size())
}

pub(super) fn c10(ctx: &Ctx, r: &FiniteRing, ideal: &Ideal) -> Outcome {
    if !ideal.is_proper() {
        return Outcome::na("ideal is proper", ideal.describe());
    }
    if let Err(x) = is_regular_ideal(r, ideal) {
        return Outcome::na("is_regular_ideal", r.name(x));
    }
    if let Err(x) = idempotents_lift(r, ideal) {
        return Outcome::na("idempotents_lift", r.name(x));
    }
    let (q, _) = quotient_ring(r, ideal).expect("proper ideal");
    let (a, b) = (
        Ctx::flag(&ctx.census(r), "is_weakly_r_clean"),
        Ctx::flag(&ctx.census(&q), "is_weakly_r_clean"),
    );
    if a != b {
        return Outcome::cex(q.provenance(), format!("ring {a}, quotient {b}"), r.size() + q.size());
    }
    Outcome::verified(format!("both sides {a}"), r.size() + q.size())
}

pub(super) fn c11(ctx: &Ctx, t: &FiniteRing) -> Outcome {
    let RingKind::Triangular { base } = t.kind() else {
        return Outcome::na("ring is triangular", t.provenance());
    };
    let ct = ctx.census(t);
    if !Ctx::flag(&ct, "is_weakly_r_clean") {
        return Outcome::na("is_weakly_r_clean(T)", Ctx::flag_witness(&ct, "is_weakly_r_clean"));
    }
    let q = base.size();
    let bs = ctx.cl.sets(base);
    let diag = |x: Elem| (x % q, x / (q * q));
    for p in &ct.profiles {
        let (d, plus) = r_decomp(p).unwrap();
        let (xa, xb) = diag(p.element);
        let (ra, rb) = diag(d.first);
        let (fa, fb) = diag(d.second);
        let join = |r: Elem, f: Elem| if plus { base.add(r, f) } else { base.sub(r, f) };
        let ok = bs.is_regular(ra)
            && bs.is_regular(rb)
            && bs.is_idempotent(fa)
            && bs.is_idempotent(fb)
            && join(ra, fa) == xa
            && join(rb, fb) == xb;
        if !ok {
            return Outcome::cex(t.name(p.element), "diagonal entries do not decompose", p.element + 1);
        }
    }
    if !Ctx::flag(&ctx.census(base), "is_weakly_r_clean") {
        return Outcome::cex(base.provenance(), "diagonal ring is not weakly r-clean", t.size());
    }
    Outcome::verified("diagonal entries of every decomposition decompose", t.size())
}

pub(super) fn c12(ctx: &Ctx, r: &FiniteRing) -> Outcome {
    let c = ctx.census(r);
    if !Ctx::flag(&c, "is_weakly_r_clean") {
        return Outcome::na("is_weakly_r_clean", Ctx::flag_witness(&c, "is_weakly_r_clean"));
    }
    if !Ctx::flag(&c, "trivial_idempotents_only") {
        return Outcome::na("trivial_idempotents_only", Ctx::flag_witness(&c, "trivial_idempotents_only"));
    }
    let sets = ctx.cl.sets(r);
    let (z, emb) = center(r);
    for &x in &sets.central {
        let (d, _) = r_decomp(c.profile(x)).unwrap();
        if !sets.is_central(d.first) {
            return Outcome::cex(r.name(x), format!("regular part {} is not central", r.name(d.first)), x + 1);
        }
    }
    let cz = ctx.census(&z);
    if !Ctx::flag(&cz, "is_weakly_r_clean") {
        let w = cz.ring_flag("is_weakly_r_clean").unwrap().witness[0];
        return Outcome::cex(r.name(emb.apply(w)), "center is not weakly r-clean", r.size());
    }
    Outcome::verified(format!("center of size {} is weakly r-clean", z.size()), r.size() + z.size())
}

pub(super) fn c13(ctx: &Ctx, g: &Grading) -> Outcome {
    let r = g.ring();
    let c = ctx.census(r);
    if !Ctx::flag(&c, "is_weakly_r_clean") {
        return Outcome::na("is_weakly_r_clean", Ctx::flag_witness(&c, "is_weakly_r_clean"));
    }
    let (r0, emb) = match subring(r, g.degree_zero(), r.one(), format!("grade0({},{})", r.provenance(), g.label())) {
        Ok(x) => x,
        Err(e) => return Outcome::cex(g.label(), format!("degree-zero part is not a subring: {e}"), 0),
    };
    let c0 = ctx.census(&r0);
    if !Ctx::flag(&c0, "is_weakly_r_clean") {
        let w = c0.ring_flag("is_weakly_r_clean").unwrap().witness[0];
        return Outcome::cex(r.name(emb.apply(w)), "degree-zero part is not weakly r-clean", r.size());
    }
    Outcome::verified(
        format!("degree-zero part {{{}}} is weakly r-clean", names(r, g.degree_zero())),
        r.size() + r0.size(),
    )
}
