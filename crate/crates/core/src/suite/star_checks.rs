use crate::classify::{Census, Decomp};
use crate::ring::{corner_ring, direct_product, quotient_ring, truncated_skew_series, Elem, FiniteRing, Ideal, RingMap};
use crate::star::{componentwise, induced_on_quotient, induced_on_series, projections, validate_involution, Involution};

use super::{coords, Ctx, Outcome};

const WSC: &str = "is_weakly_star_clean";

fn star(c: &Census, x: Elem) -> &crate::classify::StarProfile {
    c.profile(x).star.as_ref().expect("census carries an involution")
}

fn weakly_star(c: &Census, x: Elem) -> Option<(Decomp, bool)> {
    let s = star(c, x);
    s.star_clean.map(|d| (d, true)).or(s.weakly_star_clean_t2.map(|d| (d, false)))
}

fn biconditional(ring: &FiniteRing, lhs: bool, rhs: bool, what: &str) -> Outcome {
    if lhs == rhs {
        Outcome::verified(format!("both sides {lhs}"), ring.size())
    } else {
        Outcome::cex(ring.provenance(), format!("{what}: left {lhs}, right {rhs}"), ring.size())
    }
}

pub(super) fn c20(ctx: &Ctx, inv: &Involution) -> Outcome {
    let c = ctx.star_census(inv);
    if !Ctx::flag(&c, "boolean") {
        return Outcome::na("boolean", Ctx::flag_witness(&c, "boolean"));
    }
    biconditional(inv.ring(), Ctx::flag(&c, WSC), Ctx::flag(&c, "star_is_identity"), "weakly ⋆-clean vs ⋆ = id")
}

pub(super) fn c21(ctx: &Ctx, inv: &Involution) -> Outcome {
    let c = ctx.star_census(inv);
    if !Ctx::flag(&c, "two_invertible") {
        return Outcome::na("two_invertible", Ctx::flag_witness(&c, "two_invertible"));
    }
    biconditional(
        inv.ring(),
        Ctx::flag(&c, "square_roots_of_one_self_adjoint"),
        Ctx::flag(&c, "all_idempotents_projections"),
        "square roots of one vs projections",
    )
}

pub(super) fn c22(ctx: &Ctx, inv: &Involution) -> Outcome {
    let c = ctx.star_census(inv);
    if !Ctx::flag(&c, "two_invertible") {
        return Outcome::na("two_invertible", Ctx::flag_witness(&c, "two_invertible"));
    }
    let lhs = Ctx::flag(&c, "is_weakly_clean") && Ctx::flag(&c, "units_self_adjoint");
    let rhs = Ctx::flag(&c, WSC) && Ctx::flag(&c, "star_is_identity");
    biconditional(inv.ring(), lhs, rhs, "weakly clean with self-adjoint units vs weakly ⋆-clean with ⋆ = id")
}

pub(super) fn c23(ctx: &Ctx, inv: &Involution) -> Outcome {
    let r = inv.ring();
    let c = ctx.star_census(inv);
    let two_unit = Ctx::flag(&c, "two_invertible");
    let lhs = Ctx::flag(&c, WSC) && two_unit;
    let rhs = Ctx::flag(&c, "is_sasr1_or_two_p_plus_one");
    if lhs {
        // x = 2u ± (2p) + 1 from (x − 1)/2 = u ± p
        let sets = ctx.cl.sets(r);
        let half = sets.inverse(r.from_int(2)).unwrap();
        for x in r.elements() {
            let h = r.mul(r.sub(x, r.one()), half);
            let (d, plus) = weakly_star(&c, h).unwrap();
            let u2 = r.add(d.first, d.first);
            let p2 = r.add(d.second, d.second);
            let s = if plus { r.add(p2, r.one()) } else { r.sub(r.one(), p2) };
            let ok = sets.is_unit(u2)
                && r.add(u2, s) == x
                && (plus || (r.mul(s, s) == r.one() && inv.is_self_adjoint(s)));
            if !ok {
                return Outcome::cex(r.name(x), "halving construction fails", x + 1);
            }
        }
    }
    biconditional(r, lhs, rhs, "weakly ⋆-clean with 2 ∈ U vs sasr1 or 2p+1 everywhere")
}

fn quotient_pair(inv: &Involution, ideal: &Ideal) -> Result<(RingMap, Involution), Outcome> {
    if !ideal.is_proper() {
        return Err(Outcome::na("ideal is proper", ideal.describe()));
    }
    if let Err(x) = inv.preserves_ideal(ideal) {
        return Err(Outcome::na("ideal is ⋆-invariant", inv.ring().name(x)));
    }
    let (_, map) = quotient_ring(inv.ring(), ideal).expect("proper ideal");
    let induced = induced_on_quotient(inv, ideal, &map).expect("⋆-invariant ideal");
    Ok((map, induced))
}

pub(super) fn c24(ctx: &Ctx, inv: &Involution, ideal: &Ideal) -> Outcome {
    let (map, induced) = match quotient_pair(inv, ideal) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let c = ctx.star_census(inv);
    if !Ctx::flag(&c, WSC) {
        return Outcome::na("is_weakly_star_clean", Ctx::flag_witness(&c, WSC));
    }
    let cq = ctx.star_census(&induced);
    if !Ctx::flag(&cq, WSC) {
        return Outcome::cex(Ctx::flag_witness(&cq, WSC), "quotient is not weakly ⋆-clean", map.target().size());
    }
    Outcome::verified(format!("quotient of size {} is weakly ⋆-clean", map.target().size()), inv.ring().size())
}

pub(super) fn c25(ctx: &Ctx, inv: &Involution, length: usize) -> Outcome {
    let r = inv.ring();
    let s = match truncated_skew_series(r, &RingMap::identity(r), length) {
        Ok(s) => s,
        Err(e) => return Outcome::na("series fits the size cap", e.to_string()),
    };
    let sinv = induced_on_series(inv, &s).expect("identity twist");
    let c = ctx.star_census(inv);
    let cs = ctx.star_census(&sinv);
    let ssets = ctx.cl.sets(&s);
    if Ctx::flag(&c, WSC) {
        for g in s.elements() {
            // constants have the same id in the series
            let (d, plus) = weakly_star(&c, g % r.size()).unwrap();
            let p = d.second;
            let rest = if plus { s.sub(g, p) } else { s.add(g, p) };
            if !ssets.is_unit(rest) || !sinv.is_projection(p) {
                return Outcome::cex(s.name(g), "constant-term decomposition does not extend", g + 1);
            }
        }
    }
    biconditional(&s, Ctx::flag(&c, WSC), Ctx::flag(&cs, WSC), "ring vs truncated series")
}

fn star_image(ctx: &Ctx, map: &RingMap, source: &Involution, target: &Involution) -> Outcome {
    let (r, s) = (map.source(), map.target());
    let c = ctx.star_census(source);
    if !Ctx::flag(&c, WSC) {
        return Outcome::na("is_weakly_star_clean(source)", Ctx::flag_witness(&c, WSC));
    }
    let ss = ctx.cl.sets(s);
    for x in r.elements() {
        let (d, plus) = weakly_star(&c, x).unwrap();
        let (u, p) = (map.apply(d.first), map.apply(d.second));
        let sum = if plus { s.add(u, p) } else { s.sub(u, p) };
        if !ss.is_unit(u) || !target.is_projection(p) || sum != map.apply(x) {
            return Outcome::cex(r.name(x), "image decomposition fails in the target", x + 1);
        }
    }
    let ct = ctx.star_census(target);
    if !Ctx::flag(&ct, WSC) {
        return Outcome::cex(Ctx::flag_witness(&ct, WSC), "target is not weakly ⋆-clean", r.size());
    }
    Outcome::verified("every image decomposition is a ⋆-decomposition in the target", r.size() + s.size())
}

pub(super) fn c26(ctx: &Ctx, map: &RingMap, source: &Involution, target: &Involution) -> Outcome {
    if source.ring() != map.source() || target.ring() != map.target() {
        return Outcome::na("involutions live on the map's rings", format!("{} / {}", source.label(), target.label()));
    }
    if !map.is_surjective() {
        let s = map.target();
        let missing = s.elements().find(|y| !map.image().contains(y)).unwrap();
        return Outcome::na("map is surjective", s.name(missing));
    }
    if let Err(x) = source.intertwines(map, target) {
        return Outcome::na("θ(x⋆) = θ(x)⋆", map.source().name(x));
    }
    star_image(ctx, map, source, target)
}

pub(super) fn c26_quotient(ctx: &Ctx, inv: &Involution, ideal: &Ideal) -> Outcome {
    match quotient_pair(inv, ideal) {
        Ok((map, induced)) => star_image(ctx, &map, inv, &induced),
        Err(o) => o,
    }
}

pub(super) fn c27(ctx: &Ctx, parts: &[Involution]) -> Outcome {
    let factors: Vec<FiniteRing> = parts.iter().map(|i| i.ring().clone()).collect();
    let p = match direct_product(&factors) {
        Ok(p) => p,
        Err(e) => return Outcome::na("product fits the size cap", e.to_string()),
    };
    let refs: Vec<&Involution> = parts.iter().collect();
    let pinv = componentwise(&p, &refs).expect("factors match");
    let cp = ctx.star_census(&pinv);
    let cf: Vec<Census> = parts.iter().map(|i| ctx.star_census(i)).collect();
    let lhs = Ctx::flag(&cp, WSC);
    let all_weak = cf.iter().all(|c| Ctx::flag(c, WSC));
    let not_full = cf.iter().filter(|c| !Ctx::flag(c, "is_star_clean")).count();
    let rhs = all_weak && not_full <= 1;
    for x in p.elements() {
        let cs = coords(&factors, x);
        let t1 = cs.iter().zip(&cf).all(|(&c, f)| star(f, c).star_clean.is_some());
        let t2 = cs.iter().zip(&cf).all(|(&c, f)| star(f, c).weakly_star_clean_t2.is_some());
        let px = star(&cp, x);
        if px.star_clean.is_some() != t1 || px.weakly_star_clean_t2.is_some() != t2 {
            return Outcome::cex(p.name(x), "decomposition types disagree with the coordinates", x + 1);
        }
    }
    if lhs != rhs {
        return Outcome::cex(p.provenance(), format!("product {lhs}, factor condition {rhs}"), p.size());
    }
    Outcome::verified(format!("both sides {lhs}; factors not ⋆-clean: {not_full}"), p.size())
}

pub(super) fn c28(ctx: &Ctx, inv: &Involution) -> Outcome {
    let r = inv.ring();
    let c = ctx.star_census(inv);
    let sets = ctx.cl.sets(r);
    let mut scanned = 0;
    for e in projections(inv) {
        if e == r.zero() {
            continue;
        }
        let (corner, emb) = corner_ring(r, e).expect("projection is idempotent");
        let table: Vec<Elem> = corner
            .elements()
            .map(|x| emb.preimage(inv.apply(emb.apply(x))).expect("eRe is ⋆-closed"))
            .collect();
        let cinv = match validate_involution(&corner, table, format!("{}|e", inv.label())) {
            Ok(i) => i,
            Err(err) => return Outcome::cex(r.name(e), format!("restricted involution: {err}"), scanned),
        };
        let cc = ctx.star_census(&cinv);
        let cs = ctx.cl.sets(&corner);
        let ce = r.sub(r.one(), e);
        for a in corner.elements() {
            let Some(d) = star(&cc, a).strongly_star_clean else { continue };
            scanned += 1;
            let w = cs.inverse(d.first).unwrap();
            let v = r.sub(emb.apply(d.first), ce);
            let vinv = r.sub(emb.apply(w), ce);
            let p = r.add(emb.apply(d.second), ce);
            let big_a = emb.apply(a);
            let ok = r.mul(v, vinv) == r.one()
                && r.mul(vinv, v) == r.one()
                && inv.is_projection(p)
                && r.mul(v, p) == r.mul(p, v)
                && r.add(v, p) == big_a
                && sets.is_unit(v)
                && star(&c, big_a).strongly_star_clean.is_some();
            if !ok {
                return Outcome::cex(format!("e={}, a={}", r.name(e), r.name(big_a)), "lifted decomposition fails", scanned);
            }
        }
    }
    if scanned == 0 {
        return Outcome::na("some corner element is strongly ⋆-clean", r.provenance());
    }
    Outcome::verified(format!("{scanned} corner decompositions lifted"), scanned)
}

fn abelian_star(ctx: &Ctx, inv: &Involution) -> Result<Census, Outcome> {
    let c = ctx.star_census(inv);
    if Ctx::flag(&c, "abelian") {
        Ok(c)
    } else {
        Err(Outcome::na("abelian", Ctx::flag_witness(&c, "abelian")))
    }
}

pub(super) fn c29(ctx: &Ctx, inv: &Involution) -> Outcome {
    let c = match abelian_star(ctx, inv) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let r = inv.ring();
    let sets = ctx.cl.sets(r);
    let ps = projections(inv);
    let mut scanned = 0;
    for a in r.elements() {
        let Some(d) = star(&c, a).star_clean else { continue };
        let uinv = sets.inverse(d.first).unwrap();
        for &e in &ps {
            scanned += 1;
            let ce = r.sub(r.one(), e);
            let v = r.sub(r.mul(d.first, e), ce);
            let vinv = r.sub(r.mul(uinv, e), ce);
            let p = r.add(r.mul(d.second, e), ce);
            let ae = r.mul(a, e);
            let ok = r.mul(v, vinv) == r.one()
                && r.mul(vinv, v) == r.one()
                && inv.is_projection(p)
                && r.add(v, p) == ae
                && star(&c, ae).star_clean.is_some();
            if !ok {
                return Outcome::cex(format!("a={}, e={}", r.name(a), r.name(e)), "ae decomposition fails", scanned);
            }
        }
    }
    Outcome::verified(format!("{scanned} pairs (a, e) checked"), scanned)
}

pub(super) fn c30(ctx: &Ctx, inv: &Involution) -> Outcome {
    let c = match abelian_star(ctx, inv) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let r = inv.ring();
    let sets = ctx.cl.sets(r);
    let ps = projections(inv);
    let mut scanned = 0;
    for a in r.elements() {
        let (Some(d), Some(dn)) = (star(&c, a).star_clean, star(&c, r.neg(a)).star_clean) else { continue };
        // 1 + a = v + g with v = −u', g = 1 − p'
        let (v, g) = (r.neg(dn.first), r.sub(r.one(), dn.second));
        for &e in &ps {
            scanned += 1;
            let ce = r.sub(r.one(), e);
            let unit = r.add(r.mul(v, e), r.mul(d.first, ce));
            let proj = r.add(r.mul(g, e), r.mul(d.second, ce));
            let ok = sets.is_unit(unit)
                && inv.is_projection(proj)
                && r.add(unit, proj) == r.add(a, e)
                && star(&c, r.add(a, e)).star_clean.is_some();
            if !ok {
                return Outcome::cex(format!("a={}, e={}", r.name(a), r.name(e)), "a + e decomposition fails", scanned);
            }
        }
    }
    if scanned == 0 {
        return Outcome::na("some a with a and −a ⋆-clean", r.provenance());
    }
    Outcome::verified(format!("{scanned} pairs (a, e) checked"), scanned)
}

/// `Err((r, y))` for the least regular `r` and inner inverse `y` where `ry`
/// or `yr` is not a projection.
fn regular_idempotents_projections(ctx: &Ctx, inv: &Involution) -> Result<(), (Elem, Elem)> {
    let r = inv.ring();
    let sets = ctx.cl.sets(r);
    for &x in &sets.regulars {
        for y in r.elements() {
            if r.mul3(x, y, x) != x {
                continue;
            }
            if !inv.is_projection(r.mul(x, y)) || !inv.is_projection(r.mul(y, x)) {
                return Err((x, y));
            }
        }
    }
    Ok(())
}

fn hypothesis(ctx: &Ctx, inv: &Involution) -> Result<Census, Outcome> {
    let c = abelian_star(ctx, inv)?;
    regular_idempotents_projections(ctx, inv).map_err(|(x, y)| {
        let r = inv.ring();
        Outcome::na("ry and yr are projections", format!("r={}, y={}", r.name(x), r.name(y)))
    })?;
    Ok(c)
}

pub(super) fn c31(ctx: &Ctx, inv: &Involution) -> Outcome {
    let c = match hypothesis(ctx, inv) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let r = inv.ring();
    let sets = ctx.cl.sets(r);
    for &x in &sets.regulars {
        let y = sets.regular_witness(x).unwrap();
        let y2 = r.mul3(y, x, y);
        let e = r.mul(y2, x);
        let ce = r.sub(r.one(), e);
        let u = r.sub(x, ce);
        let uinv = r.sub(y2, ce);
        let ok = r.mul(e, e) == e
            && r.mul(u, uinv) == r.one()
            && r.mul(uinv, u) == r.one()
            && inv.is_projection(ce)
            && star(&c, x).star_clean.is_some();
        if !ok {
            return Outcome::cex(format!("r={}, y={}", r.name(x), r.name(y)), "r − (1−e) is not a unit", x + 1);
        }
    }
    Outcome::verified(format!("{} regular elements are ⋆-clean", sets.regulars.len()), r.size())
}

pub(super) fn c32(ctx: &Ctx, inv: &Involution) -> Outcome {
    let c = match hypothesis(ctx, inv) {
        Ok(c) => c,
        Err(o) => return o,
    };
    biconditional(inv.ring(), Ctx::flag(&c, "is_star_r_clean"), Ctx::flag(&c, "is_star_clean"), "⋆-r-clean vs ⋆-clean")
}

pub(super) fn c33(ctx: &Ctx, inv: &Involution) -> Outcome {
    let r = inv.ring();
    let c = ctx.star_census(inv);
    let sets = ctx.cl.sets(r);
    let mut scanned = 0;
    let mut check = |x: Elem, u: Elem, p: Elem, what: &str| {
        scanned += 1;
        let ok = sets.is_unit(u) && inv.is_projection(p) && r.add(u, p) == x && weakly_star(&c, x).is_some();
        if ok { Ok(()) } else { Err(Outcome::cex(r.name(x), format!("{what} is not weakly ⋆-clean"), scanned)) }
    };
    for &u in &sets.units {
        if let Err(o) = check(u, u, r.zero(), "unit") {
            return o;
        }
    }
    for x in sets.jacobson.iter().chain(&sets.nilpotents) {
        if let Err(o) = check(*x, r.sub(*x, r.one()), r.one(), "radical or nilpotent element") {
            return o;
        }
    }
    Outcome::verified(
        format!(
            "{} units, {} radical and {} nilpotent elements",
            sets.units.len(),
            sets.jacobson.len(),
            sets.nilpotents.len()
        ),
        scanned,
    )
}
