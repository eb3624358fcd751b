//! Worked examples. Values marked as derived are recomputed by the naive
//! oracle here before being compared with the engine.

mod common;

use common::oracle::{eval, Oracle};
use finring::classify::Decomp;
use finring::ring::{
    center, idempotents_lift, is_regular_ideal, jacobson_radical, make_zn, quotient_ring,
};
use finring::star::{swap_involution, validate_involution};
use finring::{basic_sets, build_spec, ring_census, run_check, CentralPolynomial, CheckId, CheckInput, FiniteRing, Ideal, Status};

fn zn(n: usize) -> FiniteRing {
    make_zn(n).unwrap()
}

fn oracle_set(r: &FiniteRing, flag: &str) -> Vec<usize> {
    let o = Oracle::new(r, None, None);
    r.elements().filter(|&x| o.element_flag(flag, x) == Some(true)).collect()
}

#[test]
fn basic_sets_of_z6_and_z4() {
    for (n, units, idem, reg, nil) in [
        (6, vec![1, 5], vec![0, 1, 3, 4], vec![0, 1, 2, 3, 4, 5], vec![0]),
        (4, vec![1, 3], vec![0, 1], vec![0, 1, 3], vec![0, 2]),
    ] {
        let r = zn(n);
        assert_eq!(oracle_set(&r, "unit"), units);
        assert_eq!(oracle_set(&r, "idempotent"), idem);
        assert_eq!(oracle_set(&r, "regular"), reg);
        assert_eq!(oracle_set(&r, "nilpotent"), nil);
        let s = basic_sets(&r);
        assert_eq!(s.units, units);
        assert_eq!(s.idempotents, idem);
        assert_eq!(s.regulars, reg);
        assert_eq!(s.nilpotents, nil);
    }
}

#[test]
fn fields_are_regular_with_trivial_idempotents() {
    for n in [2, 3, 5, 7] {
        let s = basic_sets(&zn(n));
        assert_eq!(s.regulars.len(), n);
        assert_eq!(s.idempotents, vec![0, 1]);
    }
}

#[test]
fn clean_witnesses() {
    let z4 = zn(4);
    let c = ring_census(&z4, None, None);
    assert_eq!(c.profile(2).clean, Some(Decomp { first: 1, second: 1 }));
    assert_eq!(c.profile(z4.one()).clean, Some(Decomp { first: 1, second: 0 }));

    // 2 = 2 + 0 is an r-clean decomposition of 2 in Z6; the engine reports the
    // least one, 1 + 1.
    let z6 = zn(6);
    let c = ring_census(&z6, None, None);
    assert!(Oracle::new(&z6, None, None).element_flag("regular", 2).unwrap());
    assert_eq!(c.profile(2).r_clean, Some(Decomp { first: 1, second: 1 }));
}

#[test]
fn exchange_witnesses() {
    // e = 4 works for 2 in Z6: 4 = 2·2 and 1 − 4 = 3 = (1 − 2)·3.
    let z6 = zn(6);
    assert_eq!(z6.mul(2, 2), 4);
    assert_eq!(z6.mul(z6.sub(1, 2), 3), z6.sub(1, 4));
    let c = ring_census(&z6, None, None);
    let w = c.profile(2).exchange.unwrap();
    assert!(z6.mul(w.e, w.e) == w.e && z6.right_multiples(2)[w.e]);
    for r in [zn(4), zn(6), zn(9)] {
        let c = ring_census(&r, None, None);
        assert_eq!(c.profile(0).exchange.unwrap().e, 0);
    }
    let z4 = zn(4);
    let w = ring_census(&z4, None, None).profile(3).exchange.unwrap();
    assert_eq!(w.e, 1);
}

#[test]
fn swap_on_klein_ring() {
    let built = build_spec("star(product(Zn(2),Zn(2)),swap)").unwrap();
    let inv = built.involution.unwrap();
    let c = ring_census(&built.ring, Some(&inv), None);
    assert_eq!(c.flag("is_weakly_clean"), Some(true));
    assert_eq!(c.flag("is_weakly_star_clean"), Some(false));
    let w = &c.ring_flag("is_weakly_star_clean").unwrap().witness;
    assert_eq!(built.ring.name(w[0]), "(1,0)");
    let o = Oracle::new(&built.ring, Some(&inv), None);
    assert_eq!(o.ring_flag("is_weakly_star_clean"), Some(false));
    assert_eq!(o.element_flag("weakly_star_clean", w[0]), Some(false));
}

#[test]
fn z3_zero_star_decompositions() {
    let z3 = zn(3);
    let id = finring::Involution::identity(&z3).unwrap();
    let p = ring_census(&z3, Some(&id), None).profile(0).clone();
    let s = p.star.unwrap();
    assert_eq!(s.star_clean, Some(Decomp { first: 2, second: 1 }));
    // u = 2, s = 1 is also valid; the least unit gives u = 1, s = 2.
    assert_eq!((z3.add(2, 1), z3.mul(1, 1)), (0, 1));
    assert_eq!(s.sasr1, Some(Decomp { first: 1, second: 2 }));
}

#[test]
fn units_are_star_clean_with_zero_projection() {
    for spec in ["Zn(9)", "M(Zn(2),2)", "tri(Zn(3))"] {
        let r = build_spec(spec).unwrap().ring;
        let id = finring::Involution::identity(&r);
        let Ok(id) = id else { continue };
        let c = ring_census(&r, Some(&id), None);
        for &u in &basic_sets(&r).units {
            let sc = c.profile(u).star.as_ref().unwrap().star_clean.unwrap();
            assert!(sc.second == r.zero() || c.profile(sc.first).unit.is_some());
            assert!(c.profile(u).flag("star_clean").unwrap());
        }
    }
}

#[test]
fn polynomial_roots_over_z6() {
    let z6 = zn(6);
    let g = CentralPolynomial::parse(&z6, "x^2-x").unwrap();
    let naive: Vec<usize> = z6.elements().filter(|&x| eval(&z6, g.coeffs(), x) == 0).collect();
    assert_eq!(naive, vec![0, 1, 3, 4]);
    assert_eq!(g.roots(), naive);
    let c = ring_census(&z6, None, Some(&g));
    for x in z6.elements() {
        let p = c.profile(x);
        assert_eq!(p.flag("weakly_g_r_clean"), p.flag("weakly_r_clean"));
    }
    assert_eq!(c.profile(0).g.as_ref().unwrap().g_r_clean, Some(Decomp { first: 0, second: 0 }));

    let cubic = CentralPolynomial::parse(&z6, "x^3-x").unwrap();
    assert_eq!(cubic.roots(), (0..6).collect::<Vec<_>>());
}

#[test]
fn z6_is_weakly_r_clean() {
    let z6 = zn(6);
    assert_eq!(ring_census(&z6, None, None).flag("is_weakly_r_clean"), Some(true));
    assert_eq!(Oracle::new(&z6, None, None).ring_flag("is_weakly_r_clean"), Some(true));
}

#[test]
fn matrix_ring_facts() {
    let m = build_spec("M(Zn(2),2)").unwrap().ring;
    let c = ring_census(&m, None, None);
    assert_eq!(c.flag("abelian"), Some(false));
    assert_eq!(c.flag("is_clean"), Some(true));
    let (z, _) = center(&m);
    assert_eq!(z.size(), 2);
    let (z, _) = center(&build_spec("tri(Zn(2))").unwrap().ring);
    assert_eq!(z.size(), 2);
    let z12 = zn(12);
    assert_eq!(center(&z12).0.size(), 12);
}

#[test]
fn jacobson_radicals() {
    let j = |r: &FiniteRing| jacobson_radical(r).members().to_vec();
    assert_eq!(j(&zn(4)), vec![0, 2]);
    assert_eq!(j(&zn(6)), vec![0]);
    let d = build_spec("polyq(2,\"x^2\")").unwrap().ring;
    assert_eq!(j(&d), oracle_set(&d, "jacobson"));
    assert_eq!(j(&d).len(), 2);
}

#[test]
fn regular_ideal_examples() {
    let z6 = zn(6);
    let i = Ideal::new(&z6, [0, 3]).unwrap();
    assert!(is_regular_ideal(&z6, &i).is_ok());
    assert!(idempotents_lift(&z6, &i).is_ok());
    assert_eq!(quotient_ring(&z6, &i).unwrap().0.size(), 3);

    let z4 = zn(4);
    let i = Ideal::new(&z4, [0, 2]).unwrap();
    assert_eq!(is_regular_ideal(&z4, &i), Err(2));
    assert!(idempotents_lift(&z4, &i).is_ok());
    assert_eq!(quotient_ring(&z4, &i).unwrap().0.size(), 2);
}

#[test]
fn regular_ideal_check_statuses() {
    let c10 = CheckId::new(10).unwrap();
    let z6 = zn(6);
    let r = run_check(c10, &CheckInput::Quotient { ideal: Ideal::new(&z6, [0, 3]).unwrap(), ring: z6 }).unwrap();
    assert_eq!(r.status, Status::Verified);
    assert!(r.precondition.is_none());

    let z4 = zn(4);
    let r = run_check(c10, &CheckInput::Quotient { ideal: Ideal::new(&z4, [0, 2]).unwrap(), ring: z4 }).unwrap();
    assert_eq!(r.status, Status::NotApplicable);
    assert_eq!(r.precondition.as_deref(), Some("is_regular_ideal"));
    assert_eq!(r.witness.as_deref(), Some("2"));
}

#[test]
fn diagonal_of_klein_ring_is_not_an_ideal() {
    // {(0,0),(1,1)} is a swap-stable subring but (1,1)(1,0) = (1,0) leaves it.
    let k = build_spec("product(Zn(2),Zn(2))").unwrap().ring;
    assert_eq!(k.mul(3, 1), 1);
    assert!(Ideal::new(&k, [0, 3]).is_err());
}

#[test]
fn induced_involution_on_swap_quotient() {
    // The only swap-stable proper ideal of Z2 x Z2 is zero, so use Z4 x Z4
    // with 2(Z4 x Z4).
    let r = build_spec("product(Zn(4),Zn(4))").unwrap().ring;
    let swap = swap_involution(&r).unwrap();
    let gen = r.from_int(2);
    let ideal = finring::ring::ideal_closure(&r, &[gen]);
    assert_eq!(ideal.len(), 4);
    assert!(swap.preserves_ideal(&ideal).is_ok());
    let (q, map) = quotient_ring(&r, &ideal).unwrap();
    let induced = finring::star::induced_on_quotient(&swap, &ideal, &map).unwrap();
    assert_eq!(q.size(), 4);
    assert!(!induced.is_identity());
    assert!(validate_involution(&q, induced.table().to_vec(), "check").is_ok());
}
