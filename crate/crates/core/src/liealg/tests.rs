use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;

fn sl2(p: u32) -> LieAlgebra {
    LieAlgebra::build(Family::Sl, 2, p).unwrap()
}

fn el(g: &LieAlgebra, name: &str) -> Element {
    g.named(name).unwrap()
}

#[test]
fn dimensions() {
    assert_eq!(sl2(5).dim(), 3);
    assert_eq!(LieAlgebra::build(Family::Pgl, 3, 3).unwrap().dim(), 8);
    assert_eq!(LieAlgebra::build(Family::Sp, 4, 3).unwrap().dim(), 10);
    assert_eq!(LieAlgebra::build(Family::Gl, 3, 5).unwrap().dim(), 9);
    assert_eq!(LieAlgebra::build(Family::So, 5, 3).unwrap().dim(), 10);
    assert_eq!(LieAlgebra::build(Family::So, 6, 5).unwrap().dim(), 15);
    assert!(LieAlgebra::build(Family::Sp, 3, 5).is_err());
    assert!(LieAlgebra::build(Family::So, 5, 2).is_err());
    assert!(LieAlgebra::build(Family::Sl, 3, 4).is_err());
}

#[test]
fn sl2_relations() {
    let g = sl2(5);
    let (e, f, h) = (el(&g, "e12"), el(&g, "e21"), el(&g, "h1"));
    assert_eq!(g.bracket(&e, &f), h);
    assert_eq!(g.ad(&h).mul_vec(&e), g.scale(2, &e));
    assert_eq!(g.p_power(&e).unwrap(), g.zero());
    assert_eq!(g.p_power(&h).unwrap(), h);
    assert!(g.try_bracket(&e, &[1, 0]).is_err());
}

#[test]
fn pgl3_companion_is_p_nilpotent() {
    let g = LieAlgebra::build(Family::Pgl, 3, 3).unwrap();
    let c = FieldMatrix::from_rows(3, &[[0, 0, 1], [1, 0, 0], [0, 1, 0]]).unwrap();
    let x = g.from_matrix(&c).unwrap();
    assert_eq!(g.p_power(&x).unwrap(), g.zero());
    assert!(g.is_p_nilpotent(&x).unwrap());
    assert!(c.nilpotency_order().is_none());
    let h = el(&sl2(3), "h1");
    assert!(!sl2(3).is_p_nilpotent(&h).unwrap());
}

#[test]
fn jacobson_sl2_p3() {
    let g = sl2(3);
    let (e, f) = (el(&g, "e12"), el(&g, "e21"));
    let lhs = g.p_power(&g.add(&e, &f)).unwrap();
    let w = g.jacobson_defect(&e, &f).unwrap();
    let rhs = g.sub(&g.add(&g.p_power(&e).unwrap(), &g.p_power(&f).unwrap()), &w);
    assert_eq!(lhs, rhs);
    let h = el(&g, "h1");
    assert_eq!(g.jacobson_defect(&h, &g.scale(2, &h)).unwrap(), g.zero());
}

#[test]
fn restricted_laws_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (fam, n, p) in [
        (Family::Sl, 3, 5),
        (Family::Gl, 3, 3),
        (Family::Pgl, 3, 3),
        (Family::Sp, 4, 5),
        (Family::So, 5, 3),
    ] {
        let g = LieAlgebra::build(fam, n, p).unwrap();
        for _ in 0..50 {
            let x = g.random_element(&mut rng);
            let y = g.random_element(&mut rng);
            assert_eq!(g.bracket(&x, &y), g.scale(p - 1, &g.bracket(&y, &x)));
            let xp = g.p_power(&x).unwrap();
            assert_eq!(g.ad(&xp), g.ad(&x).pow(p as u64));
            let lhs = g.p_power(&g.add(&x, &y)).unwrap();
            let rhs = g.sub(
                &g.add(&xp, &g.p_power(&y).unwrap()),
                &g.jacobson_defect(&x, &y).unwrap(),
            );
            assert_eq!(lhs, rhs, "{fam}_{n} p={p}");
        }
    }
}

#[test]
fn exponentials() {
    let g = sl2(5);
    let e = el(&g, "e12");
    assert_eq!(g.exp_trunc(&g.zero()).unwrap(), FieldMatrix::identity(5, 2));
    let a = g.exp_trunc(&e).unwrap();
    let b = g.exp_trunc(&g.scale(4, &e)).unwrap();
    assert_eq!(a.mul(&b), FieldMatrix::identity(5, 2));
    assert!(g.ad_exp_compat(&e).unwrap());
    assert!(g.exp_trunc(&el(&g, "h1")).is_err());
    let pg = LieAlgebra::build(Family::Pgl, 3, 3).unwrap();
    assert!(pg.exp_trunc(&pg.zero()).is_err());
}

#[test]
fn killing_values() {
    for p in [5, 7, 11] {
        let g = sl2(p);
        let (e, f, h) = (el(&g, "e12"), el(&g, "e21"), el(&g, "h1"));
        assert_eq!(g.killing_form(&h, &h), 8 % p);
        assert_eq!(g.killing_form(&e, &f), 4 % p);
    }
    assert!(!LieAlgebra::build(Family::Sl, 3, 3).unwrap().killing_nondegenerate());
    assert!(LieAlgebra::build(Family::Sl, 3, 5).unwrap().killing_nondegenerate());
}

#[test]
fn normalizers_and_closures() {
    let g = sl2(5);
    let (e, f, h) = (el(&g, "e12"), el(&g, "e21"), el(&g, "h1"));
    assert_eq!(g.normalizer(&g.full()), g.full());
    let ne = g.normalizer(&g.span([e.clone()]));
    assert_eq!(ne, g.span([h.clone(), e.clone()]));
    assert_eq!(g.subalgebra_closure(std::slice::from_ref(&e)), g.span([e.clone()]));
    assert_eq!(g.subalgebra_closure(&[e.clone(), f.clone()]), g.full());
    assert!(g.center().is_zero());
    let b = g.span([h.clone(), e.clone()]);
    assert_eq!(g.largest_ideal_inside(&g.full(), &g.span([e.clone()])), g.zero_space());
    assert_eq!(g.largest_ideal_inside(&b, &g.span([e.clone()])), g.span([e.clone()]));
    assert_eq!(g.largest_ideal_inside(&g.full(), &g.full()), g.full());
    assert!(g.is_solvable(&b) && !g.is_nilpotent(&b));
    assert!(g.is_nilpotent(&g.span([e])));
    assert!(!g.is_solvable(&g.full()));
}

#[test]
fn subalgebra_and_quotient() {
    let g = LieAlgebra::build(Family::Gl, 2, 5).unwrap();
    let z = g.center();
    assert_eq!(z.dim(), 1);
    let (q, map) = g.quotient(&z).unwrap();
    assert_eq!(q.dim(), 3);
    assert!(q.center().is_zero());
    assert_eq!(map.pull_back(&q.zero_space()), z);
    let sl = LieAlgebra::build(Family::Sl, 3, 5).unwrap();
    let b = sl.frame().unwrap().borel(5);
    let sub = sl.subalgebra(&b).unwrap();
    assert_eq!(sub.dim(), 5);
    assert!(sub.is_realized());
    let x = sub.random_element(&mut ChaCha8Rng::seed_from_u64(1));
    let xp = sub.p_power(&x).unwrap();
    assert_eq!(b.combine(&xp), sl.p_power(&b.combine(&x)).unwrap());
    assert!(sl.subalgebra(&sl.span([sl.named("e12").unwrap(), sl.named("e21").unwrap()])).is_err());
}

#[test]
fn frames() {
    let g = LieAlgebra::build(Family::Sl, 3, 5).unwrap();
    let fr = g.frame().unwrap();
    assert_eq!(fr.borel(5).dim(), 5);
    assert_eq!(fr.torus(5).dim(), 2);
    let sp = LieAlgebra::build(Family::Sp, 4, 5).unwrap();
    let fr = sp.frame().unwrap();
    assert_eq!(fr.torus(5).dim(), 2);
    assert_eq!(fr.borel(5).dim(), 6);
    assert!(sp.is_subalgebra(&fr.borel(5)));
    for fam_n in [(Family::So, 5), (Family::So, 6), (Family::Sp, 6)] {
        let g = LieAlgebra::build(fam_n.0, fam_n.1, 7).unwrap();
        let fr = g.frame().unwrap();
        let rd = fr.root_datum();
        assert_eq!(fr.torus(7).dim() + rd.roots.len(), g.dim());
        assert!(g.is_subalgebra(&fr.borel(7)));
        assert!(g.is_nilpotent(&fr.positive_nilradical(7)));
    }
}

#[test]
fn json_round_trip() {
    for (fam, n, p) in [(Family::Sl, 2, 5), (Family::Pgl, 3, 3), (Family::Sp, 4, 3)] {
        let g = LieAlgebra::build(fam, n, p).unwrap();
        let s = g.to_json_string();
        let back = LieAlgebra::from_json_str(&s).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_json_string(), s);
        assert!(back.frame().is_some());
    }
    let g = sl2(5);
    let mut j = g.to_json();
    j.family = None;
    j.sc.pop();
    assert!(LieAlgebra::from_json(&j).is_err());
}
