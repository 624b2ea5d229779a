use morozov_core::gfp::{Fp, FpPoly, Subspace};
use morozov_core::hnslope::{self, HNFiltration};
use morozov_core::liealg::{Family, LieAlgebra};
use morozov_core::morozov::{self, TowerStatus};
use morozov_core::parabolic::{self, ParabolicStatus};
use morozov_core::radicals::{self, RadicalConfig};
use morozov_core::rootdata::{classify_prime, CartanType, RootDatum};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn vectors(p: u32, len: usize, count: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..p, len), 0..=count)
}

fn element(g: &LieAlgebra) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..g.p(), g.dim())
}

fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&c| c == 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_inverse(a in 1i64..7, p in prop::sample::select(vec![3u32, 5, 7, 11, 32749])) {
        let a = Fp::new(a, p).unwrap();
        prop_assume!(!a.is_zero());
        prop_assert_eq!(a * a.inverse().unwrap(), Fp::one(p));
        prop_assert_eq!(a.pow(p as u64), a);
    }

    #[test]
    fn polynomial_factorization_multiplies_back(coeffs in prop::collection::vec(0i64..5, 2..8)) {
        let f = FpPoly::new(5, &coeffs).unwrap();
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let f = f.monic();
        let mut prod = FpPoly::one(5);
        for (q, e) in f.factor().unwrap() {
            prop_assert!(q.is_irreducible());
            for _ in 0..e {
                prod = prod.mul(&q);
            }
        }
        prop_assert_eq!(prod, f);
    }

    #[test]
    fn subspace_dimension_formula(a in vectors(3, 5, 4), b in vectors(3, 5, 4)) {
        let a = Subspace::span(3, 5, a);
        let b = Subspace::span(3, 5, b);
        let s = a.sum(&b).unwrap();
        let i = a.intersection(&b).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(s.contains_subspace(&a) && s.contains_subspace(&b));
        prop_assert!(a.contains_subspace(&i) && b.contains_subspace(&i));
    }

    #[test]
    fn echelon_form_is_canonical(a in vectors(5, 6, 4), shuffle in any::<u64>()) {
        let s = Subspace::span(5, 6, a);
        // Re-span from random combinations of the basis.
        let mut rng = ChaCha8Rng::seed_from_u64(shuffle);
        let mut gens: Vec<Vec<u32>> = s.basis().to_vec();
        for _ in 0..3 {
            let c: Vec<u32> = (0..s.dim()).map(|_| rand::Rng::gen_range(&mut rng, 0..5)).collect();
            gens.push(s.combine(&c));
        }
        gens.reverse();
        prop_assert_eq!(Subspace::span(5, 6, gens), s);
    }
}

fn laws_hold(g: &LieAlgebra, x: &[u32], y: &[u32], z: &[u32], lam: u32) -> Result<(), TestCaseError> {
    let p = g.p();
    let jac = g.add(
        &g.add(&g.bracket(x, &g.bracket(y, z)), &g.bracket(y, &g.bracket(z, x))),
        &g.bracket(z, &g.bracket(x, y)),
    );
    prop_assert!(is_zero(&jac));
    prop_assert!(is_zero(&g.add(&g.bracket(x, y), &g.bracket(y, x))));
    let xp = g.p_power(x).unwrap();
    let yp = g.p_power(y).unwrap();
    prop_assert_eq!(g.ad(&xp), g.ad(x).pow(p as u64));
    let lam_p = Fp::new(lam as i64, p).unwrap().pow(p as u64).value();
    prop_assert_eq!(g.p_power(&g.scale(lam, x)).unwrap(), g.scale(lam_p, &xp));
    let w = g.jacobson_defect(x, y).unwrap();
    prop_assert_eq!(g.p_power(&g.add(x, y)).unwrap(), g.sub(&g.add(&xp, &yp), &w));
    Ok(())
}

macro_rules! restricted_law_test {
    ($name:ident, $family:expr, $n:expr, $p:expr) => {
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]
            #[test]
            fn $name(seed in any::<u64>(), lam in 0u32..$p) {
                let g = LieAlgebra::build($family, $n, $p).unwrap();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let x = g.random_element(&mut rng);
                let y = g.random_element(&mut rng);
                let z = g.random_element(&mut rng);
                laws_hold(&g, &x, &y, &z, lam)?;
            }
        }
    };
}

restricted_law_test!(restricted_laws_sl3_p5, Family::Sl, 3, 5);
restricted_law_test!(restricted_laws_gl3_p3, Family::Gl, 3, 3);
restricted_law_test!(restricted_laws_pgl3_p3, Family::Pgl, 3, 3);
restricted_law_test!(restricted_laws_sp4_p7, Family::Sp, 4, 7);
restricted_law_test!(restricted_laws_so5_p5, Family::So, 5, 5);

fn sl3_p5() -> LieAlgebra {
    LieAlgebra::build(Family::Sl, 3, 5).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn normaliser_contains_subalgebra(gens in prop::collection::vec(element(&sl3_p5()), 1..3)) {
        let g = sl3_p5();
        let u = g.subalgebra_closure(&gens);
        let n = g.normalizer(&u);
        prop_assert!(n.contains_subspace(&u));
        prop_assert!(g.is_subalgebra(&n));
    }

    #[test]
    fn radicals_are_nested_ideals(c in prop::collection::vec(0u32..5, 8), d in prop::collection::vec(0u32..5, 8)) {
        // Subalgebras of the Borel generated by two elements.
        let g = sl3_p5();
        let b = g.frame().unwrap().borel(5);
        let h = g.subalgebra_closure(&[b.combine(&c[..b.dim()]), b.combine(&d[..b.dim()])]);
        let r = radicals::radicals(&g, &h, &RadicalConfig::default()).unwrap();
        prop_assert!(r.rad.contains_subspace(&r.nil));
        prop_assert!(r.nil.contains_subspace(&r.rad_p));
        prop_assert!(h.contains_subspace(&r.rad));
        // h is solvable, so its solvable radical is all of it.
        prop_assert_eq!(&r.rad, &h);
        for s in [&r.rad, &r.nil, &r.rad_p] {
            prop_assert!(g.normalizer(s).contains_subspace(&h));
        }
    }

    #[test]
    fn towers_from_root_vectors_reach_parabolics(mask in 1u32..64, n in prop::sample::select(vec![3usize, 4])) {
        let g = LieAlgebra::build(Family::Sl, n, 5).unwrap();
        let frame = g.frame().unwrap();
        let pos = frame.positive_nilradical(5);
        let picks: Vec<Vec<u32>> = pos
            .basis()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << (i % 6)) != 0)
            .map(|(_, v)| v.clone())
            .collect();
        prop_assume!(!picks.is_empty());
        let u0 = g.subalgebra_closure(&picks);
        let t = morozov::run_tower(&g, &u0, None, &RadicalConfig::default()).unwrap();
        prop_assert_eq!(t.status, TowerStatus::Stabilized);
        let (_, q) = t.limit().unwrap();
        let v = parabolic::detect_parabolic(&g, q, 0);
        prop_assert_eq!(v.status, ParabolicStatus::Parabolic);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn synthetic_filtrations_are_accepted(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = hnslope::synthetic(&mut rng, 4);
        prop_assert!(hnslope::verify_hn(&f));
        prop_assert!(hnslope::dual_pattern(&f).unwrap().passes());
        prop_assert!(hnslope::accepts(&f, f.rank()));
    }

    #[test]
    fn perturbed_filtrations_are_rejected(seed in any::<u64>(), delta in prop::sample::select(vec![-2i64, -1, 1, 2])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = hnslope::synthetic(&mut rng, 4);
        for g in hnslope::single_perturbations(&f, delta) {
            prop_assert!(!hnslope::accepts(&g, f.rank()), "accepted {:?}", g);
        }
    }

    #[test]
    fn filtration_json_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = hnslope::synthetic(&mut rng, 3);
        let s = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(HNFiltration::from_json_str(&s).unwrap(), f);
    }

    #[test]
    fn prime_classes_are_consistent(
        label in prop::sample::select(vec!["A1", "A4", "B3", "C4", "D5", "E6", "E7", "E8", "F4", "G2"]),
        p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]),
    ) {
        let rd = RootDatum::build(label.parse::<CartanType>().unwrap()).unwrap();
        let c = classify_prime(&rd, p).unwrap();
        prop_assert_eq!(c.is_good, !c.is_bad);
        prop_assert!(!c.is_very_good || c.is_good);
        prop_assert!(!c.is_torsion || c.is_bad);
    }
}
