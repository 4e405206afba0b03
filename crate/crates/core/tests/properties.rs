use std::collections::BTreeMap;

use proptest::prelude::*;
use qtorsion::complex::{change_basis, fold, torsion_bounded, torsion_periodic};
use qtorsion::exact_field::{eq_mod_signs, eq_mod_units, substitute};
use qtorsion::group_rep::{is_narrow, specialize};
use qtorsion::linalg::{det, image_with_section, kernel_basis, rank, rref};
use qtorsion::pearl;
use qtorsion::verify::cofactor_det;
use qtorsion::verify::gen::random_acyclic_complex;
use qtorsion::{LabeledBasis, LaurentPoly, Matrix, Monomial, RatFunc, Rational, Representation, UnitGroup, VarTable};
use rand::SeedableRng;

fn st() -> VarTable {
    VarTable::new(["s", "t"]).unwrap()
}

fn poly(vars: VarTable) -> impl Strategy<Value = LaurentPoly> {
    let n = vars.len();
    prop::collection::vec((prop::collection::vec(-2i64..=3, n), -5i64..=5, 1i64..=3), 0..4).prop_map(move |terms| {
        LaurentPoly::from_terms(
            &vars,
            terms.into_iter().map(|(e, a, b)| (Monomial::from_exponents(e), Rational::new(a.into(), b.into()))),
        )
    })
}

fn ratfunc(vars: VarTable) -> impl Strategy<Value = RatFunc> {
    (poly(vars.clone()), poly(vars)).prop_filter_map("zero denominator", |(n, d)| RatFunc::new(n, d).ok())
}

fn square(vars: VarTable, n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(poly(vars.clone()), n * n).prop_map(move |entries| {
        let b = LabeledBasis::indexed("e", n);
        let mut m = Matrix::zeros(&vars, b.clone(), b);
        for (k, p) in entries.into_iter().enumerate() {
            m.set(k / n, k % n, RatFunc::from_poly(p));
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in ratfunc(st()), b in ratfunc(st()), c in ratfunc(st())) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn equalities_are_nested(a in ratfunc(st()), b in ratfunc(st())) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let vars = st();
        let u = UnitGroup::from_elements(&vars, &[RatFunc::var(&vars, 0)]).unwrap();
        let neg = -&a;
        prop_assert!(eq_mod_signs(&a, &neg).unwrap());
        prop_assert!(eq_mod_units(&a, &(&neg * &RatFunc::var(&vars, 0).pow(3).unwrap()), &u).unwrap());
        if a == b {
            prop_assert!(eq_mod_signs(&a, &b).unwrap());
        }
        if eq_mod_signs(&a, &b).unwrap() {
            prop_assert!(eq_mod_units(&a, &b, &u).unwrap());
        }
    }

    #[test]
    fn normalization_is_idempotent(a in ratfunc(st())) {
        let once = RatFunc::new(a.numer().clone(), a.denom().clone()).unwrap();
        let twice = RatFunc::new(once.numer().clone(), once.denom().clone()).unwrap();
        prop_assert!(once.structurally_eq(&twice));
        prop_assert!(a.sign_normalized().structurally_eq(&a.sign_normalized().sign_normalized()));
    }

    #[test]
    fn display_round_trips(a in ratfunc(st())) {
        prop_assert_eq!(RatFunc::parse(&a.to_string(), &st()).unwrap(), a);
    }

    #[test]
    fn substitution_is_a_homomorphism(a in ratfunc(st()), b in ratfunc(st()), e in -2i64..=2, k in 1i64..=4) {
        let target = VarTable::new(["z"]).unwrap();
        let z = RatFunc::var(&target, 0);
        let bindings: BTreeMap<String, RatFunc> = [
            ("s".to_string(), z.pow(e).unwrap()),
            ("t".to_string(), &z + &RatFunc::from_int(&target, k)),
        ].into_iter().collect();
        let (Ok(sa), Ok(sb)) = (substitute(&a, &bindings), substitute(&b, &bindings)) else {
            return Ok(());
        };
        prop_assert_eq!(substitute(&(&a * &b), &bindings).unwrap(), &sa * &sb);
        prop_assert_eq!(substitute(&(&a + &b), &bindings).unwrap(), &sa + &sb);
    }

    #[test]
    fn det_matches_cofactor_expansion(m in (1usize..=4).prop_flat_map(|n| square(VarTable::new(["t"]).unwrap(), n))) {
        prop_assert_eq!(det(&m).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn det_is_multiplicative(a in square(VarTable::new(["t"]).unwrap(), 3), b in square(VarTable::new(["t"]).unwrap(), 3)) {
        prop_assert_eq!(det(&a.mul(&b).unwrap()).unwrap(), &det(&a).unwrap() * &det(&b).unwrap());
    }

    #[test]
    fn rank_nullity_and_sections(m in square(VarTable::new(["t"]).unwrap(), 4)) {
        prop_assert_eq!(rank(&m) + kernel_basis(&m).len(), m.ncols());
        let im = image_with_section(&m);
        for (s, v) in im.preimages.iter().zip(&im.image_basis) {
            prop_assert_eq!(&m.apply(s), v);
        }
        for z in kernel_basis(&m) {
            prop_assert!(m.apply(&z).iter().all(RatFunc::is_zero));
        }
        prop_assert!(!det(&rref(&m).transform).unwrap().is_zero());
    }

    #[test]
    fn fold_preserves_torsion_and_euler_characteristic(seed in any::<u64>()) {
        let vars = VarTable::new(["t"]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let c = random_acyclic_complex(&mut rng, &vars, 8);
        let p = fold(&c);
        prop_assert_eq!(p.euler_characteristic(), c.euler_characteristic());
        prop_assert_eq!(torsion_bounded(&c).unwrap(), torsion_periodic(&p).unwrap());
    }

    #[test]
    fn identity_change_keeps_torsion(seed in any::<u64>()) {
        let vars = VarTable::new(["t"]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let c = random_acyclic_complex(&mut rng, &vars, 8);
        let ids: Vec<Matrix> = c.bases().iter().map(|b| Matrix::identity(&vars, b.clone())).collect();
        let c2 = change_basis(&c, &ids).unwrap();
        prop_assert!(torsion_bounded(&c).unwrap().value().structurally_eq(torsion_bounded(&c2).unwrap().value()));
    }

    #[test]
    fn specialize_commutes_with_substitution(n in 1usize..=4, e in -2i64..=2, k in 1i64..=3) {
        let src = VarTable::new(["z1", "z2"]).unwrap();
        let rep = Representation::parse(&src, &[("A", "z1"), ("B", "z2")]).unwrap();
        let target = VarTable::new(["w"]).unwrap();
        let w = RatFunc::var(&target, 0);
        let bindings: BTreeMap<String, RatFunc> = [
            ("z1".to_string(), w.pow(e).unwrap()),
            ("z2".to_string(), &RatFunc::from_int(&target, k) * &w),
        ].into_iter().collect();
        let c = pearl::circle_pearl(n).unwrap();
        let composed = specialize(&c, &rep.then_substitute(&bindings).unwrap()).unwrap();
        let after = specialize(&c, &rep).unwrap();
        for (x, y) in [(composed.d(), after.d()), (composed.delta(), after.delta())] {
            for i in 0..x.nrows() {
                for j in 0..x.ncols() {
                    prop_assert_eq!(x.get(i, j), &substitute(y.get(i, j), &bindings).unwrap());
                }
            }
        }
        // d^2 = 0 survives specialization; narrowness fails exactly when z1 = z2.
        prop_assert!(composed.validate().is_ok());
        let same = w.pow(e).unwrap() == &RatFunc::from_int(&target, k) * &w;
        prop_assert_eq!(is_narrow(&c, &rep.then_substitute(&bindings).unwrap()).unwrap(), !same);
    }
}
