use qtorsion::complex::torsion_periodic;
use qtorsion::group_rep::{quantum_torsion, GroupRepError, QuotientKind};
use qtorsion::pearl::{self, ring, GwTable};
use qtorsion::{RatFunc, Representation, VarTable};

fn q(s: &str, v: &VarTable) -> RatFunc {
    RatFunc::parse(s, v).unwrap()
}

fn z12() -> VarTable {
    VarTable::new(["z1", "z2"]).unwrap()
}

#[test]
fn circle_value_is_literally_independent_of_n() {
    let v = z12();
    let rep = Representation::parse(&v, &[("A", "z1"), ("B", "z2")]).unwrap();
    let first = quantum_torsion(&pearl::circle_pearl(1).unwrap(), &rep, QuotientKind::Signs).unwrap();
    for n in 2..=6 {
        let t = quantum_torsion(&pearl::circle_pearl(n).unwrap(), &rep, QuotientKind::Signs).unwrap();
        assert!(t.value().structurally_eq(first.value()), "n = {n}: {t}");
    }
    assert_eq!(first.to_string(), "1/(z1 - z2)  (mod ±1)");
}

#[test]
fn contractible_circle_is_trivial_modulo_units() {
    let v = VarTable::new(["z1"]).unwrap();
    let rep = Representation::parse(&v, &[("A", "z1")]).unwrap();
    for n in 1..=4 {
        let t = quantum_torsion(&pearl::contractible_circle_pearl(n).unwrap(), &rep, QuotientKind::Units).unwrap();
        assert!(t.matches(&RatFunc::one(&v)), "{t}");
    }
}

#[test]
fn units_quotient_needs_monomial_images() {
    let v = z12();
    let rep = Representation::parse(&v, &[("A", "z1 + 1"), ("B", "z2")]).unwrap();
    let err = quantum_torsion(&pearl::circle_pearl(2).unwrap(), &rep, QuotientKind::Units).unwrap_err();
    assert_eq!(err, GroupRepError::NonMonomialImages);
}

#[test]
fn low_dimensional_models() {
    let r = VarTable::new(["r1"]).unwrap();
    let t = pearl::torsion_from_d1(&pearl::torus_d1(1).unwrap()).unwrap();
    assert!(t.matches(&q("1/r1", &r)));

    let c = VarTable::new(["c"]).unwrap();
    let t = pearl::torsion_from_d1(&pearl::sigma_g_d1(1).unwrap()).unwrap();
    assert!(t.matches(&RatFunc::one(&c)));
    assert!(pearl::is_e1_narrow(&pearl::sigma_g_d1(2).unwrap()));
    assert!(pearl::is_e1_narrow(&pearl::torus_d1(3).unwrap()));
}

#[test]
fn product_with_zero_euler_characteristic_is_trivial() {
    let v = VarTable::new(["r"]).unwrap();
    for k in 0..=1 {
        let d1 = pearl::product_star(&ring::torus(2).unwrap(), k, &q("r", &v)).unwrap();
        assert!(pearl::torsion_from_d1(&d1).unwrap().matches(&RatFunc::one(&v)));
    }
}

#[test]
fn surface_product_matches_explicit_model_after_renaming() {
    let v = VarTable::new(["r"]).unwrap();
    let star =
        pearl::torsion_from_d1(&pearl::product_star(&ring::surface(2).unwrap(), 0, &q("r", &v)).unwrap()).unwrap();
    let explicit = pearl::torsion_from_d1(&pearl::sigma_g_d1_with(2, &q("r", &v)).unwrap()).unwrap();
    assert_eq!(star, explicit);
    assert!(star.matches(&q("r^2", &v)));
}

#[test]
fn splitting_squares_to_zero() {
    let v = VarTable::new(["r"]).unwrap();
    let r = q("r", &v);
    let d1 = pearl::product_star(&ring::sphere(2).unwrap(), 1, &r).unwrap();
    let s = pearl::sigma_splitting(&d1, pearl::product_star_sigma(&d1, &r).unwrap()).unwrap();
    let dim = d1.ring().dim();
    for i in 0..dim {
        let e = d1.ring().basis_vector(i, &v);
        assert!(s.apply(&s.apply(&e)).iter().all(RatFunc::is_zero));
    }
    let bad = vec![RatFunc::zero(&v); dim];
    assert!(pearl::sigma_splitting(&d1, bad).is_err());
}

#[test]
fn possibility_two_ignores_beta_scaling() {
    let v = VarTable::new(["beta", "r_bb", "lambda"]).unwrap();
    let a = torsion_periodic(&pearl::s1xs2_possibility2(&q("beta", &v), &q("r_bb", &v)).unwrap()).unwrap();
    let b = torsion_periodic(&pearl::s1xs2_possibility2(&q("lambda*beta", &v), &q("r_bb", &v)).unwrap()).unwrap();
    assert_eq!(a, b);
    assert!(pearl::s1xs2_possibility2(&RatFunc::zero(&v), &q("r_bb", &v)).is_err());
    assert!(pearl::s1xs2_possibility2(&q("beta", &v), &RatFunc::zero(&v)).is_err());
}

#[test]
fn empty_gw_table_gives_zero() {
    let v = z12();
    let rep = Representation::parse(&v, &[("A", "z1"), ("B", "z2")]).unwrap();
    let table = GwTable::new(2, vec![]).unwrap();
    assert!(pearl::r_phi_from_gw(&table, &rep).unwrap().is_zero());
}
