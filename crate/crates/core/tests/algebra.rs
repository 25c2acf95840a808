mod common;

use common::*;
use montel::algebra::parse_symreal;
use montel::{Error, MultiPoly, SymReal};
use proptest::prelude::*;

fn poly2() -> impl Strategy<Value = MultiPoly> {
    poly_with_degrees(q(), 2, 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly2(), b in poly2(), c in poly2()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.add(&a.neg()).unwrap(), MultiPoly::zero(&q(), 2));
    }

    #[test]
    fn shift_matches_translated_evaluation(p in poly2(), h in rational_point(2), x in rational_point(2)) {
        let t = q();
        let shifted = p.shift(&lift(&t, &h)).unwrap();
        let xh: Vec<_> = x.iter().zip(&h).map(|(a, b)| a + b).collect();
        prop_assert_eq!(shifted.eval(&lift(&t, &x)).unwrap(), p.eval(&lift(&t, &xh)).unwrap());
    }

    #[test]
    fn identity_substitution(p in poly_with_degrees(q(), 3, 2)) {
        let vars: Vec<_> = (0..3).map(|k| MultiPoly::var(&q(), 3, k)).collect();
        prop_assert_eq!(p.substitute(&vars).unwrap(), p);
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly2(), b in poly2(), x in rational_point(2)) {
        let t = q();
        let x = lift(&t, &x);
        let prod = a.mul(&b).unwrap().eval(&x).unwrap();
        prop_assert_eq!(prod, a.eval(&x).unwrap().mul(&b.eval(&x).unwrap()).unwrap());
    }

    #[test]
    fn qlinear_zero_test(r in prop::collection::vec(small_rational(), 3)) {
        // Σ r_k θ_k + r_0 vanishes iff every r_k does
        let t = thetas(2);
        let mut v = SymReal::from_rational(&t, r[0].clone());
        for k in 0..2 {
            v = v.add(&SymReal::symbol_at(&t, k).scale(&r[k + 1])).unwrap();
        }
        prop_assert_eq!(v.is_zero(), r.iter().all(num_traits::Zero::is_zero));
    }

    #[test]
    fn split_then_join(p in poly_with_degrees(q(), 3, 3), k in 0usize..3) {
        let parts = p.split_variable(k);
        prop_assert_eq!(MultiPoly::join_variable(&q(), k, &parts, 3).unwrap(), p);
    }
}

#[test]
fn qlinear_products_are_explicit_errors() {
    let t = thetas(2);
    let a = SymReal::symbol_at(&t, 0);
    let b = SymReal::symbol_at(&t, 1);
    assert_eq!(a.mul(&b), Err(Error::QLinearProduct));
    let twin = algebraic(2);
    let ab = a.rehome(&twin).unwrap().mul(&b.rehome(&twin).unwrap()).unwrap();
    assert_eq!(ab, parse_symreal(&twin, "theta1*theta2").unwrap());
    assert!(ab.rehome(&t).is_err());
}

#[test]
fn rehome_embeds_by_name() {
    let half = parse_symreal(&q(), "1/2").unwrap();
    let t = thetas(1);
    assert_eq!(half.rehome(&t).unwrap(), parse_symreal(&t, "1/2").unwrap());
    assert_eq!(SymReal::symbol_at(&t, 0).rehome(&q()), Err(Error::TableMismatch));
}

#[test]
fn zero_polynomial_degree_is_minus_one() {
    let z = MultiPoly::zero(&q(), 2);
    assert_eq!(z.total_degree(), -1);
    assert_eq!(z.degrees(), (vec![-1, -1], -1));
}
