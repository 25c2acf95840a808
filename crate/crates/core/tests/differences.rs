mod common;

use common::*;
use montel::algebra::rational::{binomial, factorial};
use montel::diff::{delta_poly, delta_power, delta_step, mixed_delta, SampledFunction};
use montel::{MultiIndex, MultiPoly, Point, SymReal};
use proptest::prelude::*;

/// `Δ_h^n f(x) = Δ_h^{n−1} f(x + h) − Δ_h^{n−1} f(x)`, straight from the
/// definition.
fn recursive_delta(f: &SampledFunction, h: &[SymReal], n: u32, x: &[SymReal]) -> SymReal {
    if n == 0 {
        return f.eval(x).unwrap();
    }
    let xh: Point = x.iter().zip(h).map(|(a, b)| a.add(b).unwrap()).collect();
    recursive_delta(f, h, n - 1, &xh)
        .sub(&recursive_delta(f, h, n - 1, x))
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn binomial_sum_matches_recursion(
        p in poly_with_degrees(q(), 2, 3),
        h in rational_point(2),
        x in rational_point(2),
        n in 0u32..=5,
    ) {
        let t = q();
        let f = SampledFunction::whole_space(p);
        let (h, x) = (lift(&t, &h), lift(&t, &x));
        prop_assert_eq!(delta_power(&f, &h, n, &x).unwrap(), recursive_delta(&f, &h, n, &x));
    }

    #[test]
    fn symbolic_difference_agrees_with_pointwise(
        p in poly_with_degrees(q(), 2, 3),
        h in rational_point(2),
        x in rational_point(2),
        n in 1u32..=4,
    ) {
        let t = q();
        let (h, x) = (lift(&t, &h), lift(&t, &x));
        let dp = delta_poly(&p, &h, n).unwrap();
        let f = SampledFunction::whole_space(p);
        prop_assert_eq!(dp.eval(&x).unwrap(), delta_power(&f, &h, n, &x).unwrap());
    }

    #[test]
    fn mixed_difference_is_symmetric(
        p in poly_with_degrees(q(), 2, 2),
        hs in prop::collection::vec(rational_point(2), 3),
        x in rational_point(2),
    ) {
        let t = q();
        let f = SampledFunction::whole_space(p);
        let hs: Vec<Point> = hs.iter().map(|h| lift(&t, h)).collect();
        let x = lift(&t, &x);
        let base = mixed_delta(&f, &hs, &x).unwrap();
        for perm in [[1, 0, 2], [2, 1, 0], [1, 2, 0]] {
            let permuted: Vec<Point> = perm.iter().map(|&i| hs[i].clone()).collect();
            prop_assert_eq!(&mixed_delta(&f, &permuted, &x).unwrap(), &base);
        }
        // equal steps reduce to the power
        let same = vec![hs[0].clone(); 3];
        prop_assert_eq!(mixed_delta(&f, &same, &x).unwrap(), delta_power(&f, &hs[0], 3, &x).unwrap());
    }

    #[test]
    fn binomials_follow_pascal(n in 1u64..40, k in 1u64..40) {
        prop_assume!(k <= n);
        prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
}

#[test]
fn monomial_identity() {
    // Δ_h^n x^n = n! h^n, Δ_h^{n+1} x^n = 0
    let t = algebraic(1);
    let h = vec![SymReal::symbol_at(&t, 0)];
    for n in 0..=6u32 {
        let p = MultiPoly::monomial(MultiIndex::new(vec![n]), SymReal::one(&t));
        let d = delta_poly(&p, &h, n).unwrap();
        let expected = h[0].pow(n).unwrap().scale_int(&factorial(n as u64));
        assert_eq!(d.as_constant(), Some(expected));
        assert!(delta_poly(&p, &h, n + 1).unwrap().is_zero());
    }
}

#[test]
fn first_difference_of_square() {
    let t = q();
    let f = SampledFunction::whole_space(MultiPoly::monomial(MultiIndex::new(vec![2]), SymReal::one(&t)));
    let v = delta_step(&f, &ints(&t, &[1]), &ints(&t, &[3])).unwrap();
    assert_eq!(v, SymReal::from_int(&t, 7));
}
