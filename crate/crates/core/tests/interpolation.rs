mod common;

use std::collections::BTreeMap;

use common::*;
use montel::algebra::parse_symreal;
use montel::interp::{
    is_correct_interpolation_set, tensor_interpolate, vandermonde_oracle, GridValues, RectGrid, VANDERMONDE_CAP,
};
use montel::{Error, MultiPoly, Rational, SymReal};
use proptest::prelude::*;

/// Strictly increasing rational nodes.
fn axis(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    (small_rational(), prop::collection::vec((1i64..=5, 1i64..=4), len - 1)).prop_map(|(start, steps)| {
        let mut out = vec![start];
        for (n, d) in steps {
            let next = out.last().unwrap() + Rational::new(n.into(), d.into());
            out.push(next);
        }
        out
    })
}

fn grid(dims: usize, max_len: usize) -> impl Strategy<Value = RectGrid> {
    prop::collection::vec(1..=max_len, dims)
        .prop_flat_map(|lens| lens.into_iter().map(axis).collect::<Vec<_>>())
        .prop_map(|axes| {
            let t = q();
            RectGrid::new(&t, axes.iter().map(|a| lift(&t, a)).collect()).unwrap()
        })
}

fn grid_values(dims: usize, max_len: usize) -> impl Strategy<Value = GridValues> {
    grid(dims, max_len).prop_flat_map(|g| {
        let n = g.len();
        prop::collection::vec(small_rational(), n).prop_map(move |vals| {
            let t = q();
            GridValues::from_fn(g.clone(), {
                let mut it = vals.clone().into_iter();
                move |_, _| Ok(SymReal::from_rational(&t, it.next().unwrap()))
            })
            .unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn interpolant_matches_data_with_degree_ceiling(data in grid_values(3, 3)) {
        let p = tensor_interpolate(&data).unwrap();
        let (per, _) = p.degrees();
        for (k, n) in data.grid().shape().iter().enumerate() {
            prop_assert!(per[k] < *n as i64);
        }
        for (idx, v) in data.entries() {
            prop_assert_eq!(&p.eval(&data.grid().point(&idx)).unwrap(), v);
        }
    }

    #[test]
    fn polynomials_are_reproduced(p in poly_with_degrees(q(), 2, 2), g in grid(2, 4)) {
        prop_assume!(g.shape().iter().all(|&n| n >= 3));
        let data = GridValues::sample(g, &p).unwrap();
        prop_assert_eq!(tensor_interpolate(&data).unwrap(), p);
    }

    #[test]
    fn tensor_equals_vandermonde(data in grid_values(2, 4)) {
        prop_assert_eq!(
            tensor_interpolate(&data).unwrap(),
            vandermonde_oracle(&data, VANDERMONDE_CAP).unwrap()
        );
    }

    #[test]
    fn axis_permutation_commutes(data in grid_values(3, 3)) {
        let perm = [2, 0, 1];
        let lhs = tensor_interpolate(&data.permute_axes(&perm).unwrap()).unwrap();
        let rhs = tensor_interpolate(&data).unwrap().permute(&perm).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn grids_are_interpolation_sets(g in grid(2, 3)) {
        let pts: Vec<_> = g.indices().iter().map(|i| g.point(i)).collect();
        let cert = is_correct_interpolation_set(&pts, &g.degrees()).unwrap();
        prop_assert!(cert.correct);
    }
}

#[test]
fn symbolic_nodes() {
    let t = algebraic(1);
    let axes = vec![
        vec![
            parse_symreal(&t, "theta1").unwrap(),
            parse_symreal(&t, "theta1 + 1").unwrap(),
            parse_symreal(&t, "theta1 + 3/2").unwrap(),
        ],
        ints(&t, &[0, 2]),
    ];
    let g = RectGrid::new(&t, axes).unwrap();
    let p = MultiPoly::var(&t, 2, 0)
        .pow(2)
        .unwrap()
        .mul(&MultiPoly::var(&t, 2, 1))
        .unwrap();
    let data = GridValues::sample(g, &p).unwrap();
    assert_eq!(tensor_interpolate(&data).unwrap(), p);
    assert_eq!(vandermonde_oracle(&data, VANDERMONDE_CAP).unwrap(), p);
}

#[test]
fn preconditions() {
    let t = thetas(1);
    let dup = RectGrid::new(&t, vec![ints(&t, &[0, 1, 0])]);
    assert!(matches!(dup, Err(Error::DuplicateNode { axis: 0, .. })));
    let irr = RectGrid::new(&t, vec![vec![SymReal::zero(&t), SymReal::symbol_at(&t, 0)]]);
    assert!(matches!(irr, Err(Error::NonRationalNodeGap { .. })));
    let g = RectGrid::integer(&t, &[1]).unwrap();
    assert!(matches!(
        GridValues::new(g, BTreeMap::new()),
        Err(Error::MissingValue(_))
    ));
}

#[test]
fn collinear_points_are_not_interpolation_sets() {
    let t = q();
    let pts: Vec<_> = (0..4).map(|k| ints(&t, &[k, k])).collect();
    let cert = is_correct_interpolation_set(&pts, &[1, 1]).unwrap();
    assert!(!cert.correct);
    assert!(cert.determinant.is_zero());
    assert!(matches!(
        is_correct_interpolation_set(&pts[..3], &[1, 1]),
        Err(Error::CardinalityMismatch { expected: 4, found: 3 })
    ));
}
