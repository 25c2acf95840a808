mod common;

use common::*;
use montel::interp::{GridValues, RectGrid};
use montel::json::{
    function_doc, function_from_doc, grid_doc, grid_from_doc, parse, poly_doc, poly_from_doc, render, FunctionDoc,
    GridDoc, PolyDoc,
};
use montel::lattice::GeneratorSet;
use montel::{MultiPoly, SymReal};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomials_round_trip(p in poly_with_degrees(algebraic(2), 3, 2)) {
        let text = render(&poly_doc(&p));
        let back = poly_from_doc(&parse::<PolyDoc>(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(render(&poly_doc(&back)), text);
    }

    #[test]
    fn grids_round_trip(p in poly_with_degrees(q(), 2, 2)) {
        let g = RectGrid::integer(&q(), &[2, 2]).unwrap();
        let data = GridValues::sample(g, &p).unwrap();
        let text = render(&grid_doc(&data));
        let back = grid_from_doc(&parse::<GridDoc>(&text).unwrap()).unwrap();
        prop_assert_eq!(back.values(), data.values());
        prop_assert_eq!(render(&grid_doc(&back)), text);
    }

    #[test]
    fn lattice_functions_round_trip(p in poly_with_degrees(thetas(1), 2, 2)) {
        let t = thetas(1);
        let gamma = GeneratorSet::kronecker(&[SymReal::symbol_at(&t, 0)]).unwrap();
        let f = montel::SampledFunction::lattice(gamma, p, SymReal::zero(&t)).unwrap();
        let doc = function_doc(&f);
        let back = function_from_doc(&parse::<FunctionDoc>(&render(&doc)).unwrap()).unwrap();
        prop_assert_eq!(function_doc(&back), doc);
    }
}

#[test]
fn zero_polynomial_has_no_terms() {
    let z = MultiPoly::zero(&q(), 2);
    let text = render(&poly_doc(&z));
    assert!(text.contains("\"terms\": []"));
    assert_eq!(poly_from_doc(&parse(&text).unwrap()).unwrap(), z);
}
