#![allow(dead_code)]

use std::sync::Arc;

use montel::algebra::rational::ratio;
use montel::{IndependenceMode, MultiIndex, MultiPoly, Rational, SymReal, SymbolTable};
use proptest::prelude::*;

pub fn q() -> Arc<SymbolTable> {
    SymbolTable::rational()
}

pub fn thetas(p: usize) -> Arc<SymbolTable> {
    SymbolTable::thetas(p, IndependenceMode::QLinear)
}

pub fn algebraic(p: usize) -> Arc<SymbolTable> {
    SymbolTable::thetas(p, IndependenceMode::Algebraic)
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-10i64..=10, 1i64..=10).prop_map(|(n, d)| ratio(n, d))
}

/// Dense coefficient vectors over `{0..=m}^n`, about half the entries zero.
pub fn poly_with_degrees(table: Arc<SymbolTable>, n: usize, m: u32) -> impl Strategy<Value = MultiPoly> {
    let count = (m as usize + 1).pow(n as u32);
    prop::collection::vec(prop_oneof![Just(None), small_rational().prop_map(Some)], count).prop_map(move |cs| {
        let mut terms = Vec::new();
        for (flat, c) in cs.into_iter().enumerate() {
            let Some(c) = c else { continue };
            let mut e = vec![0u32; n];
            let mut rest = flat;
            for slot in e.iter_mut().rev() {
                *slot = (rest % (m as usize + 1)) as u32;
                rest /= m as usize + 1;
            }
            terms.push((MultiIndex::new(e), SymReal::from_rational(&table, c)));
        }
        MultiPoly::from_terms(&table, n, terms).unwrap()
    })
}

pub fn rational_point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rational(), n)
}

pub fn lift(table: &Arc<SymbolTable>, v: &[Rational]) -> Vec<SymReal> {
    v.iter().map(|r| SymReal::from_rational(table, r.clone())).collect()
}

pub fn ints(table: &Arc<SymbolTable>, v: &[i64]) -> Vec<SymReal> {
    v.iter().map(|&n| SymReal::from_int(table, n)).collect()
}

/// An injective generator set with `s` generators: `(1)`, `(1, θ_1)` or
/// `(e_1, e_2, (θ_1, θ_2))`.
pub fn injective_generators(s: usize) -> montel::lattice::GeneratorSet {
    use montel::lattice::GeneratorSet;
    match s {
        1 => GeneratorSet::standard(&thetas(0), 1).unwrap(),
        2 => {
            let t = thetas(1);
            GeneratorSet::kronecker(&[SymReal::symbol_at(&t, 0)]).unwrap()
        }
        3 => {
            let t = thetas(2);
            GeneratorSet::kronecker(&[SymReal::symbol_at(&t, 0), SymReal::symbol_at(&t, 1)]).unwrap()
        }
        _ => panic!("unsupported s"),
    }
}
