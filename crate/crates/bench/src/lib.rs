//! Deterministic inputs shared by the benchmarks in `benches/`.

use std::sync::Arc;

use montel::interp::{GridValues, RectGrid};
use montel::{IndependenceMode, MultiIndex, MultiPoly, Rational, SymReal, SymbolTable};

/// Small rational in `[-7, 7] / [1, 5]`, varying with `k`.
pub fn pattern(k: usize) -> Rational {
    let num = (k * 37 % 15) as i64 - 7;
    let den = (k * 11 % 5) as i64 + 1;
    Rational::new(num.into(), den.into())
}

/// Every monomial of `{0..=m}^n` with a patterned coefficient.
pub fn dense_poly(table: &Arc<SymbolTable>, n: usize, m: u32) -> MultiPoly {
    let count = (m as usize + 1).pow(n as u32);
    let terms = (0..count).map(|flat| {
        let mut e = vec![0u32; n];
        let mut rest = flat;
        for slot in e.iter_mut() {
            *slot = (rest % (m as usize + 1)) as u32;
            rest /= m as usize + 1;
        }
        (MultiIndex::new(e), SymReal::from_rational(table, pattern(flat)))
    });
    MultiPoly::from_terms(table, n, terms).expect("rational coefficients")
}

/// Values on the integer grid `{0..=d_1} × ⋯`, optionally on a grid with
/// fractional node spacing.
pub fn grid_values(degrees: &[usize], integer_nodes: bool) -> GridValues {
    let table = SymbolTable::rational();
    let grid = if integer_nodes {
        RectGrid::integer(&table, degrees).expect("grid")
    } else {
        let axes = degrees
            .iter()
            .map(|&d| {
                (0..=d)
                    .map(|i| SymReal::from_rational(&table, Rational::new((i * i + 2 * i).into(), 3.into())))
                    .collect()
            })
            .collect();
        RectGrid::new(&table, axes).expect("distinct nodes")
    };
    let mut k = 0;
    GridValues::from_fn(grid, |_, _| {
        k += 1;
        Ok(SymReal::from_rational(&table, pattern(k)))
    })
    .expect("values")
}

pub fn theta_symbols(p: usize) -> Vec<SymReal> {
    let table = SymbolTable::thetas(p, IndependenceMode::Algebraic);
    (0..p).map(|k| SymReal::symbol_at(&table, k)).collect()
}
