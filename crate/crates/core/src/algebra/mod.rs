//! Exact arithmetic: rationals, symbolic reals over declared independent
//! irrationals, and sparse multivariate polynomials.

mod monomial;
mod multipoly;
mod parse;
pub mod rational;
pub(crate) mod symbol;
mod symreal;

pub use monomial::MultiIndex;
pub use multipoly::MultiPoly;
pub use parse::{parse_monomial_key, parse_point, parse_symreal};
pub use rational::Rational;
pub use symbol::{IndependenceMode, SymbolTable};
pub use symreal::{format_symbol_monomial, SymReal};

/// A point of ℝ^d with exact coordinates.
pub type Point = Vec<SymReal>;

/// Coordinate-wise `a + b`.
pub fn point_add(a: &[SymReal], b: &[SymReal]) -> crate::Result<Point> {
    if a.len() != b.len() {
        return Err(crate::Error::ArityMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

/// Coordinate-wise `a + r·b` for a rational `r`.
pub fn point_axpy(a: &[SymReal], r: &Rational, b: &[SymReal]) -> crate::Result<Point> {
    if a.len() != b.len() {
        return Err(crate::Error::ArityMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    a.iter().zip(b).map(|(x, y)| x.add(&y.scale(r))).collect()
}

pub fn format_point(p: &[SymReal]) -> String {
    p.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}
