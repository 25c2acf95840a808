//! Exact-arithmetic toolkit for Montel and Montel–Popoviciu type theorems.
//!
//! Everything here computes over ℚ extended by declared independent
//! irrational symbols ([`SymbolTable`]); no floating point is used.
//!
//! * [`algebra`]: rationals, [`SymReal`], [`MultiPoly`].
//! * [`diff`]: difference operators on sampled functions and polynomials.
//! * [`interp`]: tensor-product interpolation and interpolation-set checks.
//! * [`lattice`]: finitely generated subgroups of ℝ^d, representation and
//!   density certificates.
//! * [`montel`]: lattice interpolants, the difference recurrence and the
//!   generalized Montel degree bound.
//! * [`popoviciu`]: strip decompositions, root bounds and the
//!   Montel–Popoviciu pipeline.
//! * [`gallery`]: the explicit optimality instances and counterexamples.

pub mod algebra;
pub mod diff;
mod error;
pub mod gallery;
pub mod interp;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod montel;
pub mod popoviciu;
pub mod report;

pub use algebra::{IndependenceMode, MultiIndex, MultiPoly, Point, Rational, SymReal, SymbolTable};
pub use diff::SampledFunction;
pub use error::{Error, Result};
pub use report::VerificationReport;
