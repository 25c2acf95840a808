//! Seeded instance generators for the self-test.

use std::sync::Arc;

use montel::algebra::rational::ratio;
use montel::{MultiIndex, MultiPoly, Rational, SymReal, SymbolTable};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Numerator in `[−10, 10]`, denominator in `[1, 10]`.
pub fn rational(rng: &mut Rng8) -> Rational {
    ratio(rng.gen_range(-10..=10), rng.gen_range(1..=10))
}

pub fn nonzero_rational(rng: &mut Rng8) -> Rational {
    loop {
        let r = rational(rng);
        if r != Rational::from_integer(0.into()) {
            return r;
        }
    }
}

/// Every monomial of `{0..=m}^n` gets a coefficient with probability 1/2,
/// and the top corner always does, so the per-axis degrees are exactly `m`.
pub fn poly_max_degree(rng: &mut Rng8, table: &Arc<SymbolTable>, n: usize, m: u32) -> MultiPoly {
    let mut terms = Vec::new();
    let count = (m as usize + 1).pow(n as u32);
    for flat in 0..count {
        let mut e = vec![0u32; n];
        let mut rest = flat;
        for slot in e.iter_mut().rev() {
            *slot = (rest % (m as usize + 1)) as u32;
            rest /= m as usize + 1;
        }
        let top = flat == count - 1;
        if top || rng.gen_bool(0.5) {
            let c = if top { nonzero_rational(rng) } else { rational(rng) };
            terms.push((MultiIndex::new(e), SymReal::from_rational(table, c)));
        }
    }
    MultiPoly::from_terms(table, n, terms).expect("rational coefficients")
}

/// A few random monomials of total degree at most `deg`.
pub fn sparse_poly(rng: &mut Rng8, table: &Arc<SymbolTable>, n: usize, deg: u32, terms: usize) -> MultiPoly {
    let mut out = Vec::new();
    for _ in 0..terms {
        let mut e = vec![0u32; n];
        let mut left = rng.gen_range(0..=deg);
        while left > 0 {
            e[rng.gen_range(0..n)] += 1;
            left -= 1;
        }
        out.push((MultiIndex::new(e), SymReal::from_rational(table, nonzero_rational(rng))));
    }
    MultiPoly::from_terms(table, n, out).expect("rational coefficients")
}

/// `len` strictly increasing rationals.
pub fn axis(rng: &mut Rng8, table: &Arc<SymbolTable>, len: usize) -> Vec<SymReal> {
    let mut x = rational(rng);
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(SymReal::from_rational(table, x.clone()));
        x += ratio(rng.gen_range(1..=5), rng.gen_range(1..=4));
    }
    out
}
