//! Independent reference computations used by the self-test.
//!
//! Nothing here calls the engine routine it is meant to check. The
//! companion-matrix root finder is the only floating point in the project.

use montel::algebra::{point_add, Point};
use montel::diff::SampledFunction;
use montel::{MultiPoly, Rational, SymReal};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Largest root modulus of `a_0 + a_1 z + ⋯ + a_N z^N` from the eigenvalues
/// of its companion matrix. `a_N` must be nonzero.
pub fn max_root_modulus(coeffs: &[f64]) -> f64 {
    let n = coeffs.len() - 1;
    if n == 0 {
        return 0.0;
    }
    let lead = coeffs[n];
    let mut c = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        c[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        c[(i, n - 1)] = -coeffs[i] / lead;
    }
    c.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Searches `n ∈ [−bound, bound]^d ∖ {0}` for `Σ n_k θ_k ∈ ℤ`, in
/// lexicographic order.
pub fn integer_relation(theta: &[SymReal], bound: i64) -> Option<Vec<i64>> {
    let d = theta.len();
    let table = theta.first()?.table().clone();
    let mut n = vec![-bound; d];
    loop {
        if n.iter().any(|&c| c != 0) {
            let mut acc = SymReal::zero(&table);
            for (c, t) in n.iter().zip(theta) {
                acc = acc.add(&t.scale_int(&BigInt::from(*c))).ok()?;
            }
            if acc.as_rational().is_some_and(|r| r.is_integer()) {
                return Some(n);
            }
        }
        let mut k = 0;
        loop {
            if k == d {
                return None;
            }
            if n[k] < bound {
                n[k] += 1;
                break;
            }
            n[k] = -bound;
            k += 1;
        }
    }
}

/// `Δ_h^n f(x)` by the recursion `Δ_h^{n−1} f(x + h) − Δ_h^{n−1} f(x)`.
pub fn recursive_delta(f: &SampledFunction, h: &[SymReal], n: u32, x: &[SymReal]) -> montel::Result<SymReal> {
    if n == 0 {
        return f.eval(x);
    }
    let xh: Point = point_add(x, h)?;
    recursive_delta(f, h, n - 1, &xh)?.sub(&recursive_delta(f, h, n - 1, x)?)
}

/// `det [h_0 ⋯ h_d ; n_0 ⋯ n_d]` by the permutation expansion, as a
/// polynomial in `n_0, …, n_d`. `columns` holds `d + 1` points of `ℝ^d`.
pub fn stacked_determinant(columns: &[Point]) -> montel::Result<MultiPoly> {
    let size = columns.len();
    let table = columns[0][0].table().clone();
    let entry = |row: usize, col: usize| -> MultiPoly {
        if row + 1 == size {
            MultiPoly::var(&table, size, col)
        } else {
            MultiPoly::constant(size, columns[col][row].clone())
        }
    };
    let mut total = MultiPoly::zero(&table, size);
    let mut perm: Vec<usize> = (0..size).collect();
    permutations(&mut perm, 0, &mut |p| {
        let inversions = (0..size)
            .flat_map(|i| (i + 1..size).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term = MultiPoly::rational_constant(&table, size, Rational::from_integer(1.into()));
        for (row, &col) in p.iter().enumerate() {
            term = term.mul(&entry(row, col))?;
        }
        total = if inversions % 2 == 0 {
            total.add(&term)?
        } else {
            total.sub(&term)?
        };
        Ok(())
    })?;
    Ok(total)
}

fn permutations(
    p: &mut Vec<usize>,
    k: usize,
    visit: &mut dyn FnMut(&[usize]) -> montel::Result<()>,
) -> montel::Result<()> {
    if k == p.len() {
        return visit(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, visit)?;
        p.swap(k, i);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_roots() {
        // (z − 1)(z − 2)
        assert!((max_root_modulus(&[2.0, -3.0, 1.0]) - 2.0).abs() < 1e-9);
        // z^2 + 4
        assert!((max_root_modulus(&[4.0, 0.0, 1.0]) - 2.0).abs() < 1e-9);
        assert_eq!(max_root_modulus(&[5.0]), 0.0);
    }

    #[test]
    fn relation_search() {
        let t = montel::SymbolTable::rational();
        let theta = [SymReal::from_rational(&t, Rational::new(1.into(), 2.into()))];
        assert_eq!(integer_relation(&theta, 3), Some(vec![-2]));
        let s = montel::SymbolTable::thetas(1, montel::IndependenceMode::QLinear);
        assert_eq!(integer_relation(&[SymReal::symbol_at(&s, 0)], 5), None);
    }

    #[test]
    fn determinant_of_identity_stack() {
        let t = montel::SymbolTable::rational();
        let one = SymReal::one(&t);
        let zero = SymReal::zero(&t);
        // det [[1, 0], [n0, n1]] = n1
        let det = stacked_determinant(&[vec![one], vec![zero]]).unwrap();
        assert_eq!(det, MultiPoly::var(&t, 2, 1));
    }
}
