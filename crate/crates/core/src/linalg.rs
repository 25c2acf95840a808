//! Exact linear algebra: Gauss–Jordan over ℚ and fraction-free (Bareiss)
//! elimination over the symbol ring.

use num_traits::{One, Zero};

use crate::algebra::{Rational, SymReal};
use crate::error::{Error, Result};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !Zero::is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !Zero::is_zero(&m[r][col]) {
                let f = m[r][col].clone();
                let (src, dst) = if r < row {
                    let (a, b) = m.split_at_mut(row);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = m.split_at_mut(r);
                    (&a[row], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d -= &f * s;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rational>], ncols: usize) -> usize {
    let mut work = m.to_vec();
    rref(&mut work, ncols).len()
}

/// Basis of the right kernel `{v : m v = 0}` over ℚ.
pub fn kernel(m: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut work = m.to_vec();
    let pivots = rref(&mut work, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -work[r][f].clone();
            }
            v
        })
        .collect()
}

/// Solves `m x = b` over ℚ. Returns `None` when inconsistent; with a
/// nontrivial kernel the returned solution sets free variables to zero.
pub fn solve(m: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][ncols].clone();
    }
    Some(x)
}

/// Integral domain operations needed by fraction-free elimination.
pub trait RingElement: Clone {
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Result<Self>;
    fn sub(&self, other: &Self) -> Result<Self>;
    fn div_exact(&self, other: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn one_like(&self) -> Self;
}

impl RingElement for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }
    fn sub(&self, other: &Self) -> Result<Self> {
        Ok(self - other)
    }
    fn div_exact(&self, other: &Self) -> Result<Self> {
        if Zero::is_zero(other) {
            return Err(Error::DivisionByZero);
        }
        Ok(self / other)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
}

impl RingElement for SymReal {
    fn is_zero(&self) -> bool {
        SymReal::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        SymReal::mul(self, other)
    }
    fn sub(&self, other: &Self) -> Result<Self> {
        SymReal::sub(self, other)
    }
    fn div_exact(&self, other: &Self) -> Result<Self> {
        SymReal::div_exact(self, other)
    }
    fn neg(&self) -> Self {
        SymReal::neg(self)
    }
    fn one_like(&self) -> Self {
        SymReal::one(self.table())
    }
}

/// Fraction-free forward elimination on an `n × (n + extra)` matrix.
///
/// After the call the left `n × n` block is upper triangular, the last pivot
/// equals the determinant (with the returned row-swap sign applied), and every
/// division performed was exact. Returns `None` if the left block is singular.
fn bareiss_forward<T: RingElement>(m: &mut [Vec<T>], n: usize) -> Result<Option<bool>> {
    let width = m.first().map_or(0, Vec::len);
    let mut negated = false;
    let mut prev: Option<T> = None;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Ok(None);
        };
        if p != k {
            m.swap(p, k);
            negated = !negated;
        }
        for i in k + 1..n {
            for j in k + 1..width {
                let num = m[k][k].mul(&m[i][j])?.sub(&m[i][k].mul(&m[k][j])?)?;
                m[i][j] = match &prev {
                    Some(d) => num.div_exact(d)?,
                    None => num,
                };
            }
            m[i][k] = m[k][k].sub(&m[k][k])?;
        }
        prev = Some(m[k][k].clone());
    }
    Ok(Some(negated))
}

/// Determinant of a square matrix by Bareiss elimination.
pub fn determinant<T: RingElement>(matrix: &[Vec<T>], zero: &T) -> Result<T> {
    let n = matrix.len();
    if n == 0 {
        return Ok(zero.one_like());
    }
    if matrix.iter().any(|r| r.len() != n) {
        return Err(Error::UnsupportedShape("determinant of a non-square matrix".into()));
    }
    let mut work = matrix.to_vec();
    match bareiss_forward(&mut work, n)? {
        None => Ok(zero.clone()),
        Some(negated) => {
            let d = work[n - 1][n - 1].clone();
            Ok(if negated { d.neg() } else { d })
        }
    }
}

/// Solves `m x = b` for square nonsingular `m` by Bareiss elimination and
/// exact back substitution. Fails with [`Error::NotExact`] when the solution
/// does not lie in the ring.
pub fn solve_fraction_free<T: RingElement>(matrix: &[Vec<T>], rhs: &[T]) -> Result<Vec<T>> {
    let n = matrix.len();
    if rhs.len() != n || matrix.iter().any(|r| r.len() != n) {
        return Err(Error::UnsupportedShape("solve needs a square system".into()));
    }
    let mut work: Vec<Vec<T>> = matrix
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    if bareiss_forward(&mut work, n)?.is_none() {
        return Err(Error::SingularSystem);
    }
    let mut x: Vec<Option<T>> = vec![None; n];
    for i in (0..n).rev() {
        let mut acc = work[i][n].clone();
        for j in i + 1..n {
            acc = acc.sub(&work[i][j].mul(x[j].as_ref().unwrap())?)?;
        }
        x[i] = Some(acc.div_exact(&work[i][i])?);
    }
    Ok(x.into_iter().map(Option::unwrap).collect())
}
