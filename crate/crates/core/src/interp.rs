//! Tensor-product interpolation on rectangular grids.
//!
//! The interpolant is built one axis at a time: along every one-dimensional
//! fiber the values are turned into Newton divided differences and then
//! expanded into monomial coefficients. Divided differences divide by node
//! gaps, so the gaps on each axis must be rational; the result then stays in
//! the symbol ring.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::symbol::same_table;
use crate::algebra::{IndependenceMode, MultiIndex, MultiPoly, Point, Rational, SymReal, SymbolTable};
use crate::error::{Error, Result};
use crate::linalg;

/// Size cap of the dense Vandermonde oracle.
pub const VANDERMONDE_CAP: usize = 4096;

/// Per-axis node lists `X_k = (x_0^k, …, x_{m_k}^k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RectGrid {
    table: Arc<SymbolTable>,
    axes: Vec<Vec<SymReal>>,
}

impl RectGrid {
    pub fn new(table: &Arc<SymbolTable>, axes: Vec<Vec<SymReal>>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::UnsupportedShape("a grid needs at least one axis".into()));
        }
        for (k, axis) in axes.iter().enumerate() {
            if axis.is_empty() {
                return Err(Error::UnsupportedShape(format!("axis {k} has no nodes")));
            }
            for (i, a) in axis.iter().enumerate() {
                if !same_table(a.table(), table) {
                    return Err(Error::TableMismatch);
                }
                for b in &axis[..i] {
                    let gap = a.sub(b)?;
                    if gap.is_zero() {
                        return Err(Error::DuplicateNode {
                            axis: k,
                            node: a.to_string(),
                        });
                    }
                    if !gap.is_rational() {
                        return Err(Error::NonRationalNodeGap {
                            axis: k,
                            a: b.to_string(),
                            b: a.to_string(),
                        });
                    }
                }
            }
        }
        Ok(RectGrid {
            table: table.clone(),
            axes,
        })
    }

    /// `{0, …, m_1} × ⋯ × {0, …, m_d}`.
    pub fn integer(table: &Arc<SymbolTable>, degrees: &[usize]) -> Result<Self> {
        let axes = degrees
            .iter()
            .map(|&m| (0..=m as i64).map(|i| SymReal::from_int(table, i)).collect())
            .collect();
        RectGrid::new(table, axes)
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Vec<SymReal>] {
        &self.axes
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(Vec::len).collect()
    }

    /// Per-axis degrees `m_k = |X_k| − 1`.
    pub fn degrees(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.len() - 1).collect()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(Vec::len).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All grid indices in row-major (lexicographic) order.
    pub fn indices(&self) -> Vec<Vec<usize>> {
        box_indices(&self.shape())
    }

    pub fn point(&self, index: &[usize]) -> Point {
        index.iter().zip(&self.axes).map(|(&i, a)| a[i].clone()).collect()
    }

    fn is_integer_axis(&self, k: usize) -> bool {
        self.axes[k]
            .iter()
            .enumerate()
            .all(|(i, x)| x.as_rational() == Some(Rational::from_integer(i.into())))
    }
}

/// Every index of the box `[0, shape_0) × ⋯`, lexicographically.
pub fn box_indices(shape: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &n in shape {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |i| {
                    let mut p = prefix.clone();
                    p.push(i);
                    p
                })
            })
            .collect();
    }
    out
}

/// A grid together with a value at every node.
#[derive(Debug, Clone, PartialEq)]
pub struct GridValues {
    grid: RectGrid,
    /// Row-major, last axis fastest.
    values: Vec<SymReal>,
}

impl GridValues {
    pub fn new(grid: RectGrid, mut values: BTreeMap<Vec<usize>, SymReal>) -> Result<Self> {
        let mut dense = Vec::with_capacity(grid.len());
        for idx in grid.indices() {
            let v = values.remove(&idx).ok_or_else(|| Error::MissingValue(idx.clone()))?;
            if !same_table(v.table(), grid.table()) {
                return Err(Error::TableMismatch);
            }
            dense.push(v);
        }
        if let Some(extra) = values.keys().next() {
            return Err(Error::UnsupportedShape(format!(
                "value at {extra:?} lies outside the grid"
            )));
        }
        Ok(GridValues { grid, values: dense })
    }

    pub fn from_fn(grid: RectGrid, mut f: impl FnMut(&[usize], &Point) -> Result<SymReal>) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.len());
        for idx in grid.indices() {
            let v = f(&idx, &grid.point(&idx))?;
            if !same_table(v.table(), grid.table()) {
                return Err(Error::TableMismatch);
            }
            values.push(v);
        }
        Ok(GridValues { grid, values })
    }

    /// Samples of a polynomial at the grid nodes.
    pub fn sample(grid: RectGrid, p: &MultiPoly) -> Result<Self> {
        GridValues::from_fn(grid, |_, x| p.eval(x))
    }

    pub fn grid(&self) -> &RectGrid {
        &self.grid
    }

    pub fn values(&self) -> &[SymReal] {
        &self.values
    }

    pub fn get(&self, index: &[usize]) -> &SymReal {
        &self.values[flat_index(&self.grid.shape(), index)]
    }

    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &SymReal)> {
        self.grid.indices().into_iter().zip(self.values.iter())
    }

    /// Reorders the axes: axis `k` becomes axis `perm[k]`.
    pub fn permute_axes(&self, perm: &[usize]) -> Result<Self> {
        let d = self.grid.dim();
        if perm.len() != d {
            return Err(Error::ArityMismatch {
                expected: d,
                found: perm.len(),
            });
        }
        let mut axes = vec![Vec::new(); d];
        for (k, &p) in perm.iter().enumerate() {
            axes[p] = self.grid.axes[k].clone();
        }
        let grid = RectGrid::new(&self.grid.table, axes)?;
        let mut values = BTreeMap::new();
        for (idx, v) in self.entries() {
            let mut j = vec![0; d];
            for (k, &p) in perm.iter().enumerate() {
                j[p] = idx[k];
            }
            values.insert(j, v.clone());
        }
        GridValues::new(grid, values)
    }
}

fn flat_index(shape: &[usize], index: &[usize]) -> usize {
    index.iter().zip(shape).fold(0, |acc, (&i, &n)| acc * n + i)
}

/// Newton coefficients of one fiber over arbitrary nodes with rational gaps.
fn divided_differences(nodes: &[SymReal], vals: &mut [SymReal]) -> Result<()> {
    let n = nodes.len();
    for j in 1..n {
        for i in (j..n).rev() {
            let gap = nodes[i].sub(&nodes[i - j])?.to_rational()?;
            vals[i] = vals[i].sub(&vals[i - 1])?.div_rational(&gap)?;
        }
    }
    Ok(())
}

/// Newton coefficients over `{0, …, n−1}`: `Δ^j v(0) / j!`.
fn forward_differences(vals: &mut [SymReal]) -> Result<()> {
    let n = vals.len();
    for j in 1..n {
        for i in (j..n).rev() {
            vals[i] = vals[i].sub(&vals[i - 1])?;
        }
    }
    let mut fact = Rational::from_integer(1.into());
    for (j, v) in vals.iter_mut().enumerate().skip(1) {
        fact *= Rational::from_integer(j.into());
        *v = v.div_rational(&fact)?;
    }
    Ok(())
}

/// Expands `Σ c_j Π_{l<j} (t − x_l)` into monomial coefficients (Horner).
fn newton_to_monomial(nodes: &[SymReal], c: &[SymReal]) -> Result<Vec<SymReal>> {
    let n = c.len();
    let mut poly = vec![c[n - 1].clone()];
    for j in (0..n - 1).rev() {
        let mut next = vec![SymReal::zero(c[0].table()); poly.len() + 1];
        for (i, a) in poly.iter().enumerate() {
            next[i + 1] = next[i + 1].add(a)?;
            next[i] = next[i].sub(&a.mul(&nodes[j])?)?;
        }
        next[0] = next[0].add(&c[j])?;
        poly = next;
    }
    Ok(poly)
}

/// The unique `P` with per-axis degrees `≤ m_k` matching the data on the
/// grid.
pub fn tensor_interpolate(data: &GridValues) -> Result<MultiPoly> {
    let grid = &data.grid;
    let shape = grid.shape();
    let d = shape.len();
    let mut coef = data.values.clone();
    for k in 0..d {
        let n = shape[k];
        let stride: usize = shape[k + 1..].iter().product();
        let outer: usize = shape[..k].iter().product();
        let integer = grid.is_integer_axis(k);
        let nodes = &grid.axes[k];
        for o in 0..outer {
            for inner in 0..stride {
                let base = o * n * stride + inner;
                let mut fiber: Vec<SymReal> = (0..n).map(|i| coef[base + i * stride].clone()).collect();
                if integer {
                    forward_differences(&mut fiber)?;
                } else {
                    divided_differences(nodes, &mut fiber)?;
                }
                let mono = newton_to_monomial(nodes, &fiber)?;
                for (i, v) in mono.into_iter().enumerate() {
                    coef[base + i * stride] = v;
                }
            }
        }
    }
    let terms = grid
        .indices()
        .into_iter()
        .zip(coef)
        .map(|(idx, c)| (MultiIndex::new(idx.iter().map(|&i| i as u32).collect()), c));
    MultiPoly::from_terms(grid.table(), d, terms)
}

fn algebraic_twin(table: &Arc<SymbolTable>) -> Arc<SymbolTable> {
    if table.mode() == IndependenceMode::Algebraic {
        table.clone()
    } else {
        table.with_mode(IndependenceMode::Algebraic)
    }
}

/// Generalized Vandermonde matrix of `Π_{m,max}` at `points`, over the
/// algebraic twin of `table`. Columns follow [`box_indices`].
fn vandermonde(points: &[Point], degrees: &[usize], twin: &Arc<SymbolTable>) -> Result<Vec<Vec<SymReal>>> {
    let exps = box_indices(&degrees.iter().map(|m| m + 1).collect::<Vec<_>>());
    points
        .iter()
        .map(|p| {
            let p: Vec<SymReal> = p.iter().map(|c| c.rehome(twin)).collect::<Result<_>>()?;
            let powers: Vec<Vec<SymReal>> = p
                .iter()
                .zip(degrees)
                .map(|(x, &m)| (0..=m as u32).map(|e| x.pow(e)).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?;
            exps.iter()
                .map(|e| {
                    e.iter()
                        .enumerate()
                        .try_fold(SymReal::one(twin), |acc, (k, &ek)| acc.mul(&powers[k][ek]))
                })
                .collect()
        })
        .collect()
}

/// Dense monomial-basis solve by fraction-free elimination; an independent
/// check of [`tensor_interpolate`]. Refuses grids above `cap` nodes.
pub fn vandermonde_oracle(data: &GridValues, cap: usize) -> Result<MultiPoly> {
    let grid = &data.grid;
    let n = grid.len();
    if n > cap {
        return Err(Error::NodeCapExceeded { nodes: n, cap });
    }
    let twin = algebraic_twin(grid.table());
    let points: Vec<Point> = grid.indices().iter().map(|i| grid.point(i)).collect();
    let v = vandermonde(&points, &grid.degrees(), &twin)?;
    let rhs: Vec<SymReal> = data.values.iter().map(|c| c.rehome(&twin)).collect::<Result<_>>()?;
    let sol = linalg::solve_fraction_free(&v, &rhs)?;
    let exps = box_indices(&grid.shape());
    let terms = exps
        .into_iter()
        .zip(sol)
        .map(|(e, c)| {
            Ok((
                MultiIndex::new(e.iter().map(|&i| i as u32).collect()),
                c.rehome(grid.table())?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    MultiPoly::from_terms(grid.table(), grid.dim(), terms)
}

/// Outcome of an interpolation-set test with its determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpolationCertificate {
    pub correct: bool,
    /// Vandermonde determinant over the algebraic twin of the table.
    pub determinant: SymReal,
}

/// Whether `points` is a correct interpolation set for `Π_{m,max}` with the
/// given per-axis degrees, i.e. whether the generalized Vandermonde matrix
/// is nonsingular.
///
/// In q-linear mode a determinant of symbol degree above one cannot be
/// decided and is reported as [`Error::QLinearDegree`].
pub fn is_correct_interpolation_set(points: &[Point], degrees: &[usize]) -> Result<InterpolationCertificate> {
    let expected: usize = degrees.iter().map(|m| m + 1).product();
    if points.len() != expected {
        return Err(Error::CardinalityMismatch {
            expected,
            found: points.len(),
        });
    }
    let Some(first) = points.first().and_then(|p| p.first()) else {
        return Err(Error::UnsupportedShape("empty point set".into()));
    };
    let table = first.table().clone();
    for p in points {
        if p.len() != degrees.len() {
            return Err(Error::ArityMismatch {
                expected: degrees.len(),
                found: p.len(),
            });
        }
        if p.iter().any(|c| !same_table(c.table(), &table)) {
            return Err(Error::TableMismatch);
        }
    }
    let twin = algebraic_twin(&table);
    let v = vandermonde(points, degrees, &twin)?;
    let det = linalg::determinant(&v, &SymReal::zero(&twin))?;
    if table.mode() == IndependenceMode::QLinear && det.symbol_degree() > 1 {
        return Err(Error::QLinearDegree(det.to_string()));
    }
    Ok(InterpolationCertificate {
        correct: !det.is_zero(),
        determinant: det,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_symreal;
    use crate::algebra::rational::rat;

    fn q() -> Arc<SymbolTable> {
        SymbolTable::rational()
    }

    fn poly(t: &Arc<SymbolTable>, n: usize, terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_terms(
            t,
            n,
            terms
                .iter()
                .map(|(e, c)| (MultiIndex::new(e.to_vec()), SymReal::from_int(t, *c))),
        )
        .unwrap()
    }

    #[test]
    fn constant_and_bilinear() {
        let t = q();
        let g = RectGrid::integer(&t, &[2, 1]).unwrap();
        let c = MultiPoly::rational_constant(&t, 2, rat(7));
        let data = GridValues::sample(g.clone(), &c).unwrap();
        assert_eq!(tensor_interpolate(&data).unwrap(), c);
        let g = RectGrid::integer(&t, &[1, 1]).unwrap();
        let p = poly(&t, 2, &[(&[1, 1], 1)]);
        let data = GridValues::sample(g, &p).unwrap();
        assert_eq!(tensor_interpolate(&data).unwrap(), p);
        assert_eq!(vandermonde_oracle(&data, VANDERMONDE_CAP).unwrap(), p);
    }

    #[test]
    fn falling_factorial_by_hand() {
        let t = q();
        let g = RectGrid::integer(&t, &[2]).unwrap();
        let vals = [0, 0, 2]
            .into_iter()
            .enumerate()
            .map(|(i, v)| (vec![i], SymReal::from_int(&t, v)))
            .collect();
        let data = GridValues::new(g, vals).unwrap();
        assert_eq!(
            tensor_interpolate(&data).unwrap(),
            poly(&t, 1, &[(&[2], 1), (&[1], -1)])
        );
    }

    #[test]
    fn cube_by_oracle_and_single_node() {
        let t = q();
        let g = RectGrid::integer(&t, &[3]).unwrap();
        let p = poly(&t, 1, &[(&[3], 1)]);
        let data = GridValues::sample(g, &p).unwrap();
        assert_eq!(vandermonde_oracle(&data, VANDERMONDE_CAP).unwrap(), p);
        let single = RectGrid::new(&t, vec![vec![SymReal::from_int(&t, 5)]]).unwrap();
        let data = GridValues::new(single, [(vec![0], SymReal::from_int(&t, -4))].into()).unwrap();
        assert_eq!(
            vandermonde_oracle(&data, VANDERMONDE_CAP).unwrap(),
            poly(&t, 1, &[(&[0], -4)])
        );
    }

    #[test]
    fn symbolic_nodes_with_rational_gaps() {
        let t = SymbolTable::thetas(1, IndependenceMode::Algebraic);
        let nodes: Vec<SymReal> = ["theta1", "theta1 + 1", "theta1 + 3"]
            .iter()
            .map(|s| parse_symreal(&t, s).unwrap())
            .collect();
        let g = RectGrid::new(&t, vec![nodes]).unwrap();
        let p = MultiPoly::from_terms(
            &t,
            1,
            [
                (MultiIndex::new(vec![2]), SymReal::one(&t)),
                (MultiIndex::new(vec![0]), SymReal::symbol_at(&t, 0)),
            ],
        )
        .unwrap();
        let data = GridValues::sample(g, &p).unwrap();
        assert_eq!(tensor_interpolate(&data).unwrap(), p);
        assert_eq!(vandermonde_oracle(&data, VANDERMONDE_CAP).unwrap(), p);
    }

    #[test]
    fn bad_grids() {
        let t = SymbolTable::thetas(1, IndependenceMode::QLinear);
        let one = SymReal::one(&t);
        assert!(matches!(
            RectGrid::new(&t, vec![vec![one.clone(), one.clone()]]),
            Err(Error::DuplicateNode { axis: 0, .. })
        ));
        assert!(matches!(
            RectGrid::new(&t, vec![vec![one.clone(), SymReal::symbol_at(&t, 0)]]),
            Err(Error::NonRationalNodeGap { .. })
        ));
        let g = RectGrid::integer(&t, &[1]).unwrap();
        assert!(matches!(
            GridValues::new(g, [(vec![0], one)].into()),
            Err(Error::MissingValue(_))
        ));
    }

    fn int_points(rows: &[&[i64]]) -> Vec<Point> {
        let t = q();
        rows.iter()
            .map(|r| r.iter().map(|&v| SymReal::from_int(&t, v)).collect())
            .collect()
    }

    #[test]
    fn interpolation_sets() {
        let sq = int_points(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        assert!(is_correct_interpolation_set(&sq, &[1, 1]).unwrap().correct);
        let diag = int_points(&[&[0, 0], &[1, 1], &[2, 2], &[3, 3]]);
        let c = is_correct_interpolation_set(&diag, &[1, 1]).unwrap();
        assert!(!c.correct);
        assert!(c.determinant.is_zero());
        assert!(matches!(
            is_correct_interpolation_set(&diag[..3], &[1, 1]),
            Err(Error::CardinalityMismatch { expected: 4, found: 3 })
        ));
        for m in 1..=3usize {
            let g = RectGrid::integer(&q(), &[m - 1, m - 1, m - 1]).unwrap();
            let pts: Vec<Point> = g.indices().iter().map(|i| g.point(i)).collect();
            assert!(is_correct_interpolation_set(&pts, &[m - 1; 3]).unwrap().correct);
        }
    }
}
