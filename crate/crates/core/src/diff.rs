//! Difference operators on sampled functions and on polynomials.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::rational::{binomial, difference_weights};
use crate::algebra::symbol::same_table;
use crate::algebra::{format_point, point_add, point_axpy, MultiPoly, Point, Rational, SymReal, SymbolTable};
use crate::error::{Error, Result};
use crate::lattice::GeneratorSet;

/// Where the values of a [`SampledFunction`] come from.
#[derive(Debug, Clone)]
pub enum Source {
    /// An ordinary polynomial on all of ℝ^d.
    WholeSpace(MultiPoly),
    /// `f(Σ i_k h_k) = P(i)` on the subgroup generated by `generators`,
    /// `default` off it.
    Lattice {
        generators: GeneratorSet,
        poly: MultiPoly,
        default: SymReal,
    },
    /// Explicit values; missing points are an error.
    Table(BTreeMap<Point, SymReal>),
    /// `F(x) = g(x_1) + ⋯ + g(x_d)` for a one-dimensional `g`.
    CoordinateSum(Box<SampledFunction>),
}

/// A function `ℝ^d → ℝ` that can be evaluated exactly at symbol-ring points.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    dim: usize,
    table: Arc<SymbolTable>,
    source: Source,
}

impl SampledFunction {
    pub fn whole_space(p: MultiPoly) -> Self {
        SampledFunction {
            dim: p.nvars(),
            table: p.table().clone(),
            source: Source::WholeSpace(p),
        }
    }

    /// Fails unless `γ` is injective, since otherwise `f` is ill-defined.
    pub fn lattice(generators: GeneratorSet, poly: MultiPoly, default: SymReal) -> Result<Self> {
        if let Some(w) = generators.injectivity().witness {
            return Err(Error::NonInjective(w.iter().map(ToString::to_string).collect()));
        }
        if poly.nvars() != generators.s() {
            return Err(Error::ArityMismatch {
                expected: generators.s(),
                found: poly.nvars(),
            });
        }
        let table = generators.table().clone();
        if !same_table(poly.table(), &table) || !same_table(default.table(), &table) {
            return Err(Error::TableMismatch);
        }
        Ok(SampledFunction {
            dim: generators.d(),
            table,
            source: Source::Lattice {
                generators,
                poly,
                default,
            },
        })
    }

    pub fn table_values(table: &Arc<SymbolTable>, dim: usize, values: BTreeMap<Point, SymReal>) -> Result<Self> {
        for (p, v) in &values {
            if p.len() != dim {
                return Err(Error::ArityMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            if !same_table(v.table(), table) || p.iter().any(|c| !same_table(c.table(), table)) {
                return Err(Error::TableMismatch);
            }
        }
        Ok(SampledFunction {
            dim,
            table: table.clone(),
            source: Source::Table(values),
        })
    }

    pub fn coordinate_sum(g: SampledFunction, dim: usize) -> Result<Self> {
        if g.dim != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: g.dim,
            });
        }
        Ok(SampledFunction {
            dim,
            table: g.table.clone(),
            source: Source::CoordinateSum(Box::new(g)),
        })
    }

    /// The same function over another table, matching symbols by name.
    pub fn rehome(&self, table: &Arc<SymbolTable>) -> Result<Self> {
        let source = match &self.source {
            Source::WholeSpace(p) => Source::WholeSpace(p.rehome(table)?),
            Source::Lattice {
                generators,
                poly,
                default,
            } => Source::Lattice {
                generators: generators.rehome(table)?,
                poly: poly.rehome(table)?,
                default: default.rehome(table)?,
            },
            Source::Table(map) => Source::Table(
                map.iter()
                    .map(|(p, v)| {
                        let p = p.iter().map(|c| c.rehome(table)).collect::<Result<Point>>()?;
                        Ok((p, v.rehome(table)?))
                    })
                    .collect::<Result<_>>()?,
            ),
            Source::CoordinateSum(g) => Source::CoordinateSum(Box::new(g.rehome(table)?)),
        };
        Ok(SampledFunction {
            dim: self.dim,
            table: table.clone(),
            source,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.table
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn eval(&self, x: &[SymReal]) -> Result<SymReal> {
        if x.len() != self.dim {
            return Err(Error::ArityMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        match &self.source {
            Source::WholeSpace(p) => p.eval(x),
            Source::Lattice {
                generators,
                poly,
                default,
            } => match generators.represent(x)? {
                Some(i) => poly.eval_integers(&i),
                None => Ok(default.clone()),
            },
            Source::Table(values) => values
                .get(x)
                .cloned()
                .ok_or_else(|| Error::MissingTableKey(format_point(x))),
            Source::CoordinateSum(g) => {
                let mut acc = SymReal::zero(&self.table);
                for xi in x {
                    acc = acc.add(&g.eval(std::slice::from_ref(xi))?)?;
                }
                Ok(acc)
            }
        }
    }
}

fn check_dim(f: &SampledFunction, v: &[SymReal]) -> Result<()> {
    if v.len() != f.dim() {
        return Err(Error::ArityMismatch {
            expected: f.dim(),
            found: v.len(),
        });
    }
    Ok(())
}

/// `f(x + h) − f(x)`.
pub fn delta_step(f: &SampledFunction, h: &[SymReal], x: &[SymReal]) -> Result<SymReal> {
    check_dim(f, h)?;
    f.eval(&point_add(x, h)?)?.sub(&f.eval(x)?)
}

/// `Δ_h^n f(x) = Σ_{k=0}^{n} C(n,k) (−1)^{n−k} f(x + kh)`; evaluates `n + 1`
/// nodes.
pub fn delta_power(f: &SampledFunction, h: &[SymReal], n: u32, x: &[SymReal]) -> Result<SymReal> {
    check_dim(f, h)?;
    check_dim(f, x)?;
    let mut acc = SymReal::zero(f.table());
    for (k, w) in difference_weights(u64::from(n)).iter().enumerate() {
        let node = point_axpy(x, &Rational::from_integer(k.into()), h)?;
        acc = acc.add(&f.eval(&node)?.scale(w))?;
    }
    Ok(acc)
}

/// `Δ_{h_1 ⋯ h_n} f(x) = Σ_{S ⊆ {1..n}} (−1)^{n−|S|} f(x + Σ_{k∈S} h_k)`;
/// evaluates `2^n` nodes.
pub fn mixed_delta(f: &SampledFunction, hs: &[Point], x: &[SymReal]) -> Result<SymReal> {
    check_dim(f, x)?;
    for h in hs {
        check_dim(f, h)?;
    }
    let n = hs.len();
    if n >= usize::BITS as usize {
        return Err(Error::UnsupportedShape("too many difference directions".into()));
    }
    let mut acc = SymReal::zero(f.table());
    for mask in 0usize..(1 << n) {
        let mut node = x.to_vec();
        for (k, h) in hs.iter().enumerate() {
            if mask & (1 << k) != 0 {
                node = point_add(&node, h)?;
            }
        }
        let v = f.eval(&node)?;
        acc = if (n - mask.count_ones() as usize).is_multiple_of(2) {
            acc.add(&v)?
        } else {
            acc.sub(&v)?
        };
    }
    Ok(acc)
}

/// The polynomial `Δ_h^n P = Σ_k C(n,k) (−1)^{n−k} P(· + kh)`.
pub fn delta_poly(p: &MultiPoly, h: &[SymReal], n: u32) -> Result<MultiPoly> {
    if h.len() != p.nvars() {
        return Err(Error::ArityMismatch {
            expected: p.nvars(),
            found: h.len(),
        });
    }
    let mut acc = MultiPoly::zero(p.table(), p.nvars());
    for k in 0..=n {
        let kh: Vec<SymReal> = h.iter().map(|c| c.scale(&Rational::from_integer(k.into()))).collect();
        let c = binomial(u64::from(n), u64::from(k));
        let c = if (n - k) % 2 == 1 { -c } else { c };
        acc = acc.add(&p.shift(&kh)?.scale_rational(&Rational::from_integer(c)))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{factorial, rat};
    use crate::algebra::{parse_symreal, IndependenceMode, MultiIndex};

    fn q() -> Arc<SymbolTable> {
        SymbolTable::rational()
    }

    fn ints(t: &Arc<SymbolTable>, v: &[i64]) -> Point {
        v.iter().map(|&x| SymReal::from_int(t, x)).collect()
    }

    fn monomial_poly(t: &Arc<SymbolTable>, e: &[u32]) -> MultiPoly {
        MultiPoly::monomial(MultiIndex::new(e.to_vec()), SymReal::one(t))
    }

    #[test]
    fn square_steps() {
        let t = q();
        let f = SampledFunction::whole_space(monomial_poly(&t, &[2]));
        assert_eq!(
            delta_step(&f, &ints(&t, &[1]), &ints(&t, &[3])).unwrap(),
            SymReal::from_int(&t, 7)
        );
        assert_eq!(
            delta_power(&f, &ints(&t, &[1]), 2, &ints(&t, &[0])).unwrap(),
            SymReal::from_int(&t, 2)
        );
        let c = SampledFunction::whole_space(MultiPoly::rational_constant(&t, 1, rat(5)));
        assert!(delta_step(&c, &ints(&t, &[4]), &ints(&t, &[-1])).unwrap().is_zero());
    }

    #[test]
    fn cube_third_difference() {
        let t = q();
        let f = SampledFunction::whole_space(monomial_poly(&t, &[3]));
        let v = delta_power(&f, &ints(&t, &[1]), 3, &ints(&t, &[0])).unwrap();
        assert_eq!(v.as_rational(), Some(Rational::from_integer(factorial(3))));
    }

    #[test]
    fn mixed_of_square() {
        let t = SymbolTable::thetas(2, IndependenceMode::Algebraic);
        let f = SampledFunction::whole_space(monomial_poly(&t, &[2]));
        let a = vec![SymReal::symbol_at(&t, 0)];
        let b = vec![SymReal::symbol_at(&t, 1)];
        let x = vec![parse_symreal(&t, "3/4 + theta1").unwrap()];
        let v = mixed_delta(&f, &[a.clone(), b.clone()], &x).unwrap();
        assert_eq!(v, parse_symreal(&t, "2*theta1*theta2").unwrap());
        let single = mixed_delta(&f, std::slice::from_ref(&a), &x).unwrap();
        assert_eq!(single, delta_step(&f, &a, &x).unwrap());
    }

    #[test]
    fn mixed_product_two_vars() {
        let t = q();
        let f = SampledFunction::whole_space(monomial_poly(&t, &[1, 1]));
        let v = mixed_delta(&f, &[ints(&t, &[1, 0]), ints(&t, &[0, 1])], &ints(&t, &[0, 0])).unwrap();
        assert_eq!(v, SymReal::one(&t));
    }

    #[test]
    fn symbolic_differences() {
        let t = q();
        assert!(delta_poly(&monomial_poly(&t, &[3]), &ints(&t, &[1]), 4)
            .unwrap()
            .is_zero());
        let d = delta_poly(&monomial_poly(&t, &[3]), &ints(&t, &[1]), 1).unwrap();
        let expect = MultiPoly::from_terms(
            &t,
            1,
            [(2, 3), (1, 3), (0, 1)].map(|(e, c)| (MultiIndex::new(vec![e]), SymReal::from_int(&t, c))),
        )
        .unwrap();
        assert_eq!(d, expect);
        for m in 1..=3u32 {
            let p = monomial_poly(&t, &[m, m]);
            let d = delta_poly(&p, &ints(&t, &[1, 1]), 2 * m).unwrap();
            let v = d.eval(&ints(&t, &[0, 0])).unwrap();
            assert_eq!(
                v.as_rational(),
                Some(Rational::from_integer(factorial(u64::from(2 * m))))
            );
        }
    }

    #[test]
    fn table_misses_are_errors() {
        let t = q();
        let mut vals = BTreeMap::new();
        vals.insert(ints(&t, &[0]), SymReal::one(&t));
        let f = SampledFunction::table_values(&t, 1, vals).unwrap();
        assert!(matches!(
            delta_step(&f, &ints(&t, &[1]), &ints(&t, &[0])),
            Err(Error::MissingTableKey(_))
        ));
    }

    #[test]
    fn lattice_source_gates_on_membership() {
        let t = SymbolTable::thetas(1, IndependenceMode::Algebraic);
        let th = SymReal::symbol_at(&t, 0);
        let gamma = GeneratorSet::new(&t, vec![vec![SymReal::one(&t)], vec![th.clone()]]).unwrap();
        // P(i1, i2) = i1 + i2
        let p = monomial_poly(&t, &[1, 0]).add(&monomial_poly(&t, &[0, 1])).unwrap();
        let f = SampledFunction::lattice(gamma, p, SymReal::zero(&t)).unwrap();
        assert_eq!(
            f.eval(&[th.scale(&rat(3)).add(&SymReal::one(&t)).unwrap()]).unwrap(),
            SymReal::from_int(&t, 4)
        );
        assert!(f.eval(&[parse_symreal(&t, "1/2").unwrap()]).unwrap().is_zero());
    }
}
