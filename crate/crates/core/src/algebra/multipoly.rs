use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::monomial::MultiIndex;
use super::rational::{binomial, Rational};
use super::symbol::{same_table, SymbolTable};
use super::symreal::SymReal;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with [`SymReal`] coefficients.
///
/// Terms are kept in graded-lexicographic order and zero coefficients are
/// never stored, so equality is structural.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    table: Arc<SymbolTable>,
    terms: BTreeMap<MultiIndex, SymReal>,
}

impl MultiPoly {
    pub fn zero(table: &Arc<SymbolTable>, nvars: usize) -> Self {
        MultiPoly {
            nvars,
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: SymReal) -> Self {
        let mut p = MultiPoly::zero(c.table(), nvars);
        p.add_term(MultiIndex::zero(nvars), c);
        p
    }

    pub fn rational_constant(table: &Arc<SymbolTable>, nvars: usize, r: Rational) -> Self {
        Self::constant(nvars, SymReal::from_rational(table, r))
    }

    /// The coordinate function `x_k`.
    pub fn var(table: &Arc<SymbolTable>, nvars: usize, k: usize) -> Self {
        Self::monomial(MultiIndex::unit(nvars, k), SymReal::one(table))
    }

    pub fn monomial(m: MultiIndex, c: SymReal) -> Self {
        let mut p = MultiPoly::zero(c.table(), m.len());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(
        table: &Arc<SymbolTable>,
        nvars: usize,
        terms: impl IntoIterator<Item = (MultiIndex, SymReal)>,
    ) -> Result<Self> {
        let mut p = MultiPoly::zero(table, nvars);
        for (m, c) in terms {
            if m.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: m.len(),
                });
            }
            if !same_table(table, c.table()) {
                return Err(Error::TableMismatch);
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.table
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, SymReal> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &MultiIndex) -> SymReal {
        self.terms.get(m).cloned().unwrap_or_else(|| SymReal::zero(&self.table))
    }

    /// The constant term when the polynomial is constant.
    pub fn as_constant(&self) -> Option<SymReal> {
        if self.terms.keys().all(MultiIndex::is_constant) {
            Some(self.coefficient(&MultiIndex::zero(self.nvars)))
        } else {
            None
        }
    }

    fn add_term(&mut self, m: MultiIndex, c: SymReal) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                // tables were checked by the caller
                *v = v.add(&c).expect("same table");
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        if !same_table(&self.table, &other.table) {
            return Err(Error::TableMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = MultiPoly::zero(&self.table, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.add(mb), ca.mul(cb)?);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &SymReal) -> Result<MultiPoly> {
        if !same_table(&self.table, c.table()) {
            return Err(Error::TableMismatch);
        }
        let mut out = MultiPoly::zero(&self.table, self.nvars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.mul(c)?);
        }
        Ok(out)
    }

    pub fn scale_rational(&self, r: &Rational) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.table, self.nvars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.scale(r));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Result<MultiPoly> {
        let mut acc = MultiPoly::rational_constant(&self.table, self.nvars, Rational::one());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Maximum exponent of variable `k`; `-1` for the zero polynomial.
    pub fn max_degree(&self, k: usize) -> i64 {
        self.terms.keys().map(|m| m.get(k) as i64).max().unwrap_or(-1)
    }

    /// Maximum total degree; `-1` for the zero polynomial.
    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.total_degree() as i64).max().unwrap_or(-1)
    }

    /// Per-variable maximum degrees and the total degree (zero polynomial:
    /// all `-1`).
    pub fn degrees(&self) -> (Vec<i64>, i64) {
        (
            (0..self.nvars).map(|k| self.max_degree(k)).collect(),
            self.total_degree(),
        )
    }

    fn check_arity(&self, n: usize) -> Result<()> {
        if n != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: n,
            });
        }
        Ok(())
    }

    /// Exact value at a point with [`SymReal`] coordinates.
    pub fn eval(&self, x: &[SymReal]) -> Result<SymReal> {
        self.check_arity(x.len())?;
        if let Some(rs) = x.iter().map(SymReal::as_rational).collect::<Option<Vec<_>>>() {
            if x.iter().all(|v| same_table(v.table(), &self.table)) {
                return self.eval_rational(&rs);
            }
        }
        let mut powers: Vec<Vec<SymReal>> = Vec::with_capacity(self.nvars);
        for (k, xk) in x.iter().enumerate() {
            let top = self.max_degree(k).max(0) as usize;
            let mut p = vec![SymReal::one(&self.table)];
            for _ in 0..top {
                let next = p.last().unwrap().mul(xk)?;
                p.push(next);
            }
            powers.push(p);
        }
        let mut acc = SymReal::zero(&self.table);
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (k, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[k][e as usize])?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Value at a rational point.
    pub fn eval_rational(&self, x: &[Rational]) -> Result<SymReal> {
        self.check_arity(x.len())?;
        let mut by_coef: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
        let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(self.nvars);
        for (k, xk) in x.iter().enumerate() {
            let top = self.max_degree(k).max(0) as usize;
            let mut p = vec![Rational::one()];
            for _ in 0..top {
                let next = p.last().unwrap() * xk;
                p.push(next);
            }
            powers.push(p);
        }
        for (m, c) in &self.terms {
            let mut w = Rational::one();
            for (k, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    w *= &powers[k][e as usize];
                }
            }
            if w.is_zero() {
                continue;
            }
            for (sm, sc) in c.terms() {
                *by_coef.entry(sm.clone()).or_insert_with(Rational::zero) += sc * &w;
            }
        }
        SymReal::from_terms(&self.table, by_coef)
    }

    pub fn eval_integers(&self, x: &[BigInt]) -> Result<SymReal> {
        let rs: Vec<Rational> = x.iter().map(|v| Rational::from_integer(v.clone())).collect();
        self.eval_rational(&rs)
    }

    /// `Q(x) = P(x + h)`, expanded one variable at a time with binomial
    /// coefficients.
    pub fn shift(&self, h: &[SymReal]) -> Result<MultiPoly> {
        self.check_arity(h.len())?;
        let mut cur = self.clone();
        for (k, hk) in h.iter().enumerate() {
            if !same_table(hk.table(), &self.table) {
                return Err(Error::TableMismatch);
            }
            if hk.is_zero() {
                continue;
            }
            let top = cur.max_degree(k).max(0) as u32;
            let mut hp = vec![SymReal::one(&self.table)];
            for _ in 0..top {
                let next = hp.last().unwrap().mul(hk)?;
                hp.push(next);
            }
            let mut next = MultiPoly::zero(&self.table, self.nvars);
            for (m, c) in &cur.terms {
                let a = m.get(k);
                for j in 0..=a {
                    let w = Rational::from_integer(binomial(a as u64, j as u64));
                    let coef = c.mul(&hp[(a - j) as usize])?.scale(&w);
                    next.add_term(m.with(k, j), coef);
                }
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Composition `P(s_1, …, s_n)`; all substituents share one variable set.
    pub fn substitute(&self, subst: &[MultiPoly]) -> Result<MultiPoly> {
        self.check_arity(subst.len())?;
        let target = match subst.first() {
            Some(s) => s.nvars,
            None => 0,
        };
        for s in subst {
            if s.nvars != target {
                return Err(Error::VariableCountMismatch);
            }
            if !same_table(&s.table, &self.table) {
                return Err(Error::TableMismatch);
            }
        }
        let mut powers: Vec<Vec<MultiPoly>> = Vec::with_capacity(self.nvars);
        for (k, s) in subst.iter().enumerate() {
            let top = self.max_degree(k).max(0) as usize;
            let mut p = vec![MultiPoly::rational_constant(&self.table, target, Rational::one())];
            for _ in 0..top {
                let next = p.last().unwrap().mul(s)?;
                p.push(next);
            }
            powers.push(p);
        }
        let mut out = MultiPoly::zero(&self.table, target);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (k, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[k][e as usize])?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Coefficients of `x_k^j` (`j = 0..=deg_k`) as polynomials in the
    /// remaining `nvars - 1` variables.
    pub fn split_variable(&self, k: usize) -> Vec<MultiPoly> {
        let top = self.max_degree(k);
        let mut out: Vec<MultiPoly> = (0..=top.max(-1))
            .map(|_| MultiPoly::zero(&self.table, self.nvars - 1))
            .collect();
        for (m, c) in &self.terms {
            out[m.get(k) as usize].add_term(m.without(k), c.clone());
        }
        out
    }

    /// Inverse of [`split_variable`](Self::split_variable).
    pub fn join_variable(table: &Arc<SymbolTable>, k: usize, parts: &[MultiPoly], nvars: usize) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(table, nvars);
        for (j, part) in parts.iter().enumerate() {
            if part.nvars + 1 != nvars {
                return Err(Error::VariableCountMismatch);
            }
            for (m, c) in &part.terms {
                out.add_term(m.inserted(k, j as u32), c.clone());
            }
        }
        Ok(out)
    }

    /// Reorders variables: variable `k` of `self` becomes variable `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Result<MultiPoly> {
        self.check_arity(perm.len())?;
        let mut out = MultiPoly::zero(&self.table, self.nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; self.nvars];
            for (k, &p) in perm.iter().enumerate() {
                e[p] = m.get(k);
            }
            out.add_term(MultiIndex::new(e), c.clone());
        }
        Ok(out)
    }

    /// Moves every coefficient into another table, see [`SymReal::rehome`].
    pub fn rehome(&self, table: &Arc<SymbolTable>) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(table, self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.rehome(table)?);
        }
        Ok(out)
    }
}

fn format_var_monomial(m: &MultiIndex) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(k, e)| {
            if *e == 1 {
                format!("x{}", k + 1)
            } else {
                format!("x{}^{e}", k + 1)
            }
        })
        .collect();
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if m.is_constant() {
                write!(f, "({c})")?;
            } else if c.as_rational().is_some_and(|r| r.is_one()) {
                f.write_str(&format_var_monomial(m))?;
            } else {
                write!(f, "({c})*{}", format_var_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({self})", self.nvars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::algebra::symbol::IndependenceMode;

    fn alg() -> Arc<SymbolTable> {
        SymbolTable::thetas(1, IndependenceMode::Algebraic)
    }

    fn x(t: &Arc<SymbolTable>, n: usize, k: usize) -> MultiPoly {
        MultiPoly::var(t, n, k)
    }

    fn c(t: &Arc<SymbolTable>, n: usize, v: i64) -> MultiPoly {
        MultiPoly::rational_constant(t, n, rat(v))
    }

    fn ints(t: &Arc<SymbolTable>, v: &[i64]) -> Vec<SymReal> {
        v.iter().map(|&k| SymReal::from_int(t, k)).collect()
    }

    #[test]
    fn eval_examples() {
        let t = alg();
        let p = x(&t, 2, 0).mul(&x(&t, 2, 1)).unwrap();
        assert_eq!(p.eval(&ints(&t, &[2, 3])).unwrap(), SymReal::from_int(&t, 6));

        let sq = x(&t, 1, 0).pow(2).unwrap();
        let th = SymReal::symbol_at(&t, 0);
        assert_eq!(sq.eval(std::slice::from_ref(&th)).unwrap(), th.mul(&th).unwrap());

        let falling = x(&t, 1, 0).mul(&x(&t, 1, 0).sub(&c(&t, 1, 1)).unwrap()).unwrap();
        assert_eq!(falling.eval(&ints(&t, &[2])).unwrap(), SymReal::from_int(&t, 2));
        assert!(matches!(p.eval(&ints(&t, &[1])), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn qlinear_eval_needs_linear_inputs() {
        let t = SymbolTable::thetas(1, IndependenceMode::QLinear);
        let sq = x(&t, 1, 0).pow(2).unwrap();
        let th = SymReal::symbol_at(&t, 0);
        assert_eq!(sq.eval(std::slice::from_ref(&th)), Err(Error::QLinearProduct));
        let lin = x(&t, 1, 0).scale_rational(&rat(3));
        assert_eq!(lin.eval(std::slice::from_ref(&th)).unwrap(), th.scale(&rat(3)));
    }

    #[test]
    fn shift_examples() {
        let t = alg();
        let sq = x(&t, 1, 0).pow(2).unwrap();
        let expect = sq
            .add(&x(&t, 1, 0).scale_rational(&rat(2)))
            .unwrap()
            .add(&c(&t, 1, 1))
            .unwrap();
        assert_eq!(sq.shift(&ints(&t, &[1])).unwrap(), expect);

        let p = x(&t, 2, 0).mul(&x(&t, 2, 1)).unwrap();
        assert_eq!(p.shift(&ints(&t, &[0, 0])).unwrap(), p);

        let th = SymReal::symbol_at(&t, 0);
        let cube = x(&t, 1, 0).pow(3).unwrap();
        let manual = x(&t, 1, 0)
            .add(&MultiPoly::constant(1, th.clone()))
            .unwrap()
            .pow(3)
            .unwrap();
        assert_eq!(cube.shift(std::slice::from_ref(&th)).unwrap(), manual);
        assert_eq!(
            manual.coefficient(&MultiIndex::new(vec![1])),
            th.mul(&th).unwrap().scale(&rat(3))
        );
    }

    #[test]
    fn degrees_and_zero_convention() {
        let t = alg();
        let p = x(&t, 2, 0).pow(2).unwrap().mul(&x(&t, 2, 1)).unwrap();
        assert_eq!(p.degrees(), (vec![2, 1], 3));
        assert_eq!(MultiPoly::zero(&t, 3).degrees(), (vec![-1, -1, -1], -1));
        let m = 3;
        let prod = (0..4)
            .map(|k| x(&t, 4, k).pow(m).unwrap())
            .reduce(|a, b| a.mul(&b).unwrap())
            .unwrap();
        assert_eq!(prod.degrees(), (vec![3; 4], 12));
    }

    #[test]
    fn substitute_examples() {
        let t = alg();
        let sq = x(&t, 1, 0).pow(2).unwrap();
        let xy = x(&t, 2, 0).add(&x(&t, 2, 1)).unwrap();
        let out = sq.substitute(std::slice::from_ref(&xy)).unwrap();
        assert_eq!(out, xy.pow(2).unwrap());

        let th = SymReal::symbol_at(&t, 0);
        let sum = x(&t, 2, 0).add(&x(&t, 2, 1)).unwrap();
        let s1 = x(&t, 2, 0).sub(&x(&t, 2, 1).scale(&th).unwrap()).unwrap();
        let out = sum.substitute(&[s1, x(&t, 2, 1)]).unwrap();
        let one_minus = SymReal::one(&t).sub(&th).unwrap();
        let expect = x(&t, 2, 0).add(&x(&t, 2, 1).scale(&one_minus).unwrap()).unwrap();
        assert_eq!(out, expect);

        let bad = [x(&t, 2, 0), x(&t, 3, 0)];
        assert_eq!(sum.substitute(&bad), Err(Error::VariableCountMismatch));
    }

    #[test]
    fn split_and_join() {
        let t = alg();
        let p = x(&t, 3, 0)
            .mul(&x(&t, 3, 2).pow(2).unwrap())
            .unwrap()
            .add(&x(&t, 3, 1))
            .unwrap();
        let parts = p.split_variable(2);
        assert_eq!(parts.len(), 3);
        assert_eq!(MultiPoly::join_variable(&t, 2, &parts, 3).unwrap(), p);
        let perm = p.permute(&[2, 0, 1]).unwrap();
        assert_eq!(perm.permute(&[1, 2, 0]).unwrap(), p);
    }
}
