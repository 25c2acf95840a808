use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::MultiIndex;
use super::rational::{format_rational, Rational};
use super::symbol::{same_table, IndependenceMode, SymbolTable};
use crate::error::{Error, Result};

/// An exact real number: a polynomial with rational coefficients in the
/// declared symbols of a [`SymbolTable`].
///
/// Zero coefficients are never stored, so `is_zero` is a structural test. It is
/// sound because the symbols are declared independent.
#[derive(Clone)]
pub struct SymReal {
    table: Arc<SymbolTable>,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl SymReal {
    pub fn zero(table: &Arc<SymbolTable>) -> Self {
        SymReal {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &Arc<SymbolTable>) -> Self {
        Self::from_rational(table, Rational::one())
    }

    pub fn from_rational(table: &Arc<SymbolTable>, r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(MultiIndex::zero(table.len()), r);
        }
        SymReal {
            table: table.clone(),
            terms,
        }
    }

    pub fn from_int(table: &Arc<SymbolTable>, n: i64) -> Self {
        Self::from_rational(table, Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(table: &Arc<SymbolTable>, n: &BigInt) -> Self {
        Self::from_rational(table, Rational::from_integer(n.clone()))
    }

    /// The `k`-th declared symbol.
    pub fn symbol_at(table: &Arc<SymbolTable>, k: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(MultiIndex::unit(table.len(), k), Rational::one());
        SymReal {
            table: table.clone(),
            terms,
        }
    }

    pub fn symbol(table: &Arc<SymbolTable>, name: &str) -> Result<Self> {
        let k = table
            .index_of(name)
            .ok_or_else(|| Error::Parse(format!("unknown symbol {name:?}")))?;
        Ok(Self::symbol_at(table, k))
    }

    /// Builds a value from monomial/coefficient pairs, merging duplicates.
    pub fn from_terms(
        table: &Arc<SymbolTable>,
        terms: impl IntoIterator<Item = (MultiIndex, Rational)>,
    ) -> Result<Self> {
        let mut out = SymReal::zero(table);
        for (m, c) in terms {
            if m.len() != table.len() {
                return Err(Error::ArityMismatch {
                    expected: table.len(),
                    found: m.len(),
                });
            }
            out.add_term(m, c);
        }
        out.check_mode()?;
        Ok(out)
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.table
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, m: &MultiIndex) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(MultiIndex::is_constant)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coefficient(&MultiIndex::zero(self.table.len())))
        } else {
            None
        }
    }

    pub fn to_rational(&self) -> Result<Rational> {
        self.as_rational().ok_or_else(|| Error::NotRational(self.to_string()))
    }

    /// Constant term.
    pub fn rational_part(&self) -> Rational {
        self.coefficient(&MultiIndex::zero(self.table.len()))
    }

    /// Highest symbol degree, `-1` for zero.
    pub fn symbol_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.total_degree() as i64).max().unwrap_or(-1)
    }

    fn add_term(&mut self, m: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_mode(&self) -> Result<()> {
        if self.table.mode() == IndependenceMode::QLinear && self.symbol_degree() > 1 {
            return Err(Error::QLinearDegree(self.to_string()));
        }
        Ok(())
    }

    fn check_table(&self, other: &SymReal) -> Result<()> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    pub fn add(&self, other: &SymReal) -> Result<SymReal> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SymReal) -> Result<SymReal> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> SymReal {
        SymReal {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> SymReal {
        if r.is_zero() {
            return SymReal::zero(&self.table);
        }
        SymReal {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn scale_int(&self, n: &BigInt) -> SymReal {
        self.scale(&Rational::from_integer(n.clone()))
    }

    /// Ring product. In q-linear mode at least one factor must be rational.
    pub fn mul(&self, other: &SymReal) -> Result<SymReal> {
        self.check_table(other)?;
        if let Some(r) = self.as_rational() {
            return Ok(other.scale(&r));
        }
        if let Some(r) = other.as_rational() {
            return Ok(self.scale(&r));
        }
        if self.table.mode() == IndependenceMode::QLinear {
            return Err(Error::QLinearProduct);
        }
        Ok(self.raw_mul(other))
    }

    fn raw_mul(&self, other: &SymReal) -> SymReal {
        let mut out = SymReal::zero(&self.table);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.add(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Result<SymReal> {
        let mut acc = SymReal::one(&self.table);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn div_rational(&self, r: &Rational) -> Result<SymReal> {
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.scale(&r.recip()))
    }

    /// Exact quotient in the symbol ring; fails with [`Error::NotExact`] when
    /// `other` does not divide `self`.
    pub fn div_exact(&self, other: &SymReal) -> Result<SymReal> {
        self.check_table(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = other.as_rational() {
            return self.div_rational(&r);
        }
        let (lead_m, lead_c) = other.terms.iter().next_back().expect("nonzero");
        let mut rem = self.clone();
        let mut quot = SymReal::zero(&self.table);
        while let Some((m, c)) = rem.terms.iter().next_back() {
            let q_m = m.checked_sub(lead_m).ok_or(Error::NotExact)?;
            let q_c = c / lead_c;
            for (om, oc) in &other.terms {
                rem.add_term(om.add(&q_m), -(oc * &q_c));
            }
            quot.add_term(q_m, q_c);
        }
        quot.check_mode()?;
        Ok(quot)
    }

    /// Re-homes the value in another table, matching symbols by name.
    /// Fails if a symbol in use is missing there or the target mode cannot
    /// hold the value.
    pub fn rehome(&self, table: &Arc<SymbolTable>) -> Result<SymReal> {
        let terms = if table.names() == self.table.names() {
            self.terms.clone()
        } else {
            let target: Vec<Option<usize>> = self.table.names().iter().map(|n| table.index_of(n)).collect();
            let mut terms = BTreeMap::new();
            for (m, c) in &self.terms {
                let mut e = vec![0u32; table.len()];
                for (k, &x) in m.exponents().iter().enumerate() {
                    if x > 0 {
                        e[target[k].ok_or(Error::TableMismatch)?] = x;
                    }
                }
                terms.insert(MultiIndex::new(e), c.clone());
            }
            terms
        };
        let out = SymReal {
            table: table.clone(),
            terms,
        };
        out.check_mode()?;
        Ok(out)
    }

    /// Absolute value of a rational value.
    pub fn abs_rational(&self) -> Result<Rational> {
        Ok(self.to_rational()?.abs())
    }
}

impl PartialEq for SymReal {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_table(&self.table, &other.table)
    }
}

impl Eq for SymReal {}

impl Hash for SymReal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Ord for SymReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms
            .cmp(&other.terms)
            .then_with(|| self.table.names().cmp(other.table.names()))
            .then_with(|| self.table.mode().cmp(&other.table.mode()))
    }
}

impl PartialOrd for SymReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Formats a symbol monomial as `name^e*name`; the empty monomial is `1`.
pub fn format_symbol_monomial(table: &SymbolTable, m: &MultiIndex) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .zip(table.names())
        .filter(|(e, _)| **e > 0)
        .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for SymReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_constant() {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                f.write_str(&format_symbol_monomial(&self.table, m))?;
            } else {
                write!(
                    f,
                    "{}*{}",
                    format_rational(&abs),
                    format_symbol_monomial(&self.table, m)
                )?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymReal({self})")
    }
}
