//! Text forms of symbolic reals: `3/2 - 1/2*theta1 + pi^2`.

use std::sync::Arc;

use num_traits::One;

use super::monomial::MultiIndex;
use super::rational::{parse_rational, Rational};
use super::symbol::SymbolTable;
use super::symreal::SymReal;
use crate::error::{Error, Result};

/// Parses a symbol monomial key such as `1`, `theta1` or `pi^2*theta2`.
pub fn parse_monomial_key(table: &SymbolTable, key: &str) -> Result<MultiIndex> {
    let mut exps = vec![0u32; table.len()];
    let key = key.trim();
    if key == "1" {
        return Ok(MultiIndex::new(exps));
    }
    for factor in key.split('*') {
        let (name, e) = match factor.split_once('^') {
            Some((n, e)) => {
                let e: u32 = e
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                (n.trim(), e)
            }
            None => (factor.trim(), 1),
        };
        let k = table
            .index_of(name)
            .ok_or_else(|| Error::Parse(format!("unknown symbol {name:?}")))?;
        exps[k] += e;
    }
    Ok(MultiIndex::new(exps))
}

/// Parses a sum of terms; each term is a `*`-product of rationals and
/// symbol powers.
pub fn parse_symreal(table: &Arc<SymbolTable>, text: &str) -> Result<SymReal> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..=bytes.len() {
        let at_sep = i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^');
        if at_sep {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    let mut acc = Vec::new();
    for term in terms {
        let (sign, body) = match term.as_bytes()[0] {
            b'+' => (Rational::one(), &term[1..]),
            b'-' => (-Rational::one(), &term[1..]),
            _ => (Rational::one(), term),
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("dangling sign in {text:?}")));
        }
        let mut coef = sign;
        let mut exps = vec![0u32; table.len()];
        for factor in body.split('*') {
            if factor.starts_with(|c: char| c.is_ascii_digit()) {
                coef *= parse_rational(factor)?;
            } else {
                let m = parse_monomial_key(table, factor)?;
                for (e, add) in exps.iter_mut().zip(m.exponents()) {
                    *e += add;
                }
            }
        }
        acc.push((MultiIndex::new(exps), coef));
    }
    SymReal::from_terms(table, acc)
}

/// Parses a comma separated list of expressions.
pub fn parse_point(table: &Arc<SymbolTable>, text: &str) -> Result<Vec<SymReal>> {
    text.split(',').map(|c| parse_symreal(table, c)).collect()
}
