use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the declared symbols are assumed to be independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IndependenceMode {
    /// `{1, θ_1, …, θ_p}` is linearly independent over ℚ. Only values of
    /// degree ≤ 1 in the symbols exist.
    #[serde(rename = "q-linear")]
    QLinear,
    /// The symbols are algebraically independent over ℚ; values live in the
    /// full polynomial ring ℚ[θ_1, …, θ_p].
    #[serde(rename = "algebraic")]
    Algebraic,
}

impl fmt::Display for IndependenceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndependenceMode::QLinear => "q-linear",
            IndependenceMode::Algebraic => "algebraic",
        })
    }
}

/// Ordered list of declared irrational symbols plus their independence mode.
///
/// Tables are compared structurally: two tables with the same names and mode
/// are interchangeable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymbolTable {
    names: Vec<String>,
    mode: IndependenceMode,
}

impl SymbolTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, mode: IndependenceMode) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            let valid_start = n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_');
            let valid_rest = n.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !valid_start || !valid_rest {
                return Err(Error::InvalidSymbols(format!("bad symbol name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidSymbols(format!("duplicate symbol {n:?}")));
            }
        }
        Ok(Arc::new(SymbolTable { names, mode }))
    }

    /// A table without symbols: every value is rational.
    pub fn rational() -> Arc<Self> {
        Arc::new(SymbolTable {
            names: Vec::new(),
            mode: IndependenceMode::QLinear,
        })
    }

    /// `theta1, …, thetap` in the given mode.
    pub fn thetas(p: usize, mode: IndependenceMode) -> Arc<Self> {
        Self::new((1..=p).map(|k| format!("theta{k}")), mode).expect("generated names are valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn mode(&self) -> IndependenceMode {
        self.mode
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The same symbols in another mode. Used for formal polynomial
    /// computations whose results are mapped back explicitly.
    pub fn with_mode(&self, mode: IndependenceMode) -> Arc<Self> {
        Arc::new(SymbolTable {
            names: self.names.clone(),
            mode,
        })
    }
}

pub(crate) fn same_table(a: &Arc<SymbolTable>, b: &Arc<SymbolTable>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_validated() {
        assert!(SymbolTable::new(["pi", "theta1"], IndependenceMode::Algebraic).is_ok());
        assert!(SymbolTable::new(["a", "a"], IndependenceMode::QLinear).is_err());
        assert!(SymbolTable::new(["1x"], IndependenceMode::QLinear).is_err());
        assert!(SymbolTable::new(["a*b"], IndependenceMode::QLinear).is_err());
    }

    #[test]
    fn mode_twin_is_a_different_table() {
        let t = SymbolTable::thetas(2, IndependenceMode::QLinear);
        let a = t.with_mode(IndependenceMode::Algebraic);
        assert_ne!(*t, *a);
        assert_eq!(t.names(), a.names());
    }
}
