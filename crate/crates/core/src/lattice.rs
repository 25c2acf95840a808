//! Finitely generated subgroups `H = h_1ℤ + ⋯ + h_sℤ` of ℝ^d.
//!
//! Coordinates are [`SymReal`] values, so a coordinate identity holds iff it
//! holds for the coefficient of every symbol monomial. Membership,
//! injectivity and density are therefore decided by rational linear algebra
//! on the stacked coefficient system.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::primitive_integer_vector;
use crate::algebra::symbol::same_table;
use crate::algebra::{IndependenceMode, MultiIndex, MultiPoly, Point, Rational, SymReal, SymbolTable};
use crate::error::{Error, Result};
use crate::linalg;

/// Coefficient matrix of the map `ℤ^s → SymReal^d`, one row per
/// (coordinate, symbol monomial) pair, with the row reduction needed to
/// solve it.
#[derive(Debug, Clone)]
struct CoefficientSystem {
    rows: BTreeMap<(usize, MultiIndex), usize>,
    /// `transform · matrix` is the reduced row echelon form.
    transform: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    kernel: Vec<Vec<Rational>>,
}

impl CoefficientSystem {
    fn build(d: usize, generators: &[Point]) -> Self {
        let s = generators.len();
        let mut rows = BTreeMap::new();
        for j in 0..d {
            for h in generators {
                for m in h[j].terms().keys() {
                    let next = rows.len();
                    rows.entry((j, m.clone())).or_insert(next);
                }
            }
        }
        // renumber in key order so the system is deterministic
        for (i, v) in rows.values_mut().enumerate() {
            *v = i;
        }
        let nrows = rows.len();
        let mut aug = vec![vec![Rational::zero(); s + nrows]; nrows];
        for ((j, m), &r) in &rows {
            for (k, h) in generators.iter().enumerate() {
                aug[r][k] = h[*j].coefficient(m);
            }
            aug[r][s + r] = Rational::one();
        }
        let matrix: Vec<Vec<Rational>> = aug.iter().map(|r| r[..s].to_vec()).collect();
        let pivots: Vec<usize> = linalg::rref(&mut aug, s).into_iter().filter(|&c| c < s).collect();
        let transform = aug.iter().map(|r| r[s..].to_vec()).collect();
        let kernel = linalg::kernel(&matrix, s);
        CoefficientSystem {
            rows,
            transform,
            pivots,
            kernel,
        }
    }
}

/// Ordered generators `γ = (h_1, …, h_s)` of a subgroup of ℝ^d.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    table: Arc<SymbolTable>,
    d: usize,
    generators: Vec<Point>,
    system: CoefficientSystem,
}

impl PartialEq for GeneratorSet {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.generators == other.generators
    }
}

impl GeneratorSet {
    pub fn new(table: &Arc<SymbolTable>, generators: Vec<Point>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::UnsupportedShape("a generator set needs s >= 1".into()));
        };
        let d = first.len();
        if d == 0 {
            return Err(Error::UnsupportedShape("generators must have d >= 1".into()));
        }
        for h in &generators {
            if h.len() != d {
                return Err(Error::ArityMismatch {
                    expected: d,
                    found: h.len(),
                });
            }
            if h.iter().any(|c| !same_table(c.table(), table)) {
                return Err(Error::TableMismatch);
            }
        }
        let system = CoefficientSystem::build(d, &generators);
        Ok(GeneratorSet {
            table: table.clone(),
            d,
            generators,
            system,
        })
    }

    /// `(e_1, …, e_d, (θ_1, …, θ_d))`, generating `ℤ^d + θℤ`.
    pub fn kronecker(theta: &[SymReal]) -> Result<Self> {
        let Some(first) = theta.first() else {
            return Err(Error::UnsupportedShape("theta must be nonempty".into()));
        };
        let table = first.table().clone();
        let d = theta.len();
        let mut gens: Vec<Point> = (0..d)
            .map(|k| (0..d).map(|j| SymReal::from_int(&table, i64::from(j == k))).collect())
            .collect();
        gens.push(theta.to_vec());
        GeneratorSet::new(&table, gens)
    }

    /// The standard basis `e_1, …, e_d` of ℤ^d.
    pub fn standard(table: &Arc<SymbolTable>, d: usize) -> Result<Self> {
        let gens = (0..d)
            .map(|k| (0..d).map(|j| SymReal::from_int(table, i64::from(j == k))).collect())
            .collect();
        GeneratorSet::new(table, gens)
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.table
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn s(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Point] {
        &self.generators
    }

    pub fn generator(&self, k: usize) -> &Point {
        &self.generators[k]
    }

    /// `A_γ`: row `j` holds the `j`-th coordinates of all generators.
    pub fn coordinate_matrix(&self) -> Vec<Vec<SymReal>> {
        (0..self.d)
            .map(|j| self.generators.iter().map(|h| h[j].clone()).collect())
            .collect()
    }

    /// `Σ i_k h_k`.
    pub fn combine(&self, i: &[BigInt]) -> Result<Point> {
        if i.len() != self.s() {
            return Err(Error::ArityMismatch {
                expected: self.s(),
                found: i.len(),
            });
        }
        let mut out = vec![SymReal::zero(&self.table); self.d];
        for (h, n) in self.generators.iter().zip(i) {
            if n.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(h) {
                *o = o.add(&c.scale_int(n))?;
            }
        }
        Ok(out)
    }

    pub fn combine_i64(&self, i: &[i64]) -> Result<Point> {
        let big: Vec<BigInt> = i.iter().map(|&v| BigInt::from(v)).collect();
        self.combine(&big)
    }

    /// `h_1 + ⋯ + h_s`.
    pub fn generator_sum(&self) -> Result<Point> {
        self.combine_i64(&vec![1; self.s()])
    }

    /// Decides whether `Σ i_k h_k = 0` forces `i = 0`; otherwise returns a
    /// primitive integer relation whose first nonzero entry is positive.
    pub fn injectivity(&self) -> Injectivity {
        match self.system.kernel.first() {
            None => Injectivity {
                injective: true,
                witness: None,
            },
            Some(v) => Injectivity {
                injective: false,
                witness: Some(primitive_integer_vector(v)),
            },
        }
    }

    pub fn is_injective(&self) -> bool {
        self.system.kernel.is_empty()
    }

    /// The unique integer tuple `i` with `x = Σ i_k h_k`, or `None` when
    /// `x ∉ H`.
    pub fn represent(&self, x: &[SymReal]) -> Result<Option<Vec<BigInt>>> {
        if x.len() != self.d {
            return Err(Error::ArityMismatch {
                expected: self.d,
                found: x.len(),
            });
        }
        if let Some(w) = self.injectivity().witness {
            return Err(Error::NonInjective(w.iter().map(ToString::to_string).collect()));
        }
        let sys = &self.system;
        let mut b: Vec<(usize, &Rational)> = Vec::new();
        for (j, xj) in x.iter().enumerate() {
            if !same_table(xj.table(), &self.table) {
                return Err(Error::TableMismatch);
            }
            for (m, c) in xj.terms() {
                match sys.rows.get(&(j, m.clone())) {
                    Some(&r) => b.push((r, c)),
                    // a monomial no generator carries in this coordinate
                    None => return Ok(None),
                }
            }
        }
        let apply =
            |row: &[Rational]| -> Rational { b.iter().fold(Rational::zero(), |acc, (r, c)| acc + &row[*r] * *c) };
        for row in &sys.transform[sys.pivots.len()..] {
            if !apply(row).is_zero() {
                return Ok(None);
            }
        }
        let mut out = Vec::with_capacity(self.s());
        for row in &sys.transform[..sys.pivots.len()] {
            let v = apply(row);
            if !v.is_integer() {
                return Ok(None);
            }
            out.push(v.to_integer());
        }
        Ok(Some(out))
    }

    /// Same generators over another table with the same symbol names.
    pub fn rehome(&self, table: &Arc<SymbolTable>) -> Result<Self> {
        let gens = self
            .generators
            .iter()
            .map(|h| h.iter().map(|c| c.rehome(table)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        GeneratorSet::new(table, gens)
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .generators
            .iter()
            .map(|h| format!("({})", crate::algebra::format_point(h)))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Injectivity {
    pub injective: bool,
    pub witness: Option<Vec<BigInt>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Dense,
    NotDense,
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    Kronecker,
    SymbolicDeterminant,
    IntegerWitness,
}

/// Evidence for a density verdict.
///
/// `determinant` is `det B(n_0, …, n_d)` as a polynomial in the integer
/// parameters `n_0, …, n_d` (variables `x1, …`). `witness` is an integer
/// tuple `n ≠ 0` for which the stacked matrix `[A_γ; n]` has rank `≤ d`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityCertificate {
    pub verdict: Verdict,
    pub kind: CertificateKind,
    pub determinant: Option<MultiPoly>,
    pub closed_form: Option<MultiPoly>,
    pub witness: Option<Vec<BigInt>>,
    pub detail: String,
}

impl DensityCertificate {
    /// Whether the computed determinant equals the expected closed form.
    pub fn closed_form_matches(&self) -> Option<bool> {
        match (&self.determinant, &self.closed_form) {
            (Some(a), Some(b)) => Some(a == b),
            _ => None,
        }
    }
}

fn algebraic_twin(table: &Arc<SymbolTable>) -> Arc<SymbolTable> {
    if table.mode() == IndependenceMode::Algebraic {
        table.clone()
    } else {
        table.with_mode(IndependenceMode::Algebraic)
    }
}

fn rehome_all(vals: &[SymReal], table: &Arc<SymbolTable>) -> Result<Vec<SymReal>> {
    vals.iter().map(|v| v.rehome(table)).collect()
}

/// Determinant of the square matrix whose columns are `cols`.
fn det_of_columns(cols: &[&Vec<SymReal>], zero: &SymReal) -> Result<SymReal> {
    let n = cols.len();
    let rows: Vec<Vec<SymReal>> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    linalg::determinant(&rows, zero)
}

/// `det [A; n]` for a `d × (d+1)` matrix given by columns, expanded along
/// the last row: a linear polynomial in `n_0, …, n_d`.
fn stacked_determinant(cols: &[Vec<SymReal>], target: &Arc<SymbolTable>) -> Result<MultiPoly> {
    let d = cols.len() - 1;
    let twin = algebraic_twin(target);
    let zero = SymReal::zero(&twin);
    let cols: Vec<Vec<SymReal>> = cols.iter().map(|c| rehome_all(c, &twin)).collect::<Result<_>>()?;
    let mut terms = Vec::new();
    for j in 0..=d {
        let rest: Vec<&Vec<SymReal>> = cols
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != j)
            .map(|(_, c)| c)
            .collect();
        let minor = det_of_columns(&rest, &zero)?;
        let cof = if (d + j) % 2 == 1 { minor.neg() } else { minor };
        terms.push((MultiIndex::unit(d + 1, j), cof));
    }
    let poly = MultiPoly::from_terms(&twin, d + 1, terms)?;
    // keep the caller's table when its mode can hold the coefficients
    Ok(poly.rehome(target).unwrap_or(poly))
}

/// Rational kernel of `n ↦ (Σ_k n_k c_{k,f})_f`, matched per symbol monomial.
fn relation_kernel(columns: &[Vec<SymReal>]) -> Vec<Vec<Rational>> {
    let s = columns.len();
    let mut rows: BTreeMap<(usize, MultiIndex), Vec<Rational>> = BTreeMap::new();
    for (k, col) in columns.iter().enumerate() {
        for (f, v) in col.iter().enumerate() {
            for (m, c) in v.terms() {
                rows.entry((f, m.clone())).or_insert_with(|| vec![Rational::zero(); s])[k] = c.clone();
            }
        }
    }
    let matrix: Vec<Vec<Rational>> = rows.into_values().collect();
    linalg::kernel(&matrix, s)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn degree_ok(table: &SymbolTable, v: &SymReal) -> bool {
    table.mode() == IndependenceMode::Algebraic || v.symbol_degree() <= 1
}

/// Decides density of `H` in ℝ^d: `[A_γ; n]` must have rank `d + 1` for
/// every nonzero integer `n`.
///
/// Works over the algebraic twin of the table. In q-linear mode only minors
/// of symbol degree ≤ 1 can be trusted, and the verdict is `Undecided` when
/// the argument needs a higher-degree one.
pub fn density_check(gamma: &GeneratorSet) -> Result<DensityCertificate> {
    let table = gamma.table().clone();
    let twin = algebraic_twin(&table);
    let zero = SymReal::zero(&twin);
    let (d, s) = (gamma.d(), gamma.s());
    let cols: Vec<Vec<SymReal>> = gamma
        .generators()
        .iter()
        .map(|h| rehome_all(h, &twin))
        .collect::<Result<_>>()?;

    let mut basis = None;
    let mut untrusted = false;
    for p in combinations(s, d) {
        let sel: Vec<&Vec<SymReal>> = p.iter().map(|&k| &cols[k]).collect();
        let det = det_of_columns(&sel, &zero)?;
        if det.is_zero() {
            continue;
        }
        if degree_ok(&table, &det) {
            basis = Some((p, det));
            break;
        }
        untrusted = true;
    }
    let Some((p, det_p)) = basis else {
        if untrusted {
            return Ok(undecided(
                "every nonzero d x d minor has symbol degree > 1 in q-linear mode",
            ));
        }
        let mut w = vec![BigInt::zero(); s];
        w[0] = BigInt::one();
        return Ok(DensityCertificate {
            verdict: Verdict::NotDense,
            kind: CertificateKind::IntegerWitness,
            determinant: None,
            closed_form: None,
            witness: Some(w),
            detail: format!("rank of the coordinate matrix is below d = {d}"),
        });
    };

    // kernel of A_γ spanned by Cramer vectors v_f, f outside the basis
    let mut kernel_cols: Vec<Vec<SymReal>> = vec![Vec::new(); s];
    for f in (0..s).filter(|f| !p.contains(f)) {
        let mut v = vec![zero.clone(); s];
        v[f] = det_p.clone();
        for (i, &pi) in p.iter().enumerate() {
            let mut sel: Vec<&Vec<SymReal>> = p.iter().map(|&k| &cols[k]).collect();
            sel[i] = &cols[f];
            v[pi] = det_of_columns(&sel, &zero)?.neg();
        }
        if v.iter().any(|x| !degree_ok(&table, x)) {
            return Ok(undecided(
                "the kernel of the coordinate matrix has symbol degree > 1 in q-linear mode",
            ));
        }
        for (k, x) in v.into_iter().enumerate() {
            kernel_cols[k].push(x);
        }
    }
    let relations = relation_kernel(&kernel_cols);
    let determinant = if s == d + 1 {
        Some(stacked_determinant(gamma.generators(), &table)?)
    } else {
        None
    };
    Ok(match relations.first() {
        None => DensityCertificate {
            verdict: Verdict::Dense,
            kind: CertificateKind::SymbolicDeterminant,
            determinant,
            closed_form: None,
            witness: None,
            detail: "no nonzero integer tuple lies in the row space of the coordinate matrix".into(),
        },
        Some(v) => DensityCertificate {
            verdict: Verdict::NotDense,
            kind: CertificateKind::IntegerWitness,
            determinant,
            closed_form: None,
            witness: Some(primitive_integer_vector(v)),
            detail: "integer tuple in the row space of the coordinate matrix".into(),
        },
    })
}

fn undecided(reason: &str) -> DensityCertificate {
    DensityCertificate {
        verdict: Verdict::Undecided,
        kind: CertificateKind::SymbolicDeterminant,
        determinant: None,
        closed_form: None,
        witness: None,
        detail: reason.into(),
    }
}

/// `(−1)^d (n_0 − Σ n_k θ_k)` as a polynomial in `n_0, …, n_d`.
pub fn kronecker_closed_form(theta: &[SymReal]) -> Result<MultiPoly> {
    let table = theta[0].table().clone();
    let d = theta.len();
    let sign = if d.is_multiple_of(2) { 1 } else { -1 };
    let mut terms = vec![(MultiIndex::unit(d + 1, 0), SymReal::from_int(&table, sign))];
    for (k, t) in theta.iter().enumerate() {
        terms.push((
            MultiIndex::unit(d + 1, k + 1),
            t.scale(&Rational::from_integer((-sign).into())),
        ));
    }
    MultiPoly::from_terms(&table, d + 1, terms)
}

/// Density of `ℤ^d + θℤ`.
///
/// The determinant of `[θ | I_d ; n_0 … n_d]` is computed by cofactor
/// expansion and compared against the closed form. Density holds iff
/// `{1, θ_1, …, θ_d}` admits no rational relation, decided exactly; on
/// failure the witness is `(n_1, …, n_d, n_1θ_1 + ⋯ + n_dθ_d)`.
pub fn kronecker_density_check(theta: &[SymReal]) -> Result<DensityCertificate> {
    if theta.is_empty() {
        return Err(Error::UnsupportedShape("theta must be nonempty".into()));
    }
    let table = theta[0].table().clone();
    if theta.iter().any(|t| !same_table(t.table(), &table)) {
        return Err(Error::TableMismatch);
    }
    let d = theta.len();
    let mut cols = vec![theta.to_vec()];
    for k in 0..d {
        cols.push((0..d).map(|j| SymReal::from_int(&table, i64::from(j == k))).collect());
    }
    let determinant = stacked_determinant(&cols, &table)?;
    let closed_form = kronecker_closed_form(theta)?;

    // relation n_1θ_1 + ⋯ + n_dθ_d − n_{d+1} = 0
    let mut rel: Vec<Vec<SymReal>> = theta.iter().map(|t| vec![t.clone()]).collect();
    rel.push(vec![SymReal::from_int(&table, -1)]);
    let kernel = relation_kernel(&rel);
    Ok(match kernel.first() {
        None => DensityCertificate {
            verdict: Verdict::Dense,
            kind: CertificateKind::Kronecker,
            determinant: Some(determinant),
            closed_form: Some(closed_form),
            witness: None,
            detail: "{1, theta_1, ..., theta_d} has no rational relation".into(),
        },
        Some(v) => DensityCertificate {
            verdict: Verdict::NotDense,
            kind: CertificateKind::IntegerWitness,
            determinant: Some(determinant),
            closed_form: Some(closed_form),
            witness: Some(primitive_integer_vector(v)),
            detail: "n_1 theta_1 + ... + n_d theta_d is an integer".into(),
        },
    })
}

/// The π-power generator family: `h_1 = (π, π², …, π^d)`, `h_2 = e_1`,
/// `h_{k+1} = π^k e_1 + e_k` for `k = 2..d`, and for `s > d + 1` extra
/// generators `h_k = π^{k−1} e_1`, `k = d+2..s`.
pub fn pi_power_generators(d: usize, s: usize) -> Result<GeneratorSet> {
    if d == 0 || s <= d {
        return Err(Error::UnsupportedShape(format!(
            "need s > d >= 1, got d = {d}, s = {s}"
        )));
    }
    let table = SymbolTable::new(["pi"], IndependenceMode::Algebraic)?;
    let pi = SymReal::symbol_at(&table, 0);
    let zero = SymReal::zero(&table);
    let one = SymReal::one(&table);
    let mut gens: Vec<Point> = Vec::with_capacity(s);
    gens.push((1..=d as u32).map(|k| pi.pow(k)).collect::<Result<_>>()?);
    let mut e1 = vec![zero.clone(); d];
    e1[0] = one.clone();
    gens.push(e1);
    for k in 2..=d {
        let mut h = vec![zero.clone(); d];
        h[0] = pi.pow(k as u32)?;
        h[k - 1] = one.clone();
        gens.push(h);
    }
    for k in d + 2..=s {
        let mut h = vec![zero.clone(); d];
        h[0] = pi.pow(k as u32 - 1)?;
        gens.push(h);
    }
    GeneratorSet::new(&table, gens)
}

/// `(−1)^d n_0 + (−1)^{d+1} Σ_{k=1}^d π^k n_k + (−1)^d Σ_{k=2}^d π^{2k} n_1`.
pub fn pi_power_closed_form(table: &Arc<SymbolTable>, d: usize) -> Result<MultiPoly> {
    let pi = SymReal::symbol_at(table, 0);
    let sign = if d.is_multiple_of(2) { 1 } else { -1 };
    let mut terms = vec![(MultiIndex::unit(d + 1, 0), SymReal::from_int(table, sign))];
    for k in 1..=d {
        terms.push((
            MultiIndex::unit(d + 1, k),
            pi.pow(k as u32)?.scale_int(&BigInt::from(-sign)),
        ));
    }
    for k in 2..=d {
        terms.push((
            MultiIndex::unit(d + 1, 1),
            pi.pow(2 * k as u32)?.scale_int(&BigInt::from(sign)),
        ));
    }
    MultiPoly::from_terms(table, d + 1, terms)
}

/// Certificate for the π-power family: the determinant of the first `d + 1`
/// columns stacked on `(n_0, …, n_d)`, checked against the closed form.
/// Dense because the cofactors are ℚ-independent polynomials in π.
pub fn pi_power_density_certificate(d: usize, s: usize) -> Result<DensityCertificate> {
    let gamma = pi_power_generators(d, s)?;
    let table = gamma.table().clone();
    let head = &gamma.generators()[..=d];
    let determinant = stacked_determinant(head, &table)?;
    let closed_form = pi_power_closed_form(&table, d)?;
    let cofactors: Vec<Vec<SymReal>> = (0..=d)
        .map(|j| vec![determinant.coefficient(&MultiIndex::unit(d + 1, j))])
        .collect();
    let kernel = relation_kernel(&cofactors);
    Ok(match kernel.first() {
        None => DensityCertificate {
            verdict: Verdict::Dense,
            kind: CertificateKind::SymbolicDeterminant,
            determinant: Some(determinant),
            closed_form: Some(closed_form),
            witness: None,
            detail: format!(
                "cofactors are Q-independent polynomials in pi; the first {} columns already give rank d + 1",
                d + 1
            ),
        },
        Some(v) => DensityCertificate {
            verdict: Verdict::NotDense,
            kind: CertificateKind::IntegerWitness,
            determinant: Some(determinant),
            closed_form: Some(closed_form),
            witness: Some(primitive_integer_vector(v)),
            detail: "cofactors admit a rational relation".into(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_symreal;
    use crate::algebra::rational::ratio;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn represent_by_construction() {
        let t = SymbolTable::thetas(2, IndependenceMode::QLinear);
        let th1 = SymReal::symbol_at(&t, 0);
        let th2 = SymReal::symbol_at(&t, 1);
        let gamma = GeneratorSet::new(
            &t,
            vec![
                vec![SymReal::one(&t), SymReal::zero(&t)],
                vec![th1.clone(), th2.clone()],
            ],
        )
        .unwrap();
        assert!(gamma.is_injective());
        let x = gamma.combine_i64(&[1, 2]).unwrap();
        assert_eq!(gamma.represent(&x).unwrap(), Some(big(&[1, 2])));
        let half = vec![SymReal::from_rational(&t, ratio(1, 2)), SymReal::zero(&t)];
        assert_eq!(gamma.represent(&half).unwrap(), None);
        // a monomial no generator carries
        let off = vec![th2.clone(), SymReal::zero(&t)];
        assert_eq!(gamma.represent(&off).unwrap(), None);
    }

    #[test]
    fn kronecker_representation() {
        let t = SymbolTable::thetas(3, IndependenceMode::QLinear);
        let theta: Vec<SymReal> = (0..3).map(|k| SymReal::symbol_at(&t, k)).collect();
        let gamma = GeneratorSet::kronecker(&theta).unwrap();
        let n = [4, -1, 0, 7];
        let x: Point = (0..3)
            .map(|k| {
                SymReal::from_int(&t, n[k])
                    .add(&theta[k].scale_int(&BigInt::from(n[3])))
                    .unwrap()
            })
            .collect();
        assert_eq!(gamma.represent(&x).unwrap(), Some(big(&n)));
    }

    #[test]
    fn injectivity_witnesses() {
        let t = SymbolTable::thetas(1, IndependenceMode::QLinear);
        let g = GeneratorSet::new(&t, vec![vec![SymReal::one(&t)], vec![SymReal::symbol_at(&t, 0)]]).unwrap();
        assert!(g.injectivity().injective);
        let g = GeneratorSet::new(
            &t,
            vec![vec![SymReal::one(&t)], vec![SymReal::from_rational(&t, ratio(1, 2))]],
        )
        .unwrap();
        let inj = g.injectivity();
        assert!(!inj.injective);
        assert_eq!(inj.witness, Some(big(&[1, -2])));
        assert!(matches!(g.represent(&[SymReal::one(&t)]), Err(Error::NonInjective(_))));
    }

    #[test]
    fn kronecker_verdicts() {
        let t = SymbolTable::thetas(2, IndependenceMode::QLinear);
        let th1 = SymReal::symbol_at(&t, 0);
        let th2 = SymReal::symbol_at(&t, 1);
        let dense = kronecker_density_check(&[th1.clone(), th2.clone()]).unwrap();
        assert_eq!(dense.verdict, Verdict::Dense);
        assert_eq!(dense.kind, CertificateKind::Kronecker);
        assert_eq!(dense.closed_form_matches(), Some(true));

        let dep = kronecker_density_check(&[th1.clone(), th1.scale_int(&BigInt::from(2))]).unwrap();
        assert_eq!(dep.verdict, Verdict::NotDense);
        assert_eq!(dep.witness, Some(big(&[2, -1, 0])));

        let r = SymbolTable::rational();
        let rat = kronecker_density_check(&[SymReal::from_rational(&r, ratio(3, 7))]).unwrap();
        assert_eq!(rat.verdict, Verdict::NotDense);
        assert_eq!(rat.witness, Some(big(&[7, 3])));
    }

    #[test]
    fn general_check_agrees_with_kronecker() {
        let t = SymbolTable::thetas(2, IndependenceMode::QLinear);
        let th: Vec<SymReal> = (0..2).map(|k| SymReal::symbol_at(&t, k)).collect();
        let g = GeneratorSet::kronecker(&th).unwrap();
        let c = density_check(&g).unwrap();
        assert_eq!(c.verdict, Verdict::Dense);
        let mixed = vec![th[0].clone(), parse_symreal(&t, "1/2 + 3*theta1").unwrap()];
        let g = GeneratorSet::kronecker(&mixed).unwrap();
        let c = density_check(&g).unwrap();
        assert_eq!(c.verdict, Verdict::NotDense);
        // 3 theta1 - (1/2 + 3 theta1) = -1/2: doubled, (6, -2, -1)
        assert_eq!(c.witness, Some(big(&[6, -2, -1])));
    }

    #[test]
    fn rank_deficient_and_undecided() {
        let t = SymbolTable::thetas(1, IndependenceMode::QLinear);
        let th = SymReal::symbol_at(&t, 0);
        let zero = SymReal::zero(&t);
        // all generators on a line in ℝ²
        let g = GeneratorSet::new(
            &t,
            vec![vec![SymReal::one(&t), zero.clone()], vec![th.clone(), zero.clone()]],
        )
        .unwrap();
        assert_eq!(density_check(&g).unwrap().verdict, Verdict::NotDense);
        // 2x2 minors of degree 2 cannot be trusted in q-linear mode
        let t = SymbolTable::thetas(4, IndependenceMode::QLinear);
        let s = |k| SymReal::symbol_at(&t, k);
        let g = GeneratorSet::new(&t, vec![vec![s(0), s(1)], vec![s(2), s(3)], vec![s(0), s(3)]]).unwrap();
        assert_eq!(density_check(&g).unwrap().verdict, Verdict::Undecided);
    }

    #[test]
    fn pi_power_family_matches_closed_form() {
        for (d, s) in [(1, 2), (2, 3), (3, 4), (2, 5)] {
            let c = pi_power_density_certificate(d, s).unwrap();
            assert_eq!(c.verdict, Verdict::Dense, "d={d} s={s}");
            assert_eq!(c.closed_form_matches(), Some(true), "d={d} s={s}: {:?}", c.determinant);
        }
        assert!(pi_power_density_certificate(2, 2).is_err());
        let g = pi_power_generators(2, 3).unwrap();
        assert_eq!(density_check(&g).unwrap().verdict, Verdict::Dense);
    }

    #[test]
    fn zero_tuple_kills_determinant() {
        let c = pi_power_density_certificate(2, 3).unwrap();
        let v = c.determinant.unwrap().eval_integers(&big(&[0, 0, 0])).unwrap();
        assert!(v.is_zero());
    }
}
