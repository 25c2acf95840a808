//! The explicit functions behind the optimality statements, each shipped
//! with a freshly computed verification report.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::rational::{factorial, ratio};
use crate::algebra::{format_point, point_add, MultiIndex, MultiPoly, Point, SymReal, SymbolTable};
use crate::diff::{delta_power, SampledFunction};
use crate::error::{Error, Result};
use crate::interp::{is_correct_interpolation_set, RectGrid};
use crate::lattice::{pi_power_density_certificate, pi_power_generators, DensityCertificate, GeneratorSet, Verdict};
use crate::report::{VerificationReport, Witness};

/// Points per mixed sample: half on the lattice, half shifted off it.
pub const MIXED_SAMPLE: usize = 50;

/// A gallery function with its report.
#[derive(Debug, Clone)]
pub struct Exhibit {
    pub function: SampledFunction,
    pub report: VerificationReport,
}

/// The optimality instance for the generalized Montel theorem.
#[derive(Debug, Clone)]
pub struct OptimalityInstance {
    pub function: SampledFunction,
    pub generators: GeneratorSet,
    pub certificate: DensityCertificate,
    pub report: VerificationReport,
}

/// Which subgroup of ℝ gates the one-dimensional factor `g` of the
/// multivariate counterexample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Gate {
    /// `θ_1ℤ + ⋯ + θ_dℤ`.
    #[default]
    Theta,
    /// `ℤ + θ_1ℤ + ⋯ + θ_dℤ`, which is closed under the unit shifts.
    ThetaAndIntegers,
}

/// `x(x−1)⋯(x−(m−1))` applied to a polynomial.
fn falling_factorial(u: &MultiPoly, m: usize) -> Result<MultiPoly> {
    let mut acc = MultiPoly::rational_constant(u.table(), u.nvars(), ratio(1, 1));
    for j in 0..m {
        let shifted = u.sub(&MultiPoly::rational_constant(u.table(), u.nvars(), ratio(j as i64, 1)))?;
        acc = acc.mul(&shifted)?;
    }
    Ok(acc)
}

fn falling_factorial_at(x: &SymReal, m: usize) -> Result<SymReal> {
    let mut acc = SymReal::one(x.table());
    for j in 0..m {
        acc = acc.mul(&x.sub(&SymReal::from_int(x.table(), j as i64))?)?;
    }
    Ok(acc)
}

/// `p(Σ c_k h_k)` as a polynomial in the coordinates `c` of a generator set
/// in ℝ^1.
fn coordinate_polynomial(gamma: &GeneratorSet, m: usize) -> Result<MultiPoly> {
    let s = gamma.s();
    let table = gamma.table();
    let mut u = MultiPoly::zero(table, s);
    for (k, h) in gamma.generators().iter().enumerate() {
        u = u.add(&MultiPoly::monomial(MultiIndex::unit(s, k), h[0].clone()))?;
    }
    falling_factorial(&u, m)
}

/// Coefficient tuples ordered by sup norm, then lexicographically.
fn small_tuples(s: usize, n: usize) -> Vec<Vec<i64>> {
    let mut radius = 0i64;
    loop {
        let side = (2 * radius + 1) as usize;
        if side.pow(s as u32) >= n || radius > 64 {
            break;
        }
        radius += 1;
    }
    let mut all = vec![vec![]];
    for _ in 0..s {
        all = all
            .into_iter()
            .flat_map(|t: Vec<i64>| {
                (-radius..=radius).map(move |c| {
                    let mut t = t.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    all.sort_by_key(|t| (t.iter().map(|c| c.abs()).max().unwrap_or(0), t.clone()));
    all.truncate(n);
    all
}

/// Half lattice points `Σ c_k h_k`, half the same points plus `offset`.
fn mixed_sample(gamma: &GeneratorSet, offset: &Point, n: usize) -> Result<Vec<Point>> {
    let lattice: Vec<Point> = small_tuples(gamma.s(), n / 2)
        .iter()
        .map(|c| gamma.combine_i64(c))
        .collect::<Result<_>>()?;
    let mut out = lattice.clone();
    for x in &lattice {
        out.push(point_add(x, offset)?);
    }
    Ok(out)
}

fn unit(table: &Arc<SymbolTable>, d: usize, k: usize) -> Point {
    (0..d).map(|j| SymReal::from_int(table, i64::from(j == k))).collect()
}

fn check_differences(
    name: &str,
    f: &SampledFunction,
    directions: &[(String, Point)],
    m: usize,
    sample: &[Point],
) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(name);
    for x in sample {
        for (label, h) in directions {
            let v = delta_power(f, h, m as u32 + 1, x)?;
            r.record(v.is_zero(), || {
                Witness::new(format!("({})", format_point(x)))
                    .with("direction", label)
                    .with("delta", &v)
            });
        }
    }
    r.fact("samples", sample.len());
    Ok(r)
}

/// Records that `W` is a correct interpolation set for `Π^d_{m−1,max}` and
/// that `f` vanishes on it.
fn continuity_grid(f: &SampledFunction, d: usize, m: usize) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("continuity-grid");
    let grid = RectGrid::integer(f.table(), &vec![m - 1; d])?;
    let w: Vec<Point> = grid.indices().iter().map(|i| grid.point(i)).collect();
    let cert = is_correct_interpolation_set(&w, &vec![m - 1; d])?;
    r.record(cert.correct, || {
        Witness::new("W").with("determinant", &cert.determinant)
    });
    for x in &w {
        let v = f.eval(x)?;
        r.record(v.is_zero(), || {
            Witness::new(format!("({})", format_point(x))).with("value", &v)
        });
    }
    r.fact("points", w.len());
    r.fact("space", format!("max-degree {} in {} variables", m - 1, d));
    r.fact("determinant", &cert.determinant);
    Ok(r)
}

fn disagreement(f: &SampledFunction, x: &Point, polynomial_value: SymReal) -> Result<VerificationReport> {
    let mut r = VerificationReport::new("off-lattice-disagreement");
    let v = f.eval(x)?;
    r.record(v != polynomial_value, || Witness::new(format!("({})", format_point(x))));
    r.fact("point", format!("({})", format_point(x)));
    r.fact("function", &v);
    r.fact("polynomial", &polynomial_value);
    Ok(r)
}

/// `f = x(x−1)⋯(x−(m−1))` on `h_1ℤ + h_2ℤ` and `0` elsewhere.
pub fn popoviciu_counterexample_1d(m: usize, gamma: &GeneratorSet) -> Result<Exhibit> {
    if gamma.d() != 1 || gamma.s() != 2 {
        return Err(Error::UnsupportedShape(format!(
            "expected two generators in dimension 1, found {} in dimension {}",
            gamma.s(),
            gamma.d()
        )));
    }
    if m == 0 {
        return Err(Error::UnsupportedShape("m must be at least 1".into()));
    }
    let table = gamma.table().clone();
    let poly = coordinate_polynomial(gamma, m)?;
    let f = SampledFunction::lattice(gamma.clone(), poly, SymReal::zero(&table))?;

    let mut report = VerificationReport::new("popoviciu-counterexample-1d");
    report.fact("m", m);
    let third = vec![SymReal::from_rational(&table, ratio(1, 3))];
    let sample = mixed_sample(gamma, &third, MIXED_SAMPLE)?;
    let dirs = vec![
        ("h_1".to_string(), gamma.generator(0).clone()),
        ("h_2".to_string(), gamma.generator(1).clone()),
    ];
    report.push(check_differences("difference-equations", &f, &dirs, m, &sample)?);
    report.push(continuity_grid(&f, 1, m)?);
    let half = SymReal::from_rational(&table, ratio(1, 2));
    let p_half = falling_factorial_at(&half, m)?;
    report.push(disagreement(&f, &vec![half], p_half)?);
    report.note(format!(
        "continuity points: {m}; the one-dimensional theorem needs {} continuity points",
        m + 1
    ));
    Ok(Exhibit { function: f, report })
}

/// `f = P(i_1, …, i_s) = Π i_k^m` on the π-power lattice, `0` elsewhere,
/// for which `Δ_{h_k}^{m+1} f = 0` while `Δ_{h_1+⋯+h_s}^{sm} f(0) = (sm)!`.
pub fn montel_optimality_instance(d: usize, s: usize, m: usize) -> Result<OptimalityInstance> {
    let gamma = pi_power_generators(d, s)?;
    let certificate = pi_power_density_certificate(d, s)?;
    let table = gamma.table().clone();
    let poly = MultiPoly::monomial(MultiIndex::new(vec![m as u32; s]), SymReal::one(&table));
    let f = SampledFunction::lattice(gamma.clone(), poly, SymReal::zero(&table))?;

    let mut report = VerificationReport::new("montel-optimality");
    report.fact("d", d);
    report.fact("s", s);
    report.fact("m", m);

    let offset: Point = (0..d)
        .map(|k| SymReal::from_rational(&table, ratio(1, k as i64 + 3)))
        .collect();
    let n = 2 * 3usize.pow(s as u32).min(MIXED_SAMPLE / 2);
    let sample = mixed_sample(&gamma, &offset, n)?;
    let dirs: Vec<(String, Point)> = gamma
        .generators()
        .iter()
        .enumerate()
        .map(|(k, h)| (format!("h_{}", k + 1), h.clone()))
        .collect();
    report.push(check_differences("difference-equations", &f, &dirs, m, &sample)?);

    let mut sharp = VerificationReport::new("sharpness");
    let sum = gamma.generator_sum()?;
    let zero = vec![SymReal::zero(&table); d];
    let v = delta_power(&f, &sum, (s * m) as u32, &zero)?;
    let expected = SymReal::from_bigint(&table, &factorial((s * m) as u64));
    sharp.record(v == expected, || {
        Witness::new("0").with("delta", &v).with("expected", &expected)
    });
    sharp.fact("delta_sm_at_zero", &v);
    report.fact("delta_sm_at_zero", &v);
    report.push(sharp);

    let mut dense = VerificationReport::new("density");
    dense.record(certificate.verdict == Verdict::Dense, || {
        Witness::new("verdict").with("verdict", format!("{:?}", certificate.verdict))
    });
    dense.record(certificate.closed_form_matches() == Some(true), || {
        Witness::new("determinant").with("detail", &certificate.detail)
    });
    report.push(dense);
    Ok(OptimalityInstance {
        function: f,
        generators: gamma,
        certificate,
        report,
    })
}

/// `F(x) = g(x_1) + ⋯ + g(x_d)` with `g = x(x−1)⋯(x−(m−1))` on the gate
/// subgroup and `0` off it, using the θ-only gate.
pub fn multivariate_counterexample(d: usize, m: usize, theta: &[SymReal]) -> Result<Exhibit> {
    multivariate_counterexample_with_gate(d, m, theta, Gate::Theta)
}

pub fn multivariate_counterexample_with_gate(d: usize, m: usize, theta: &[SymReal], gate: Gate) -> Result<Exhibit> {
    if theta.len() != d {
        return Err(Error::ArityMismatch {
            expected: d,
            found: theta.len(),
        });
    }
    if m == 0 {
        return Err(Error::UnsupportedShape("m must be at least 1".into()));
    }
    let kron = GeneratorSet::kronecker(theta)?;
    if let Some(w) = kron.injectivity().witness {
        return Err(Error::NonInjective(w.iter().map(BigInt::to_string).collect()));
    }
    let table = kron.table().clone();
    let mut gens: Vec<Point> = Vec::new();
    if gate == Gate::ThetaAndIntegers {
        gens.push(vec![SymReal::one(&table)]);
    }
    gens.extend(theta.iter().map(|t| vec![t.clone()]));
    let gate_set = GeneratorSet::new(&table, gens)?;
    let g = SampledFunction::lattice(
        gate_set.clone(),
        coordinate_polynomial(&gate_set, m)?,
        SymReal::zero(&table),
    )?;
    let f = SampledFunction::coordinate_sum(g.clone(), d)?;

    let mut report = VerificationReport::new("multivariate-counterexample");
    report.fact("d", d);
    report.fact("m", m);
    report.fact(
        "gate",
        match gate {
            Gate::Theta => "theta",
            Gate::ThetaAndIntegers => "theta-and-integers",
        },
    );
    let offset: Point = (0..d)
        .map(|k| SymReal::from_rational(&table, ratio(1, k as i64 + 3)))
        .collect();
    let sample = mixed_sample(&kron, &offset, MIXED_SAMPLE)?;
    let mut dirs: Vec<(String, Point)> = (0..d).map(|k| (format!("e_{}", k + 1), unit(&table, d, k))).collect();
    dirs.push(("theta".to_string(), theta.to_vec()));
    report.push(check_differences("difference-equations", &f, &dirs, m, &sample)?);

    // Δ_θ^{m+1} F(x) = Σ_i Δ_{θ_i}^{m+1} g(x_i)
    let mut identity = VerificationReport::new("coordinate-identity");
    for x in &sample {
        let lhs = delta_power(&f, theta, m as u32 + 1, x)?;
        let mut rhs = SymReal::zero(&table);
        for (xi, ti) in x.iter().zip(theta) {
            rhs = rhs.add(&delta_power(
                &g,
                std::slice::from_ref(ti),
                m as u32 + 1,
                std::slice::from_ref(xi),
            )?)?;
        }
        identity.record(lhs == rhs, || {
            Witness::new(format!("({})", format_point(x)))
                .with("lhs", &lhs)
                .with("rhs", &rhs)
        });
    }
    report.push(identity);

    report.push(continuity_grid(&f, d, m)?);
    let half = SymReal::from_rational(&table, ratio(1, 2));
    let mut q = SymReal::zero(&table);
    let p_half = falling_factorial_at(&half, m)?;
    for _ in 0..d {
        q = q.add(&p_half)?;
    }
    report.push(disagreement(&f, &vec![half; d], q)?);
    report.note(format!(
        "continuity grid interpolates max-degree {} in {d} variables; the theorem hypothesis asks for max-degree {}; \
         the gap between the two is not resolved",
        m - 1,
        d * m
    ));
    Ok(Exhibit { function: f, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::IndependenceMode;

    fn alg(p: usize) -> Arc<SymbolTable> {
        SymbolTable::thetas(p, IndependenceMode::Algebraic)
    }

    #[test]
    fn one_dimensional_values() {
        let t = alg(1);
        let th = SymReal::symbol_at(&t, 0);
        let gamma = GeneratorSet::kronecker(std::slice::from_ref(&th)).unwrap();
        let ex = popoviciu_counterexample_1d(2, &gamma).unwrap();
        assert!(ex.report.pass, "{:#?}", ex.report);
        let f = &ex.function;
        let at = |v: SymReal| f.eval(&[v]).unwrap();
        assert_eq!(at(SymReal::from_int(&t, 2)), SymReal::from_int(&t, 2));
        assert!(at(SymReal::from_rational(&t, ratio(1, 2))).is_zero());
        let x = th.scale_int(&3.into());
        let expected = x.mul(&x.sub(&SymReal::one(&t)).unwrap()).unwrap();
        assert_eq!(at(x), expected);
        for k in 0..2 {
            assert!(at(SymReal::from_int(&t, k)).is_zero());
        }
        let third = vec![SymReal::from_rational(&t, ratio(1, 3))];
        assert!(delta_power(f, gamma.generator(0), 3, &third).unwrap().is_zero());
    }

    #[test]
    fn one_dimensional_reports_pass() {
        let t = alg(1);
        let gamma = GeneratorSet::kronecker(&[SymReal::symbol_at(&t, 0)]).unwrap();
        for m in 1..=4 {
            let ex = popoviciu_counterexample_1d(m, &gamma).unwrap();
            assert!(ex.report.pass, "m={m}: {:#?}", ex.report);
        }
        let q = SymbolTable::rational();
        let rational = GeneratorSet::kronecker(&[SymReal::from_rational(&q, ratio(1, 2))]).unwrap();
        assert!(matches!(
            popoviciu_counterexample_1d(2, &rational),
            Err(Error::NonInjective(_))
        ));
    }

    #[test]
    fn optimality_constants() {
        for (d, s, m, c) in [(1, 2, 1, 2), (1, 2, 2, 24), (2, 3, 1, 6)] {
            let inst = montel_optimality_instance(d, s, m).unwrap();
            assert!(inst.report.pass, "{:#?}", inst.report);
            assert_eq!(inst.report.facts["delta_sm_at_zero"], c.to_string());
        }
    }

    #[test]
    fn multivariate_values_and_gates() {
        let t = alg(2);
        let theta: Vec<SymReal> = (0..2).map(|k| SymReal::symbol_at(&t, k)).collect();
        let ex = multivariate_counterexample(2, 2, &theta).unwrap();
        let f = &ex.function;
        assert!(f.eval(&[SymReal::zero(&t), SymReal::zero(&t)]).unwrap().is_zero());
        let v = f.eval(&[theta[0].clone(), SymReal::from_int(&t, 5)]).unwrap();
        let expected = theta[0].mul(&theta[0].sub(&SymReal::one(&t)).unwrap()).unwrap();
        assert_eq!(v, expected);
        assert!(ex.report.check("continuity-grid").unwrap().pass);
        assert!(ex.report.check("coordinate-identity").unwrap().pass);
        assert!(ex.report.check("off-lattice-disagreement").unwrap().pass);
        // the unit shifts leave the θ-only gate: Δ_{e_1}^3 F(θ) = -g(θ_1) ≠ 0
        let eqs = ex.report.check("difference-equations").unwrap();
        assert!(!eqs.pass);
        let x = theta.clone();
        let e1 = unit(&t, 2, 0);
        assert_eq!(delta_power(f, &e1, 3, &x).unwrap(), expected.neg());

        let fixed = multivariate_counterexample_with_gate(2, 2, &theta, Gate::ThetaAndIntegers).unwrap();
        assert!(fixed.report.pass, "{:#?}", fixed.report);
    }
}
