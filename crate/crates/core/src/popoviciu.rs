//! Strip decompositions, root bounds and the Montel–Popoviciu pipeline.

use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::algebra::rational::format_rational;
use crate::algebra::{format_point, IndependenceMode, MultiIndex, MultiPoly, Point, Rational, SymReal, SymbolTable};
use crate::diff::{delta_poly, delta_power, SampledFunction, Source};
use crate::error::{Error, Result};
use crate::interp::{is_correct_interpolation_set, RectGrid};
use crate::lattice::GeneratorSet;
use crate::montel::{build_interpolant, IntBox};
use crate::report::{VerificationReport, Witness};

/// `P(t) = Σ_k A_k(t_1 + θ_1 t_s, …, t_{s−1} + θ_{s−1} t_s) · t_s^k`.
///
/// The components live over the algebraic twin of the source table, since
/// the change of variables multiplies symbols together.
#[derive(Debug, Clone, PartialEq)]
pub struct StripDecomposition {
    pub theta: Vec<SymReal>,
    pub components: Vec<MultiPoly>,
    source_table: Arc<SymbolTable>,
}

impl StripDecomposition {
    /// Index of the last nonzero component; `0` when all vanish.
    pub fn n(&self) -> usize {
        self.components.len().saturating_sub(1)
    }

    pub fn s(&self) -> usize {
        self.theta.len() + 1
    }
}

fn algebraic_twin(table: &Arc<SymbolTable>) -> Arc<SymbolTable> {
    if table.mode() == IndependenceMode::Algebraic {
        table.clone()
    } else {
        table.with_mode(IndependenceMode::Algebraic)
    }
}

fn check_theta(p: &MultiPoly, theta: &[SymReal]) -> Result<()> {
    let s = p.nvars();
    if s < 2 {
        return Err(Error::UnsupportedShape("strip decompositions need s >= 2".into()));
    }
    if theta.len() + 1 != s {
        return Err(Error::ArityMismatch {
            expected: s - 1,
            found: theta.len(),
        });
    }
    if let Some(k) = theta.iter().position(SymReal::is_zero) {
        return Err(Error::ZeroTheta(k + 1));
    }
    Ok(())
}

/// `t_k ↦ u_k + c_k u_s` for `k < s`, `t_s ↦ u_s`.
fn strip_map(twin: &Arc<SymbolTable>, coeffs: &[SymReal]) -> Vec<MultiPoly> {
    let s = coeffs.len() + 1;
    let mut out: Vec<MultiPoly> = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            MultiPoly::var(twin, s, k)
                .add(&MultiPoly::monomial(MultiIndex::unit(s, s - 1), c.clone()))
                .expect("same table")
        })
        .collect();
    out.push(MultiPoly::var(twin, s, s - 1));
    out
}

/// Substitutes `t_k = f_k − θ_k f_s`, `t_s = f_s` and collects powers of
/// `f_s`.
pub fn decompose(p: &MultiPoly, theta: &[SymReal]) -> Result<StripDecomposition> {
    check_theta(p, theta)?;
    let s = p.nvars();
    let twin = algebraic_twin(p.table());
    let theta_t: Vec<SymReal> = theta.iter().map(|t| t.rehome(&twin)).collect::<Result<_>>()?;
    let neg: Vec<SymReal> = theta_t.iter().map(SymReal::neg).collect();
    let q = p.rehome(&twin)?.substitute(&strip_map(&twin, &neg))?;
    let mut components = q.split_variable(s - 1);
    while components.last().is_some_and(MultiPoly::is_zero) {
        components.pop();
    }
    Ok(StripDecomposition {
        theta: theta_t,
        components,
        source_table: p.table().clone(),
    })
}

/// Inverse of [`decompose`], returned over the source table.
pub fn recompose(dec: &StripDecomposition) -> Result<MultiPoly> {
    let s = dec.s();
    let twin = algebraic_twin(&dec.source_table);
    let q = MultiPoly::join_variable(&twin, s - 1, &dec.components, s)?;
    let p = q.substitute(&strip_map(&twin, &dec.theta))?;
    p.rehome(&dec.source_table)
}

/// `Some(A_0)` iff `P(t) = A_0(t_1 + θ_1 t_s, …)`, i.e. iff the
/// decomposition has no component beyond `k = 0`.
pub fn strip_form(p: &MultiPoly, theta: &[SymReal]) -> Result<Option<MultiPoly>> {
    let dec = decompose(p, theta)?;
    if dec.components.len() > 1 {
        return Ok(None);
    }
    let a0 = dec
        .components
        .into_iter()
        .next()
        .unwrap_or_else(|| MultiPoly::zero(&algebraic_twin(p.table()), p.nvars() - 1));
    // back to the caller's table when its mode can hold the coefficients
    Ok(Some(a0.rehome(p.table()).unwrap_or(a0)))
}

/// Checks `A_k ∈ Π^{s−1}_{(s−1)m,max}` for every component and `N ≤ sm`.
pub fn decomposition_degree_check(dec: &StripDecomposition, m: usize) -> VerificationReport {
    let s = dec.s();
    let mut r = VerificationReport::new("decomposition-degrees");
    let bound = ((s - 1) * m) as i64;
    for (k, a) in dec.components.iter().enumerate() {
        let (per, _) = a.degrees();
        let worst = per.iter().copied().max().unwrap_or(-1);
        r.record(worst <= bound, || {
            Witness::new(format!("A_{k}"))
                .with("max_degree", worst)
                .with("bound", bound)
        });
    }
    let n = dec.n();
    r.record(n <= s * m, || Witness::new("N").with("N", n).with("bound", s * m));
    r
}

fn rational_coeffs(coeffs: &[SymReal]) -> Result<Vec<Rational>> {
    coeffs.iter().map(SymReal::to_rational).collect()
}

/// `max{1, Σ_{k<N} |a_k| / |a_N|}` for `a_0 + a_1 z + ⋯ + a_N z^N`.
pub fn cauchy_root_bound(coeffs: &[SymReal]) -> Result<Rational> {
    cauchy_root_bound_rational(&rational_coeffs(coeffs)?)
}

pub fn cauchy_root_bound_rational(a: &[Rational]) -> Result<Rational> {
    let Some((lead, rest)) = a.split_last() else {
        return Err(Error::ZeroLeadingCoefficient);
    };
    if lead.is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let sum: Rational = rest.iter().map(Signed::abs).sum::<Rational>() / lead.abs();
    Ok(sum.max(Rational::from_integer(1.into())))
}

/// Radius `M = max{1, Σ_{k<N} 2(|a_N|/2 + |a_k|)/|a_N|}` containing the roots
/// of every polynomial whose coefficients differ from `a` by less than
/// `perturbation < |a_N|/2`.
pub fn stability_radius(coeffs: &[SymReal], perturbation: &Rational) -> Result<Rational> {
    stability_radius_rational(&rational_coeffs(coeffs)?, perturbation)
}

pub fn stability_radius_rational(a: &[Rational], perturbation: &Rational) -> Result<Rational> {
    let Some((lead, rest)) = a.split_last() else {
        return Err(Error::ZeroLeadingCoefficient);
    };
    if lead.is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let half = lead.abs() / Rational::from_integer(2.into());
    if perturbation.is_negative() || *perturbation >= half {
        return Err(Error::PerturbationTooLarge {
            bound: format_rational(perturbation),
            limit: format_rational(&half),
        });
    }
    let two = Rational::from_integer(2.into());
    let sum: Rational = rest.iter().map(|ak| &two * (&half + ak.abs()) / lead.abs()).sum();
    Ok(sum.max(Rational::from_integer(1.into())))
}

/// Per variable: `Δ_{e_k}^{m+1} P = 0` must hold, and must agree with
/// `deg_k P ≤ m`. Axes where the difference survives are the witnesses.
pub fn degree_reduction_check(p: &MultiPoly, m: usize) -> Result<VerificationReport> {
    let n = p.nvars();
    let (per, _) = p.degrees();
    let mut annihilated = VerificationReport::new("annihilation");
    let mut consistent = VerificationReport::new("degree-equivalence");
    for (k, &deg) in per.iter().enumerate() {
        let e: Vec<SymReal> = (0..n)
            .map(|j| SymReal::from_int(p.table(), i64::from(j == k)))
            .collect();
        let d = delta_poly(p, &e, m as u32 + 1)?;
        let low = deg <= m as i64;
        annihilated.record(d.is_zero(), || {
            Witness::new(format!("axis {}", k + 1))
                .with("degree", deg)
                .with("delta", &d)
        });
        consistent.record(d.is_zero() == low, || {
            Witness::new(format!("axis {}", k + 1))
                .with("degree", deg)
                .with("annihilated", d.is_zero())
        });
    }
    let mut r = VerificationReport::new("degree-reduction");
    r.fact("m", m);
    r.push(annihilated);
    r.push(consistent);
    Ok(r)
}

/// `{0, …, dm}^d`, the default correct interpolation set for `Π^d_{dm,max}`.
pub fn default_interpolation_set(table: &Arc<SymbolTable>, d: usize, m: usize) -> Result<Vec<Point>> {
    let g = RectGrid::integer(table, &vec![d * m; d])?;
    Ok(g.indices().iter().map(|i| g.point(i)).collect())
}

/// Runs the Montel–Popoviciu pipeline on one instance over the Kronecker
/// generators `(e_1, …, e_d, θ)`:
///
/// 1. `Δ_{e_k}^{m+1} f = 0` and `Δ_θ^{m+1} f = 0` at the lattice points
///    `Σ c_k γ_k` (`c` in the box) and at the same points shifted by
///    `(1/2, …, 1/2)`;
/// 2. the interpolant `P_{0,γ}`;
/// 3. its strip form `A` with respect to `θ`;
/// 4. for polynomial `f`: per-axis degrees `≤ m`, `A = f`, and
///    `A_w = A(· + w)` for the first points `w` of `W`. For other sources
///    the report records whether `f` agrees with `A` off the lattice.
///
/// `W` must be a correct interpolation set for `Π^d_{dm,max}`.
pub fn verify_popoviciu_instance(
    f: &SampledFunction,
    theta: &[SymReal],
    m: usize,
    w: &[Point],
    bounds: &IntBox,
) -> Result<VerificationReport> {
    let d = f.dim();
    if theta.len() != d {
        return Err(Error::ArityMismatch {
            expected: d,
            found: theta.len(),
        });
    }
    let table = f.table().clone();
    let cert = is_correct_interpolation_set(w, &vec![d * m; d])?;
    if !cert.correct {
        return Err(Error::NotInterpolationSet);
    }
    let gamma = GeneratorSet::kronecker(theta)?;
    let bounds = bounds.clone().broadcast(gamma.s())?;
    let mut report = VerificationReport::new("montel-popoviciu");
    report.fact("d", d);
    report.fact("m", m);
    report.fact("interpolation_set_size", w.len());
    report.fact("interpolation_set_determinant", &cert.determinant);

    // (1)
    let mut eqs = VerificationReport::new("difference-equations");
    let half = SymReal::from_rational(&table, Rational::new(1.into(), 2.into()));
    let offsets = [vec![SymReal::zero(&table); d], vec![half; d]];
    let zero_point = vec![SymReal::zero(&table); d];
    for c in bounds.points() {
        let lattice_point = gamma.combine_i64(&c)?;
        for o in &offsets {
            let x = crate::algebra::point_add(&lattice_point, o)?;
            for (k, h) in gamma.generators().iter().enumerate() {
                let v = delta_power(f, h, m as u32 + 1, &x)?;
                eqs.record(v.is_zero(), || {
                    let dir = if k < d {
                        format!("e_{}", k + 1)
                    } else {
                        "theta".to_string()
                    };
                    Witness::new(format!("({})", format_point(&x)))
                        .with("direction", dir)
                        .with("delta", &v)
                });
            }
        }
    }
    report.push(eqs);

    // (2), (3)
    let ip = build_interpolant(f, &zero_point, &gamma, m)?;
    report.fact("interpolant", &ip.poly);
    let mut strip = VerificationReport::new("strip-form");
    let dec = decompose(&ip.poly, theta)?;
    let form = strip_form(&ip.poly, theta)?;
    strip.record(form.is_some(), || {
        Witness::new("P_0")
            .with("N", dec.n())
            .with("leading", &dec.components[dec.n()])
    });
    strip.push(decomposition_degree_check(&dec, m));
    report.push(strip);
    let Some(a) = form else {
        return Ok(report);
    };
    report.fact("strip_form", &a);

    // (4)
    match f.source() {
        Source::WholeSpace(p) => {
            let mut member = VerificationReport::new("membership");
            let (per, _) = p.degrees();
            for (k, &e) in per.iter().enumerate() {
                member.record(e <= m as i64, || {
                    Witness::new(format!("axis {}", k + 1))
                        .with("degree", e)
                        .with("bound", m)
                });
            }
            let recovered = a.rehome(p.table()).ok();
            member.record(recovered.as_ref() == Some(p), || {
                Witness::new("recovered").with("strip_form", &a).with("function", p)
            });
            report.push(member);

            let mut part_one = VerificationReport::new("translates");
            for base in w.iter().take(3) {
                let ip_w = build_interpolant(f, base, &gamma, m)?;
                let shifted = a.shift(base)?;
                let a_w = strip_form(&ip_w.poly, theta)?;
                part_one.record(a_w.as_ref() == Some(&shifted), || {
                    Witness::new(format!("({})", format_point(base)))
                });
            }
            report.push(part_one);
        }
        _ => {
            let probe: Point = (0..d)
                .map(|k| SymReal::from_rational(&table, Rational::new(1.into(), (k as i64 + 3).into())))
                .collect();
            let fv = f.eval(&probe)?;
            let av = a.eval(&probe)?;
            report.fact("off_lattice_probe", format!("({})", format_point(&probe)));
            report.fact("off_lattice_function", &fv);
            report.fact("off_lattice_strip_form", &av);
            if fv != av {
                report.label = Some("hypothesis-violating: continuity set too small".into());
                report.note(
                    "the function differs from the recovered polynomial off the lattice, so it is not \
                     a polynomial; its continuity set does not contain a correct interpolation set \
                     for the required degree",
                );
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_symreal;
    use crate::algebra::rational::{rat, ratio};

    fn alg(p: usize) -> Arc<SymbolTable> {
        SymbolTable::thetas(p, IndependenceMode::Algebraic)
    }

    fn parse_poly(t: &Arc<SymbolTable>, n: usize, terms: &[(&[u32], &str)]) -> MultiPoly {
        MultiPoly::from_terms(
            t,
            n,
            terms
                .iter()
                .map(|(e, c)| (MultiIndex::new(e.to_vec()), parse_symreal(t, c).unwrap())),
        )
        .unwrap()
    }

    #[test]
    fn decompose_examples() {
        let t = alg(1);
        let th = SymReal::symbol_at(&t, 0);
        let p = parse_poly(&t, 2, &[(&[0, 1], "1")]);
        let dec = decompose(&p, std::slice::from_ref(&th)).unwrap();
        assert_eq!(dec.n(), 1);
        assert!(dec.components[0].is_zero());
        assert_eq!(dec.components[1], parse_poly(&t, 1, &[(&[0], "1")]));

        let p = parse_poly(&t, 2, &[(&[1, 1], "1")]);
        let dec = decompose(&p, std::slice::from_ref(&th)).unwrap();
        assert_eq!(dec.n(), 2);
        assert!(dec.components[0].is_zero());
        assert_eq!(dec.components[1], parse_poly(&t, 1, &[(&[1], "1")]));
        assert_eq!(dec.components[2], parse_poly(&t, 1, &[(&[0], "-theta1")]));
        assert_eq!(recompose(&dec).unwrap(), p);

        assert_eq!(decompose(&p, &[SymReal::zero(&t)]), Err(Error::ZeroTheta(1)));
    }

    #[test]
    fn strip_forms() {
        let t = alg(1);
        let th = SymReal::symbol_at(&t, 0);
        // (t1 + theta t2)^3 - 2
        let u = parse_poly(&t, 2, &[(&[1, 0], "1"), (&[0, 1], "theta1")]);
        let p = u
            .pow(3)
            .unwrap()
            .sub(&MultiPoly::rational_constant(&t, 2, rat(2)))
            .unwrap();
        let a = strip_form(&p, std::slice::from_ref(&th)).unwrap().unwrap();
        assert_eq!(a, parse_poly(&t, 1, &[(&[3], "1"), (&[0], "-2")]));
        let sq = parse_poly(&t, 2, &[(&[0, 2], "1")]);
        assert_eq!(strip_form(&sq, &[th]).unwrap(), None);
    }

    #[test]
    fn root_bounds() {
        let q = SymbolTable::rational();
        let c = |v: &[i64]| -> Vec<SymReal> { v.iter().map(|&x| SymReal::from_int(&q, x)).collect() };
        assert_eq!(cauchy_root_bound(&c(&[2, -3, 1])).unwrap(), rat(5));
        assert_eq!(cauchy_root_bound(&c(&[0, 0, 0, 1])).unwrap(), rat(1));
        assert_eq!(cauchy_root_bound(&c(&[-1, 2])).unwrap(), rat(1));
        assert_eq!(cauchy_root_bound(&c(&[1, 0])), Err(Error::ZeroLeadingCoefficient));
        assert_eq!(stability_radius(&c(&[0, 1]), &ratio(1, 4)).unwrap(), rat(1));
        assert_eq!(stability_radius(&c(&[-1, 0, 1]), &ratio(1, 4)).unwrap(), rat(4));
        assert!(matches!(
            stability_radius(&c(&[-1, 0, 1]), &ratio(1, 2)),
            Err(Error::PerturbationTooLarge { .. })
        ));
        let t = alg(1);
        assert!(matches!(
            cauchy_root_bound(&[SymReal::symbol_at(&t, 0), SymReal::one(&t)]),
            Err(Error::NotRational(_))
        ));
    }

    #[test]
    fn degree_reduction() {
        let q = SymbolTable::rational();
        for m in 1..=3u32 {
            let p = MultiPoly::monomial(MultiIndex::new(vec![m, m]), SymReal::one(&q));
            assert!(degree_reduction_check(&p, m as usize).unwrap().pass);
            let p = MultiPoly::monomial(MultiIndex::new(vec![m + 1, 0]), SymReal::one(&q));
            let r = degree_reduction_check(&p, m as usize).unwrap();
            assert!(!r.pass);
            let flagged = &r.check("annihilation").unwrap().witnesses;
            assert_eq!(flagged.len(), 1);
            assert_eq!(flagged[0].at, "axis 1");
            assert!(r.check("degree-equivalence").unwrap().pass);
        }
        assert!(degree_reduction_check(&MultiPoly::zero(&q, 2), 1).unwrap().pass);
    }

    #[test]
    fn pipeline_on_polynomials() {
        let t = alg(2);
        let theta: Vec<SymReal> = (0..2).map(|k| SymReal::symbol_at(&t, k)).collect();
        let p = parse_poly(&t, 2, &[(&[2, 1], "1")]);
        let f = SampledFunction::whole_space(p);
        let box3 = IntBox::cube(3, -1, 1).unwrap();
        // Δ_θ^3 x1²x2 = 6 θ1² θ2 ≠ 0, so m = 2 fails the difference equations
        let w2 = default_interpolation_set(&t, 2, 2).unwrap();
        let r = verify_popoviciu_instance(&f, &theta, 2, &w2, &box3).unwrap();
        assert!(!r.check("difference-equations").unwrap().pass);
        let w3 = default_interpolation_set(&t, 2, 3).unwrap();
        let r = verify_popoviciu_instance(&f, &theta, 3, &w3, &box3).unwrap();
        assert!(r.pass, "{r:#?}");

        let c = SampledFunction::whole_space(MultiPoly::rational_constant(&t, 2, rat(4)));
        let w1 = default_interpolation_set(&t, 2, 1).unwrap();
        assert!(verify_popoviciu_instance(&c, &theta, 1, &w1, &box3).unwrap().pass);
        assert_eq!(
            verify_popoviciu_instance(&c, &theta, 1, &w1[..3], &box3).unwrap_err(),
            Error::CardinalityMismatch { expected: 9, found: 3 }
        );
    }
}
