//! Lattice interpolants `P_{a,γ}`, the difference recurrence that extends
//! them over ℤ^s, and the generalized Montel degree bound.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::algebra::rational::binomial;
use crate::algebra::{format_point, point_add, MultiPoly, Point, Rational, SymReal};
use crate::diff::{delta_poly, delta_power, SampledFunction};
use crate::error::{Error, Result};
use crate::interp::{tensor_interpolate, GridValues, RectGrid};
use crate::lattice::GeneratorSet;
use crate::report::{VerificationReport, Witness};

/// Default cap on the number of lattice nodes a verification may visit.
pub const NODE_CAP: usize = 20_000;

/// An inclusive integer box `[lo_1, hi_1] × ⋯ × [lo_s, hi_s]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntBox {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl IntBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::ArityMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        if let Some(k) = (0..lo.len()).find(|&k| lo[k] > hi[k]) {
            return Err(Error::UnsupportedShape(format!("empty range on axis {k}")));
        }
        Ok(IntBox { lo, hi })
    }

    pub fn cube(s: usize, lo: i64, hi: i64) -> Result<Self> {
        IntBox::new(vec![lo; s], vec![hi; s])
    }

    /// `[−3, m+3]^s`.
    pub fn default_for(s: usize, m: usize) -> Self {
        IntBox::cube(s, -3, m as i64 + 3).expect("nonempty")
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn widths(&self) -> Vec<usize> {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h - l + 1) as usize)
            .collect()
    }

    /// Number of points, saturating on overflow.
    pub fn len(&self) -> usize {
        self.widths().iter().fold(1usize, |acc, &w| acc.saturating_mul(w))
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: &[i64]) -> bool {
        i.len() == self.dim() && i.iter().enumerate().all(|(k, &v)| self.lo[k] <= v && v <= self.hi[k])
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for k in 0..self.dim() {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (self.lo[k]..=self.hi[k]).map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out
    }

    fn offset(&self, i: &[i64]) -> usize {
        let w = self.widths();
        i.iter()
            .enumerate()
            .fold(0, |acc, (k, &v)| acc * w[k] + (v - self.lo[k]) as usize)
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        let n = self.len();
        if n > cap {
            return Err(Error::NodeCapExceeded { nodes: n, cap });
        }
        Ok(())
    }
}

impl fmt::Display for IntBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lo.iter().zip(&self.hi).map(|(l, h)| format!("{l}..{h}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Parses `lo..hi` (one range for every axis) or `lo..hi,lo..hi,…` into a
/// box of the given dimension.
impl FromStr for IntBox {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for part in s.split(',') {
            let (a, b) = part
                .split_once("..")
                .ok_or_else(|| Error::Parse(format!("expected lo..hi, got {part:?}")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad bound {t:?}")))
            };
            lo.push(parse(a)?);
            hi.push(parse(b)?);
        }
        IntBox::new(lo, hi)
    }
}

impl IntBox {
    /// Repeats a one-axis box `s` times; other boxes must already have `s`
    /// axes.
    pub fn broadcast(self, s: usize) -> Result<Self> {
        match self.dim() {
            n if n == s => Ok(self),
            1 => IntBox::cube(s, self.lo[0], self.hi[0]),
            n => Err(Error::ArityMismatch { expected: s, found: n }),
        }
    }
}

/// Values on every point of an integer box.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxValues {
    bounds: IntBox,
    values: Vec<SymReal>,
}

impl BoxValues {
    pub fn bounds(&self) -> &IntBox {
        &self.bounds
    }

    pub fn get(&self, i: &[i64]) -> Option<&SymReal> {
        if self.bounds.contains(i) {
            Some(&self.values[self.bounds.offset(i)])
        } else {
            None
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (Vec<i64>, &SymReal)> {
        self.bounds.points().into_iter().zip(self.values.iter())
    }
}

/// `P_{a,γ}`: the polynomial in `Π^s_{m,max}` matching
/// `f(a + i_1h_1 + ⋯ + i_sh_s)` on `{0, …, m}^s`.
#[derive(Debug, Clone)]
pub struct Interpolant {
    pub base: Point,
    pub generators: GeneratorSet,
    pub m: usize,
    pub poly: MultiPoly,
}

/// Caches `f(a + Σ c_k h_k)` by integer tuple.
pub struct LatticeSampler<'a> {
    f: &'a SampledFunction,
    base: Point,
    gamma: &'a GeneratorSet,
    cache: HashMap<Vec<i64>, SymReal>,
}

impl<'a> LatticeSampler<'a> {
    pub fn new(f: &'a SampledFunction, base: &[SymReal], gamma: &'a GeneratorSet) -> Result<Self> {
        if base.len() != f.dim() || gamma.d() != f.dim() {
            return Err(Error::ArityMismatch {
                expected: f.dim(),
                found: gamma.d(),
            });
        }
        Ok(LatticeSampler {
            f,
            base: base.to_vec(),
            gamma,
            cache: HashMap::new(),
        })
    }

    pub fn point(&self, c: &[i64]) -> Result<Point> {
        point_add(&self.base, &self.gamma.combine_i64(c)?)
    }

    pub fn get(&mut self, c: &[i64]) -> Result<SymReal> {
        if let Some(v) = self.cache.get(c) {
            return Ok(v.clone());
        }
        let v = self.f.eval(&self.point(c)?)?;
        self.cache.insert(c.to_vec(), v.clone());
        Ok(v)
    }

    pub fn evaluations(&self) -> usize {
        self.cache.len()
    }
}

/// Interpolates `f` on the base grid `a + {0, …, m}^s · γ`.
pub fn build_interpolant(f: &SampledFunction, a: &[SymReal], gamma: &GeneratorSet, m: usize) -> Result<Interpolant> {
    let mut sampler = LatticeSampler::new(f, a, gamma)?;
    let grid = RectGrid::integer(f.table(), &vec![m; gamma.s()])?;
    let data = GridValues::from_fn(grid, |idx, _| {
        let c: Vec<i64> = idx.iter().map(|&i| i as i64).collect();
        sampler.get(&c)
    })?;
    Ok(Interpolant {
        base: a.to_vec(),
        generators: gamma.clone(),
        m,
        poly: tensor_interpolate(&data)?,
    })
}

fn recurrence_weights(m: usize) -> Vec<Rational> {
    let n = m as u64 + 1;
    (0..=n)
        .map(|k| {
            let c = binomial(n, k);
            Rational::from_integer(if (n - k) % 2 == 1 { -c } else { c })
        })
        .collect()
}

/// Extends a sequence known on `[known_lo, known_lo + m]` to `[lo, hi]`
/// using only `Δ^{m+1} v = 0`.
fn extend_line(window: &[SymReal], m: usize, known_lo: i64, lo: i64, hi: i64) -> Result<Vec<SymReal>> {
    let w = recurrence_weights(m);
    let table = window[0].table().clone();
    let len = (hi - lo + 1) as usize;
    let mut out: Vec<Option<SymReal>> = vec![None; len];
    for (t, v) in window.iter().enumerate() {
        out[(known_lo - lo) as usize + t] = Some(v.clone());
    }
    // forward: v[j] = −Σ_{k=0}^{m} w_k v[j−m−1+k]
    for j in (known_lo - lo) as usize + m + 1..len {
        let mut acc = SymReal::zero(&table);
        for (k, wk) in w.iter().enumerate().take(m + 1) {
            acc = acc.sub(&out[j - m - 1 + k].as_ref().expect("filled").scale(wk))?;
        }
        out[j] = Some(acc);
    }
    // backward: v[j] = −(1/w_0) Σ_{k=1}^{m+1} w_k v[j+k], with w_0 = ±1
    for j in (0..(known_lo - lo) as usize).rev() {
        let mut acc = SymReal::zero(&table);
        for (k, wk) in w.iter().enumerate().skip(1) {
            acc = acc.add(&out[j + k].as_ref().expect("filled").scale(wk))?;
        }
        out[j] = Some(acc.scale(&(-w[0].recip())));
    }
    Ok(out.into_iter().map(|v| v.expect("filled")).collect())
}

/// Extends values on `{0, …, m}^s` to the whole box, one axis at a time,
/// using only the recurrence `Δ_{e_k}^{m+1} v = 0`.
pub fn recurrence_extend(base: &GridValues, m: usize, bounds: &IntBox) -> Result<BoxValues> {
    let s = base.grid().dim();
    if base.grid().shape().iter().any(|&n| n != m + 1) {
        return Err(Error::UnsupportedShape(format!("base grid must be {{0..{m}}}^{s}")));
    }
    if bounds.dim() != s {
        return Err(Error::ArityMismatch {
            expected: s,
            found: bounds.dim(),
        });
    }
    if let Some(k) = (0..s).find(|&k| bounds.lo[k] > 0 || bounds.hi[k] < m as i64) {
        return Err(Error::BoxNotConnected(k));
    }
    // current region: axes < k already extended, axes >= k still {0..m}
    let mut lo: Vec<i64> = vec![0; s];
    let mut hi: Vec<i64> = vec![m as i64; s];
    let mut cur = BoxValues {
        bounds: IntBox::new(lo.clone(), hi.clone())?,
        values: base.values().to_vec(),
    };
    for k in 0..s {
        lo[k] = bounds.lo[k];
        hi[k] = bounds.hi[k];
        let next_bounds = IntBox::new(lo.clone(), hi.clone())?;
        let mut next = vec![None; next_bounds.len()];
        let mut fiber_box = cur.bounds.clone();
        fiber_box.lo[k] = 0;
        fiber_box.hi[k] = 0;
        for start in fiber_box.points() {
            let window: Vec<SymReal> = (0..=m as i64)
                .map(|t| {
                    let mut i = start.clone();
                    i[k] = t;
                    cur.get(&i).expect("inside current region").clone()
                })
                .collect();
            let line = extend_line(&window, m, 0, bounds.lo[k], bounds.hi[k])?;
            for (t, v) in line.into_iter().enumerate() {
                let mut i = start.clone();
                i[k] = bounds.lo[k] + t as i64;
                next[next_bounds.offset(&i)] = Some(v);
            }
        }
        cur = BoxValues {
            bounds: next_bounds,
            values: next.into_iter().map(|v| v.expect("every fiber covered")).collect(),
        };
    }
    Ok(cur)
}

/// Re-derives the base window from the top `m + 1` values of every axis by
/// the backward recurrence; used to check that the recurrence is reversible.
pub fn recurrence_roundtrip(extended: &BoxValues, m: usize) -> Result<BoxValues> {
    let bounds = extended.bounds.clone();
    let s = bounds.dim();
    let mut cur = extended.clone();
    for k in 0..s {
        let mut fiber_box = bounds.clone();
        fiber_box.lo[k] = 0;
        fiber_box.hi[k] = 0;
        let top = bounds.hi[k] - m as i64;
        for start in fiber_box.points() {
            let window: Vec<SymReal> = (0..=m as i64)
                .map(|t| {
                    let mut i = start.clone();
                    i[k] = top + t;
                    cur.get(&i).expect("inside box").clone()
                })
                .collect();
            let line = extend_line(&window, m, top, bounds.lo[k], bounds.hi[k])?;
            for (t, v) in line.into_iter().enumerate() {
                let mut i = start.clone();
                i[k] = bounds.lo[k] + t as i64;
                let off = bounds.offset(&i);
                cur.values[off] = v;
            }
        }
    }
    Ok(cur)
}

fn tuple_string(i: &[i64]) -> String {
    let parts: Vec<String> = i.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn big_tuple(i: &[i64]) -> Vec<BigInt> {
    i.iter().map(|&v| BigInt::from(v)).collect()
}

/// Checks `P_{a,γ}(i) = f(a + Σ i_k h_k)` on every point of the box, with
/// the recurrence values (derived from the base grid alone) as a third,
/// independent column. Also checks `Δ_{h_k}^{m+1} f = 0` at every box point.
pub fn verify_extension(
    ip: &Interpolant,
    f: &SampledFunction,
    bounds: &IntBox,
    cap: usize,
) -> Result<VerificationReport> {
    let s = ip.generators.s();
    let m = ip.m;
    let bounds = bounds.clone().broadcast(s)?;
    bounds.check_cap(cap)?;
    let mut report = VerificationReport::new("extension");
    report.fact("box", &bounds);
    report.fact("m", m);

    let mut sampler = LatticeSampler::new(f, &ip.base, &ip.generators)?;
    let mut eq = VerificationReport::new("generator-equations");
    for i in bounds.points() {
        for k in 0..s {
            let mut acc = SymReal::zero(f.table());
            for (t, w) in recurrence_weights(m).iter().enumerate() {
                let mut c = i.clone();
                c[k] += t as i64;
                acc = acc.add(&sampler.get(&c)?.scale(w))?;
            }
            eq.record(acc.is_zero(), || {
                Witness::new(tuple_string(&i))
                    .with("generator", k + 1)
                    .with("delta", &acc)
            });
        }
    }

    let mut agree = VerificationReport::new("agreement");
    let base = GridValues::from_fn(RectGrid::integer(f.table(), &vec![m; s])?, |idx, _| {
        let c: Vec<i64> = idx.iter().map(|&v| v as i64).collect();
        sampler.get(&c)
    })?;
    let rec = recurrence_extend(&base, m, &bounds)?;
    for (i, r) in rec.entries() {
        let p = ip.poly.eval_integers(&big_tuple(&i))?;
        let fv = sampler.get(&i)?;
        agree.record(p == fv && fv == *r, || {
            Witness::new(tuple_string(&i))
                .with("interpolant", &p)
                .with("function", &fv)
                .with("recurrence", r)
        });
    }
    report.fact("evaluations", sampler.evaluations());
    report.push(eq);
    report.push(agree);
    Ok(report)
}

/// `total_degree(P) ≤ bound`.
pub fn total_degree_check(p: &MultiPoly, bound: i64) -> bool {
    p.total_degree() <= bound
}

/// Checks `Δ_h^{sm+1} f(x) = 0` for every `h = Σ i_k h_k` with `i` in the
/// coefficient box and every sample `x`.
///
/// The proof route is cross-checked symbolically: for every sample the
/// interpolant `P_{x,γ}` must have total degree `≤ sm` and `Δ^{sm+1}` must
/// annihilate it along each generator and along `h_1 + ⋯ + h_s`.
pub fn verify_montel_bound(
    f: &SampledFunction,
    gamma: &GeneratorSet,
    m: usize,
    coeff_box: &IntBox,
    samples: &[Point],
    cap: usize,
) -> Result<VerificationReport> {
    let s = gamma.s();
    let coeff_box = coeff_box.clone().broadcast(s)?;
    let sm = (s * m) as u32;
    let checks = coeff_box.len().saturating_mul(samples.len());
    if checks > cap {
        return Err(Error::NodeCapExceeded { nodes: checks, cap });
    }
    let mut report = VerificationReport::new("montel-bound");
    report.fact("exponent", sm + 1);
    report.fact("coefficient_box", &coeff_box);
    report.fact("samples", samples.len());

    let mut black_box = VerificationReport::new("difference-equation");
    for x in samples {
        let mut sampler = LatticeSampler::new(f, x, gamma)?;
        for i in coeff_box.points() {
            let mut acc = SymReal::zero(f.table());
            for (t, w) in recurrence_weights(sm as usize).iter().enumerate() {
                let c: Vec<i64> = i.iter().map(|&v| v * t as i64).collect();
                acc = acc.add(&sampler.get(&c)?.scale(w))?;
            }
            black_box.record(acc.is_zero(), || {
                Witness::new(format!("x = ({}), i = {}", format_point(x), tuple_string(&i))).with("delta", &acc)
            });
        }
    }

    let mut symbolic = VerificationReport::new("interpolant-degree");
    let table = f.table();
    let mut directions: Vec<Vec<SymReal>> = (0..s)
        .map(|k| (0..s).map(|j| SymReal::from_int(table, i64::from(j == k))).collect())
        .collect();
    directions.push(vec![SymReal::one(table); s]);
    for x in samples {
        let ip = build_interpolant(f, x, gamma, m)?;
        let deg = ip.poly.total_degree();
        symbolic.record(total_degree_check(&ip.poly, i64::from(sm)), || {
            Witness::new(format!("x = ({})", format_point(x))).with("total_degree", deg)
        });
        for v in &directions {
            let d = delta_poly(&ip.poly, v, sm + 1)?;
            symbolic.record(d.is_zero(), || {
                Witness::new(format!("x = ({}), direction = ({})", format_point(x), format_point(v))).with("delta", &d)
            });
        }
    }
    if let Some(x) = samples.first() {
        let sum = gamma.generator_sum()?;
        let v = delta_power(f, &sum, sm, x)?;
        report.fact("delta_sm_along_generator_sum", &v);
    }
    report.push(black_box);
    report.push(symbolic);
    Ok(report)
}
