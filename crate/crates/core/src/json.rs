//! JSON documents for every value the engines exchange.
//!
//! Exact values are strings: rationals as `"p/q"`, symbolic reals as maps
//! from symbol monomial keys (`"1"`, `"theta1"`, `"pi^2*theta2"`) to
//! rationals. A symbolic real may also be written as a single expression
//! string such as `"1/2 - theta1"`; it is always written back as a map.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{format_rational, parse_rational};
use crate::algebra::{
    format_symbol_monomial, parse_monomial_key, parse_symreal, IndependenceMode, MultiIndex, MultiPoly, Point, SymReal,
    SymbolTable,
};
use crate::diff::{SampledFunction, Source};
use crate::error::{Error, Result};
use crate::interp::{GridValues, RectGrid};
use crate::lattice::{CertificateKind, DensityCertificate, GeneratorSet, Verdict};

fn default_mode() -> IndependenceMode {
    IndependenceMode::QLinear
}

/// Symbol declarations shared by the top-level documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Header {
    #[serde(default)]
    pub symbols: Vec<String>,
    #[serde(default = "default_mode")]
    pub mode: IndependenceMode,
}

impl Header {
    pub fn of(table: &SymbolTable) -> Self {
        Header {
            symbols: table.names().to_vec(),
            mode: table.mode(),
        }
    }

    pub fn table(&self) -> Result<Arc<SymbolTable>> {
        SymbolTable::new(self.symbols.iter().cloned(), self.mode)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueDoc {
    Expr(String),
    Terms(BTreeMap<String, String>),
}

pub fn value_doc(v: &SymReal) -> ValueDoc {
    ValueDoc::Terms(
        v.terms()
            .iter()
            .map(|(m, c)| (format_symbol_monomial(v.table(), m), format_rational(c)))
            .collect(),
    )
}

pub fn value_from_doc(table: &Arc<SymbolTable>, doc: &ValueDoc) -> Result<SymReal> {
    match doc {
        ValueDoc::Expr(s) => parse_symreal(table, s),
        ValueDoc::Terms(map) => {
            let terms = map
                .iter()
                .map(|(k, c)| Ok((parse_monomial_key(table, k)?, parse_rational(c)?)))
                .collect::<Result<Vec<_>>>()?;
            SymReal::from_terms(table, terms)
        }
    }
}

fn point_doc(p: &[SymReal]) -> Vec<ValueDoc> {
    p.iter().map(value_doc).collect()
}

fn point_from_doc(table: &Arc<SymbolTable>, doc: &[ValueDoc]) -> Result<Point> {
    doc.iter().map(|v| value_from_doc(table, v)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub exp: Vec<u32>,
    pub coef: ValueDoc,
}

/// A polynomial without its own symbol declarations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyBody {
    pub nvars: usize,
    pub terms: Vec<TermDoc>,
}

fn poly_body(p: &MultiPoly) -> PolyBody {
    PolyBody {
        nvars: p.nvars(),
        terms: p
            .terms()
            .iter()
            .map(|(m, c)| TermDoc {
                exp: m.exponents().to_vec(),
                coef: value_doc(c),
            })
            .collect(),
    }
}

fn poly_from_body(table: &Arc<SymbolTable>, body: &PolyBody) -> Result<MultiPoly> {
    let terms = body
        .terms
        .iter()
        .map(|t| {
            if t.exp.len() != body.nvars {
                return Err(Error::ArityMismatch {
                    expected: body.nvars,
                    found: t.exp.len(),
                });
            }
            Ok((MultiIndex::new(t.exp.clone()), value_from_doc(table, &t.coef)?))
        })
        .collect::<Result<Vec<_>>>()?;
    MultiPoly::from_terms(table, body.nvars, terms)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyDoc {
    pub nvars: usize,
    #[serde(flatten)]
    pub header: Header,
    pub terms: Vec<TermDoc>,
}

pub fn poly_doc(p: &MultiPoly) -> PolyDoc {
    let body = poly_body(p);
    PolyDoc {
        nvars: body.nvars,
        header: Header::of(p.table()),
        terms: body.terms,
    }
}

pub fn poly_from_doc(doc: &PolyDoc) -> Result<MultiPoly> {
    let table = doc.header.table()?;
    poly_from_body(
        &table,
        &PolyBody {
            nvars: doc.nvars,
            terms: doc.terms.clone(),
        },
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableEntryDoc {
    pub point: Vec<ValueDoc>,
    pub value: ValueDoc,
}

/// A [`SampledFunction`], tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FunctionDoc {
    Poly(PolyDoc),
    Lattice {
        #[serde(flatten)]
        header: Header,
        generators: Vec<Vec<ValueDoc>>,
        poly: PolyBody,
        #[serde(default = "zero_value")]
        default: ValueDoc,
    },
    Table {
        #[serde(flatten)]
        header: Header,
        dim: usize,
        values: Vec<TableEntryDoc>,
    },
    CoordinateSum {
        dim: usize,
        inner: Box<FunctionDoc>,
    },
}

fn zero_value() -> ValueDoc {
    ValueDoc::Terms(BTreeMap::new())
}

pub fn function_doc(f: &SampledFunction) -> FunctionDoc {
    match f.source() {
        Source::WholeSpace(p) => FunctionDoc::Poly(poly_doc(p)),
        Source::Lattice {
            generators,
            poly,
            default,
        } => FunctionDoc::Lattice {
            header: Header::of(f.table()),
            generators: generators.generators().iter().map(|g| point_doc(g)).collect(),
            poly: poly_body(poly),
            default: value_doc(default),
        },
        Source::Table(map) => FunctionDoc::Table {
            header: Header::of(f.table()),
            dim: f.dim(),
            values: map
                .iter()
                .map(|(p, v)| TableEntryDoc {
                    point: point_doc(p),
                    value: value_doc(v),
                })
                .collect(),
        },
        Source::CoordinateSum(g) => FunctionDoc::CoordinateSum {
            dim: f.dim(),
            inner: Box::new(function_doc(g)),
        },
    }
}

pub fn function_from_doc(doc: &FunctionDoc) -> Result<SampledFunction> {
    match doc {
        FunctionDoc::Poly(p) => Ok(SampledFunction::whole_space(poly_from_doc(p)?)),
        FunctionDoc::Lattice {
            header,
            generators,
            poly,
            default,
        } => {
            let table = header.table()?;
            let gens = generators
                .iter()
                .map(|g| point_from_doc(&table, g))
                .collect::<Result<Vec<_>>>()?;
            SampledFunction::lattice(
                GeneratorSet::new(&table, gens)?,
                poly_from_body(&table, poly)?,
                value_from_doc(&table, default)?,
            )
        }
        FunctionDoc::Table { header, dim, values } => {
            let table = header.table()?;
            let mut map = BTreeMap::new();
            for e in values {
                map.insert(point_from_doc(&table, &e.point)?, value_from_doc(&table, &e.value)?);
            }
            SampledFunction::table_values(&table, *dim, map)
        }
        FunctionDoc::CoordinateSum { dim, inner } => SampledFunction::coordinate_sum(function_from_doc(inner)?, *dim),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorsDoc {
    pub d: usize,
    #[serde(flatten)]
    pub header: Header,
    pub generators: Vec<Vec<ValueDoc>>,
}

pub fn generators_doc(g: &GeneratorSet) -> GeneratorsDoc {
    GeneratorsDoc {
        d: g.d(),
        header: Header::of(g.table()),
        generators: g.generators().iter().map(|h| point_doc(h)).collect(),
    }
}

pub fn generators_from_doc(doc: &GeneratorsDoc) -> Result<GeneratorSet> {
    let table = doc.header.table()?;
    let gens = doc
        .generators
        .iter()
        .map(|g| point_from_doc(&table, g))
        .collect::<Result<Vec<_>>>()?;
    if let Some(bad) = gens.iter().find(|g| g.len() != doc.d) {
        return Err(Error::ArityMismatch {
            expected: doc.d,
            found: bad.len(),
        });
    }
    if gens.is_empty() {
        return GeneratorSet::standard(&table, doc.d);
    }
    GeneratorSet::new(&table, gens)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaDoc {
    #[serde(flatten)]
    pub header: Header,
    pub theta: Vec<ValueDoc>,
}

pub fn theta_doc(table: &SymbolTable, theta: &[SymReal]) -> ThetaDoc {
    ThetaDoc {
        header: Header::of(table),
        theta: point_doc(theta),
    }
}

pub fn theta_from_doc(doc: &ThetaDoc) -> Result<Vec<SymReal>> {
    point_from_doc(&doc.header.table()?, &doc.theta)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridEntryDoc {
    pub index: Vec<usize>,
    pub value: ValueDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDoc {
    #[serde(flatten)]
    pub header: Header,
    pub axes: Vec<Vec<ValueDoc>>,
    pub values: Vec<GridEntryDoc>,
}

pub fn grid_doc(g: &GridValues) -> GridDoc {
    GridDoc {
        header: Header::of(g.grid().table()),
        axes: g.grid().axes().iter().map(|a| point_doc(a)).collect(),
        values: g
            .entries()
            .map(|(index, v)| GridEntryDoc {
                index,
                value: value_doc(v),
            })
            .collect(),
    }
}

pub fn grid_from_doc(doc: &GridDoc) -> Result<GridValues> {
    let table = doc.header.table()?;
    let axes = doc
        .axes
        .iter()
        .map(|a| point_from_doc(&table, a))
        .collect::<Result<Vec<_>>>()?;
    let grid = RectGrid::new(&table, axes)?;
    let mut values = BTreeMap::new();
    for e in &doc.values {
        values.insert(e.index.clone(), value_from_doc(&table, &e.value)?);
    }
    GridValues::new(grid, values)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointsDoc {
    #[serde(flatten)]
    pub header: Header,
    pub points: Vec<Vec<ValueDoc>>,
}

pub fn points_doc(table: &SymbolTable, points: &[Point]) -> PointsDoc {
    PointsDoc {
        header: Header::of(table),
        points: points.iter().map(|p| point_doc(p)).collect(),
    }
}

pub fn points_from_doc(doc: &PointsDoc) -> Result<Vec<Point>> {
    let table = doc.header.table()?;
    doc.points.iter().map(|p| point_from_doc(&table, p)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub verdict: Verdict,
    pub kind: CertificateKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub determinant: Option<PolyDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub determinant_text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<PolyDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form_matches: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    pub detail: String,
}

pub fn certificate_doc(c: &DensityCertificate) -> CertificateDoc {
    CertificateDoc {
        verdict: c.verdict,
        kind: c.kind,
        determinant: c.determinant.as_ref().map(poly_doc),
        determinant_text: c.determinant.as_ref().map(ToString::to_string),
        closed_form: c.closed_form.as_ref().map(poly_doc),
        closed_form_matches: c.closed_form_matches(),
        witness: c.witness.as_ref().map(|w| w.iter().map(ToString::to_string).collect()),
        detail: c.detail.clone(),
    }
}

pub fn certificate_from_doc(doc: &CertificateDoc) -> Result<DensityCertificate> {
    Ok(DensityCertificate {
        verdict: doc.verdict,
        kind: doc.kind,
        determinant: doc.determinant.as_ref().map(poly_from_doc).transpose()?,
        closed_form: doc.closed_form.as_ref().map(poly_from_doc).transpose()?,
        witness: doc
            .witness
            .as_ref()
            .map(|w| {
                w.iter()
                    .map(|n| {
                        n.parse::<BigInt>()
                            .map_err(|_| Error::Parse(format!("bad integer {n:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?,
        detail: doc.detail.clone(),
    })
}

/// Parses a document; syntax errors carry line and column.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Pretty-printed JSON with a trailing newline.
pub fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;
    use crate::lattice::kronecker_density_check;

    #[test]
    fn poly_round_trip() {
        let t = SymbolTable::new(["pi"], IndependenceMode::Algebraic).unwrap();
        let p = MultiPoly::from_terms(
            &t,
            2,
            [
                (MultiIndex::new(vec![1, 0]), parse_symreal(&t, "pi^2 - 1/3").unwrap()),
                (MultiIndex::new(vec![0, 0]), SymReal::from_int(&t, 4)),
            ],
        )
        .unwrap();
        let text = render(&poly_doc(&p));
        assert!(text.contains("\"pi^2\": \"1\""));
        assert!(text.contains("\"1\": \"-1/3\""));
        let back = poly_from_doc(&parse(&text).unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn expression_values_are_accepted() {
        let text = r#"{"nvars":1,"symbols":["theta1"],"mode":"q-linear",
            "terms":[{"exp":[1],"coef":"1/2 - theta1"}]}"#;
        let p = poly_from_doc(&parse(text).unwrap()).unwrap();
        let t = p.table().clone();
        assert_eq!(
            p.coefficient(&MultiIndex::new(vec![1])),
            parse_symreal(&t, "1/2-theta1").unwrap()
        );
        let rendered = render(&poly_doc(&p));
        assert!(rendered.contains("\"theta1\": \"-1\""));
    }

    #[test]
    fn functions_round_trip() {
        let t = SymbolTable::thetas(1, IndependenceMode::QLinear);
        let th = SymReal::symbol_at(&t, 0);
        let g = GeneratorSet::kronecker(&[th]).unwrap();
        let poly = MultiPoly::var(&t, 2, 0);
        let f = SampledFunction::lattice(g, poly, SymReal::from_int(&t, 7)).unwrap();
        let doc = function_doc(&f);
        let text = render(&doc);
        assert!(text.contains("\"kind\": \"lattice\""));
        let back: FunctionDoc = parse(&text).unwrap();
        assert_eq!(back, doc);
        let f2 = function_from_doc(&back).unwrap();
        let x = [SymReal::from_rational(&t, ratio(1, 2))];
        assert_eq!(f2.eval(&x).unwrap(), SymReal::from_int(&t, 7));

        let sum = SampledFunction::coordinate_sum(f, 2).unwrap();
        let doc = function_doc(&sum);
        assert_eq!(
            function_doc(&function_from_doc(&parse(&render(&doc)).unwrap()).unwrap()),
            doc
        );
    }

    #[test]
    fn certificate_round_trip() {
        let t = SymbolTable::thetas(2, IndependenceMode::QLinear);
        let theta: Vec<SymReal> = (0..2).map(|k| SymReal::symbol_at(&t, k)).collect();
        let c = kronecker_density_check(&theta).unwrap();
        let doc = certificate_doc(&c);
        let back = certificate_from_doc(&parse(&render(&doc)).unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse::<PolyDoc>("{\n \"nvars\": 1,\n \"terms\": [}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }
}
