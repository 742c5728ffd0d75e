//! Diagrams (graph + edge labeling) and their JSON wire format.
//!
//! ```json
//! { "vertices": 2,
//!   "monoid": {"family": "matrix", "k": 2},
//!   "edges": [ {"origin": 0, "tail": 1, "label": [[0, 1], [0, 0]]} ] }
//! ```
//!
//! Free labels are lists of non-negative integers, additive labels are JSON
//! integers or `"p/q"` strings, matrix labels are row-major integer grids.
//! Integers that do not fit in 64 bits are written as decimal strings.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::graph::{Edge, EdgeId, GraphError, OrientedGraph, Path};
use crate::monoid::{AdditiveNumber, FreeWord, IntMatrix, Monoid, MonoidKind, MonoidValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("{labels} labels for {edges} edges")]
    LabelCountMismatch { edges: usize, labels: usize },
    #[error("label of edge {0} does not belong to the diagram's monoid")]
    ForeignLabel(EdgeId),
    #[error("edge id {0} out of range")]
    EdgeOutOfRange(EdgeId),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An oriented graph with one label per edge, all from one monoid.
#[derive(Debug, Clone)]
pub struct Diagram<M: Monoid = MonoidKind> {
    graph: OrientedGraph,
    monoid: M,
    labels: Vec<M::Element>,
}

impl<M: Monoid> Diagram<M> {
    pub fn new(graph: OrientedGraph, monoid: M, labels: Vec<M::Element>) -> Result<Self, DiagramError> {
        if labels.len() != graph.edge_count() {
            return Err(DiagramError::LabelCountMismatch {
                edges: graph.edge_count(),
                labels: labels.len(),
            });
        }
        if let Some(bad) = labels.iter().position(|l| !monoid.contains(l)) {
            return Err(DiagramError::ForeignLabel(bad));
        }
        Ok(Diagram { graph, monoid, labels })
    }

    pub fn graph(&self) -> &OrientedGraph {
        &self.graph
    }

    pub fn monoid(&self) -> &M {
        &self.monoid
    }

    pub fn labels(&self) -> &[M::Element] {
        &self.labels
    }

    pub fn label(&self, e: EdgeId) -> &M::Element {
        &self.labels[e]
    }

    /// Product of the labels of `seq`, left to right; identity when empty.
    /// The sequence need not be a path.
    pub fn label_of_sequence(&self, seq: &[EdgeId]) -> Result<M::Element, DiagramError> {
        let mut acc = self.monoid.identity();
        for &e in seq {
            let label = self.labels.get(e).ok_or(DiagramError::EdgeOutOfRange(e))?;
            acc = self.monoid.op(&acc, label);
        }
        Ok(acc)
    }

    pub fn label_of_path(&self, p: &Path) -> Result<M::Element, DiagramError> {
        self.label_of_sequence(&p.edges)
    }

    /// Same graph and labels viewed through another monoid with the same
    /// element type (e.g. an instrumented wrapper).
    pub fn with_monoid<N: Monoid<Element = M::Element>>(self, monoid: N) -> Diagram<N> {
        Diagram {
            graph: self.graph,
            monoid,
            labels: self.labels,
        }
    }

    pub fn map_labels<N: Monoid>(
        &self,
        monoid: N,
        f: impl FnMut(&M::Element) -> N::Element,
    ) -> Result<Diagram<N>, DiagramError> {
        Diagram::new(self.graph.clone(), monoid, self.labels.iter().map(f).collect())
    }
}

impl<M> PartialEq for Diagram<M>
where
    M: Monoid + PartialEq,
    M::Element: PartialEq,
{
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.monoid == other.monoid && self.labels == other.labels
    }
}

/// JSON parse failure with a location such as `edges[3].label[1][0]`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{location}: {message}")]
pub struct ParseError {
    pub location: String,
    pub message: String,
}

impl ParseError {
    fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError {
            location: location.into(),
            message: message.into(),
        }
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, at: &str) -> Result<&'a Value, ParseError> {
    obj.get(key)
        .ok_or_else(|| ParseError::new(at, format!("missing field \"{key}\"")))
}

fn as_object<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>, ParseError> {
    v.as_object().ok_or_else(|| ParseError::new(at, "expected an object"))
}

fn as_array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>, ParseError> {
    v.as_array().ok_or_else(|| ParseError::new(at, "expected an array"))
}

fn as_index(v: &Value, at: &str) -> Result<usize, ParseError> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| ParseError::new(at, "expected a non-negative integer"))
}

fn as_bigint(v: &Value, at: &str) -> Result<BigInt, ParseError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(ParseError::new(at, "expected an integer"))
            }
        }
        Value::String(s) => BigInt::from_str(s.trim())
            .map_err(|_| ParseError::new(at, format!("invalid integer string \"{s}\""))),
        _ => Err(ParseError::new(at, "expected an integer")),
    }
}

fn bigint_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => json!(i),
        None => json!(v.to_string()),
    }
}

fn parse_rational(v: &Value, at: &str) -> Result<BigRational, ParseError> {
    match v {
        Value::String(s) => {
            let s = s.trim();
            match s.split_once('/') {
                Some((p, q)) => {
                    let p = BigInt::from_str(p.trim())
                        .map_err(|_| ParseError::new(at, format!("invalid numerator in \"{s}\"")))?;
                    let q = BigInt::from_str(q.trim())
                        .map_err(|_| ParseError::new(at, format!("invalid denominator in \"{s}\"")))?;
                    if q.is_zero() {
                        return Err(ParseError::new(at, "zero denominator"));
                    }
                    Ok(BigRational::new(p, q))
                }
                None => Ok(BigRational::from_integer(as_bigint(v, at)?)),
            }
        }
        _ => Ok(BigRational::from_integer(as_bigint(v, at)?)),
    }
}

fn parse_monoid(v: &Value) -> Result<MonoidKind, ParseError> {
    let at = "monoid";
    let obj = as_object(v, at)?;
    let family = field(obj, "family", at)?
        .as_str()
        .ok_or_else(|| ParseError::new("monoid.family", "expected a string"))?;
    match family {
        "free" => Ok(MonoidKind::Free),
        "additive" => Ok(MonoidKind::Additive),
        "matrix" => {
            let k = as_index(field(obj, "k", at)?, "monoid.k")?;
            if k == 0 {
                return Err(ParseError::new("monoid.k", "matrix dimension must be positive"));
            }
            Ok(MonoidKind::Matrix { k })
        }
        other => Err(ParseError::new(
            "monoid.family",
            format!("unknown monoid family \"{other}\""),
        )),
    }
}

/// Parses one label of the given family.
pub fn parse_value(kind: MonoidKind, v: &Value, at: &str) -> Result<MonoidValue, ParseError> {
    match kind {
        MonoidKind::Free => {
            let letters = as_array(v, at)?
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    x.as_u64()
                        .and_then(|g| u32::try_from(g).ok())
                        .ok_or_else(|| ParseError::new(format!("{at}[{i}]"), "expected a generator id"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FreeWord(letters).into())
        }
        MonoidKind::Additive => Ok(AdditiveNumber(parse_rational(v, at)?).into()),
        MonoidKind::Matrix { k } => {
            let rows = as_array(v, at)?;
            if rows.len() != k {
                return Err(ParseError::new(at, format!("expected {k} rows, found {}", rows.len())));
            }
            let mut entries = Vec::with_capacity(k * k);
            for (i, row) in rows.iter().enumerate() {
                let row_at = format!("{at}[{i}]");
                let row = as_array(row, &row_at)?;
                if row.len() != k {
                    return Err(ParseError::new(
                        row_at,
                        format!("expected {k} entries, found {}", row.len()),
                    ));
                }
                for (j, x) in row.iter().enumerate() {
                    entries.push(as_bigint(x, &format!("{at}[{i}][{j}]"))?);
                }
            }
            let m = IntMatrix::from_row_major(k, entries).map_err(|e| ParseError::new(at, e.to_string()))?;
            Ok(m.into())
        }
    }
}

pub fn value_to_json(v: &MonoidValue) -> Value {
    match v {
        MonoidValue::Word(w) => json!(w.0),
        MonoidValue::Number(n) => {
            if n.0.is_integer() {
                bigint_json(n.0.numer())
            } else {
                json!(n.to_string())
            }
        }
        MonoidValue::Matrix(m) => Value::Array(
            m.rows()
                .map(|row| Value::Array(row.iter().map(bigint_json).collect()))
                .collect(),
        ),
    }
}

fn monoid_json(kind: MonoidKind) -> Value {
    match kind {
        MonoidKind::Matrix { k } => json!({"family": "matrix", "k": k}),
        other => json!({"family": other.family_name()}),
    }
}

fn parse_document(text: &str) -> Result<Value, ParseError> {
    serde_json::from_str(text).map_err(|e| {
        ParseError::new(
            format!("line {} column {}", e.line(), e.column()),
            format!("invalid JSON: {e}"),
        )
    })
}

type RawEdges<'a> = Vec<(Edge, Option<&'a Value>)>;

fn parse_edges(root: &Map<String, Value>) -> Result<(usize, RawEdges<'_>), ParseError> {
    let vertices = as_index(field(root, "vertices", "$")?, "vertices")?;
    let raw = as_array(field(root, "edges", "$")?, "edges")?;
    let mut edges = Vec::with_capacity(raw.len());
    for (i, item) in raw.iter().enumerate() {
        let at = format!("edges[{i}]");
        let obj = as_object(item, &at)?;
        let origin = as_index(field(obj, "origin", &at)?, &format!("{at}.origin"))?;
        let tail = as_index(field(obj, "tail", &at)?, &format!("{at}.tail"))?;
        for (name, v) in [("origin", origin), ("tail", tail)] {
            if v >= vertices {
                return Err(ParseError::new(
                    format!("{at}.{name}"),
                    format!("vertex {v} out of range for {vertices} vertices"),
                ));
            }
        }
        edges.push((Edge::new(origin, tail), obj.get("label")));
    }
    Ok((vertices, edges))
}

/// Parses and validates a diagram document. File edge order becomes `EdgeId`
/// order.
pub fn parse_diagram(text: &str) -> Result<Diagram, ParseError> {
    let doc = parse_document(text)?;
    let root = as_object(&doc, "$")?;
    let kind = parse_monoid(field(root, "monoid", "$")?)?;
    let (vertices, raw) = parse_edges(root)?;
    let missing = raw.iter().filter(|(_, l)| l.is_none()).count();
    if missing > 0 {
        return Err(ParseError::new(
            "edges",
            format!(
                "{} edges but {} labels",
                raw.len(),
                raw.len() - missing
            ),
        ));
    }
    let mut edges = Vec::with_capacity(raw.len());
    let mut labels = Vec::with_capacity(raw.len());
    for (i, (edge, label)) in raw.into_iter().enumerate() {
        edges.push(edge);
        labels.push(parse_value(kind, label.expect("checked above"), &format!("edges[{i}].label"))?);
    }
    let graph = OrientedGraph::new(vertices, edges).map_err(|e| ParseError::new("edges", e.to_string()))?;
    Diagram::new(graph, kind, labels).map_err(|e| ParseError::new("edges", e.to_string()))
}

pub fn diagram_to_json(d: &Diagram) -> Value {
    let edges: Vec<Value> = d
        .graph()
        .edges()
        .iter()
        .zip(d.labels())
        .map(|(e, l)| json!({"origin": e.origin, "tail": e.tail, "label": value_to_json(l)}))
        .collect();
    json!({
        "vertices": d.graph().vertex_count(),
        "monoid": monoid_json(*d.monoid()),
        "edges": edges,
    })
}

/// Canonical compact serialization.
pub fn serialize_diagram(d: &Diagram) -> String {
    diagram_to_json(d).to_string()
}

/// Parses `{"vertices": n, "edges": [{"origin": o, "tail": t}, ...]}`.
/// A full diagram document is accepted too; its monoid and labels are ignored.
pub fn parse_graph(text: &str) -> Result<OrientedGraph, ParseError> {
    let doc = parse_document(text)?;
    let root = as_object(&doc, "$")?;
    let (vertices, raw) = parse_edges(root)?;
    OrientedGraph::new(vertices, raw.into_iter().map(|(e, _)| e).collect())
        .map_err(|e| ParseError::new("edges", e.to_string()))
}

pub fn graph_to_json(g: &OrientedGraph) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| json!({"origin": e.origin, "tail": e.tail}))
        .collect();
    json!({"vertices": g.vertex_count(), "edges": edges})
}

pub fn serialize_graph(g: &OrientedGraph) -> String {
    graph_to_json(g).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{AdditiveMonoid, MatrixMonoid};

    #[test]
    fn label_of_sequence_examples() {
        let g = OrientedGraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        let d = Diagram::new(
            g.clone(),
            MatrixMonoid { k: 3 },
            vec![IntMatrix::unit(3, 1, 2), IntMatrix::unit(3, 2, 3)],
        )
        .unwrap();
        assert_eq!(d.label_of_sequence(&[]).unwrap(), IntMatrix::identity(3));
        assert_eq!(d.label_of_sequence(&[0, 1]).unwrap(), IntMatrix::unit(3, 1, 3));
        assert_eq!(d.label_of_sequence(&[2]), Err(DiagramError::EdgeOutOfRange(2)));

        let lp = OrientedGraph::from_pairs(1, &[(0, 0)]).unwrap();
        let d = Diagram::new(lp, AdditiveMonoid, vec![AdditiveNumber::integer(1)]).unwrap();
        assert_eq!(d.label_of_sequence(&[0, 0, 0]).unwrap(), AdditiveNumber::integer(3));
    }

    #[test]
    fn construction_checks() {
        let g = OrientedGraph::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(
            Diagram::new(g.clone(), MonoidKind::Free, vec![FreeWord::empty().into()]).unwrap_err(),
            DiagramError::LabelCountMismatch { edges: 2, labels: 1 }
        );
        assert_eq!(
            Diagram::new(
                g,
                MonoidKind::Matrix { k: 2 },
                vec![IntMatrix::identity(2).into(), IntMatrix::identity(3).into()]
            )
            .unwrap_err(),
            DiagramError::ForeignLabel(1)
        );
    }

    #[test]
    fn parse_one_edge() {
        let d = parse_diagram(
            r#"{"vertices":2,"monoid":{"family":"free"},"edges":[{"origin":0,"tail":1,"label":[7]}]}"#,
        )
        .unwrap();
        assert_eq!(d.graph().edge_count(), 1);
        assert_eq!(d.label(0), &MonoidValue::Word(FreeWord(vec![7])));
    }

    #[test]
    fn missing_label_is_count_mismatch() {
        let err = parse_diagram(
            r#"{"vertices":2,"monoid":{"family":"free"},"edges":[
                {"origin":0,"tail":1,"label":[1]},
                {"origin":1,"tail":0,"label":[2]},
                {"origin":0,"tail":0}]}"#,
        )
        .unwrap_err();
        assert_eq!(err.location, "edges");
        assert!(err.message.contains("3 edges but 2 labels"), "{err}");
    }

    #[test]
    fn parse_errors_carry_locations() {
        let cases = [
            (r#"{"vertices":2,"monoid":{"family":"tropical"},"edges":[]}"#, "monoid.family"),
            (r#"{"vertices":2,"monoid":{"family":"free"},"edges":[{"origin":0,"tail":2,"label":[]}]}"#, "edges[0].tail"),
            (r#"{"vertices":2,"monoid":{"family":"matrix","k":2},"edges":[{"origin":0,"tail":1,"label":[[1,0],[0]]}]}"#, "edges[0].label[1]"),
            (r#"{"vertices":2,"monoid":{"family":"matrix","k":2},"edges":[{"origin":0,"tail":1,"label":[[1,0],[0,"x"]]}]}"#, "edges[0].label[1][1]"),
            (r#"{"vertices":2,"monoid":{"family":"additive"},"edges":[{"origin":0,"tail":1,"label":"1/0"}]}"#, "edges[0].label"),
            (r#"{"vertices":2,"monoid":{"family":"free"},"edges":[{"origin":0,"tail":1,"label":[-1]}]}"#, "edges[0].label[0]"),
            (r#"{"monoid":{"family":"free"},"edges":[]}"#, "$"),
        ];
        for (text, loc) in cases {
            assert_eq!(parse_diagram(text).unwrap_err().location, loc, "{text}");
        }
        assert!(parse_diagram("{not json").unwrap_err().location.starts_with("line 1"));
    }

    #[test]
    fn matrix_round_trip() {
        let text = r#"{"vertices":2,"monoid":{"family":"matrix","k":3},"edges":[{"origin":0,"tail":1,"label":[[0,1,0],[0,0,0],[0,0,0]]}]}"#;
        let d = parse_diagram(text).unwrap();
        assert_eq!(d.label(0), &MonoidValue::Matrix(IntMatrix::unit(3, 1, 2)));
        assert_eq!(serialize_diagram(&d), text);
        assert_eq!(parse_diagram(&serialize_diagram(&d)).unwrap(), d);
    }

    #[test]
    fn additive_and_big_values() {
        let text = r#"{"vertices":1,"monoid":{"family":"additive"},"edges":[
            {"origin":0,"tail":0,"label":"3/6"},
            {"origin":0,"tail":0,"label":"-4"},
            {"origin":0,"tail":0,"label":"123456789012345678901234567890"}]}"#;
        let d = parse_diagram(text).unwrap();
        assert_eq!(d.label(0), &MonoidValue::Number(AdditiveNumber::ratio(1, 2).unwrap()));
        let out = serialize_diagram(&d);
        assert!(out.contains(r#""label":"1/2""#));
        assert!(out.contains(r#""label":-4"#));
        assert!(out.contains(r#""123456789012345678901234567890""#));
        assert_eq!(parse_diagram(&out).unwrap(), d);
    }

    #[test]
    fn graph_json() {
        let g = OrientedGraph::from_pairs(3, &[(0, 1), (1, 1), (1, 2)]).unwrap();
        let text = serialize_graph(&g);
        assert_eq!(parse_graph(&text).unwrap(), g);
    }
}
