//! Graph file formats: edge list, DIMACS, DOT, and JSON, each written
//! bit-exactly and parsed back to identical canonical ids.
//!
//! * edge list: first line `n m`, then `u v` per edge, 0-based, `u < v`,
//!   lexicographically sorted.
//! * DIMACS: `p edge n m`, then `e i j` with 1-based ids, same order.
//! * DOT: an undirected graph with integer node ids, one statement per line.
//! * JSON: `{"n": .., "edges": [[u,v],..]}` plus an optional `labels` map
//!   carrying layer/index/class per vertex for generated instances.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use layered_wheel::construction::{LayeredWheel, VertexClass};
use layered_wheel::Graph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Edgelist,
    Dimacs,
    Dot,
    Json,
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("line {line}: {reason}")]
    Line { line: usize, reason: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("graph: {0}")]
    Graph(#[from] layered_wheel::graph::GraphError),
    #[error("edge count mismatch: header says {expected}, found {found}")]
    EdgeCount { expected: usize, found: usize },
}

#[derive(Serialize, Deserialize)]
pub struct JsonLabel {
    pub layer: u32,
    pub index: usize,
    pub class: String,
}

#[derive(Serialize, Deserialize)]
pub struct JsonGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, JsonLabel>>,
}

/// Writes a graph in the chosen format; labels only exist for generated
/// instances and only the JSON format carries them.
pub fn write_graph(g: &Graph, lw: Option<&LayeredWheel>, format: Format) -> String {
    match format {
        Format::Edgelist => {
            let mut out = format!("{} {}\n", g.n(), g.m());
            for (u, v) in g.edges() {
                writeln!(out, "{u} {v}").unwrap();
            }
            out
        }
        Format::Dimacs => {
            let mut out = format!("p edge {} {}\n", g.n(), g.m());
            for (u, v) in g.edges() {
                writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
            }
            out
        }
        Format::Dot => {
            let mut out = String::from("graph G {\n");
            for v in g.vertices() {
                writeln!(out, "  {v};").unwrap();
            }
            for (u, v) in g.edges() {
                writeln!(out, "  {u} -- {v};").unwrap();
            }
            out.push_str("}\n");
            out
        }
        Format::Json => {
            let labels = lw.map(|lw| {
                (0..g.n())
                    .map(|v| {
                        let lv = lw.label(v);
                        let class = match lw.class_of_id(v) {
                            VertexClass::Big => "big",
                            VertexClass::Medium => "medium",
                            VertexClass::Small => "small",
                        };
                        (v.to_string(), JsonLabel { layer: lv.layer, index: lv.index, class: class.into() })
                    })
                    .collect()
            });
            let jg = JsonGraph { n: g.n(), edges: g.edges().collect(), labels };
            let mut s = serde_json::to_string_pretty(&jg).unwrap();
            s.push('\n');
            s
        }
    }
}

/// Parsed graph plus any vertex classification carried by the file.
pub struct ParsedGraph {
    pub graph: Graph,
    pub classes: Option<Vec<VertexClass>>,
}

/// Parses a graph, detecting the format from the content: DIMACS starts
/// with `p edge` or `c`, JSON with `{`, DOT with `graph`, anything else is
/// an edge list.
pub fn parse_graph(text: &str) -> Result<ParsedGraph, ParseError> {
    let trimmed = text.trim_start();
    if trimmed.is_empty() {
        return Err(ParseError::Empty);
    }
    if trimmed.starts_with('{') {
        parse_json(text)
    } else if trimmed.starts_with("p edge") || trimmed.starts_with('c') {
        parse_dimacs(text).map(|graph| ParsedGraph { graph, classes: None })
    } else if trimmed.starts_with("graph") {
        parse_dot(text).map(|graph| ParsedGraph { graph, classes: None })
    } else {
        parse_edgelist(text).map(|graph| ParsedGraph { graph, classes: None })
    }
}

fn parse_edgelist(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text.lines().enumerate();
    let (ln, header) = lines.next().ok_or(ParseError::Empty)?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| ParseError::Line { line: ln + 1, reason: "expected `n m` header".into() })?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| ParseError::Line { line: ln + 1, reason: "expected `n m` header".into() })?;
    let mut edges = Vec::with_capacity(m);
    for (ln, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let parse = |t: Option<&str>| -> Result<usize, ParseError> {
            t.and_then(|t| t.parse().ok())
                .ok_or_else(|| ParseError::Line { line: ln + 1, reason: "expected `u v`".into() })
        };
        let u = parse(it.next())?;
        let v = parse(it.next())?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCount { expected: m, found: edges.len() });
    }
    Ok(Graph::from_edges(n, &edges)?)
}

fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut n = None;
    let mut m = 0usize;
    let mut edges = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p edge") {
            let mut it = rest.split_whitespace();
            let nv: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| ParseError::Line { line: ln + 1, reason: "bad problem line".into() })?;
            m = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| ParseError::Line { line: ln + 1, reason: "bad problem line".into() })?;
            n = Some(nv);
        } else if let Some(rest) = line.strip_prefix('e') {
            let mut it = rest.split_whitespace();
            let parse = |t: Option<&str>| -> Result<usize, ParseError> {
                t.and_then(|t| t.parse().ok())
                    .ok_or_else(|| ParseError::Line { line: ln + 1, reason: "bad edge line".into() })
            };
            let u = parse(it.next())?;
            let v = parse(it.next())?;
            if u == 0 || v == 0 {
                return Err(ParseError::Line { line: ln + 1, reason: "ids are 1-based".into() });
            }
            edges.push((u - 1, v - 1));
        } else {
            return Err(ParseError::Line { line: ln + 1, reason: format!("unrecognized line `{line}`") });
        }
    }
    let n = n.ok_or(ParseError::Empty)?;
    if edges.len() != m {
        return Err(ParseError::EdgeCount { expected: m, found: edges.len() });
    }
    Ok(Graph::from_edges(n, &edges)?)
}

fn parse_dot(text: &str) -> Result<Graph, ParseError> {
    let mut max_id: Option<usize> = None;
    let mut edges = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim().trim_end_matches(';');
        if line.is_empty() || line.starts_with("graph") || line == "}" {
            continue;
        }
        if let Some((a, b)) = line.split_once("--") {
            let u: usize = a.trim().parse().map_err(|_| ParseError::Line {
                line: ln + 1,
                reason: "bad edge statement".into(),
            })?;
            let v: usize = b.trim().parse().map_err(|_| ParseError::Line {
                line: ln + 1,
                reason: "bad edge statement".into(),
            })?;
            edges.push((u, v));
            max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        } else {
            let v: usize = line.parse().map_err(|_| ParseError::Line {
                line: ln + 1,
                reason: format!("bad node statement `{line}`"),
            })?;
            max_id = Some(max_id.map_or(v, |m| m.max(v)));
        }
    }
    let n = max_id.map_or(0, |m| m + 1);
    Ok(Graph::from_edges(n, &edges)?)
}

fn parse_json(text: &str) -> Result<ParsedGraph, ParseError> {
    let jg: JsonGraph = serde_json::from_str(text)?;
    let graph = Graph::from_edges(jg.n, &jg.edges)?;
    let classes = match jg.labels {
        None => None,
        Some(labels) => {
            let mut classes = vec![VertexClass::Small; jg.n];
            for (key, label) in labels {
                let v: usize = key
                    .parse()
                    .map_err(|_| ParseError::Line { line: 0, reason: format!("bad label key `{key}`") })?;
                if v >= jg.n {
                    return Err(ParseError::Line { line: 0, reason: format!("label key {v} out of range") });
                }
                classes[v] = match label.class.as_str() {
                    "big" => VertexClass::Big,
                    "medium" => VertexClass::Medium,
                    "small" => VertexClass::Small,
                    other => {
                        return Err(ParseError::Line { line: 0, reason: format!("unknown class `{other}`") })
                    }
                };
            }
            Some(classes)
        }
    };
    Ok(ParsedGraph { graph, classes })
}

/// Weight files: one `vertex numerator/denominator` per line; omitted
/// vertices weigh zero; the total may not exceed one.
pub fn parse_weights(
    text: &str,
    n: usize,
) -> Result<layered_wheel::separators::WeightFunction, ParseError> {
    use num::BigUint;
    let mut fractions = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: &str| ParseError::Line { line: ln + 1, reason: reason.into() };
        let (v, frac) = line.split_once(char::is_whitespace).ok_or_else(|| bad("expected `v num/den`"))?;
        let v: usize = v.parse().map_err(|_| bad("bad vertex id"))?;
        let (num, den) = frac.trim().split_once('/').ok_or_else(|| bad("expected `num/den`"))?;
        let num: BigUint = num.parse().map_err(|_| bad("bad numerator"))?;
        let den: BigUint = den.parse().map_err(|_| bad("bad denominator"))?;
        fractions.push((v, num, den));
    }
    layered_wheel::separators::WeightFunction::from_fractions(n, &fractions)
        .map_err(|e| ParseError::Line { line: 0, reason: e.to_string() })
}
