//! Text formats and the JSON run report.
//!
//! All external formats use 1-based vertex ids; everything in memory is
//! 0-based. Colors are positive in both.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{ConstructionTrace, ThreeUniformHypergraph};
use crate::graph::{ComponentCensus, Graph, GraphError};
use crate::hypergraph::{is_worm_coloring, Coloring, ColoringError, Violation};
use crate::solver::{ChromaticValue, SpectrumReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

fn parse_id(token: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    let token = token.ok_or_else(|| ParseError::new(line, format!("missing {what}")))?;
    token
        .parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("invalid {what} `{token}`")))
}

fn one_based(id: usize, n: usize, line: usize) -> Result<usize, ParseError> {
    if id == 0 || id > n {
        return Err(ParseError::new(
            line,
            format!("vertex {id} outside 1..={n}"),
        ));
    }
    Ok(id - 1)
}

/// DIMACS `.col`: `c` comments, one `p edge n m` line, then `e u v` lines.
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut graph: Option<(Graph, usize)> = None;
    let mut seen = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None | Some("c") => continue,
            Some("p") => {
                if graph.is_some() {
                    return Err(ParseError::new(line, "second problem line"));
                }
                if tokens.next() != Some("edge") {
                    return Err(ParseError::new(line, "expected `p edge n m`"));
                }
                let n = parse_id(tokens.next(), line, "vertex count")?;
                let m = parse_id(tokens.next(), line, "edge count")?;
                if tokens.next().is_some() {
                    return Err(ParseError::new(line, "trailing tokens"));
                }
                graph = Some((Graph::new(n), m));
            }
            Some("e") => {
                let (g, _) = graph
                    .as_mut()
                    .ok_or_else(|| ParseError::new(line, "edge before problem line"))?;
                let n = g.vertex_count();
                let u = one_based(parse_id(tokens.next(), line, "endpoint")?, n, line)?;
                let v = one_based(parse_id(tokens.next(), line, "endpoint")?, n, line)?;
                if tokens.next().is_some() {
                    return Err(ParseError::new(line, "trailing tokens"));
                }
                g.add_edge(u, v).map_err(|e| match e {
                    GraphError::SelfLoop(_) => {
                        ParseError::new(line, format!("self-loop at vertex {}", u + 1))
                    }
                    GraphError::DuplicateEdge(..) => {
                        ParseError::new(line, format!("duplicate edge {} {}", u + 1, v + 1))
                    }
                    other => ParseError::new(line, other.to_string()),
                })?;
                seen += 1;
            }
            Some(other) => {
                return Err(ParseError::new(
                    line,
                    format!("unknown line type `{other}`"),
                ))
            }
        }
    }
    let last = text.lines().count().max(1);
    let (g, m) = graph.ok_or_else(|| ParseError::new(last, "missing `p edge n m` line"))?;
    if seen != m {
        return Err(ParseError::new(
            last,
            format!("problem line declares {m} edges, found {seen}"),
        ));
    }
    Ok(g)
}

pub fn write_dimacs(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "c {c}").unwrap();
    }
    writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Header `h n m`, then `m` lines of three distinct 1-based vertex ids.
/// Blank lines and `c` comments are skipped.
pub fn parse_hypergraph(text: &str) -> Result<ThreeUniformHypergraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<[usize; 3]> = Vec::new();
    let mut lines_of: Vec<usize> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.first() {
            None => continue,
            Some(&"c") => continue,
            Some(&"h") => {
                if header.is_some() {
                    return Err(ParseError::new(line, "second header line"));
                }
                if tokens.len() != 3 {
                    return Err(ParseError::new(line, "expected `h n m`"));
                }
                let n = parse_id(Some(tokens[1]), line, "vertex count")?;
                let m = parse_id(Some(tokens[2]), line, "edge count")?;
                header = Some((n, m));
            }
            Some(_) => {
                let (n, _) = header.ok_or_else(|| ParseError::new(line, "edge before header"))?;
                if tokens.len() != 3 {
                    return Err(ParseError::new(
                        line,
                        format!("hyperedge needs 3 vertices, got {}", tokens.len()),
                    ));
                }
                let mut e = [0; 3];
                for (slot, tok) in e.iter_mut().zip(&tokens) {
                    *slot = one_based(parse_id(Some(tok), line, "vertex")?, n, line)?;
                }
                if e[0] == e[1] || e[0] == e[2] || e[1] == e[2] {
                    return Err(ParseError::new(line, "hyperedge repeats a vertex"));
                }
                let mut key = e;
                key.sort_unstable();
                if let Some(first) = edges.iter().position(|f| *f == key) {
                    return Err(ParseError::new(
                        line,
                        format!("duplicate hyperedge (first on line {})", lines_of[first]),
                    ));
                }
                edges.push(key);
                lines_of.push(line);
            }
        }
    }
    let last = text.lines().count().max(1);
    let (n, m) = header.ok_or_else(|| ParseError::new(last, "missing `h n m` header"))?;
    if edges.len() != m {
        return Err(ParseError::new(
            last,
            format!("header declares {m} hyperedges, found {}", edges.len()),
        ));
    }
    ThreeUniformHypergraph::new(n, edges).map_err(|e| ParseError::new(last, e.to_string()))
}

pub fn write_hypergraph(h: &ThreeUniformHypergraph) -> String {
    let mut out = format!("h {} {}\n", h.vertex_count(), h.edges().len());
    for e in h.edges() {
        writeln!(out, "{} {} {}", e[0] + 1, e[1] + 1, e[2] + 1).unwrap();
    }
    out
}

/// Whitespace-separated positive colors, one per vertex in vertex order.
pub fn parse_coloring(text: &str) -> Result<Coloring, ParseError> {
    let mut colors = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        for tok in raw.split_whitespace() {
            let c: u32 = tok
                .parse()
                .map_err(|_| ParseError::new(idx + 1, format!("invalid color `{tok}`")))?;
            if c == 0 {
                return Err(ParseError::new(idx + 1, "colors must be positive"));
            }
            colors.push(c);
        }
    }
    Ok(Coloring::new(colors).expect("zero colors rejected above"))
}

pub fn write_coloring(c: &Coloring) -> String {
    let mut out = c
        .colors()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    out.push('\n');
    out
}

/// One row per `s`: feasible, infeasible, or unknown (budget exhausted).
pub fn spectrum_csv(n: usize, report: &SpectrumReport) -> String {
    let mut out = String::from("s,status\n");
    for s in 1..=n {
        let status = if report.feasible.contains(&s) {
            "feasible"
        } else if report.unresolved.contains(&s) {
            "unknown"
        } else {
            "infeasible"
        };
        writeln!(out, "{s},{status}").unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDescriptor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub vertices: usize,
    /// Graph edges, or hyperedges for hypergraph inputs.
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BudgetStatus {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seconds_per_search: Option<f64>,
    pub exceeded: bool,
}

/// A constructed graph with 1-based edges and printable origin tags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphPayload {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub origins: Vec<String>,
    /// `[vertex, absorbed tag]`, vertex 1-based.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identified: Vec<(usize, String)>,
}

impl GraphPayload {
    pub fn new(g: &Graph, trace: Option<&ConstructionTrace>) -> Self {
        GraphPayload {
            vertices: g.vertex_count(),
            edges: g.edges().into_iter().map(|(u, v)| [u + 1, v + 1]).collect(),
            origins: trace
                .map(|t| t.vertex_origin.iter().map(ToString::to_string).collect())
                .unwrap_or_default(),
            identified: trace
                .map(|t| {
                    t.identified
                        .iter()
                        .map(|id| (id.vertex + 1, id.absorbed.to_string()))
                        .collect()
                })
                .unwrap_or_default(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        Graph::from_edges(
            self.vertices,
            self.edges.iter().map(|&[u, v]| (u - 1, v - 1)),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Payload {
    Spectrum(SpectrumReport),
    Chromatic {
        quantity: String,
        #[serde(flatten)]
        value: ChromaticValue,
    },
    Check {
        valid: bool,
        colors: usize,
        /// Offending triangles, 1-based.
        violations: Vec<ViolationRecord>,
    },
    Coloring {
        method: String,
        colors: usize,
        coloring: Coloring,
    },
    Construction {
        name: String,
        graph: GraphPayload,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        notes: Vec<String>,
    },
    Formula {
        w_plus: usize,
        census: ComponentCensus,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub kind: String,
    pub triangle: [usize; 3],
}

impl From<Violation> for ViolationRecord {
    fn from(v: Violation) -> Self {
        let kind = match v {
            Violation::Monochromatic(_) => "monochromatic",
            Violation::Rainbow(_) => "rainbow",
        };
        ViolationRecord {
            kind: kind.to_string(),
            triangle: v.triangle().0.map(|x| x + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub tool_version: String,
    pub command: String,
    pub input: InputDescriptor,
    pub budget: BudgetStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub result: Payload,
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema {0}")]
    Schema(u32),
    #[error("witness for {key} colors uses {found}")]
    WitnessCount { key: usize, found: usize },
    #[error("witness for {key} colors is not a WORM coloring")]
    WitnessInvalid { key: usize },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        let report: RunReport = serde_json::from_str(text)?;
        if report.schema != SCHEMA_VERSION {
            return Err(ReportError::Schema(report.schema));
        }
        Ok(report)
    }

    /// Parses a report and re-validates every stored witness against `g`.
    pub fn load(text: &str, g: &Graph) -> Result<Self, ReportError> {
        let report = RunReport::from_json(text)?;
        report.validate_witnesses(g)?;
        Ok(report)
    }

    pub fn validate_witnesses(&self, g: &Graph) -> Result<(), ReportError> {
        if let Payload::Spectrum(spectrum) = &self.result {
            for (&key, w) in &spectrum.witnesses {
                if w.num_colors() != key {
                    return Err(ReportError::WitnessCount {
                        key,
                        found: w.num_colors(),
                    });
                }
                if !is_worm_coloring(g, w)? {
                    return Err(ReportError::WitnessInvalid { key });
                }
            }
        }
        Ok(())
    }
}
