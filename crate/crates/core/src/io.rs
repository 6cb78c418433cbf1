//! Text formats: edge lists, reaction lists, per-vertex CSV, DOT and the JSON report.

use std::collections::HashMap;
use std::f64::consts::LN_2;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::centrality::{avg_st_path_length, PathStats};
use crate::core_id::{Core, ElementKind};
use crate::error::{Error, Result};
use crate::graph::{largest_wcc, ClassCounts, CondensationReport, DependencyNetwork, RawDigraph, VertexClass};
use crate::metrics::HourglassReport;

fn content(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
    .trim()
}

/// One edge `u v` per line: `v` depends on `u`. `#` starts a comment.
pub fn parse_edgelist(text: &str) -> Result<RawDigraph> {
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = content(line);
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(u), Some(v), None) => pairs.push((u, v)),
            _ => {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected two vertex ids, got {line:?}"),
                })
            }
        }
    }
    RawDigraph::from_parts(std::iter::empty::<&str>(), pairs)
}

/// Splits one side of a reaction on standalone `+` tokens, so names such as `NAD+`
/// survive. Multi-word names keep single spaces.
fn metabolites(side: &str, line: usize) -> Result<Vec<String>> {
    let mut names = vec![Vec::new()];
    for token in side.split_whitespace() {
        if token == "+" {
            names.push(Vec::new());
        } else {
            names.last_mut().expect("never empty").push(token);
        }
    }
    names
        .into_iter()
        .map(|words| {
            if words.is_empty() {
                Err(Error::Parse { line, message: "empty metabolite name".into() })
            } else {
                Ok(words.join(" "))
            }
        })
        .collect()
}

/// Reactions `A + B -> C + D`, one per line; every substrate gets an edge to every
/// product. The written arrow is the only direction.
pub fn parse_reactions(text: &str) -> Result<RawDigraph> {
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = content(line);
        if line.is_empty() {
            continue;
        }
        let Some((lhs, rhs)) = line.split_once("->") else {
            return Err(Error::Parse { line: line_no, message: "missing \"->\"".into() });
        };
        if rhs.contains("->") {
            return Err(Error::Parse { line: line_no, message: "more than one \"->\"".into() });
        }
        let substrates = metabolites(lhs, line_no)?;
        let products = metabolites(rhs, line_no)?;
        for s in &substrates {
            for p in &products {
                pairs.push((s.clone(), p.clone()));
            }
        }
    }
    RawDigraph::from_parts(std::iter::empty::<String>(), pairs)
}

/// Edge list readable by [`parse_edgelist`]. Isolated vertices cannot be expressed and
/// are only counted in the header comment.
pub fn write_edgelist<'a>(vertex_count: usize, edges: impl Iterator<Item = (&'a str, &'a str)>) -> Result<String> {
    let edges: Vec<_> = edges.collect();
    let mut out = format!("# {} vertices, {} edges\n", vertex_count, edges.len());
    for (u, v) in edges {
        if u.chars().chain(v.chars()).any(|c| c.is_whitespace() || c == '#') || u.is_empty() || v.is_empty() {
            return Err(Error::InvalidArgument(format!("vertex id {u:?} or {v:?} not representable in an edge list")));
        }
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    Ok(out)
}

/// Core element index and weight per core vertex.
fn core_membership(g: &DependencyNetwork, core: &Core) -> HashMap<usize, (usize, f64)> {
    let mut map = HashMap::new();
    for (i, e) in core.elements.iter().enumerate() {
        for id in &e.members {
            if let Some(v) = g.index_of(id) {
                map.insert(v, (i, e.weight));
            }
        }
    }
    map
}

/// Per-vertex metrics, one row per vertex in id order. Members of a PES each carry the
/// weight of their element.
pub fn write_metrics_csv(g: &DependencyNetwork, stats: &PathStats, core: &Core) -> Result<String> {
    let membership = core_membership(g, core);
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(["vertex", "class", "ps", "pt", "p", "p_frac", "location", "in_core", "core_weight"])
        .map_err(csv_err)?;
    for v in 0..g.vertex_count() {
        let weight = membership.get(&v).map(|&(_, w)| w);
        w.write_record([
            g.id(v).to_owned(),
            g.class(v).as_str().to_owned(),
            stats.ps(v).to_string(),
            stats.pt(v).to_string(),
            stats.p(v).to_string(),
            format!("{:?}", stats.path_fraction(v)),
            stats.location(v).map(|x| format!("{x:?}")).unwrap_or_default(),
            weight.is_some().to_string(),
            format!("{:?}", weight.unwrap_or(0.0)),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of UTF-8 fields"))
}

/// Natural log of `1 + x` for arbitrarily large `x`.
fn ln_1p_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().expect("fits an f64").ln_1p()
    } else {
        let shift = bits - 64;
        (x >> shift).to_f64().expect("64-bit value").ln() + shift as f64 * LN_2
    }
}

fn dot_quote(id: &str) -> String {
    format!("\"{}\"", id.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Rank group of a vertex: 0 for sources, `bins + 1` for targets, `1..=bins` by location
/// for the rest. Vertices without a location get none.
pub fn location_bin(class: VertexClass, location: Option<f64>, bins: usize) -> Option<usize> {
    match class {
        VertexClass::Source => Some(0),
        VertexClass::Target => Some(bins + 1),
        VertexClass::Isolated => None,
        VertexClass::Intermediate => {
            location.map(|x| ((x * bins as f64).ceil() as usize).clamp(1, bins))
        }
    }
}

/// Graphviz rendering: one same-rank group per location bin, fill darkness growing with
/// `log(1 + P(v))`, core vertices outlined in red.
pub fn write_dot(g: &DependencyNetwork, stats: &PathStats, core: &Core, bins: usize) -> Result<String> {
    if bins == 0 {
        return Err(Error::InvalidArgument("need at least one location bin".into()));
    }
    let membership = core_membership(g, core);
    let max_log = (0..g.vertex_count()).map(|v| ln_1p_big(stats.p(v))).fold(0.0, f64::max);

    let mut out = String::from("digraph hourglass {\n  rankdir=BT;\n  node [shape=ellipse, style=filled];\n");
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); bins + 2];
    for v in 0..g.vertex_count() {
        if let Some(b) = location_bin(g.class(v), stats.location(v), bins) {
            groups[b].push(v);
        }
    }
    for (b, members) in groups.iter().enumerate() {
        if members.is_empty() {
            continue;
        }
        let names: Vec<String> = members.iter().map(|&v| dot_quote(g.id(v))).collect();
        writeln!(out, "  {{ rank=same; {}; }} // bin {b}", names.join("; ")).expect("writing to a String");
    }
    for v in 0..g.vertex_count() {
        let shade = if max_log > 0.0 { ln_1p_big(stats.p(v)) / max_log } else { 0.0 };
        let gray = 100 - (70.0 * shade).round() as i64;
        let font = if gray < 60 { "white" } else { "black" };
        let mut attrs = format!("fillcolor=gray{gray}, fontcolor={font}");
        if let Some((i, _)) = membership.get(&v) {
            write!(attrs, ", color=red, penwidth=3, xlabel=\"core {}\"", i + 1).expect("writing to a String");
        }
        writeln!(out, "  {} [{attrs}];", dot_quote(g.id(v))).expect("writing to a String");
    }
    for (u, v) in g.edge_ids() {
        writeln!(out, "  {} -> {};", dot_quote(u), dot_quote(v)).expect("writing to a String");
    }
    out.push_str("}\n");
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetworkSummary {
    pub raw_vertices: usize,
    pub raw_edges: usize,
    pub self_loops_dropped: usize,
    pub vertices: usize,
    pub edges: usize,
    pub classes: ClassCounts,
    /// Share of vertices in the largest weakly connected component.
    pub lwcc_fraction: f64,
    pub super_vertices: usize,
    pub super_vertex_size_mean: f64,
    pub super_vertex_size_std: f64,
    pub st_paths: String,
    pub avg_st_path_length: f64,
}

impl NetworkSummary {
    pub fn new(raw: &RawDigraph, condensation: &CondensationReport, g: &DependencyNetwork, stats: &PathStats) -> Result<Self> {
        let lwcc = largest_wcc(g)?;
        Ok(NetworkSummary {
            raw_vertices: raw.vertex_count(),
            raw_edges: raw.edge_count(),
            self_loops_dropped: raw.self_loops_dropped(),
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            classes: g.class_counts(),
            lwcc_fraction: lwcc.vertex_count() as f64 / g.vertex_count() as f64,
            super_vertices: condensation.super_vertex_count,
            super_vertex_size_mean: condensation.size_mean,
            super_vertex_size_std: condensation.size_std,
            st_paths: stats.total().to_string(),
            avg_st_path_length: avg_st_path_length(g, stats)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoreMember {
    pub vertex: String,
    pub class: VertexClass,
    /// `P(v) / P` on the analyzed network.
    pub path_fraction: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoreListing {
    pub rank: usize,
    pub kind: ElementKind,
    pub members: Vec<CoreMember>,
    /// Marginal share of ST-paths covered when the element was added.
    pub weight: f64,
    pub cumulative_coverage: f64,
}

pub fn core_listing(g: &DependencyNetwork, stats: &PathStats, core: &Core) -> Vec<CoreListing> {
    core.elements
        .iter()
        .zip(core.cumulative_coverage())
        .enumerate()
        .map(|(i, (e, cumulative))| CoreListing {
            rank: i + 1,
            kind: e.kind,
            members: e
                .members
                .iter()
                .filter_map(|id| g.index_of(id))
                .map(|v| CoreMember {
                    vertex: g.id(v).to_owned(),
                    class: g.class(v),
                    path_fraction: stats.path_fraction(v),
                })
                .collect(),
            weight: e.weight,
            cumulative_coverage: cumulative,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub input: String,
    pub format: String,
    pub tau: f64,
    pub seed: u64,
    pub tie_policy: String,
    pub lwcc: bool,
    pub excluded: Vec<String>,
    pub tool_version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub provenance: Provenance,
    pub network: NetworkSummary,
    pub core: Vec<CoreListing>,
    pub hourglass: HourglassReport,
    /// Distinct optimal-tie cores, when enumeration was requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumerated_cores: Option<EnumeratedCores>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumeratedCores {
    pub cores: Vec<Vec<Vec<String>>>,
    pub truncated: bool,
    pub jaccard_similarity: f64,
}

impl AnalysisReport {
    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> Result<String> {
        let value = serde_json::to_value(self).map_err(|e| Error::Invariant(format!("report serialization: {e}")))?;
        let mut text = serde_json::to_string_pretty(&value).expect("a JSON value always serializes");
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })
    }
}
