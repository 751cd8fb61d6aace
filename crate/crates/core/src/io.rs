//! JSON documents for graphs, covers and divisors.
//!
//! Graph: `{"vertices": [..], "edges": [{"id", "src", "dst", "len"}]}` with
//! lengths as exact fractions (`"3/2"`, `"2"`; omitted means 1).
//! Cover: `{"tree": [..], "flips": [..]}` with optional `"e0"` (base flip
//! edge) and `"sigma"` (flip edge to `+1` or `-1`), all by edge id.
//! Divisor: `{"vertex": coefficient, ..}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize, Serializer};

use crate::cover::{CoverOptions, DoubleCover};
use crate::divisor::Divisor;
use crate::error::{PrymError, Result};
use crate::graph::{EdgeSet, Graph};
use crate::rat::{format_rat, parse_rat};

pub(crate) fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

pub(crate) fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Length {
    Text(String),
    Integer(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub src: String,
    pub dst: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub len: Option<Length>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDoc {
    pub tree: Vec<String>,
    pub flips: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e0: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sigma: BTreeMap<String, i8>,
}

pub type DivisorDoc = BTreeMap<String, i64>;

impl GraphDoc {
    pub fn from_graph(g: &Graph) -> Self {
        GraphDoc {
            vertices: (0..g.vertex_count()).map(|v| g.vertex_name(v).to_string()).collect(),
            edges: (0..g.edge_count())
                .map(|e| {
                    let edge = g.edge(e);
                    EdgeDoc {
                        id: g.edge_name(e).to_string(),
                        src: g.vertex_name(edge.src).to_string(),
                        dst: g.vertex_name(edge.dst).to_string(),
                        len: Some(Length::Text(format_rat(g.length(e)))),
                    }
                })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let mut g = Graph::new();
        for v in &self.vertices {
            g.add_vertex(v.clone())?;
        }
        for e in &self.edges {
            let vertex = |name: &str| {
                g.vertex_id(name)
                    .ok_or_else(|| PrymError::Parse(format!("edge {:?} uses unknown vertex {name:?}", e.id)))
            };
            let (src, dst) = (vertex(&e.src)?, vertex(&e.dst)?);
            let len = match &e.len {
                None => crate::rat::int(1),
                Some(Length::Integer(n)) => crate::rat::int(*n),
                Some(Length::Text(s)) => parse_rat(s)?,
            };
            g.add_edge(e.id.clone(), src, dst, len)?;
        }
        Ok(g)
    }
}

fn edge_set(g: &Graph, names: &[String]) -> Result<EdgeSet> {
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    g.edge_ids(&names)
}

impl CoverDoc {
    pub fn from_cover(cover: &DoubleCover) -> Self {
        let g = cover.base();
        let names = |s: &EdgeSet| s.iter().map(|&e| g.edge_name(e).to_string()).collect();
        let options = cover.options();
        CoverDoc {
            tree: names(cover.tree()),
            flips: names(cover.flips()),
            e0: (cover.flips().iter().next() != Some(&cover.base_flip()))
                .then(|| g.edge_name(cover.base_flip()).to_string()),
            sigma: options
                .orientations
                .iter()
                .filter(|(_, &s)| s != 1)
                .map(|(&e, &s)| (g.edge_name(e).to_string(), s))
                .collect(),
        }
    }

    pub fn to_cover(&self, base: Graph) -> Result<DoubleCover> {
        let tree = edge_set(&base, &self.tree)?;
        let flips = edge_set(&base, &self.flips)?;
        let id = |name: &str| {
            base.edge_id(name).ok_or_else(|| PrymError::Parse(format!("unknown edge {name:?}")))
        };
        let base_flip = self.e0.as_deref().map(id).transpose()?;
        let orientations = self
            .sigma
            .iter()
            .map(|(name, &s)| Ok((id(name)?, s)))
            .collect::<Result<_>>()?;
        DoubleCover::with_options(base, tree, flips, CoverOptions { base_flip, orientations })
    }
}

pub fn parse_graph(json: &str) -> Result<Graph> {
    serde_json::from_str::<GraphDoc>(json)?.to_graph()
}

pub fn parse_cover(graph_json: &str, cover_json: &str) -> Result<DoubleCover> {
    let base = parse_graph(graph_json)?;
    serde_json::from_str::<CoverDoc>(cover_json)?.to_cover(base)
}

pub fn parse_divisor(g: &Graph, json: &str) -> Result<Divisor> {
    let doc: DivisorDoc = serde_json::from_str(json)?;
    let mut coeffs = vec![0; g.vertex_count()];
    for (name, c) in doc {
        let v = g.vertex_id(&name).ok_or_else(|| PrymError::Parse(format!("unknown vertex {name:?}")))?;
        coeffs[v] = c;
    }
    Ok(Divisor::from_coeffs(coeffs))
}

/// Canonical JSON text of a graph; key order is fixed by the document types.
pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string_pretty(&GraphDoc::from_graph(g)).expect("serializable")
}

pub fn cover_to_json(cover: &DoubleCover) -> String {
    serde_json::to_string_pretty(&CoverDoc::from_cover(cover)).expect("serializable")
}

/// Nonzero coefficients keyed by vertex name.
pub fn divisor_to_json(g: &Graph, d: &Divisor) -> String {
    let doc: DivisorDoc = (0..g.vertex_count())
        .filter(|&v| d.coeff(v) != 0)
        .map(|v| (g.vertex_name(v).to_string(), d.coeff(v)))
        .collect();
    serde_json::to_string_pretty(&doc).expect("serializable")
}
