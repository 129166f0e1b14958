//! Graph serialization: JSON (round-trippable) and Graphviz DOT.

use std::collections::HashMap;
use std::fmt::Write;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::graph::{GraphNode, Link};
use super::{CrystalContext, CrystalElement, CrystalGraph};
use crate::cartan::{ExtInt, Weight};
use crate::error::{CrystalError, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeFile {
    pub id: usize,
    pub elt: CrystalElement,
    pub wt: Weight,
    pub eps: IndexMap<String, ExtInt>,
    pub phi: IndexMap<String, ExtInt>,
    pub frontier: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub from: usize,
    pub to: usize,
    pub i: String,
}

/// `{"root", "nodes": [...], "edges": [...]}`; `−∞` is written `"-inf"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub root: usize,
    pub nodes: Vec<NodeFile>,
    pub edges: Vec<EdgeFile>,
}

impl GraphFile {
    pub fn from_graph(g: &CrystalGraph) -> Self {
        let names = g.datum().names();
        let stat = |v: &[ExtInt]| names.iter().cloned().zip(v.iter().copied()).collect::<IndexMap<_, _>>();
        GraphFile {
            root: g.root(),
            nodes: g
                .nodes()
                .iter()
                .enumerate()
                .map(|(id, n)| NodeFile {
                    id,
                    elt: n.elt.clone(),
                    wt: n.wt.clone(),
                    eps: stat(&n.eps),
                    phi: stat(&n.phi),
                    frontier: n.frontier,
                })
                .collect(),
            edges: g.edges().map(|(from, to, i)| EdgeFile { from, to, i: names[i].clone() }).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serialization") + "\n"
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(CrystalError::Parse)
    }

    /// Rebuilds a graph. Raising links are taken to be the inverse of the
    /// stored edges, which is exact for graphs closed under `ẽ_i`.
    pub fn into_graph(self, ctx: &CrystalContext) -> Result<CrystalGraph> {
        let d = ctx.datum();
        let n = self.nodes.len();
        let mut nodes = Vec::with_capacity(n);
        let mut lookup = HashMap::with_capacity(n);
        for (k, nf) in self.nodes.into_iter().enumerate() {
            if nf.id != k {
                return Err(CrystalError::MalformedGraph(format!("node ids must be 0..{n} in order")));
            }
            ctx.validate(&nf.elt)?;
            let read = |m: &IndexMap<String, ExtInt>| -> Result<Vec<ExtInt>> {
                d.names()
                    .iter()
                    .map(|name| m.get(name).copied().ok_or_else(|| CrystalError::UnknownIndexName(name.clone())))
                    .collect()
            };
            let (eps, phi) = (read(&nf.eps)?, read(&nf.phi)?);
            let f = vec![if nf.frontier { Link::Cut } else { Link::Zero }; d.rank()];
            lookup.insert(nf.elt.clone(), k);
            nodes.push(GraphNode { elt: nf.elt, wt: nf.wt, eps, phi, e: vec![Link::Zero; d.rank()], f, frontier: nf.frontier });
        }
        for e in self.edges {
            let i = d.index_of(&e.i).ok_or_else(|| CrystalError::UnknownIndexName(e.i.clone()))?;
            if e.from >= n || e.to >= n {
                return Err(CrystalError::MalformedGraph(format!("edge {} -> {} leaves the node table", e.from, e.to)));
            }
            nodes[e.from].f[i] = Link::Node(e.to);
            nodes[e.to].e[i] = Link::Node(e.from);
        }
        if self.root >= n {
            return Err(CrystalError::MalformedGraph(format!("root {} out of range", self.root)));
        }
        Ok(CrystalGraph::from_parts(ctx.datum_arc().clone(), self.root, nodes, lookup, None))
    }
}

/// DOT with nodes labeled by the root-coefficient vector of their weight
/// and edges labeled by index name. Frontier nodes are dashed.
pub fn to_dot(g: &CrystalGraph) -> String {
    let names = g.datum().names();
    let mut out = String::from("digraph crystal {\n  rankdir=TB;\n");
    for (k, n) in g.nodes().iter().enumerate() {
        let label = n.wt.rt.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        let style = if n.frontier { ", style=dashed" } else { "" };
        writeln!(out, "  n{k} [label=\"({label})\"{style}];").unwrap();
    }
    for (from, to, i) in g.edges() {
        writeln!(out, "  n{from} -> n{to} [label=\"{}\"];", names[i].replace('"', "\\\"")).unwrap();
    }
    out.push_str("}\n");
    out
}
