use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::{CrystalContext, CrystalElement};
use crate::cartan::{BorcherdsCartanDatum, ExtInt, Weight};

/// Where `ẽ_i` or `f̃_i` sends a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Link {
    /// The operator gives `0`.
    Zero,
    Node(usize),
    /// Not evaluated: the node sits on the truncation boundary.
    Cut,
    /// Nonzero, but the result is not a node of this graph.
    Outside,
}

impl Link {
    pub fn node(self) -> Option<usize> {
        match self {
            Link::Node(id) => Some(id),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GraphNode {
    pub elt: CrystalElement,
    pub wt: Weight,
    pub eps: Vec<ExtInt>,
    pub phi: Vec<ExtInt>,
    pub e: Vec<Link>,
    pub f: Vec<Link>,
    pub frontier: bool,
}

/// Operator values of one element before node ids are known.
pub(crate) struct Evaluated {
    pub elt: CrystalElement,
    pub wt: Weight,
    pub eps: Vec<ExtInt>,
    pub phi: Vec<ExtInt>,
    pub e: Vec<Option<CrystalElement>>,
    /// `None` when the lowering operators were not evaluated.
    pub f: Option<Vec<Option<CrystalElement>>>,
}

impl Evaluated {
    pub fn new(ctx: &CrystalContext, elt: CrystalElement, with_f: bool) -> Self {
        let n = ctx.rank();
        Evaluated {
            wt: ctx.wt(&elt),
            eps: (0..n).map(|i| ctx.eps(i, &elt)).collect(),
            phi: (0..n).map(|i| ctx.phi(i, &elt)).collect(),
            e: (0..n).map(|i| ctx.e(i, &elt)).collect(),
            f: with_f.then(|| (0..n).map(|i| ctx.f(i, &elt)).collect()),
            elt,
        }
    }
}

/// A finite piece of a crystal: nodes with cached statistics and the
/// `ẽ_i`/`f̃_i` relations among them.
///
/// Edges (`f` links) form the `f̃`-relation exactly. A frontier node had its
/// `f̃`-fan cut by the truncation; checks skip relations through it.
#[derive(Clone, Debug)]
pub struct CrystalGraph {
    datum: Arc<BorcherdsCartanDatum>,
    root: usize,
    nodes: Vec<GraphNode>,
    lookup: HashMap<CrystalElement, usize>,
    bound: Option<usize>,
}

impl CrystalGraph {
    /// Builds a graph on an explicit finite element set. The first element
    /// is the root. Lowering results outside the set are `Cut` and mark the
    /// node frontier; raising results outside the set are `Outside`.
    pub fn from_elements(ctx: &CrystalContext, elts: Vec<CrystalElement>) -> Self {
        let evaluated: Vec<Evaluated> = elts.into_par_iter().map(|e| Evaluated::new(ctx, e, true)).collect();
        let lookup: HashMap<CrystalElement, usize> =
            evaluated.iter().enumerate().map(|(k, ev)| (ev.elt.clone(), k)).collect();
        let nodes = evaluated
            .into_iter()
            .map(|ev| {
                let f: Vec<Link> = ev
                    .f
                    .expect("lowering evaluated")
                    .iter()
                    .map(|r| match r {
                        None => Link::Zero,
                        Some(x) => lookup.get(x).map_or(Link::Cut, |&id| Link::Node(id)),
                    })
                    .collect();
                let e = resolve(&ev.e, &lookup);
                let frontier = f.contains(&Link::Cut);
                GraphNode { elt: ev.elt, wt: ev.wt, eps: ev.eps, phi: ev.phi, e, f, frontier }
            })
            .collect();
        CrystalGraph { datum: ctx.datum_arc().clone(), root: 0, nodes, lookup, bound: None }
    }

    pub(crate) fn from_parts(
        datum: Arc<BorcherdsCartanDatum>,
        root: usize,
        nodes: Vec<GraphNode>,
        lookup: HashMap<CrystalElement, usize>,
        bound: Option<usize>,
    ) -> Self {
        CrystalGraph { datum, root, nodes, lookup, bound }
    }

    /// The number of lowering steps explored, for graphs built by search.
    pub fn depth_bound(&self) -> Option<usize> {
        self.bound
    }

    pub fn datum(&self) -> &BorcherdsCartanDatum {
        &self.datum
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn nodes(&self) -> &[GraphNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &GraphNode {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn id_of(&self, elt: &CrystalElement) -> Option<usize> {
        self.lookup.get(elt).copied()
    }

    /// `(from, to, i)` for every `f̃_i from = to`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .flat_map(|(from, n)| n.f.iter().enumerate().filter_map(move |(i, l)| l.node().map(|to| (from, to, i))))
    }

    pub fn frontier(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes.iter().enumerate().filter(|(_, n)| n.frontier).map(|(k, _)| k)
    }

    /// Nodes whose `ẽ_i` is nonzero but lands outside the graph.
    pub fn raise_escapes(&self) -> Vec<(usize, usize)> {
        self.nodes
            .iter()
            .enumerate()
            .flat_map(|(k, n)| n.e.iter().enumerate().filter(|(_, l)| **l == Link::Outside).map(move |(i, _)| (k, i)))
            .collect()
    }

    /// Weight multiplicities, sorted by depth then root coefficients.
    pub fn character(&self) -> Vec<(Weight, usize)> {
        let mut counts: HashMap<&Weight, usize> = HashMap::new();
        for n in &self.nodes {
            *counts.entry(&n.wt).or_default() += 1;
        }
        let mut out: Vec<(Weight, usize)> = counts.into_iter().map(|(w, c)| (w.clone(), c)).collect();
        out.sort_by(|(a, _), (b, _)| (a.depth(), &a.rt, &a.lam).cmp(&(b.depth(), &b.rt, &b.lam)));
        out
    }

    /// Replaces one cached statistic; used to inject faults in tests.
    #[doc(hidden)]
    pub fn corrupt_phi(&mut self, node: usize, i: usize, value: ExtInt) {
        self.nodes[node].phi[i] = value;
    }
}

pub(crate) fn resolve(results: &[Option<CrystalElement>], lookup: &HashMap<CrystalElement, usize>) -> Vec<Link> {
    results
        .iter()
        .map(|r| match r {
            None => Link::Zero,
            Some(x) => lookup.get(x).map_or(Link::Outside, |&id| Link::Node(id)),
        })
        .collect()
}
