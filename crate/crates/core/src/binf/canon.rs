use std::collections::BTreeSet;

use crate::crystal::CrystalGraph;

/// For every node, the lexicographically smallest label sequence
/// `(j_1, …, j_m)` among shortest paths with `f̃_{j_m} ⋯ f̃_{j_1} root = b`,
/// or `None` if the node is not reachable from the root.
pub fn canonical_form(g: &CrystalGraph) -> Vec<Option<Vec<usize>>> {
    let mut label: Vec<Option<Vec<usize>>> = vec![None; g.len()];
    if g.is_empty() {
        return label;
    }
    label[g.root()] = Some(Vec::new());
    let mut layer = vec![g.root()];
    while !layer.is_empty() {
        layer.sort_by(|a, b| label[*a].cmp(&label[*b]));
        let mut next = Vec::new();
        for &k in &layer {
            for (i, l) in g.node(k).f.iter().enumerate() {
                if let Some(to) = l.node() {
                    if label[to].is_none() {
                        let mut p = label[k].clone().unwrap();
                        p.push(i);
                        label[to] = Some(p);
                        next.push(to);
                    }
                }
            }
        }
        layer = next;
    }
    label
}

type CanonicalEdges = BTreeSet<(Option<Vec<usize>>, Option<Vec<usize>>, usize)>;

fn canonical_edges(g: &CrystalGraph) -> (CanonicalEdges, BTreeSet<Vec<usize>>) {
    let label = canonical_form(g);
    let edges = g.edges().map(|(a, b, i)| (label[a].clone(), label[b].clone(), i)).collect();
    let nodes = label.into_iter().flatten().collect();
    (edges, nodes)
}

/// Equality of node counts and of edge sets written in canonical labels.
pub fn graphs_isomorphic(g1: &CrystalGraph, g2: &CrystalGraph) -> bool {
    g1.len() == g2.len() && g1.datum().rank() == g2.datum().rank() && canonical_edges(g1) == canonical_edges(g2)
}
