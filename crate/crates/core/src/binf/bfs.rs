use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::crystal::{resolve, CrystalContext, CrystalElement, CrystalGraph, Evaluated, GraphNode, Link};

/// The `f̃`-closure of `root` up to `depth` lowering steps.
///
/// Layers are explored breadth-first; each new layer is ordered by the
/// element order, so node ids depend only on the inputs. Nodes of the last
/// layer are frontier nodes and their `f̃`-links are `Cut`.
pub fn component_bfs(ctx: &CrystalContext, root: CrystalElement, depth: usize) -> CrystalGraph {
    let mut lookup: HashMap<CrystalElement, usize> = HashMap::new();
    let mut evaluated: Vec<Evaluated> = Vec::new();
    let mut layer = vec![root];
    for d in 0..=depth {
        let with_f = d < depth;
        let evs: Vec<Evaluated> = layer.into_par_iter().map(|b| Evaluated::new(ctx, b, with_f)).collect();
        let mut next = BTreeSet::new();
        for ev in &evs {
            lookup.insert(ev.elt.clone(), lookup.len());
            for y in ev.f.iter().flatten().flatten() {
                if !lookup.contains_key(y) {
                    next.insert(y.clone());
                }
            }
        }
        evaluated.extend(evs);
        layer = next.into_iter().collect();
        if layer.is_empty() {
            break;
        }
    }
    let nodes = evaluated
        .into_iter()
        .map(|ev| {
            let (f, frontier) = match &ev.f {
                Some(f) => (resolve(f, &lookup), false),
                None => (vec![Link::Cut; ctx.rank()], true),
            };
            let e = resolve(&ev.e, &lookup);
            GraphNode { elt: ev.elt, wt: ev.wt, eps: ev.eps, phi: ev.phi, e, f, frontier }
        })
        .collect();
    CrystalGraph::from_parts(ctx.datum_arc().clone(), 0, nodes, lookup, Some(depth))
}
