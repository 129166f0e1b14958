use std::collections::HashMap;

use super::{component_bfs, SeqId};
use crate::cartan::Weight;
use crate::crystal::{CrystalContext, CrystalElement, CrystalGraph, Link, MorphismWitness};
use crate::error::{CrystalError, Result};
use crate::report::{Law, Report, Violation};

/// The component of the zero string in `B(𝐢)`, explored to `depth`.
///
/// The result is audited: weights in `−Q₊`, a unique node of weight `0`,
/// every other node raisable, and closure under `ẽ_i`. Any failure is an
/// error.
pub fn realize_binfinity(ctx: &CrystalContext, seq: SeqId, depth: usize) -> Result<CrystalGraph> {
    let root = ctx.binf_string(seq, Vec::new())?;
    let g = component_bfs(ctx, root, depth);
    let audit = audit_binfinity(&g);
    if audit.passed() {
        Ok(g)
    } else {
        Err(CrystalError::Audit(format!("{audit}: {:?}", audit.violations.first())))
    }
}

/// The highest-weight characterization of `B(∞)` on a finite piece.
pub fn audit_binfinity(g: &CrystalGraph) -> Report {
    let mut r = Report::default();
    let mut zero_weight = Vec::new();
    for (k, n) in g.nodes().iter().enumerate() {
        r.checked += 3;
        if !n.wt.in_neg_root_cone() {
            r.violations.push(Violation::new(k, None, Law::WeightInNegCone, "in -Q+", &n.wt));
        }
        if n.wt.is_zero() {
            zero_weight.push(k);
        } else if n.e.iter().all(|l| *l == Link::Zero) {
            r.violations.push(Violation::new(k, None, Law::Raisable, "some e_i nonzero", "all zero"));
        }
        for (i, l) in n.e.iter().enumerate() {
            if *l == Link::Outside {
                r.violations.push(Violation::new(k, Some(i), Law::ClosedUnderRaise, "node of the graph", "outside"));
            }
        }
    }
    r.checked += 1;
    if zero_weight != [g.root()] {
        r.violations.push(Violation::new(
            g.root(),
            None,
            Law::UniqueHighestWeight,
            format!("only node {} has weight 0", g.root()),
            format!("{zero_weight:?}"),
        ));
    }
    r
}

/// The component of `0 ⊗ t_λ ⊗ c` in `B(∞) ⊗ T_λ ⊗ C`, explored to `depth`.
pub fn realize_blambda(ctx: &CrystalContext, seq: SeqId, lambda: &Weight, depth: usize) -> Result<CrystalGraph> {
    if !ctx.datum().is_dominant(lambda) {
        return Err(CrystalError::NotDominant(lambda.to_string()));
    }
    let root = ctx.tensor(vec![ctx.binf_string(seq, Vec::new())?, ctx.t_lambda(lambda.clone())?, ctx.c_unit()])?;
    Ok(component_bfs(ctx, root, depth))
}

/// `π_λ : x ⊗ t_λ ⊗ c ↦ x` from a `B(λ)` graph into a `B(∞)` graph, with a
/// report on its defining properties: injective, root to root, commutes with
/// `f̃_i` where `f̃_i b ≠ 0`, commutes with `ẽ_i` everywhere, shifts weights
/// by `−λ` and keeps `ε_i`.
pub fn project_pi_lambda(blambda: &CrystalGraph, binf: &CrystalGraph, lambda: &Weight) -> (MorphismWitness, Report) {
    let mut map = Vec::with_capacity(blambda.len());
    let mut r = Report::default();
    let mut images: Vec<Option<usize>> = Vec::with_capacity(blambda.len());
    for (k, n) in blambda.nodes().iter().enumerate() {
        let x = match n.elt.factors() {
            [x @ CrystalElement::BInf(_), CrystalElement::TLambda(_), CrystalElement::CUnit] => x.clone(),
            _ => {
                r.violations.push(Violation::new(k, None, Law::MorphismImage, "x ⊗ t ⊗ c", &n.elt));
                images.push(None);
                continue;
            }
        };
        let id = binf.id_of(&x);
        if id.is_none() {
            r.violations.push(Violation::new(k, None, Law::MorphismImage, "node of B(∞)", &x));
        }
        images.push(id);
        map.push((k, x));
    }

    let mut seen: HashMap<usize, usize> = HashMap::new();
    for (k, img) in images.iter().enumerate() {
        let Some(t) = *img else { continue };
        r.checked += 1;
        if let Some(prev) = seen.insert(t, k) {
            r.violations.push(Violation::new(k, None, Law::Injective, format!("distinct from image of {prev}"), t));
        }
    }
    r.checked += 1;
    if images.get(blambda.root()).copied().flatten() != Some(binf.root()) {
        r.violations.push(Violation::new(blambda.root(), None, Law::RootImage, binf.root(), format!("{:?}", images.get(blambda.root()))));
    }

    let d = blambda.datum();
    for (k, b) in blambda.nodes().iter().enumerate() {
        let Some(t) = images[k] else { continue };
        let y = binf.node(t);
        r.checked += 1;
        let want = &b.wt - lambda;
        if y.wt != want {
            r.violations.push(Violation::new(k, None, Law::MorphismWeight, &want, &y.wt));
        }
        for i in 0..d.rank() {
            r.checked += 1;
            if y.eps[i] != b.eps[i] {
                r.violations.push(Violation::new(k, Some(i), Law::MorphismEps, b.eps[i], y.eps[i]));
            }
            if let Link::Node(b2) = b.f[i] {
                match (images[b2], y.f[i]) {
                    (_, Link::Cut) => r.skipped += 1,
                    (Some(t2), got) => {
                        r.checked += 1;
                        if got != Link::Node(t2) {
                            r.violations.push(Violation::new(k, Some(i), Law::MorphismLower, t2, format!("{got:?}")));
                        }
                    }
                    (None, _) => r.skipped += 1,
                }
            }
            let want_e = match b.e[i] {
                Link::Zero => Some(Link::Zero),
                Link::Node(b2) => images[b2].map(Link::Node),
                Link::Cut | Link::Outside => None,
            };
            match want_e {
                Some(want) => {
                    r.checked += 1;
                    if y.e[i] != want {
                        let law = if want == Link::Zero { Law::StrictRaise } else { Law::MorphismRaise };
                        r.violations.push(Violation::new(k, Some(i), law, format!("{want:?}"), format!("{:?}", y.e[i])));
                    }
                }
                None => r.skipped += 1,
            }
        }
    }
    let witness = MorphismWitness { map, strict: false, embedding: true, wt_shift: Some(-lambda) };
    (witness, r)
}
