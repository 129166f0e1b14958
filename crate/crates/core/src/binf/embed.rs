use super::{canonical_form, component_bfs, realize_blambda, SeqId};
use crate::cartan::Weight;
use crate::crystal::{check_morphism, CrystalContext, CrystalElement, CrystalGraph, MorphismWitness};
use crate::error::{CrystalError, Result};
use crate::report::{Law, Report, Violation};

/// A map built by path transport, the target component it lands in, and
/// the combined report of well-definedness and morphism checks.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub witness: MorphismWitness,
    pub target: CrystalGraph,
    pub report: Report,
}

fn fmt_path(p: &Option<Vec<usize>>) -> String {
    match p {
        Some(p) => format!("f{p:?}"),
        None => "unreachable".into(),
    }
}

/// Sends the root to `image_root` and `f̃_j b` to `f̃_j ψ(b)`, re-deriving
/// the image along every incoming edge and reporting disagreements.
fn transport(ctx: &CrystalContext, src: &CrystalGraph, image_root: CrystalElement) -> (Vec<Option<CrystalElement>>, Report) {
    let mut img: Vec<Option<CrystalElement>> = vec![None; src.len()];
    let mut r = Report::default();
    let paths = canonical_form(src);
    img[src.root()] = Some(image_root);
    let mut order: Vec<usize> = (0..src.len()).filter(|k| paths[*k].is_some()).collect();
    order.sort_by(|a, b| {
        let (pa, pb) = (paths[*a].as_ref().unwrap(), paths[*b].as_ref().unwrap());
        (pa.len(), pa).cmp(&(pb.len(), pb))
    });
    for k in order {
        let Some(y) = img[k].clone() else { continue };
        for (j, l) in src.node(k).f.iter().enumerate() {
            let Some(to) = l.node() else { continue };
            r.checked += 1;
            let z = ctx.f(j, &y);
            let Some(z) = z else {
                r.violations.push(Violation::new(to, Some(j), Law::MorphismLower, "nonzero image", format!("f{j} of image of {} is 0", fmt_path(&paths[k]))));
                continue;
            };
            match &img[to] {
                None => img[to] = Some(z),
                Some(prev) if *prev == z => {}
                Some(prev) => {
                    let mut alt = paths[k].clone().unwrap_or_default();
                    alt.push(j);
                    r.violations.push(Violation::new(
                        to,
                        Some(j),
                        Law::PathIndependence,
                        format!("{prev} via {}", fmt_path(&paths[to])),
                        format!("{z} via f{alt:?}"),
                    ));
                }
            }
        }
    }
    (img, r)
}

fn finish(src: &CrystalGraph, target: CrystalGraph, img: Vec<Option<CrystalElement>>, mut report: Report) -> Result<Embedding> {
    let map: Vec<(usize, CrystalElement)> = img.into_iter().enumerate().filter_map(|(k, e)| e.map(|e| (k, e))).collect();
    let witness = MorphismWitness { map, strict: true, embedding: true, wt_shift: None };
    report.merge(check_morphism(&witness, src, &target)?);
    Ok(Embedding { witness, target, report })
}

/// `Ψ_i : B(∞) → B(∞) ⊗ B_i`, the strict embedding with
/// `Ψ_i(1) = 1 ⊗ b_i(0)`, built on a finite piece of `B(∞)`.
///
/// Besides the morphism laws, every image must have the form `x ⊗ b_i(−n)`
/// with `x` a node of the source graph.
pub fn embedding_psi(ctx: &CrystalContext, binf: &CrystalGraph, i: usize) -> Result<Embedding> {
    let root = &binf.node(binf.root());
    if !root.wt.is_zero() {
        return Err(CrystalError::Params("the source graph must be rooted at weight 0".into()));
    }
    let depth = binf.depth_bound().ok_or_else(|| CrystalError::Params("the source graph must come from a search".into()))?;
    let image_root = ctx.tensor(vec![root.elt.clone(), ctx.elementary(i, 0)?])?;
    let target = component_bfs(ctx, image_root.clone(), depth);
    let (img, mut report) = transport(ctx, binf, image_root);
    for (k, y) in img.iter().enumerate() {
        let Some(y) = y else { continue };
        report.checked += 1;
        let ok = match y.factors() {
            [x, CrystalElement::Elementary { i: j, .. }] => *j == i && binf.id_of(x).is_some(),
            _ => false,
        };
        if !ok {
            report.violations.push(Violation::new(k, Some(i), Law::MorphismImage, "x ⊗ b_i(-n) with x in the source", y));
        }
    }
    finish(binf, target, img, report)
}

/// `Φ_{λ,μ} : B(λ+μ) → B(λ) ⊗ B(μ)` with `u_{λ+μ} ↦ u_λ ⊗ u_μ`, built on
/// truncations explored to `depth`.
pub fn embedding_phi_lambda_mu(ctx: &CrystalContext, seq: SeqId, lambda: &Weight, mu: &Weight, depth: usize) -> Result<Embedding> {
    for w in [lambda, mu] {
        if !ctx.datum().is_dominant(w) {
            return Err(CrystalError::NotDominant(w.to_string()));
        }
    }
    let src = realize_blambda(ctx, seq, &(lambda + mu), depth)?;
    let zero = || ctx.binf_string(seq, Vec::new());
    let image_root = ctx.tensor(vec![
        zero()?,
        ctx.t_lambda(lambda.clone())?,
        ctx.c_unit(),
        zero()?,
        ctx.t_lambda(mu.clone())?,
        ctx.c_unit(),
    ])?;
    let target = component_bfs(ctx, image_root.clone(), depth);
    let (img, report) = transport(ctx, &src, image_root);
    finish(&src, target, img, report)
}
