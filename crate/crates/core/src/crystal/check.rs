//! Checkers for the crystal axioms, the optional imaginary-index profile,
//! and morphism laws. All of them read cached values only.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{CrystalElement, CrystalGraph, GraphNode, Link};
use crate::cartan::{BorcherdsCartanDatum, ExtInt, Weight};
use crate::error::{CrystalError, Result};
use crate::report::{Law, Report, Violation};

fn check_links(g: &CrystalGraph) -> Result<()> {
    let n = g.len();
    if g.root() >= n {
        return Err(CrystalError::MalformedGraph(format!("root {} out of range", g.root())));
    }
    for (k, node) in g.nodes().iter().enumerate() {
        for l in node.e.iter().chain(&node.f) {
            if let Link::Node(to) = l {
                if *to >= n {
                    return Err(CrystalError::MalformedGraph(format!("node {k} links to missing node {to}")));
                }
            }
        }
    }
    Ok(())
}

/// Expected `(ε, φ)` after one application of `ẽ_i` (`raise`) or `f̃_i`.
fn shifted_stats(d: &BorcherdsCartanDatum, i: usize, node: &GraphNode, raise: bool) -> (ExtInt, ExtInt) {
    let (eps, phi) = (node.eps[i], node.phi[i]);
    let sign = if raise { 1 } else { -1 };
    if d.is_real(i) {
        (eps - sign, phi + sign)
    } else {
        (eps, phi + sign * d.a(i, i))
    }
}

fn axioms_at(g: &CrystalGraph, k: usize) -> Report {
    let d = g.datum();
    let nodes = g.nodes();
    let b = &nodes[k];
    let mut r = Report::default();
    let mut fail = |i: usize, law: Law, exp: String, found: String| {
        r.violations.push(Violation { node: k, index: Some(i), law, expected: exp, found });
    };
    let mut checked = 0;
    let mut skipped = 0;
    for i in 0..d.rank() {
        let wt_i = d.pairing(i, &b.wt);
        checked += 1;
        if b.phi[i] != b.eps[i] + wt_i {
            fail(i, Law::AxiomPhiEpsWt, (b.eps[i] + wt_i).to_string(), b.phi[i].to_string());
        }
        if b.phi[i].is_neg_inf() {
            checked += 1;
            if b.e[i] != Link::Zero {
                fail(i, Law::AxiomNegInf, "e=0".into(), format!("{:?}", b.e[i]));
            }
            match b.f[i] {
                Link::Zero => {}
                Link::Cut => skipped += 1,
                other => fail(i, Law::AxiomNegInf, "f=0".into(), format!("{other:?}")),
            }
        }
        let alpha = Weight::simple_root(d.rank(), i);
        match b.e[i] {
            Link::Node(up) => {
                checked += 3;
                let u = &nodes[up];
                let want = &b.wt + &alpha;
                if u.wt != want {
                    fail(i, Law::AxiomRaiseWeight, want.to_string(), u.wt.to_string());
                }
                let (eps, phi) = shifted_stats(d, i, b, true);
                if (u.eps[i], u.phi[i]) != (eps, phi) {
                    fail(i, Law::AxiomRaiseStats, format!("({eps},{phi})"), format!("({},{})", u.eps[i], u.phi[i]));
                }
                match u.f[i] {
                    Link::Cut => skipped += 1,
                    Link::Node(back) if back == k => {}
                    other => fail(i, Law::AxiomDuality, format!("f of {up} = {k}"), format!("{other:?}")),
                }
            }
            Link::Outside => skipped += 1,
            Link::Zero | Link::Cut => {}
        }
        match b.f[i] {
            Link::Node(down) => {
                checked += 3;
                let v = &nodes[down];
                let want = &b.wt - &alpha;
                if v.wt != want {
                    fail(i, Law::AxiomLowerWeight, want.to_string(), v.wt.to_string());
                }
                let (eps, phi) = shifted_stats(d, i, b, false);
                if (v.eps[i], v.phi[i]) != (eps, phi) {
                    fail(i, Law::AxiomLowerStats, format!("({eps},{phi})"), format!("({},{})", v.eps[i], v.phi[i]));
                }
                if v.e[i] != Link::Node(k) {
                    fail(i, Law::AxiomDuality, format!("e of {down} = {k}"), format!("{:?}", v.e[i]));
                }
            }
            Link::Cut | Link::Outside => skipped += 1,
            Link::Zero => {}
        }
    }
    r.checked = checked;
    r.skipped = skipped;
    r
}

/// Verifies the crystal axioms (i)–(vii) on every node. Relations through
/// a cut successor are skipped and counted, never assumed.
pub fn check_axioms(g: &CrystalGraph) -> Result<Report> {
    check_links(g)?;
    let parts: Vec<Report> = (0..g.len()).into_par_iter().map(|k| axioms_at(g, k)).collect();
    let mut total = Report::default();
    for p in parts {
        total.merge(p);
    }
    Ok(total)
}

/// The optional profile for imaginary `i`: `wt_i ≥ 0`,
/// `ε_i ∈ ℤ_{≤0} ⊔ {−∞}`, `φ_i ∈ ℤ_{≥0} ⊔ {−∞}`.
pub fn check_category_profile(g: &CrystalGraph) -> Report {
    let d = g.datum();
    let mut r = Report::default();
    for (k, b) in g.nodes().iter().enumerate() {
        for i in d.imaginary_indices() {
            r.checked += 3;
            let wt_i = d.pairing(i, &b.wt);
            if wt_i < 0 {
                r.violations.push(Violation::new(k, Some(i), Law::ProfileWeight, ">= 0", wt_i));
            }
            if matches!(b.eps[i], ExtInt::Fin(v) if v > 0) {
                r.violations.push(Violation::new(k, Some(i), Law::ProfileEps, "<= 0 or -inf", b.eps[i]));
            }
            if matches!(b.phi[i], ExtInt::Fin(v) if v < 0) {
                r.violations.push(Violation::new(k, Some(i), Law::ProfilePhi, ">= 0 or -inf", b.phi[i]));
            }
        }
    }
    r
}

/// A finite map `b ↦ ψ(b)` from source node ids to elements of the target.
///
/// With `wt_shift = Some(μ)` the map is checked as a morphism into
/// `target ⊗ T_{−μ}`: weights move by `μ`, `φ_i` by `⟨h_i, μ⟩`, `ε_i` is kept.
#[derive(Clone, Debug, Default)]
pub struct MorphismWitness {
    pub map: Vec<(usize, CrystalElement)>,
    pub strict: bool,
    pub embedding: bool,
    pub wt_shift: Option<Weight>,
}

impl MorphismWitness {
    pub fn identity(g: &CrystalGraph) -> Self {
        MorphismWitness {
            map: g.nodes().iter().enumerate().map(|(k, n)| (k, n.elt.clone())).collect(),
            strict: true,
            embedding: true,
            wt_shift: None,
        }
    }

    pub fn image_of(&self, node: usize) -> Option<&CrystalElement> {
        self.map.iter().find(|(k, _)| *k == node).map(|(_, e)| e)
    }
}

/// Checks `ψ` against the morphism laws, plus strictness and injectivity
/// when flagged. A witness that misses a non-frontier source node is a
/// coverage error rather than a law violation.
pub fn check_morphism(w: &MorphismWitness, src: &CrystalGraph, dst: &CrystalGraph) -> Result<Report> {
    check_links(src)?;
    check_links(dst)?;
    let d = src.datum();
    let mut image: HashMap<usize, Option<usize>> = HashMap::with_capacity(w.map.len());
    let mut r = Report::default();
    for (k, elt) in &w.map {
        let target = dst.id_of(elt);
        if target.is_none() {
            r.violations.push(Violation::new(*k, None, Law::MorphismImage, "node of target", elt));
        }
        image.insert(*k, target);
    }
    let missing: Vec<usize> =
        (0..src.len()).filter(|k| !src.node(*k).frontier && !image.contains_key(k)).collect();
    if !missing.is_empty() {
        return Err(CrystalError::Coverage(missing));
    }
    let zero = Weight::zero(d.rank());
    let shift = w.wt_shift.as_ref().unwrap_or(&zero);

    let mut ids: Vec<&usize> = image.keys().collect();
    ids.sort();
    for &k in ids {
        let Some(t) = image[&k] else { continue };
        let (b, y) = (src.node(k), dst.node(t));
        r.checked += 1;
        let want = &b.wt + shift;
        if y.wt != want {
            r.violations.push(Violation::new(k, None, Law::MorphismWeight, &want, &y.wt));
        }
        for i in 0..d.rank() {
            r.checked += 2;
            if y.eps[i] != b.eps[i] {
                r.violations.push(Violation::new(k, Some(i), Law::MorphismEps, b.eps[i], y.eps[i]));
            }
            let want_phi = b.phi[i] + d.pairing(i, shift);
            if y.phi[i] != want_phi {
                r.violations.push(Violation::new(k, Some(i), Law::MorphismPhi, want_phi, y.phi[i]));
            }
            let lower_law = |strict_case: bool| if strict_case { Law::StrictLower } else { Law::MorphismLower };
            let raise_law = |strict_case: bool| if strict_case { Law::StrictRaise } else { Law::MorphismRaise };
            // f̃
            let expected_f = match b.f[i] {
                Link::Node(b2) => match image.get(&b2) {
                    Some(Some(t2)) => Some((Link::Node(*t2), false)),
                    Some(None) => None,
                    None => None,
                },
                Link::Zero if w.strict => Some((Link::Zero, true)),
                _ => None,
            };
            match expected_f {
                None => {
                    if matches!(b.f[i], Link::Cut | Link::Node(_)) {
                        r.skipped += 1;
                    }
                }
                Some((want, strict_case)) => {
                    r.checked += 1;
                    if y.f[i] == Link::Cut {
                        r.skipped += 1;
                    } else if y.f[i] != want {
                        r.violations.push(Violation::new(k, Some(i), lower_law(strict_case), format!("{want:?}"), format!("{:?}", y.f[i])));
                    }
                }
            }
            // ẽ
            let expected_e = match b.e[i] {
                Link::Node(b2) => image.get(&b2).copied().flatten().map(|t2| (Link::Node(t2), false)),
                Link::Zero if w.strict => Some((Link::Zero, true)),
                _ => None,
            };
            match expected_e {
                None => {
                    if !matches!(b.e[i], Link::Zero) {
                        r.skipped += 1;
                    }
                }
                Some((want, strict_case)) => {
                    r.checked += 1;
                    if y.e[i] != want {
                        r.violations.push(Violation::new(k, Some(i), raise_law(strict_case), format!("{want:?}"), format!("{:?}", y.e[i])));
                    }
                }
            }
        }
    }
    if w.embedding {
        let mut seen: HashMap<&CrystalElement, usize> = HashMap::new();
        for (k, elt) in &w.map {
            r.checked += 1;
            if let Some(prev) = seen.insert(elt, *k) {
                r.violations.push(Violation::new(*k, None, Law::Injective, format!("distinct from image of {prev}"), elt));
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::{c_unit, elementary, t_lambda, tensor_of, CrystalContext};
    use crate::testutil::*;

    #[test]
    fn truncated_elementary_passes() {
        let ctx = ctx_d1();
        let g = elementary(&ctx, 0, 4).unwrap();
        let r = check_axioms(&g).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        // only b1(-4) is cut
        assert_eq!(g.frontier().collect::<Vec<_>>(), vec![4]);
        assert!(r.skipped > 0);
    }

    #[test]
    fn t_lambda_passes_with_neg_inf() {
        let ctx = ctx_d1();
        let g = t_lambda(&ctx, Weight::from_lambda(vec![1, 2])).unwrap();
        let r = check_axioms(&g).unwrap();
        assert!(r.passed());
        assert!(g.node(0).phi.iter().all(|p| p.is_neg_inf()));
    }

    #[test]
    fn corrupted_phi_fails_axiom_iii() {
        let ctx = ctx_d1();
        let mut g = elementary(&ctx, 0, 4).unwrap();
        g.corrupt_phi(2, 0, ExtInt::Fin(-1));
        let r = check_axioms(&g).unwrap();
        assert!(r.violations.iter().any(|v| v.node == 2 && v.law == Law::AxiomPhiEpsWt && v.index == Some(0)));
    }

    #[test]
    fn profile_examples() {
        let ctx = ctx_d1();
        assert!(check_category_profile(&t_lambda(&ctx, Weight::from_lambda(vec![2, 0])).unwrap()).passed());
        assert!(check_category_profile(&elementary(&ctx, 1, 5).unwrap()).passed());
        assert!(check_category_profile(&c_unit(&ctx)).passed());
        // a negative imaginary pairing breaks the profile
        let bad = t_lambda(&ctx, Weight::from_lambda(vec![0, -1])).unwrap();
        assert_eq!(check_category_profile(&bad).count_of(Law::ProfileWeight), 1);
    }

    #[test]
    fn identity_is_strict_embedding() {
        let ctx = ctx_d1();
        let b1 = elementary(&ctx, 0, 2).unwrap();
        let b2 = elementary(&ctx, 1, 2).unwrap();
        let g = tensor_of(&ctx, &[&b1, &b2]).unwrap();
        let r = check_morphism(&MorphismWitness::identity(&g), &g, &g).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn collapsing_map_fails_weight() {
        let ctx = ctx_d1();
        let g = elementary(&ctx, 0, 3).unwrap();
        let root = g.node(0).elt.clone();
        let w = MorphismWitness {
            map: (0..g.len()).map(|k| (k, root.clone())).collect(),
            ..Default::default()
        };
        let r = check_morphism(&w, &g, &g).unwrap();
        assert!(r.count_of(Law::MorphismWeight) > 0);
    }

    #[test]
    fn missing_node_is_coverage_error() {
        let ctx = ctx_d1();
        let g = elementary(&ctx, 0, 3).unwrap();
        let mut w = MorphismWitness::identity(&g);
        w.map.remove(1);
        assert!(matches!(check_morphism(&w, &g, &g), Err(CrystalError::Coverage(m)) if m == vec![1]));
    }

    #[test]
    fn malformed_links_are_structural() {
        let ctx: CrystalContext = ctx_d1();
        let mut g = elementary(&ctx, 0, 1).unwrap();
        // splice a dangling edge in through a clone of the node table
        let mut nodes = g.nodes().to_vec();
        nodes[0].f[0] = Link::Node(99);
        g = CrystalGraph::from_parts(ctx.datum_arc().clone(), 0, nodes, Default::default(), None);
        assert!(matches!(check_axioms(&g), Err(CrystalError::MalformedGraph(_))));
    }
}
