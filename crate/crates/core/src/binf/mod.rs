//! The string crystal `B(𝐢)`, breadth-first component search, and the
//! realizations of `B(∞)` and `B(λ)` built on it.

mod bfs;
mod canon;
mod embed;
mod realize;
mod sequence;
mod string;

pub use bfs::component_bfs;
pub use canon::{canonical_form, graphs_isomorphic};
pub use embed::{embedding_phi_lambda_mu, embedding_psi, Embedding};
pub use realize::{audit_binfinity, project_pi_lambda, realize_binfinity, realize_blambda};
pub use sequence::{IndexSequence, SequenceSpec};
pub use string::{binf_e, binf_eps, binf_f, binf_phi, binf_wt, binf_wt_i, BInfString, SeqId};

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::cartan::{BorcherdsCartanDatum, ExtInt, Weight};
    use crate::crystal::{check_axioms, check_morphism, CrystalContext, CrystalElement};
    use crate::testutil::*;

    fn s(ctx: &CrystalContext, x: &[u32]) -> CrystalElement {
        ctx.binf_string(SEQ, x.to_vec()).unwrap()
    }

    #[test]
    fn zero_string_statistics() {
        let ctx = ctx_d1();
        let z = s(&ctx, &[]);
        assert_eq!(ctx.eps(0, &z), ExtInt::ZERO);
        assert_eq!(ctx.phi(0, &z), ExtInt::ZERO);
        assert_eq!(ctx.eps(1, &z), ExtInt::ZERO);
        assert_eq!(ctx.phi(1, &z), ExtInt::ZERO);
        assert_eq!(ctx.e(0, &z), None);
        assert_eq!(ctx.e(1, &z), None);
    }

    #[test]
    fn lowering_examples() {
        let ctx = ctx_d1();
        assert_eq!(ctx.f(1, &s(&ctx, &[1])), Some(s(&ctx, &[1, 1])));
        assert_eq!(ctx.f(0, &s(&ctx, &[1])), Some(s(&ctx, &[2])));
        assert_eq!(ctx.f(0, &s(&ctx, &[])), Some(s(&ctx, &[1])));
        assert_eq!(ctx.f(1, &s(&ctx, &[])), Some(s(&ctx, &[0, 1])));
    }

    #[test]
    fn raising_examples() {
        let ctx = ctx_d1();
        assert_eq!(ctx.e(0, &s(&ctx, &[1])), Some(s(&ctx, &[])));
        assert_eq!(ctx.e(1, &s(&ctx, &[1, 1])), Some(s(&ctx, &[1])));
        assert_eq!(ctx.e(0, &s(&ctx, &[0])), None);
        assert_eq!(ctx.e(1, &s(&ctx, &[0])), None);
    }

    #[test]
    fn raise_onto_an_empty_slot_is_zero() {
        // rank 1: the largest maximizer of ε sits at an empty position
        let ctx = ctx_d2();
        let b = s(&ctx, &[0, 0, 1]);
        assert_eq!(ctx.eps(0, &b), ExtInt::Fin(2));
        assert_eq!(ctx.e(0, &b), None);
    }

    #[test]
    fn phi_eps_weight_relation() {
        let ctx = ctx_monster(&[2, 1]);
        for x in [vec![], vec![1], vec![0, 2, 1], vec![1, 0, 0, 3, 1, 0, 2]] {
            let b = s(&ctx, &x);
            let w = ctx.wt(&b);
            for i in 0..ctx.rank() {
                assert_eq!(ctx.phi(i, &b), ctx.eps(i, &b) + ctx.datum().pairing(i, &w), "{x:?} i={i}");
            }
        }
    }

    /// The string as the finite tensor `b_{i_P}(−x_P) ⊗ ⋯ ⊗ b_{i_1}(−x_1)`,
    /// padded far enough past the support for every operator to stabilize.
    fn as_tensor(ctx: &CrystalContext, x: &[u32], len: usize) -> CrystalElement {
        let seq = ctx.sequence(SEQ);
        let factors = (1..=len).rev().map(|k| ctx.elementary(seq.index_at(k), x.get(k - 1).copied().unwrap_or(0)).unwrap()).collect();
        ctx.tensor(factors).unwrap()
    }

    fn from_tensor(t: &CrystalElement) -> Vec<u32> {
        let mut x: Vec<u32> = t
            .factors()
            .iter()
            .rev()
            .map(|f| match f {
                CrystalElement::Elementary { n, .. } => *n,
                _ => unreachable!(),
            })
            .collect();
        while x.last() == Some(&0) {
            x.pop();
        }
        x
    }

    fn agree_with_tensor(ctx: &CrystalContext, x: &[u32]) {
        let seq = ctx.sequence(SEQ);
        let len = seq.reach(seq.reach(x.len()));
        let b = s(ctx, x);
        let t = as_tensor(ctx, x, len);
        for i in 0..ctx.rank() {
            assert_eq!(ctx.eps(i, &b), ctx.eps(i, &t), "eps {x:?} i={i}");
            assert_eq!(ctx.phi(i, &b), ctx.phi(i, &t), "phi {x:?} i={i}");
            let fb = ctx.f(i, &b).map(|y| y.as_binf().unwrap().x().to_vec());
            let ft = ctx.f(i, &t).map(|y| from_tensor(&y));
            assert_eq!(fb, ft, "f {x:?} i={i}");
            let eb = ctx.e(i, &b).map(|y| y.as_binf().unwrap().x().to_vec());
            let et = ctx.e(i, &t).map(|y| from_tensor(&y));
            assert_eq!(eb, et, "e {x:?} i={i}");
        }
    }

    proptest! {
        #[test]
        fn operators_match_tensor_rule_d1(x in prop::collection::vec(0u32..4, 0..7)) {
            agree_with_tensor(&ctx_d1(), &x);
        }

        #[test]
        fn operators_match_tensor_rule_rank2(x in prop::collection::vec(0u32..4, 0..7), (a, b, c) in (1i64..3, 1i64..3, 0i64..3)) {
            agree_with_tensor(&ctx_rank2(a, b, 2 * c), &x);
        }

        #[test]
        fn operators_match_tensor_rule_monster(x in prop::collection::vec(0u32..3, 0..9)) {
            agree_with_tensor(&ctx_monster(&[2, 1]), &x);
        }

        #[test]
        fn operators_match_tensor_rule_negative_diagonal(x in prop::collection::vec(0u32..3, 0..7)) {
            let d = BorcherdsCartanDatum::with_numeric_names(vec![vec![2, -1], vec![-1, -2]], vec![1, 1]).unwrap();
            agree_with_tensor(&ctx_for(d), &x);
        }
    }

    #[test]
    fn bfs_rank_one_chain() {
        let ctx = ctx_d2();
        let g = component_bfs(&ctx, s(&ctx, &[]), 3);
        assert_eq!(g.len(), 4);
        assert_eq!(g.frontier().collect::<Vec<_>>(), vec![3]);
        let g0 = component_bfs(&ctx, s(&ctx, &[]), 0);
        assert_eq!(g0.len(), 1);
        assert!(g0.node(0).frontier);
    }

    #[test]
    fn binfinity_small_cases() {
        let ctx = ctx_d2();
        let g = realize_binfinity(&ctx, SEQ, 5).unwrap();
        let ch = g.character();
        assert_eq!(ch.len(), 6);
        assert!(ch.iter().enumerate().all(|(k, (w, m))| *m == 1 && w.rt == vec![-(k as i64)]));

        let ctx = ctx_d1();
        let g = realize_binfinity(&ctx, SEQ, 1).unwrap();
        assert_eq!(g.len(), 3);
        assert!(g.id_of(&s(&ctx, &[1])).is_some());
        assert!(g.id_of(&s(&ctx, &[0, 1])).is_some());
        assert!(check_axioms(&g).unwrap().passed());
    }

    #[test]
    fn binfinity_graph_is_deterministic() {
        let ctx = ctx_monster(&[2, 1]);
        let a = realize_binfinity(&ctx, SEQ, 4).unwrap();
        let b = realize_binfinity(&ctx, SEQ, 4).unwrap();
        let ea: Vec<_> = a.nodes().iter().map(|n| n.elt.clone()).collect();
        let eb: Vec<_> = b.nodes().iter().map(|n| n.elt.clone()).collect();
        assert_eq!(ea, eb);
    }

    #[test]
    fn blambda_small_cases() {
        let ctx = ctx_d2();
        let g = realize_blambda(&ctx, SEQ, &Weight::from_lambda(vec![2]), 4).unwrap();
        assert_eq!(g.len(), 3);
        let ctx = ctx_d1();
        assert_eq!(realize_blambda(&ctx, SEQ, &Weight::zero(2), 4).unwrap().len(), 1);
        assert!(realize_blambda(&ctx, SEQ, &Weight::from_lambda(vec![-1, 0]), 4).is_err());
        let ctx = ctx_for(BorcherdsCartanDatum::with_numeric_names(vec![vec![0]], vec![1]).unwrap());
        assert_eq!(realize_blambda(&ctx, SEQ, &Weight::zero(1), 4).unwrap().len(), 1);
        let chain = realize_blambda(&ctx, SEQ, &Weight::from_lambda(vec![1]), 4).unwrap();
        assert_eq!(chain.len(), 5);
    }

    #[test]
    fn projection_on_rank_one() {
        let ctx = ctx_d2();
        let lam = Weight::from_lambda(vec![2]);
        let bl = realize_blambda(&ctx, SEQ, &lam, 4).unwrap();
        let bi = realize_binfinity(&ctx, SEQ, 4).unwrap();
        let (w, r) = project_pi_lambda(&bl, &bi, &lam);
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(w.image_of(bl.root()), Some(&s(&ctx, &[])));
        let images: Vec<_> = w.map.iter().map(|(_, x)| x.clone()).collect();
        assert_eq!(images, vec![s(&ctx, &[]), s(&ctx, &[1]), s(&ctx, &[2])]);
        assert!(check_morphism(&w, &bl, &bi).unwrap().passed());
    }

    #[test]
    fn projection_on_d1() {
        let ctx = ctx_d1();
        let bi = realize_binfinity(&ctx, SEQ, 4).unwrap();
        for lam in [vec![1, 0], vec![0, 1], vec![2, 1]] {
            let lam = Weight::from_lambda(lam);
            let bl = realize_blambda(&ctx, SEQ, &lam, 4).unwrap();
            let (_, r) = project_pi_lambda(&bl, &bi, &lam);
            assert!(r.passed(), "{lam}: {:?}", r.violations);
        }
    }

    #[test]
    fn psi_on_rank_one_acts_on_the_right() {
        let ctx = ctx_d2();
        let g = realize_binfinity(&ctx, SEQ, 4).unwrap();
        let emb = embedding_psi(&ctx, &g, 0).unwrap();
        assert!(emb.report.passed(), "{:?}", emb.report.violations);
        let zero = s(&ctx, &[]);
        for (k, y) in &emb.witness.map {
            let n = g.node(*k).wt.depth() as u32;
            assert_eq!(*y, ctx.tensor(vec![zero.clone(), ctx.elementary(0, n).unwrap()]).unwrap());
        }
    }

    #[test]
    fn psi_on_d1() {
        let ctx = ctx_d1();
        let g = realize_binfinity(&ctx, SEQ, 4).unwrap();
        for i in 0..2 {
            let emb = embedding_psi(&ctx, &g, i).unwrap();
            assert!(emb.report.passed(), "i={i}: {:?}", emb.report.violations);
        }
        let emb = embedding_psi(&ctx, &g, 1).unwrap();
        let f2 = g.id_of(&s(&ctx, &[0, 1])).unwrap();
        let want = ctx.tensor(vec![s(&ctx, &[]), ctx.elementary(1, 1).unwrap()]).unwrap();
        assert_eq!(emb.witness.image_of(f2), Some(&want));
    }

    #[test]
    fn phi_lambda_mu_rank_one() {
        let ctx = ctx_d2();
        let l = Weight::from_lambda(vec![1]);
        let emb = embedding_phi_lambda_mu(&ctx, SEQ, &l, &l, 4).unwrap();
        assert!(emb.report.passed(), "{:?}", emb.report.violations);
        assert_eq!(emb.witness.map.len(), 3);
        assert_eq!(emb.target.len(), 3);
        let zero = Weight::zero(1);
        let emb0 = embedding_phi_lambda_mu(&ctx, SEQ, &zero, &l, 4).unwrap();
        assert!(emb0.report.passed());
    }

    #[test]
    fn isomorphism_by_canonical_labels() {
        let ctx = ctx_d2();
        let a = realize_binfinity(&ctx, SEQ, 3).unwrap();
        assert!(graphs_isomorphic(&a, &a));
        let b = realize_binfinity(&ctx, SEQ, 4).unwrap();
        assert!(!graphs_isomorphic(&a, &b));
        let bl = realize_blambda(&ctx, SEQ, &Weight::from_lambda(vec![2]), 5).unwrap();
        let hand = crate::crystal::elementary(&ctx, 0, 2).unwrap();
        assert!(graphs_isomorphic(&bl, &hand));
        let labels = canonical_form(&bl);
        assert_eq!(labels[2], Some(vec![0, 0]));
    }
}
