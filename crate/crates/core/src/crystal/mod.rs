//! The abstract-crystal interface and the small concrete crystals.
//!
//! Every element of every crystal this crate builds is a [`CrystalElement`].
//! The maps `wt`, `ε_i`, `φ_i`, `ẽ_i`, `f̃_i` are evaluated by a
//! [`CrystalContext`], which owns the datum and the index sequences used by
//! `B(𝐢)` strings. `None` plays the role of the formal element `0`.

mod check;
mod export;
mod graph;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::binf::{self, BInfString, IndexSequence, SeqId};
use crate::cartan::{BorcherdsCartanDatum, ExtInt, Weight};
use crate::error::{CrystalError, Result};
use crate::tensor;

pub use check::{check_axioms, check_category_profile, check_morphism, MorphismWitness};
pub use export::{to_dot, EdgeFile, GraphFile, NodeFile};
pub use graph::{CrystalGraph, GraphNode, Link};
pub(crate) use graph::{resolve, Evaluated};

/// A crystal element.
///
/// `Tensor` lists are flat, hold at least two factors, and are evaluated
/// left-associated. `BInf` strings carry no trailing zeros. Equality and
/// hashing are structural, which is exact because every variant is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CrystalElement {
    /// `b_i(−n)` in the elementary crystal `B_i`.
    Elementary { i: usize, n: u32 },
    /// The single element `t_λ` of `T_λ`.
    TLambda(Weight),
    /// The single element `c` of `C`.
    CUnit,
    BInf(BInfString),
    Tensor(Vec<CrystalElement>),
}

impl fmt::Display for CrystalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrystalElement::Elementary { i, n } => write!(f, "b{i}(-{n})"),
            CrystalElement::TLambda(w) => write!(f, "t{w}"),
            CrystalElement::CUnit => f.write_str("c"),
            CrystalElement::BInf(s) => write!(f, "{s}"),
            CrystalElement::Tensor(fs) => {
                for (k, x) in fs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" ⊗ ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

impl CrystalElement {
    pub fn factors(&self) -> &[CrystalElement] {
        match self {
            CrystalElement::Tensor(fs) => fs,
            other => std::slice::from_ref(other),
        }
    }

    pub fn as_binf(&self) -> Option<&BInfString> {
        match self {
            CrystalElement::BInf(s) => Some(s),
            _ => None,
        }
    }
}

/// Evaluates the crystal maps over one Borcherds-Cartan datum.
#[derive(Clone, Debug)]
pub struct CrystalContext {
    datum: Arc<BorcherdsCartanDatum>,
    sequences: Vec<Arc<IndexSequence>>,
}

impl CrystalContext {
    pub fn new(datum: BorcherdsCartanDatum) -> Self {
        CrystalContext { datum: Arc::new(datum), sequences: Vec::new() }
    }

    pub fn from_arc(datum: Arc<BorcherdsCartanDatum>) -> Self {
        CrystalContext { datum, sequences: Vec::new() }
    }

    /// Registers an index sequence, after checking it against the datum.
    pub fn add_sequence(&mut self, seq: IndexSequence) -> Result<SeqId> {
        seq.check_against(&self.datum)?;
        self.sequences.push(Arc::new(seq));
        Ok(SeqId(self.sequences.len() as u32 - 1))
    }

    pub fn datum(&self) -> &BorcherdsCartanDatum {
        &self.datum
    }

    pub fn datum_arc(&self) -> &Arc<BorcherdsCartanDatum> {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn sequence(&self, id: SeqId) -> &IndexSequence {
        &self.sequences[id.0 as usize]
    }

    // --- constructors -------------------------------------------------

    pub fn elementary(&self, i: usize, n: u32) -> Result<CrystalElement> {
        self.check_index(i)?;
        Ok(CrystalElement::Elementary { i, n })
    }

    pub fn t_lambda(&self, lambda: Weight) -> Result<CrystalElement> {
        if lambda.rank() != self.rank() || lambda.rt.len() != self.rank() {
            return Err(CrystalError::ForeignElement(format!("weight {lambda} has the wrong rank")));
        }
        Ok(CrystalElement::TLambda(lambda))
    }

    pub fn c_unit(&self) -> CrystalElement {
        CrystalElement::CUnit
    }

    pub fn binf_string(&self, seq: SeqId, x: Vec<u32>) -> Result<CrystalElement> {
        if seq.0 as usize >= self.sequences.len() {
            return Err(CrystalError::ForeignElement(format!("unknown sequence id {}", seq.0)));
        }
        Ok(CrystalElement::BInf(BInfString::new(seq, x)))
    }

    /// Flattens nested tensors; a single factor is returned as itself.
    pub fn tensor(&self, factors: Vec<CrystalElement>) -> Result<CrystalElement> {
        let mut flat = Vec::with_capacity(factors.len());
        for f in factors {
            self.validate(&f)?;
            match f {
                CrystalElement::Tensor(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Err(CrystalError::EmptyTensor),
            1 => Ok(flat.pop().unwrap()),
            _ => Ok(CrystalElement::Tensor(flat)),
        }
    }

    /// Checks that an element is well formed for this context.
    pub fn validate(&self, b: &CrystalElement) -> Result<()> {
        match b {
            CrystalElement::Elementary { i, .. } => self.check_index(*i),
            CrystalElement::TLambda(w) => {
                if w.lam.len() == self.rank() && w.rt.len() == self.rank() {
                    Ok(())
                } else {
                    Err(CrystalError::ForeignElement(format!("weight {w} has the wrong rank")))
                }
            }
            CrystalElement::CUnit => Ok(()),
            CrystalElement::BInf(s) => {
                if (s.seq().0 as usize) < self.sequences.len() && s.is_canonical() {
                    Ok(())
                } else {
                    Err(CrystalError::ForeignElement(format!("{s}")))
                }
            }
            CrystalElement::Tensor(fs) => {
                if fs.len() < 2 || fs.iter().any(|f| matches!(f, CrystalElement::Tensor(_))) {
                    return Err(CrystalError::ForeignElement("tensor is not flat".into()));
                }
                fs.iter().try_for_each(|f| self.validate(f))
            }
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(CrystalError::UnknownIndex(i, self.rank()))
        }
    }

    // --- crystal maps -------------------------------------------------

    pub fn wt(&self, b: &CrystalElement) -> Weight {
        let n = self.rank();
        match b {
            CrystalElement::Elementary { i, n: k } => {
                let mut w = Weight::zero(n);
                w.rt[*i] = -(*k as i64);
                w
            }
            CrystalElement::TLambda(w) => w.clone(),
            CrystalElement::CUnit => Weight::zero(n),
            CrystalElement::BInf(s) => binf::binf_wt(self.sequence(s.seq()), n, s.x()),
            CrystalElement::Tensor(fs) => fs.iter().fold(Weight::zero(n), |acc, f| &acc + &self.wt(f)),
        }
    }

    /// `wt_i(b) = ⟨h_i, wt b⟩`, without materializing the weight.
    pub fn wt_i(&self, i: usize, b: &CrystalElement) -> i64 {
        match b {
            CrystalElement::Elementary { i: j, n } => -(*n as i64) * self.datum.a(i, *j),
            CrystalElement::TLambda(w) => self.datum.pairing(i, w),
            CrystalElement::CUnit => 0,
            CrystalElement::BInf(s) => binf::binf_wt_i(&self.datum, self.sequence(s.seq()), i, s.x()),
            CrystalElement::Tensor(fs) => fs.iter().map(|f| self.wt_i(i, f)).sum(),
        }
    }

    pub fn eps(&self, i: usize, b: &CrystalElement) -> ExtInt {
        match b {
            CrystalElement::Elementary { i: j, n } => {
                if *j != i {
                    ExtInt::NegInf
                } else if self.datum.is_real(i) {
                    ExtInt::Fin(*n as i64)
                } else {
                    ExtInt::ZERO
                }
            }
            CrystalElement::TLambda(_) => ExtInt::NegInf,
            CrystalElement::CUnit => ExtInt::ZERO,
            CrystalElement::BInf(s) => binf::binf_eps(&self.datum, self.sequence(s.seq()), i, s.x()),
            CrystalElement::Tensor(fs) => tensor::tensor_eps(self, i, fs),
        }
    }

    pub fn phi(&self, i: usize, b: &CrystalElement) -> ExtInt {
        match b {
            CrystalElement::Elementary { i: j, n } => {
                if *j != i {
                    ExtInt::NegInf
                } else if self.datum.is_real(i) {
                    ExtInt::Fin(-(*n as i64))
                } else {
                    ExtInt::Fin(-(*n as i64) * self.datum.a(i, i))
                }
            }
            CrystalElement::TLambda(_) => ExtInt::NegInf,
            CrystalElement::CUnit => ExtInt::ZERO,
            CrystalElement::BInf(s) => binf::binf_phi(&self.datum, self.sequence(s.seq()), i, s.x()),
            CrystalElement::Tensor(fs) => tensor::tensor_phi(self, i, fs),
        }
    }

    /// `ẽ_i b`, or `None` for `0`.
    pub fn e(&self, i: usize, b: &CrystalElement) -> Option<CrystalElement> {
        match b {
            CrystalElement::Elementary { i: j, n } => {
                (*j == i && *n > 0).then(|| CrystalElement::Elementary { i, n: n - 1 })
            }
            CrystalElement::TLambda(_) | CrystalElement::CUnit => None,
            CrystalElement::BInf(s) => binf::binf_e(&self.datum, self.sequence(s.seq()), i, s.x())
                .map(|x| CrystalElement::BInf(BInfString::new(s.seq(), x))),
            CrystalElement::Tensor(fs) => tensor::tensor_e(self, i, fs).map(CrystalElement::Tensor),
        }
    }

    /// `f̃_i b`, or `None` for `0`.
    pub fn f(&self, i: usize, b: &CrystalElement) -> Option<CrystalElement> {
        match b {
            CrystalElement::Elementary { i: j, n } => (*j == i).then(|| CrystalElement::Elementary { i, n: n + 1 }),
            CrystalElement::TLambda(_) | CrystalElement::CUnit => None,
            CrystalElement::BInf(s) => {
                let x = binf::binf_f(&self.datum, self.sequence(s.seq()), i, s.x());
                Some(CrystalElement::BInf(BInfString::new(s.seq(), x)))
            }
            CrystalElement::Tensor(fs) => tensor::tensor_f(self, i, fs).map(CrystalElement::Tensor),
        }
    }
}

// --- the small crystals as finite graphs ---------------------------------

/// `T_λ = {t_λ}`.
pub fn t_lambda(ctx: &CrystalContext, lambda: Weight) -> Result<CrystalGraph> {
    let t = ctx.t_lambda(lambda)?;
    Ok(CrystalGraph::from_elements(ctx, vec![t]))
}

/// The elementary crystal `B_i` truncated to `{b_i(−n) : n ≤ max_n}`.
pub fn elementary(ctx: &CrystalContext, i: usize, max_n: u32) -> Result<CrystalGraph> {
    let elts = (0..=max_n).map(|n| ctx.elementary(i, n)).collect::<Result<Vec<_>>>()?;
    Ok(CrystalGraph::from_elements(ctx, elts))
}

/// `C = {c}`.
pub fn c_unit(ctx: &CrystalContext) -> CrystalGraph {
    CrystalGraph::from_elements(ctx, vec![ctx.c_unit()])
}

/// All tensors `b_1 ⊗ … ⊗ b_m` of nodes of the given finite crystals.
pub fn tensor_of(ctx: &CrystalContext, parts: &[&CrystalGraph]) -> Result<CrystalGraph> {
    let mut acc: Vec<Vec<CrystalElement>> = vec![Vec::new()];
    for g in parts {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                g.nodes().iter().map(move |n| {
                    let mut p = prefix.clone();
                    p.push(n.elt.clone());
                    p
                })
            })
            .collect();
    }
    let elts = acc.into_iter().map(|fs| ctx.tensor(fs)).collect::<Result<Vec<_>>>()?;
    Ok(CrystalGraph::from_elements(ctx, elts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::*;

    #[test]
    fn t_lambda_maps() {
        let ctx = ctx_d1();
        let lam = Weight::from_lambda(vec![2, 0]);
        let t = ctx.t_lambda(lam.clone()).unwrap();
        for i in 0..2 {
            assert_eq!(ctx.phi(i, &t), ExtInt::NegInf);
            assert_eq!(ctx.eps(i, &t), ExtInt::NegInf);
            assert_eq!(ctx.e(i, &t), None);
            assert_eq!(ctx.f(i, &t), None);
        }
        assert_eq!(ctx.wt(&t), Weight { lam: vec![2, 0], rt: vec![0, 0] });
    }

    #[test]
    fn t_lambda_tensor_t_mu_is_t_sum() {
        let ctx = ctx_d1();
        let l = Weight { lam: vec![1, 3], rt: vec![-1, 0] };
        let m = Weight { lam: vec![0, 2], rt: vec![2, -5] };
        let tt = ctx.tensor(vec![ctx.t_lambda(l.clone()).unwrap(), ctx.t_lambda(m.clone()).unwrap()]).unwrap();
        let sum = ctx.t_lambda(&l + &m).unwrap();
        assert_eq!(ctx.wt(&tt), ctx.wt(&sum));
        for i in 0..2 {
            assert_eq!(ctx.eps(i, &tt), ExtInt::NegInf);
            assert_eq!(ctx.phi(i, &tt), ExtInt::NegInf);
            assert_eq!(ctx.e(i, &tt), None);
            assert_eq!(ctx.f(i, &tt), None);
        }
    }

    #[test]
    fn elementary_tables() {
        let ctx = ctx_d1();
        let b = ctx.elementary(0, 3).unwrap();
        assert_eq!(ctx.eps(0, &b), ExtInt::Fin(3));
        assert_eq!(ctx.phi(0, &b), ExtInt::Fin(-3));
        assert_eq!(ctx.eps(1, &b), ExtInt::NegInf);
        assert_eq!(ctx.phi(1, &b), ExtInt::NegInf);
        let b2 = ctx.elementary(1, 5).unwrap();
        assert_eq!(ctx.eps(1, &b2), ExtInt::ZERO);
        assert_eq!(ctx.phi(1, &b2), ExtInt::ZERO);
        assert_eq!(ctx.e(0, &ctx.elementary(0, 0).unwrap()), None);
        assert_eq!(ctx.f(1, &ctx.elementary(0, 0).unwrap()), None);
        assert!(ctx.elementary(2, 0).is_err());
    }

    #[test]
    fn elementary_e_f_inverse() {
        let ctx = ctx_d1();
        for i in 0..2 {
            for n in 0..6 {
                let b = ctx.elementary(i, n).unwrap();
                let fb = ctx.f(i, &b).unwrap();
                assert_eq!(ctx.e(i, &fb), Some(b.clone()));
                if n > 0 {
                    assert_eq!(ctx.f(i, &ctx.e(i, &b).unwrap()), Some(b));
                }
            }
        }
    }

    #[test]
    fn c_unit_gate() {
        let ctx = ctx_d1();
        let c = ctx.c_unit();
        for i in 0..2 {
            assert_eq!(ctx.phi(i, &c), ExtInt::ZERO);
            assert_eq!(ctx.eps(i, &c), ExtInt::ZERO);
        }
        let b20 = ctx.elementary(1, 0).unwrap();
        let bc = ctx.tensor(vec![b20.clone(), c]).unwrap();
        assert_eq!(ctx.f(1, &bc), None);
        // while f̃₂ b₂(0) itself is nonzero, so B₂ ⊗ C is not B₂
        assert_eq!(ctx.f(1, &b20), Some(ctx.elementary(1, 1).unwrap()));
    }

    #[test]
    fn tensor_construction_flattens_and_validates() {
        let ctx = ctx_d1();
        let a = ctx.elementary(0, 1).unwrap();
        let ab = ctx.tensor(vec![a.clone(), ctx.c_unit()]).unwrap();
        let abc = ctx.tensor(vec![ab, a.clone()]).unwrap();
        assert_eq!(abc.factors().len(), 3);
        assert!(ctx.tensor(vec![]).is_err());
        assert_eq!(ctx.tensor(vec![a.clone()]).unwrap(), a);
        let foreign = CrystalElement::TLambda(Weight::zero(3));
        assert!(ctx.tensor(vec![a, foreign]).is_err());
    }
}
