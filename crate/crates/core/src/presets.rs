//! Small data used throughout the tests and the command line.

use crate::binf::{IndexSequence, SeqId};
use crate::cartan::BorcherdsCartanDatum;
use crate::closed_form::{MonsterParams, MonsterToy, Rank2Params};
use crate::crystal::CrystalContext;
use crate::error::Result;

/// `[[2, −1], [−1, 0]]`: one real and one imaginary index.
pub fn d1() -> BorcherdsCartanDatum {
    BorcherdsCartanDatum::with_numeric_names(vec![vec![2, -1], vec![-1, 0]], vec![1, 1]).unwrap()
}

/// `[[2]]`, the datum of `sl₂`.
pub fn d2() -> BorcherdsCartanDatum {
    BorcherdsCartanDatum::with_numeric_names(vec![vec![2]], vec![1]).unwrap()
}

/// `[[a]]` for an even `a ≤ 0`.
pub fn single_imaginary(a: i64) -> Result<BorcherdsCartanDatum> {
    BorcherdsCartanDatum::with_numeric_names(vec![vec![a]], vec![1])
}

/// A context over `d` with the cyclic sequence registered.
pub fn cyclic_context(d: BorcherdsCartanDatum) -> (CrystalContext, SeqId) {
    let mut ctx = CrystalContext::new(d);
    let seq = ctx.add_sequence(IndexSequence::cyclic(ctx.rank())).expect("cyclic sequence fits any datum");
    (ctx, seq)
}

pub fn rank2_context(p: &Rank2Params) -> (CrystalContext, SeqId) {
    cyclic_context(p.datum())
}

/// A Monster-shaped context with its block sequence registered.
pub fn monster_context(p: &MonsterParams) -> (CrystalContext, SeqId, MonsterToy) {
    let toy = MonsterToy::new(p.clone());
    let mut ctx = CrystalContext::new(toy.datum.clone());
    let seq = ctx.add_sequence(toy.seq.clone()).expect("block sequence fits its datum");
    (ctx, seq, toy)
}
