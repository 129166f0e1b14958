//! Abstract crystals for quantum generalized Kac-Moody algebras.
//!
//! The crate evaluates crystal operators on elementary crystals, `T_λ`, `C`,
//! the string crystal `B(𝐢)` and tensor products of these, explores
//! connected components breadth-first, and checks the results against the
//! crystal axioms, morphism laws and closed-form descriptions of `B(∞)` and
//! `B(λ)`.

pub mod binf;
pub mod cartan;
pub mod cli;
pub mod closed_form;
pub mod crystal;
pub mod error;
pub mod presets;
pub mod report;
pub mod sample;
pub mod tensor;

pub use error::{CrystalError, Result};

#[cfg(test)]
pub(crate) mod testutil {
    pub use crate::binf::SeqId;
    use crate::binf::IndexSequence;
    use crate::cartan::BorcherdsCartanDatum;
    use crate::closed_form::{MonsterParams, MonsterToy, Rank2Params};
    use crate::crystal::CrystalContext;
    use crate::presets;

    pub const SEQ: SeqId = SeqId(0);

    /// A context with the cyclic sequence registered as [`SEQ`].
    pub fn ctx_for(d: BorcherdsCartanDatum) -> CrystalContext {
        let mut ctx = CrystalContext::new(d);
        let seq = IndexSequence::cyclic(ctx.rank());
        assert_eq!(ctx.add_sequence(seq).unwrap(), SEQ);
        ctx
    }

    pub fn ctx_d1() -> CrystalContext {
        ctx_for(presets::d1())
    }

    pub fn ctx_d2() -> CrystalContext {
        ctx_for(presets::d2())
    }

    pub fn ctx_rank2(a: i64, b: i64, c: i64) -> CrystalContext {
        ctx_for(Rank2Params::new(a, b, c).unwrap().datum())
    }

    /// The Monster-shaped context with its block sequence as [`SEQ`].
    pub fn ctx_monster(m: &[u32]) -> CrystalContext {
        let toy = MonsterToy::new(MonsterParams::new(m.to_vec()).unwrap());
        let mut ctx = CrystalContext::new(toy.datum);
        assert_eq!(ctx.add_sequence(toy.seq).unwrap(), SEQ);
        ctx
    }
}
