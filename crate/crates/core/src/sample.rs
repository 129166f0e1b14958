//! Seeded random finite crystals for the axiom and associativity suites.

use rand::Rng;

use crate::cartan::Weight;
use crate::crystal::{c_unit, elementary, t_lambda, tensor_of, CrystalContext, CrystalGraph};
use crate::error::Result;

/// A truncated `B_i`, a `T_λ`, `C`, or a tensor of two truncated
/// elementary crystals, with at most `max_len` elements.
pub fn random_factor(ctx: &CrystalContext, rng: &mut impl Rng, max_len: usize) -> Result<CrystalGraph> {
    assert!(max_len >= 1);
    let n = ctx.rank();
    match rng.gen_range(0..6) {
        0 | 1 => elementary(ctx, rng.gen_range(0..n), rng.gen_range(0..max_len) as u32),
        2 => {
            let lam = Weight::from_lambda((0..n).map(|_| rng.gen_range(-2..=2)).collect());
            t_lambda(ctx, lam)
        }
        3 => Ok(c_unit(ctx)),
        _ => {
            let a = rng.gen_range(1..=max_len.min(4));
            let b = rng.gen_range(1..=(max_len / a).max(1));
            let left = elementary(ctx, rng.gen_range(0..n), a as u32 - 1)?;
            let right = elementary(ctx, rng.gen_range(0..n), b as u32 - 1)?;
            tensor_of(ctx, &[&left, &right])
        }
    }
}

/// One to three small factors tensored together.
pub fn random_crystal(ctx: &CrystalContext, rng: &mut impl Rng) -> Result<CrystalGraph> {
    let parts = (0..rng.gen_range(1..=3)).map(|_| random_factor(ctx, rng, 4)).collect::<Result<Vec<_>>>()?;
    let refs: Vec<&CrystalGraph> = parts.iter().collect();
    if refs.len() == 1 {
        return Ok(parts.into_iter().next().unwrap());
    }
    tensor_of(ctx, &refs)
}
