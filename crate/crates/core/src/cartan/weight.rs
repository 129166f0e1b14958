use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A weight in the ℤ-span of the fundamental weights `Λ_i` and simple roots `α_i`.
///
/// `lam[i]` is the coefficient of `Λ_i`, `rt[i]` the coefficient of `α_i`.
/// The representation is not reduced: `Λ`- and `α`-parts are kept apart so
/// the highest-weight part of an element can be read off directly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Weight {
    pub lam: Vec<i64>,
    pub rt: Vec<i64>,
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight { lam: vec![0; rank], rt: vec![0; rank] }
    }

    /// `Σ coeffs[i] Λ_i`.
    pub fn from_lambda(coeffs: Vec<i64>) -> Self {
        let rank = coeffs.len();
        Weight { lam: coeffs, rt: vec![0; rank] }
    }

    /// `Σ coeffs[i] α_i`.
    pub fn from_roots(coeffs: Vec<i64>) -> Self {
        let rank = coeffs.len();
        Weight { lam: vec![0; rank], rt: coeffs }
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.lam[i] = 1;
        w
    }

    pub fn simple_root(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.rt[i] = 1;
        w
    }

    pub fn rank(&self) -> usize {
        self.lam.len()
    }

    pub fn is_zero(&self) -> bool {
        self.lam.iter().chain(&self.rt).all(|&c| c == 0)
    }

    /// True iff the weight lies in `−Q₊`.
    pub fn in_neg_root_cone(&self) -> bool {
        self.lam.iter().all(|&c| c == 0) && self.rt.iter().all(|&c| c <= 0)
    }

    /// Number of simple roots subtracted, `−Σ rt[i]`.
    pub fn depth(&self) -> i64 {
        -self.rt.iter().sum::<i64>()
    }

    pub fn add_root(&mut self, i: usize, times: i64) {
        self.rt[i] = self.rt[i].checked_add(times).expect("weight overflow");
    }
}

fn zip_with(a: &[i64], b: &[i64], op: fn(i64, i64) -> Option<i64>) -> Vec<i64> {
    assert_eq!(a.len(), b.len(), "weights of different rank");
    a.iter().zip(b).map(|(&x, &y)| op(x, y).expect("weight overflow")).collect()
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight { lam: zip_with(&self.lam, &rhs.lam, i64::checked_add), rt: zip_with(&self.rt, &rhs.rt, i64::checked_add) }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight { lam: zip_with(&self.lam, &rhs.lam, i64::checked_sub), rt: zip_with(&self.rt, &rhs.rt, i64::checked_sub) }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight { lam: self.lam.iter().map(|c| -c).collect(), rt: self.rt.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({};{})", join(&self.lam), join(&self.rt))
    }
}
