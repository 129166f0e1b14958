use std::fmt;

use serde::{Deserialize, Serialize};

use super::IndexSequence;
use crate::cartan::{BorcherdsCartanDatum, ExtInt, Weight};

/// Handle of an index sequence registered with a crystal context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SeqId(pub u32);

/// An element `(…, x_2, x_1)` of `B(𝐢)`; `x()[k − 1]` is `x_k`, the
/// exponent at sequence position `k`. Trailing zeros are trimmed, so the
/// zero string `(…, 0, 0)` has an empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BInfString {
    seq: SeqId,
    x: Vec<u32>,
}

impl BInfString {
    pub fn new(seq: SeqId, mut x: Vec<u32>) -> Self {
        trim(&mut x);
        BInfString { seq, x }
    }

    pub fn seq(&self) -> SeqId {
        self.seq
    }

    pub fn x(&self) -> &[u32] {
        &self.x
    }

    pub fn is_canonical(&self) -> bool {
        self.x.last() != Some(&0)
    }

    pub fn height(&self) -> u64 {
        self.x.iter().map(|&v| v as u64).sum()
    }
}

impl fmt::Display for BInfString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(…")?;
        for v in self.x.iter().rev() {
            write!(f, ",{v}")?;
        }
        f.write_str(")")
    }
}

fn trim(x: &mut Vec<u32>) {
    while x.last() == Some(&0) {
        x.pop();
    }
}

#[inline]
fn at(x: &[u32], k: usize) -> i64 {
    x.get(k - 1).map_or(0, |&v| v as i64)
}

pub fn binf_wt(seq: &IndexSequence, rank: usize, x: &[u32]) -> Weight {
    let mut w = Weight::zero(rank);
    for (k, &v) in x.iter().enumerate() {
        w.rt[seq.index_at(k + 1)] -= v as i64;
    }
    w
}

pub fn binf_wt_i(d: &BorcherdsCartanDatum, seq: &IndexSequence, i: usize, x: &[u32]) -> i64 {
    x.iter().enumerate().map(|(k, &v)| -d.a(i, seq.index_at(k + 1)) * v as i64).sum()
}

/// Positions `k` with `i_k = i` up to the first one past the support,
/// each paired with `Σ_{l>k} a_{i,i_l} x_l`, in increasing order.
fn tails(d: &BorcherdsCartanDatum, seq: &IndexSequence, i: usize, x: &[u32]) -> Vec<(usize, i64)> {
    let last = seq.next_occurrence(i, x.len());
    let mut out = Vec::new();
    let mut tail = 0i64;
    for k in (1..=last).rev() {
        let ik = seq.index_at(k);
        if ik == i {
            out.push((k, tail));
        }
        tail += d.a(i, ik) * at(x, k);
    }
    out.reverse();
    out
}

/// Like [`tails`], with `Σ_{l<k} a_{i,i_l} x_l`.
fn heads(d: &BorcherdsCartanDatum, seq: &IndexSequence, i: usize, x: &[u32]) -> Vec<(usize, i64)> {
    let last = seq.next_occurrence(i, x.len());
    let mut out = Vec::new();
    let mut head = 0i64;
    for k in 1..=last {
        let ik = seq.index_at(k);
        if ik == i {
            out.push((k, head));
        }
        head += d.a(i, ik) * at(x, k);
    }
    out
}

/// `(n, ε)` for a real index, where `n` is the smallest or largest maximizer.
fn real_argmax(d: &BorcherdsCartanDatum, seq: &IndexSequence, i: usize, x: &[u32], smallest: bool) -> (usize, i64) {
    let vals = tails(d, seq, i, x).into_iter().map(|(k, t)| (k, at(x, k) + t));
    let best = vals.clone().map(|(_, v)| v).max().expect("i occurs in the sequence");
    let mut hits = vals.filter(|&(_, v)| v == best).map(|(k, _)| k);
    let n = if smallest { hits.next() } else { hits.next_back() }.unwrap();
    (n, best)
}

/// The smallest `k` with `i_k = i` and `Σ_{l>k} a_{i,i_l} x_l = 0`.
fn imaginary_slot(d: &BorcherdsCartanDatum, seq: &IndexSequence, i: usize, x: &[u32]) -> usize {
    tails(d, seq, i, x).into_iter().find(|&(_, t)| t == 0).map(|(k, _)| k).expect("the slot past the support qualifies")
}

pub fn binf_eps(d: &BorcherdsCartanDatum, seq: &IndexSequence, i: usize, x: &[u32]) -> ExtInt {
    if d.is_real(i) {
        ExtInt::Fin(real_argmax(d, seq, i, x, true).1)
    } else {
        ExtInt::ZERO
    }
}

pub fn binf_phi(d: &BorcherdsCartanDatum, seq: &IndexSequence, i: usize, x: &[u32]) -> ExtInt {
    if d.is_real(i) {
        let best = heads(d, seq, i, x).into_iter().map(|(k, h)| -at(x, k) - h).max().expect("i occurs in the sequence");
        ExtInt::Fin(best)
    } else {
        ExtInt::Fin(binf_wt_i(d, seq, i, x))
    }
}

pub fn binf_f(d: &BorcherdsCartanDatum, seq: &IndexSequence, i: usize, x: &[u32]) -> Vec<u32> {
    let n = if d.is_real(i) { real_argmax(d, seq, i, x, true).0 } else { imaginary_slot(d, seq, i, x) };
    let mut y = x.to_vec();
    if y.len() < n {
        y.resize(n, 0);
    }
    y[n - 1] += 1;
    y
}

pub fn binf_e(d: &BorcherdsCartanDatum, seq: &IndexSequence, i: usize, x: &[u32]) -> Option<Vec<u32>> {
    let n = if d.is_real(i) {
        let (n, eps) = real_argmax(d, seq, i, x, false);
        if eps <= 0 {
            return None;
        }
        n
    } else {
        let n = imaginary_slot(d, seq, i, x);
        let aii = d.a(i, i);
        let mut s = d.a(i, i) * at(x, n);
        for l in (1..n).rev() {
            let il = seq.index_at(l);
            if il == i && s >= aii {
                return None;
            }
            s += d.a(i, il) * at(x, l);
        }
        n
    };
    if at(x, n) == 0 {
        return None;
    }
    let mut y = x.to_vec();
    y[n - 1] -= 1;
    trim(&mut y);
    Some(y)
}
