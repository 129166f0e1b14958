//! Closed-form membership tests for `B(∞)` and `B(λ)` inside `B(𝐢)` in the
//! rank-2 and Monster-shaped cases, and their comparison with the search.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::binf::{component_bfs, realize_binfinity, IndexSequence, SeqId};
use crate::cartan::{BorcherdsCartanDatum, Weight};
use crate::crystal::{CrystalContext, CrystalElement, CrystalGraph};
use crate::error::{CrystalError, Result};

/// Parameters of the rank-2 matrix `[[2, −a], [−b, −c]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Rank2Params {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Rank2Params {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a < 1 || b < 1 || c < 0 || c % 2 != 0 {
            return Err(CrystalError::Params(format!("need a, b >= 1 and c even >= 0, got ({a},{b},{c})")));
        }
        Ok(Rank2Params { a, b, c })
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        [[2, -self.a], [-self.b, -self.c]]
    }

    pub fn datum(&self) -> BorcherdsCartanDatum {
        let g = num_integer::gcd(self.a, self.b);
        BorcherdsCartanDatum::with_numeric_names(self.matrix().map(Vec::from).to_vec(), vec![self.b / g, self.a / g])
            .expect("rank-2 parameters give a valid datum")
    }

    /// `⟨h_i, λ⟩` without building the datum.
    pub fn pairing(&self, i: usize, w: &Weight) -> i64 {
        let a = self.matrix();
        w.lam[i] + a[i][0] * w.rt[0] + a[i][1] * w.rt[1]
    }
}

#[inline]
fn at(x: &[u32], k: usize) -> i64 {
    x.get(k.wrapping_sub(1)).map_or(0, |&v| v as i64)
}

/// Membership in the `B(∞)` component of `B(𝐢)` for `𝐢 = (1, 2, 1, 2, …)`.
pub fn rank2_member(x: &[u32], p: &Rank2Params) -> bool {
    let a = p.a;
    let kmax = x.len() / 2 + 1;
    for k in 1..=kmax {
        let slack = a * at(x, 2 * k) - at(x, 2 * k + 1);
        if slack < 0 {
            return false;
        }
        if k >= 2 && at(x, 2 * k) > 0 && (at(x, 2 * k - 1) == 0 || slack == 0) {
            return false;
        }
    }
    true
}

/// Membership in the `B(λ)` component of `B(𝐢) ⊗ T_λ ⊗ C`.
pub fn rank2_blambda_member(x: &[u32], p: &Rank2Params, lambda: &Weight) -> bool {
    let (l1, l2) = (p.pairing(0, lambda), p.pairing(1, lambda));
    rank2_member(x, p) && at(x, 1) <= l1 && !(at(x, 2) > 0 && l2 == 0 && at(x, 1) == 0)
}

/// Level and multiplicities `m(1), …, m(L)` of a Monster-shaped datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonsterParams {
    multiplicities: Vec<u32>,
}

impl MonsterParams {
    pub fn new(multiplicities: Vec<u32>) -> Result<Self> {
        if multiplicities.is_empty() || multiplicities.contains(&0) {
            return Err(CrystalError::Params("need at least one level and positive multiplicities".into()));
        }
        Ok(MonsterParams { multiplicities })
    }

    pub fn level(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    /// `m(j)`, zero past the level.
    pub fn m(&self, j: usize) -> u64 {
        if j >= 1 && j <= self.level() {
            self.multiplicities[j - 1] as u64
        } else {
            0
        }
    }

    /// `b(n) = n·m(1) + (n−1)·m(2) + ⋯ + m(n) + n + 1`.
    pub fn b(&self, n: usize) -> usize {
        let s: u64 = (1..=n).map(|j| (n + 1 - j) as u64 * self.m(j)).sum();
        (s + n as u64 + 1) as usize
    }

    /// `(level, t)` labels in datum order, starting with `(−1, 1)`.
    pub fn labels(&self) -> Vec<(i64, u32)> {
        let mut out = vec![(-1, 1)];
        for (j, &m) in self.multiplicities.iter().enumerate() {
            out.extend((1..=m).map(|t| (j as i64 + 1, t)));
        }
        out
    }

    /// Entries `a_{(i,t),(j,s)} = −(i + j)`, symmetrizers all `1`.
    pub fn datum(&self) -> BorcherdsCartanDatum {
        let labels = self.labels();
        let a = labels.iter().map(|(i, _)| labels.iter().map(|(j, _)| -(i + j)).collect()).collect();
        let names = labels.iter().map(|(i, t)| format!("({i},{t})")).collect();
        BorcherdsCartanDatum::new(names, a, vec![1; labels.len()]).expect("Monster-shaped entries give a valid datum")
    }

    pub fn sequence(&self) -> IndexSequence {
        let mut next = 1;
        let levels = self
            .multiplicities
            .iter()
            .map(|&m| {
                let ids: Vec<usize> = (next..next + m as usize).collect();
                next += m as usize;
                ids
            })
            .collect();
        IndexSequence::monster(0, levels, next).expect("levels cover every index")
    }

    /// Positions `b(n) ≤ upto` at which the sequence does not hold `(−1, 1)`.
    pub fn misplaced_positions(&self, seq: &IndexSequence, upto: usize) -> Vec<usize> {
        (0..).map(|n| self.b(n)).take_while(|&p| p <= upto).filter(|&p| seq.index_at(p) != 0).collect()
    }
}

/// A Monster-shaped datum together with its block sequence.
#[derive(Clone, Debug)]
pub struct MonsterToy {
    pub params: MonsterParams,
    pub datum: BorcherdsCartanDatum,
    pub seq: IndexSequence,
}

impl MonsterToy {
    pub fn new(params: MonsterParams) -> Self {
        let datum = params.datum();
        let seq = params.sequence();
        MonsterToy { params, datum, seq }
    }

    /// `k⁽⁻⁾`: the previous position holding the same index, or `0`.
    pub fn k_minus(&self, k: usize) -> usize {
        let i = self.seq.index_at(k);
        (1..k).rev().find(|&l| self.seq.index_at(l) == i).unwrap_or(0)
    }

    /// `−Σ_{b(n)<l<b(n+1)} ⟨h_{(−1,1)}, α_{𝐢(l)}⟩ x_l`.
    fn block_sum(&self, x: &[u32], n: usize) -> i64 {
        let (lo, hi) = (self.params.b(n), self.params.b(n + 1));
        -(lo + 1..hi).map(|l| self.datum.a(0, self.seq.index_at(l)) * at(x, l)).sum::<i64>()
    }
}

/// Membership in the `B(∞)` component for the Monster-shaped sequence.
///
/// Fails with an error if the block containing a refinement is not unique.
pub fn monster_member(x: &[u32], toy: &MonsterToy) -> Result<bool> {
    let (p, d, seq) = (&toy.params, &toy.datum, &toy.seq);
    if at(x, p.b(1)) != 0 {
        return Ok(false);
    }
    let mut n = 1;
    while p.b(n) <= x.len() {
        if toy.block_sum(x, n) < at(x, p.b(n + 1)) {
            return Ok(false);
        }
        n += 1;
    }
    for k in 1..=x.len() {
        let ik = seq.index_at(k);
        let km = toy.k_minus(k);
        if ik == 0 || at(x, k) == 0 || km == 0 {
            continue;
        }
        let s: i64 = (km + 1..k).map(|l| d.a(ik, seq.index_at(l)) * at(x, l)).sum();
        if s >= 0 {
            return Ok(false);
        }
        let quiet = (km + 1..k).all(|l| seq.index_at(l) == 0 || at(x, l) == 0);
        if quiet {
            let ns: Vec<usize> = (1..k).filter(|&n| km < p.b(n) && p.b(n) < k).collect();
            let [n] = ns[..] else {
                return Err(CrystalError::Sequence(format!("{} block starts strictly between {km} and {k}", ns.len())));
            };
            if toy.block_sum(x, n) <= at(x, p.b(n + 1)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Membership in the `B(λ)` component of `B(𝐢) ⊗ T_λ ⊗ C`.
pub fn monster_blambda_member(x: &[u32], toy: &MonsterToy, lambda: &Weight) -> Result<bool> {
    if !monster_member(x, toy)? {
        return Ok(false);
    }
    let (d, seq) = (&toy.datum, &toy.seq);
    if at(x, 1) > d.pairing(0, lambda) {
        return Ok(false);
    }
    for k in 1..=x.len() {
        let ik = seq.index_at(k);
        if ik == 0 || d.pairing(ik, lambda) != 0 || at(x, k) == 0 || toy.k_minus(k) != 0 {
            continue;
        }
        if !(1..k).any(|l| d.a(ik, seq.index_at(l)) < 0 && at(x, l) > 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The constants `c(−1), c(1), c(2)` of `j(q) − 744 = q⁻¹ + 196884q + 21493760q² + ⋯`.
pub fn known_j_coefficients() -> &'static [(i32, u64)] {
    &[(-1, 1), (1, 196884), (2, 21493760)]
}

/// Which component the oracle compares against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Infinity,
    Highest(Weight),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharEntry {
    pub wt: Weight,
    pub mult: usize,
}

/// Set differences between the predicate and the search, and the search
/// character.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub missing_in_bfs: Vec<Vec<u32>>,
    pub missing_in_predicate: Vec<Vec<u32>>,
    pub char: Vec<CharEntry>,
    #[serde(skip)]
    pub char_mismatch: bool,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.missing_in_bfs.is_empty() && self.missing_in_predicate.is_empty() && !self.char_mismatch
    }
}

/// One past the last position a string of height `depth` can reach from the
/// zero string, plus one more step of slack.
pub fn support_bound(seq: &IndexSequence, depth: usize) -> usize {
    (0..=depth).fold(0, |p, _| seq.reach(p))
}

/// Calls `visit` on every string of length at most `len` and height at most
/// `depth`, in graded lexicographic order, trailing zeros trimmed.
pub fn for_each_string(len: usize, depth: usize, mut visit: impl FnMut(&[u32])) {
    fn rec(x: &mut Vec<u32>, pos: usize, left: u32, visit: &mut dyn FnMut(&[u32])) {
        if left == 0 || pos == x.len() {
            if left == 0 {
                let mut end = x.len();
                while end > 0 && x[end - 1] == 0 {
                    end -= 1;
                }
                visit(&x[..end]);
            }
            return;
        }
        for v in (0..=left).rev() {
            x[pos] = v;
            rec(x, pos + 1, left - v, visit);
        }
        x[pos] = 0;
    }
    let mut x = vec![0u32; len];
    for h in 0..=depth as u32 {
        rec(&mut x, 0, h, &mut visit);
    }
}

fn string_of(elt: &CrystalElement) -> Option<Vec<u32>> {
    match elt {
        CrystalElement::BInf(s) => Some(s.x().to_vec()),
        CrystalElement::Tensor(fs) => fs.first().and_then(|f| f.as_binf()).map(|s| s.x().to_vec()),
        _ => None,
    }
}

/// The search graph of the requested component, explored to `depth`.
pub fn component_graph(ctx: &CrystalContext, seq: SeqId, target: &Target, depth: usize) -> Result<CrystalGraph> {
    match target {
        Target::Infinity => realize_binfinity(ctx, seq, depth),
        Target::Highest(l) => {
            if !ctx.datum().is_dominant(l) {
                return Err(CrystalError::NotDominant(l.to_string()));
            }
            let root = ctx.tensor(vec![ctx.binf_string(seq, Vec::new())?, ctx.t_lambda(l.clone())?, ctx.c_unit()])?;
            Ok(component_bfs(ctx, root, depth))
        }
    }
}

/// Enumerates strings of height at most `depth` that pass `member`, builds
/// the component to the same depth, and compares the two sets and their
/// weight multiplicities.
pub fn oracle_compare(
    ctx: &CrystalContext,
    seq: SeqId,
    target: &Target,
    depth: usize,
    member: &(dyn Fn(&[u32]) -> Result<bool> + Sync),
) -> Result<OracleReport> {
    let (graph, predicate) = rayon::join(
        || component_graph(ctx, seq, target, depth),
        || -> Result<BTreeSet<Vec<u32>>> {
            let len = support_bound(ctx.sequence(seq), depth);
            let mut out = BTreeSet::new();
            let mut err = None;
            for_each_string(len, depth, |x| match member(x) {
                Ok(true) => {
                    out.insert(x.to_vec());
                }
                Ok(false) => {}
                Err(e) => {
                    err.get_or_insert(e);
                }
            });
            err.map_or(Ok(out), Err)
        },
    );
    let (graph, predicate) = (graph?, predicate?);
    let found: BTreeSet<Vec<u32>> = graph.nodes().iter().filter_map(|n| string_of(&n.elt)).collect();

    let shift = match target {
        Target::Infinity => Weight::zero(ctx.rank()),
        Target::Highest(l) => l.clone(),
    };
    let mut pred_char: BTreeMap<Weight, usize> = BTreeMap::new();
    for x in &predicate {
        let w = &crate::binf::binf_wt(ctx.sequence(seq), ctx.rank(), x) + &shift;
        *pred_char.entry(w).or_default() += 1;
    }
    let char: Vec<CharEntry> = graph.character().into_iter().map(|(wt, mult)| CharEntry { wt, mult }).collect();
    let char_mismatch = char.len() != pred_char.len() || char.iter().any(|c| pred_char.get(&c.wt) != Some(&c.mult));
    Ok(OracleReport {
        missing_in_bfs: predicate.difference(&found).cloned().collect(),
        missing_in_predicate: found.difference(&predicate).cloned().collect(),
        char,
        char_mismatch,
    })
}
