use serde::{Deserialize, Serialize};

use crate::cartan::BorcherdsCartanDatum;
use crate::error::{CrystalError, Result};

const MEMO_LEN: usize = 4096;

/// Sequence selection as written in a datum file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SequenceSpec {
    /// `1, 2, …, n, 1, 2, …` in datum order.
    Cyclic,
    /// Monster-shaped blocks: block `n` is `(−1,1)` followed by every index
    /// of levels `1..=min(n, level)`. Indices are looked up by the names
    /// `"(-1,1)"` and `"(i,t)"`.
    Monster { level: usize, multiplicities: Vec<u32> },
    /// A finite prefix followed by a repeated cycle, by index name.
    Explicit { prefix: Vec<String>, cycle: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Cyclic(usize),
    Explicit { prefix: Vec<usize>, cycle: Vec<usize> },
    Monster { real: usize, levels: Vec<Vec<usize>> },
}

/// An infinite index sequence `𝐢 = (i_1, i_2, …)` in which every index
/// occurs infinitely often. Positions are 1-based; a prefix is memoized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSequence {
    kind: Kind,
    rank: usize,
    memo: Vec<usize>,
}

impl IndexSequence {
    fn build(kind: Kind, rank: usize) -> Self {
        let mut s = IndexSequence { kind, rank, memo: Vec::new() };
        s.memo = (1..=MEMO_LEN).map(|k| s.compute(k)).collect();
        s
    }

    pub fn cyclic(rank: usize) -> Self {
        assert!(rank > 0, "empty index set");
        Self::build(Kind::Cyclic(rank), rank)
    }

    pub fn explicit(prefix: Vec<usize>, cycle: Vec<usize>, rank: usize) -> Result<Self> {
        if prefix.iter().chain(&cycle).any(|&i| i >= rank) {
            return Err(CrystalError::Sequence("index out of range".into()));
        }
        if let Some(i) = (0..rank).find(|i| !cycle.contains(i)) {
            return Err(CrystalError::Sequence(format!("index {i} does not occur in the cycle")));
        }
        Ok(Self::build(Kind::Explicit { prefix, cycle }, rank))
    }

    /// `levels[j]` lists the indices of level `j + 1`.
    pub fn monster(real: usize, levels: Vec<Vec<usize>>, rank: usize) -> Result<Self> {
        let mut seen = vec![false; rank];
        for &i in std::iter::once(&real).chain(levels.iter().flatten()) {
            if i >= rank || std::mem::replace(&mut seen[i], true) {
                return Err(CrystalError::Sequence(format!("index {i} is out of range or repeated")));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(CrystalError::Sequence("every index must belong to a level".into()));
        }
        if levels.iter().any(Vec::is_empty) {
            return Err(CrystalError::Sequence("every level needs a positive multiplicity".into()));
        }
        Ok(Self::build(Kind::Monster { real, levels }, rank))
    }

    pub fn from_spec(spec: &SequenceSpec, d: &BorcherdsCartanDatum) -> Result<Self> {
        let lookup = |name: &str| d.index_of(name).ok_or_else(|| CrystalError::UnknownIndexName(name.to_string()));
        match spec {
            SequenceSpec::Cyclic => Ok(Self::cyclic(d.rank())),
            SequenceSpec::Explicit { prefix, cycle } => Self::explicit(
                prefix.iter().map(|n| lookup(n)).collect::<Result<_>>()?,
                cycle.iter().map(|n| lookup(n)).collect::<Result<_>>()?,
                d.rank(),
            ),
            SequenceSpec::Monster { level, multiplicities } => {
                if multiplicities.len() != *level {
                    return Err(CrystalError::Sequence(format!("{} multiplicities for level {level}", multiplicities.len())));
                }
                let real = lookup("(-1,1)")?;
                let levels = multiplicities
                    .iter()
                    .enumerate()
                    .map(|(j, &m)| (1..=m).map(|t| lookup(&format!("({},{t})", j + 1))).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Self::monster(real, levels, d.rank())
            }
        }
    }

    pub fn check_against(&self, d: &BorcherdsCartanDatum) -> Result<()> {
        if self.rank == d.rank() {
            Ok(())
        } else {
            Err(CrystalError::Sequence(format!("sequence over {} indices used with a rank-{} datum", self.rank, d.rank())))
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `i_k` for `k ≥ 1`.
    #[inline]
    pub fn index_at(&self, k: usize) -> usize {
        debug_assert!(k >= 1, "positions are 1-based");
        match self.memo.get(k - 1) {
            Some(&i) => i,
            None => self.compute(k),
        }
    }

    fn compute(&self, k: usize) -> usize {
        match &self.kind {
            Kind::Cyclic(n) => (k - 1) % n,
            Kind::Explicit { prefix, cycle } => {
                if k <= prefix.len() {
                    prefix[k - 1]
                } else {
                    cycle[(k - 1 - prefix.len()) % cycle.len()]
                }
            }
            Kind::Monster { real, levels } => {
                let mut pos = k - 1;
                let mut block = 1;
                loop {
                    let width: usize = levels.iter().take(block).map(Vec::len).sum();
                    if pos == 0 {
                        return *real;
                    }
                    if pos <= width {
                        return *levels.iter().take(block).flatten().nth(pos - 1).unwrap();
                    }
                    pos -= width + 1;
                    block += 1;
                }
            }
        }
    }

    /// The first position `k > after` with `i_k = i`.
    pub fn next_occurrence(&self, i: usize, after: usize) -> usize {
        assert!(i < self.rank, "index out of range");
        (after + 1..).find(|&k| self.index_at(k) == i).expect("every index recurs")
    }

    /// Positions `1..=len` as a vector of indices.
    pub fn prefix(&self, len: usize) -> Vec<usize> {
        (1..=len).map(|k| self.index_at(k)).collect()
    }

    /// The smallest position past which every index has occurred at least
    /// once more than `after`; a bound on where one lowering step can land.
    pub fn reach(&self, after: usize) -> usize {
        (0..self.rank).map(|i| self.next_occurrence(i, after)).max().unwrap_or(after)
    }
}
