//! Borcherds-Cartan data, weights and extended integers.
//!
//! A datum is a finite index set with an integer matrix `A = (a_ij)` and
//! positive symmetrizers `s_i` such that `DA` is symmetric. An index is
//! *real* when `a_ii = 2` and *imaginary* when `a_ii ≤ 0`; every crystal rule
//! in this crate branches on that distinction.

mod extint;
mod weight;

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use extint::ExtInt;
pub use weight::Weight;

use crate::error::{CrystalError, Result};

/// One failed Borcherds-Cartan condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum DatumViolation {
    /// `a_ii` must be 2 or a nonpositive even integer.
    Diagonal { i: usize, value: i64 },
    /// `a_ij ≤ 0` for `i ≠ j`.
    OffDiagonalSign { i: usize, j: usize, value: i64 },
    /// `a_ij = 0` iff `a_ji = 0`.
    ZeroSymmetry { i: usize, j: usize },
    /// `s_i a_ij = s_j a_ji`.
    Symmetrizable { i: usize, j: usize },
    /// Symmetrizers must be positive.
    Symmetrizer { i: usize, value: i64 },
}

impl fmt::Display for DatumViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatumViolation::Diagonal { i, value } => {
                write!(f, "diagonal: a[{i}][{i}] = {value} is neither 2 nor an even integer <= 0")
            }
            DatumViolation::OffDiagonalSign { i, j, value } => {
                write!(f, "sign: a[{i}][{j}] = {value} > 0")
            }
            DatumViolation::ZeroSymmetry { i, j } => {
                write!(f, "zero-symmetry: a[{i}][{j}] = 0 but a[{j}][{i}] != 0")
            }
            DatumViolation::Symmetrizable { i, j } => {
                write!(f, "symmetrizable: s[{i}]*a[{i}][{j}] != s[{j}]*a[{j}][{i}]")
            }
            DatumViolation::Symmetrizer { i, value } => write!(f, "symmetrizer: s[{i}] = {value} <= 0"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<DatumViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists every violated condition. Only shape problems are errors.
pub fn validate_datum(a: &[Vec<i64>], s: &[i64]) -> Result<ValidationReport> {
    let n = a.len();
    if let Some(row) = a.iter().position(|r| r.len() != n) {
        return Err(CrystalError::Dimension(format!("row {row} of the Cartan matrix has length {}, expected {n}", a[row].len())));
    }
    if s.len() != n {
        return Err(CrystalError::Dimension(format!("{} symmetrizers for a rank-{n} matrix", s.len())));
    }
    let mut violations = Vec::new();
    for (i, &si) in s.iter().enumerate() {
        if si <= 0 {
            violations.push(DatumViolation::Symmetrizer { i, value: si });
        }
    }
    for i in 0..n {
        let d = a[i][i];
        if !(d == 2 || (d <= 0 && d % 2 == 0)) {
            violations.push(DatumViolation::Diagonal { i, value: d });
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if a[i][j] > 0 {
                violations.push(DatumViolation::OffDiagonalSign { i, j, value: a[i][j] });
            }
            if a[i][j] == 0 && a[j][i] != 0 {
                violations.push(DatumViolation::ZeroSymmetry { i, j });
            }
            if i < j && s[i] * a[i][j] != s[j] * a[j][i] {
                violations.push(DatumViolation::Symmetrizable { i, j });
            }
        }
    }
    Ok(ValidationReport { violations })
}

/// A validated Borcherds-Cartan datum over a finite index set.
///
/// Immutable once built; share it behind an `Arc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorcherdsCartanDatum {
    names: Vec<String>,
    a: Vec<Vec<i64>>,
    s: Vec<i64>,
}

impl BorcherdsCartanDatum {
    pub fn new(names: Vec<String>, a: Vec<Vec<i64>>, s: Vec<i64>) -> Result<Self> {
        if names.len() != a.len() {
            return Err(CrystalError::Dimension(format!("{} index names for a rank-{} matrix", names.len(), a.len())));
        }
        let report = validate_datum(&a, &s)?;
        if !report.is_valid() {
            return Err(CrystalError::InvalidDatum(report));
        }
        Ok(BorcherdsCartanDatum { names, a, s })
    }

    /// Datum with indices named `1..=n`.
    pub fn with_numeric_names(a: Vec<Vec<i64>>, s: Vec<i64>) -> Result<Self> {
        let names = (1..=a.len()).map(|k| k.to_string()).collect();
        Self::new(names, a, s)
    }

    pub fn from_file(file: &DatumFile) -> Result<Self> {
        Self::new(file.indices.clone(), file.cartan.clone(), file.symmetrizers.clone())
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.s
    }

    #[inline]
    pub fn is_real(&self, i: usize) -> bool {
        self.a[i][i] == 2
    }

    pub fn real_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(|&i| self.is_real(i))
    }

    pub fn imaginary_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(|&i| !self.is_real(i))
    }

    /// `⟨h_i, w⟩ = lam[i] + Σ_j a_ij rt[j]`.
    pub fn pairing(&self, i: usize, w: &Weight) -> i64 {
        debug_assert_eq!(w.rank(), self.rank());
        let row = &self.a[i];
        row.iter().zip(&w.rt).fold(w.lam[i], |acc, (&aij, &c)| {
            acc.checked_add(aij.checked_mul(c).expect("pairing overflow")).expect("pairing overflow")
        })
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        (0..self.rank()).all(|i| self.pairing(i, w) >= 0)
    }

    /// `DA` as an explicit matrix.
    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        self.a.iter().zip(&self.s).map(|(row, &si)| row.iter().map(|&x| si * x).collect()).collect()
    }
}

/// On-disk datum: `{"indices": [...], "cartan": [[...]], "symmetrizers": [...]}`.
///
/// An optional `sequence` object selects the index sequence used to
/// realize `B(∞)`; any other key is rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    pub indices: Vec<String>,
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizers: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<crate::binf::SequenceSpec>,
}

impl DatumFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(CrystalError::Parse)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CrystalError::Io(path.display().to_string(), e))?;
        Self::parse(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d1() -> BorcherdsCartanDatum {
        BorcherdsCartanDatum::with_numeric_names(vec![vec![2, -1], vec![-1, 0]], vec![1, 1]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(validate_datum(&[vec![2, -1], vec![-1, 0]], &[1, 1]).unwrap().is_valid());
        assert!(validate_datum(&[vec![2]], &[1]).unwrap().is_valid());
        let r = validate_datum(&[vec![2, -1], vec![0, 0]], &[1, 1]).unwrap();
        assert!(r.violations.contains(&DatumViolation::ZeroSymmetry { i: 1, j: 0 }));
    }

    #[test]
    fn validate_flags_odd_diagonal_and_sign() {
        let r = validate_datum(&[vec![-1, 1], vec![1, 2]], &[1, 1]).unwrap();
        assert!(r.violations.contains(&DatumViolation::Diagonal { i: 0, value: -1 }));
        assert!(r.violations.contains(&DatumViolation::OffDiagonalSign { i: 0, j: 1, value: 1 }));
        let r = validate_datum(&[vec![2, -1], vec![-2, 2]], &[1, 1]).unwrap();
        assert_eq!(r.violations, vec![DatumViolation::Symmetrizable { i: 0, j: 1 }]);
        assert!(validate_datum(&[vec![2, -1], vec![-2, 2]], &[2, 1]).unwrap().is_valid());
    }

    #[test]
    fn dimension_mismatch_is_structural() {
        assert!(matches!(validate_datum(&[vec![2, 0]], &[1]), Err(CrystalError::Dimension(_))));
        assert!(matches!(validate_datum(&[vec![2]], &[1, 1]), Err(CrystalError::Dimension(_))));
    }

    #[test]
    fn real_and_imaginary() {
        let d = d1();
        assert!(d.is_real(0));
        assert!(!d.is_real(1));
        let monster = BorcherdsCartanDatum::with_numeric_names(vec![vec![2, 0], vec![0, -2]], vec![1, 1]).unwrap();
        assert!(!monster.is_real(1));
    }

    #[test]
    fn pairing_examples() {
        let d = d1();
        assert_eq!(d.pairing(0, &Weight::from_roots(vec![-1, 0])), -2);
        let w = &Weight::fundamental(2, 1) - &Weight::simple_root(2, 0);
        assert_eq!(d.pairing(1, &w), 2);
        assert_eq!(d.pairing(0, &Weight::fundamental(2, 0)), 1);
    }

    #[test]
    fn datum_file_rejects_unknown_fields() {
        let ok = r#"{"symmetrizers":[1,1],"indices":["1","2"],"cartan":[[2,-1],[-1,0]]}"#;
        let f = DatumFile::parse(ok).unwrap();
        assert_eq!(BorcherdsCartanDatum::from_file(&f).unwrap(), d1());
        let bad = r#"{"indices":["1"],"cartan":[[2]],"symmetrizers":[1],"extra":0}"#;
        assert!(DatumFile::parse(bad).is_err());
    }

    fn arb_datum() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<i64>)> {
        (1usize..6).prop_flat_map(|n| {
            (
                proptest::collection::vec(1i64..5, n),
                proptest::collection::vec(prop_oneof![Just(2i64), (0i64..4).prop_map(|k| -2 * k)], n),
                proptest::collection::vec(0i64..4, n * n),
            )
                .prop_map(move |(s, diag, m)| {
                    let mut a = vec![vec![0; n]; n];
                    for i in 0..n {
                        a[i][i] = diag[i];
                        for j in i + 1..n {
                            let g = num_integer::gcd(s[i], s[j]);
                            let k = m[i * n + j];
                            a[i][j] = -k * (s[j] / g);
                            a[j][i] = -k * (s[i] / g);
                        }
                    }
                    (a, s)
                })
        })
    }

    fn arb_weight(n: usize) -> impl Strategy<Value = Weight> {
        (proptest::collection::vec(-20i64..20, n), proptest::collection::vec(-20i64..20, n))
            .prop_map(|(lam, rt)| Weight { lam, rt })
    }

    proptest! {
        #[test]
        fn random_valid_data_are_symmetrizable((a, s) in arb_datum()) {
            let d = BorcherdsCartanDatum::with_numeric_names(a, s).unwrap();
            let da = d.symmetrized();
            for i in 0..d.rank() {
                for j in 0..d.rank() {
                    prop_assert_eq!(da[i][j], da[j][i]);
                }
            }
        }

        #[test]
        fn pairing_is_linear(w1 in arb_weight(2), w2 in arb_weight(2), i in 0usize..2) {
            let d = d1();
            prop_assert_eq!(d.pairing(i, &(&w1 + &w2)), d.pairing(i, &w1) + d.pairing(i, &w2));
        }
    }
}
