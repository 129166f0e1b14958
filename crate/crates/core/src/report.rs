//! Machine-readable verification reports shared by every checker.

use std::fmt;

use serde::Serialize;

/// The law a violation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    /// Axiom (i): `wt(ẽ_i b) = wt b + α_i`.
    AxiomRaiseWeight,
    /// Axiom (ii): `wt(f̃_i b) = wt b − α_i`.
    AxiomLowerWeight,
    /// Axiom (iii): `φ_i = ε_i + ⟨h_i, wt⟩`.
    AxiomPhiEpsWt,
    /// Axiom (iv): `f̃_i b = b'` iff `b = ẽ_i b'`.
    AxiomDuality,
    /// Axiom (v): statistics after `ẽ_i`.
    AxiomRaiseStats,
    /// Axiom (vi): statistics after `f̃_i`.
    AxiomLowerStats,
    /// Axiom (vii): `φ_i = −∞` forces `ẽ_i = f̃_i = 0`.
    AxiomNegInf,
    ProfileWeight,
    ProfileEps,
    ProfilePhi,
    MorphismImage,
    MorphismWeight,
    MorphismEps,
    MorphismPhi,
    MorphismLower,
    MorphismRaise,
    StrictLower,
    StrictRaise,
    Injective,
    RootImage,
    PathIndependence,
    WeightInNegCone,
    UniqueHighestWeight,
    Raisable,
    ClosedUnderRaise,
    AssocWeight,
    AssocEps,
    AssocPhi,
    AssocRaise,
    AssocLower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub node: usize,
    pub index: Option<usize>,
    pub law: Law,
    pub expected: String,
    pub found: String,
}

impl Violation {
    pub fn new(node: usize, index: Option<usize>, law: Law, expected: impl fmt::Display, found: impl fmt::Display) -> Self {
        Violation { node, index, law, expected: expected.to_string(), found: found.to_string() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node {} ", self.node)?;
        if let Some(i) = self.index {
            write!(f, "index {i} ")?;
        }
        write!(f, "{:?}: expected {}, found {}", self.law, self.expected, self.found)
    }
}

/// Outcome of a check. `skipped` counts relations that could not be
/// evaluated because they cross the truncation boundary.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checked: usize,
    pub skipped: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.violations.extend(other.violations);
    }

    pub fn count_of(&self, law: Law) -> usize {
        self.violations.iter().filter(|v| v.law == law).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violations, {} skipped ({} checked)", self.violations.len(), self.skipped, self.checked)
    }
}
