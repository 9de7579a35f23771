//! Violation reports shared by every checker.
//!
//! Checks never answer with a bare boolean: each failed constraint becomes a
//! [`Violation`] carrying the axiom tag, a witness locating it, and the two
//! sides of the broken inequality, so any consumer can replay the arithmetic.

use std::fmt;

use serde::Serialize;

/// Names the axiom or certificate condition a violation breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomTag {
    /// `d(x, y) = 0` exactly when `x = y`.
    Identity,
    /// `d(x, y) = d(y, x)`.
    Symmetry,
    /// `d(x, z) ≤ S · (d(x, y) + d(y, z))`.
    RelaxedTriangle,
    /// `d(x, z) ≤ θ(d(x, y), d(y, z))`.
    ThetaTriangle,
    /// Two legs below `φ(ε)` force the third side below `ε`.
    UniformRegularity,
    /// `θ(0, 0) = 0`.
    ActionOrigin,
    /// `θ(s, t) = θ(t, s)`.
    ActionSymmetry,
    /// θ strictly grows when either argument grows.
    ActionMonotonicity,
    /// `θ(s, t) = m` has a root `s ∈ [0, m]` for targets `m` in the image.
    ActionSolvability,
    /// `θ(s, 0) ≤ s`.
    ActionContraction,
    /// Exact triangle inequality of a constructed metric.
    Triangle,
    /// Constructed metric never exceeds the snowflaked input.
    UpperBound,
    /// Constructed metric vanishes exactly where the input does.
    ZeroSet,
    /// Constructed metric stays above the snowflaked input divided by the
    /// maximal distortion.
    LowerBound,
}

impl AxiomTag {
    pub fn as_str(self) -> &'static str {
        match self {
            AxiomTag::Identity => "identity",
            AxiomTag::Symmetry => "symmetry",
            AxiomTag::RelaxedTriangle => "relaxed-triangle",
            AxiomTag::ThetaTriangle => "theta-triangle",
            AxiomTag::UniformRegularity => "uniform-regularity",
            AxiomTag::ActionOrigin => "action-origin",
            AxiomTag::ActionSymmetry => "action-symmetry",
            AxiomTag::ActionMonotonicity => "action-monotonicity",
            AxiomTag::ActionSolvability => "action-solvability",
            AxiomTag::ActionContraction => "action-contraction",
            AxiomTag::Triangle => "triangle",
            AxiomTag::UpperBound => "upper-bound",
            AxiomTag::ZeroSet => "zero-set",
            AxiomTag::LowerBound => "lower-bound",
        }
    }
}

impl fmt::Display for AxiomTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Location of a violation: indices into the point set for matrix checks, or
/// real coordinates for checks that sample a function.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    Points(Vec<usize>),
    Values(Vec<f64>),
}

/// One broken constraint, replayable from the witness.
///
/// `left` is the value the data produced, `right` the bound it had to
/// respect, and `slack` the nonnegative amount by which the constraint is
/// broken.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub axiom: AxiomTag,
    pub witness: Witness,
    pub left: f64,
    pub right: f64,
    pub slack: f64,
}

/// Outcome of an axiom check; `passed` holds exactly when no violation was
/// found.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        Self { passed: violations.is_empty(), violations }
    }

    pub fn passing() -> Self {
        Self { passed: true, violations: Vec::new() }
    }

    /// Merge another report into this one, recomputing `passed`.
    pub fn absorb(&mut self, other: AxiomReport) {
        self.violations.extend(other.violations);
        self.passed = self.violations.is_empty();
    }

    pub fn has(&self, tag: AxiomTag) -> bool {
        self.violations.iter().any(|v| v.axiom == tag)
    }

    /// Distinct axiom tags among the violations, in first-seen order.
    pub fn violated_axioms(&self) -> Vec<AxiomTag> {
        let mut seen = Vec::new();
        for v in &self.violations {
            if !seen.contains(&v.axiom) {
                seen.push(v.axiom);
            }
        }
        seen
    }
}
