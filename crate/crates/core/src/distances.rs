//! Finite distance samples and the axioms they are checked against.
//!
//! A [`DistanceMatrix`] stores the full pairwise distance table over a
//! labelled point set. Construction enforces structure only: the table must
//! be square with finite nonnegative entries and distinct labels. Symmetry,
//! a zero diagonal, and positivity off the diagonal are mathematical axioms,
//! not structural facts; a matrix is allowed to carry such defects precisely
//! so that [`check_point_axioms`] can report them with witnesses.

use std::collections::HashSet;

use crate::baction::BAction;
use crate::error::{Error, Result};
use crate::report::{AxiomReport, AxiomTag, Violation, Witness};
use crate::tolerances::Tolerances;

/// Ordered, pairwise-distinct point labels: the carrier set of a sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    labels: Vec<String>,
}

impl PointSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(labels.len());
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::Malformed(format!("duplicate point label `{label}`")));
            }
        }
        Ok(Self { labels })
    }

    /// Labels `p0`, `p1`, ... for points with no external identity.
    pub fn anonymous(n: usize) -> Self {
        Self { labels: (0..n).map(|i| format!("p{i}")).collect() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// A full pairwise distance table over a [`PointSet`].
///
/// Entries are guaranteed finite and nonnegative; nothing else. Generators
/// and the metrization pipeline only ever produce axiom-clean tables, but
/// hand-built or parsed input may violate any point axiom and still load.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    points: PointSet,
    entries: Vec<f64>,
}

impl DistanceMatrix {
    /// Build from a row-major flat buffer of length `n * n`.
    pub fn from_flat(points: PointSet, entries: Vec<f64>) -> Result<Self> {
        let n = points.len();
        if entries.len() != n * n {
            return Err(Error::Malformed(format!(
                "expected {n} x {n} = {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        for (k, &v) in entries.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::Malformed(format!(
                    "non-finite distance {v} at ({}, {})",
                    k / n,
                    k % n
                )));
            }
            if v < 0.0 {
                return Err(Error::Malformed(format!(
                    "negative distance {v} at ({}, {})",
                    k / n,
                    k % n
                )));
            }
        }
        Ok(Self { points, entries })
    }

    pub fn from_rows(points: PointSet, rows: &[Vec<f64>]) -> Result<Self> {
        let n = points.len();
        if rows.len() != n {
            return Err(Error::Malformed(format!("expected {n} rows, got {}", rows.len())));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        Self::from_flat(points, rows.concat())
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.points.len() + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.points.len();
        &self.entries[i * n..(i + 1) * n]
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Largest entry; 0 for a table with at most one point.
    pub fn max_entry(&self) -> f64 {
        self.entries.iter().copied().fold(0.0, f64::max)
    }

    /// Smallest strictly positive entry, if any.
    pub fn min_positive_entry(&self) -> Option<f64> {
        self.entries
            .iter()
            .copied()
            .filter(|&v| v > 0.0)
            .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.min(v))))
    }

    /// Off-diagonal values, row-major, both orientations.
    pub fn off_diagonal(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.n();
        (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| self.get(i, j)))
    }
}

/// Check the point axioms: zero diagonal, positivity off the diagonal, and
/// symmetry.
///
/// Diagonal entries are flagged when they exceed `tol_abs` in absolute
/// value; off-diagonal zeros are flagged exactly (a distance below `tol_abs`
/// is still a distance, an exact zero off the diagonal is an identity
/// failure); symmetry is flagged once per unordered pair beyond `tol_abs`.
pub fn check_point_axioms(d: &DistanceMatrix, tol: &Tolerances) -> AxiomReport {
    let n = d.n();
    let mut violations = Vec::new();
    for i in 0..n {
        let v = d.get(i, i);
        if v.abs() > tol.tol_abs {
            violations.push(Violation {
                axiom: AxiomTag::Identity,
                witness: Witness::Points(vec![i, i]),
                left: v,
                right: 0.0,
                slack: v.abs(),
            });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && d.get(i, j) == 0.0 {
                violations.push(Violation {
                    axiom: AxiomTag::Identity,
                    witness: Witness::Points(vec![i, j]),
                    left: 0.0,
                    right: 0.0,
                    slack: 0.0,
                });
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (d.get(i, j), d.get(j, i));
            if (a - b).abs() > tol.tol_abs {
                violations.push(Violation {
                    axiom: AxiomTag::Symmetry,
                    witness: Witness::Points(vec![i, j]),
                    left: a,
                    right: b,
                    slack: (a - b).abs(),
                });
            }
        }
    }
    AxiomReport::from_violations(violations)
}

/// Smallest constant `S` for which the sample satisfies the relaxed triangle
/// inequality: the supremum of `d(x, z) / (d(x, y) + d(y, z))` over ordered
/// triples with a positive denominator. Returns 0 for samples with no such
/// triple (n ≤ 1, or all distances zero).
pub fn minimal_relaxation_constant(d: &DistanceMatrix) -> f64 {
    let n = d.n();
    let mut sup = 0.0f64;
    for x in 0..n {
        let row_x = d.row(x);
        for y in 0..n {
            let dxy = row_x[y];
            let row_y = d.row(y);
            for z in 0..n {
                let legs = dxy + row_y[z];
                if legs > 0.0 {
                    let ratio = row_x[z] / legs;
                    if ratio > sup {
                        sup = ratio;
                    }
                }
            }
        }
    }
    sup
}

/// Check all b-metric axioms for relaxation constant `s`: the point axioms
/// plus `d(x, z) ≤ s · (d(x, y) + d(y, z))` over every ordered triple.
pub fn verify_b_metric(d: &DistanceMatrix, s: f64, tol: &Tolerances) -> Result<AxiomReport> {
    if !s.is_finite() || s <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "relaxation constant must be positive and finite, got {s}"
        )));
    }
    let mut report = check_point_axioms(d, tol);
    let n = d.n();
    let mut violations = Vec::new();
    for x in 0..n {
        let row_x = d.row(x);
        for y in 0..n {
            let dxy = row_x[y];
            let row_y = d.row(y);
            for z in 0..n {
                let bound = s * (dxy + row_y[z]);
                let lhs = row_x[z];
                if lhs > bound + tol.tol_abs {
                    violations.push(Violation {
                        axiom: AxiomTag::RelaxedTriangle,
                        witness: Witness::Points(vec![x, y, z]),
                        left: lhs,
                        right: bound,
                        slack: lhs - bound,
                    });
                }
            }
        }
    }
    report.absorb(AxiomReport::from_violations(violations));
    Ok(report)
}

/// Check the action-bounded triangle inequality
/// `d(x, z) ≤ θ(d(x, y), d(y, z))` over every ordered triple.
///
/// This is the triangle check only; combine with [`check_point_axioms`] for
/// a full verdict. Action evaluation failures propagate as errors and are
/// not metered against the action's budget.
pub fn verify_theta_metric(
    d: &DistanceMatrix,
    action: &BAction,
    tol: &Tolerances,
) -> Result<AxiomReport> {
    let n = d.n();
    let mut violations = Vec::new();
    for x in 0..n {
        let row_x = d.row(x);
        for y in 0..n {
            let dxy = row_x[y];
            let row_y = d.row(y);
            for z in 0..n {
                let bound = action.eval(dxy, row_y[z])?;
                let lhs = row_x[z];
                if lhs > bound + tol.tol_abs {
                    violations.push(Violation {
                        axiom: AxiomTag::ThetaTriangle,
                        witness: Witness::Points(vec![x, y, z]),
                        left: lhs,
                        right: bound,
                        slack: lhs - bound,
                    });
                }
            }
        }
    }
    Ok(AxiomReport::from_violations(violations))
}
