//! Uniform-regularity moduli and the three-condition metrizability gate.
//!
//! A distance sample is uniformly regular for a modulus `φ` when, for every
//! `ε` under test, two legs strictly below `φ(ε)` force the third side below
//! `ε`. Together with the identity and symmetry axioms this is the classical
//! criterion for metrizability of a uniformly regular ecart. At sample scale
//! we can only certify the absence of counterexamples, and every certificate
//! carries a scope line saying exactly that.
//!
//! Two modulus constructions are provided:
//!
//! * closed form for a b-metric with relaxation constant `S`:
//!   `φ(ε) = ε / (2S)`, since two legs below it bound the third side by
//!   `S · (φ + φ) = ε`;
//! * numeric for a θ-bounded sample: `φ(ε) = δ(ε) / √2`, where `δ(ε)` is an
//!   origin-continuity radius for θ. Two legs below `δ/√2` land inside the
//!   quarter-disk of radius `δ`, where θ was certified to stay below `ε`.

use std::f64::consts::SQRT_2;

use serde::Serialize;

use crate::baction::{origin_continuity_delta, BAction, ContinuityCertificate};
use crate::distances::{check_point_axioms, DistanceMatrix};
use crate::error::{Error, Result};
use crate::report::{AxiomReport, AxiomTag, Violation, Witness};
use crate::tolerances::Tolerances;

/// Length of the default log-spaced ε grid.
pub const EPSILON_GRID_LEN: usize = 16;

/// Fixed wording attached to every gate certificate. Finite samples cannot
/// prove metrizability of the underlying space; they can only fail to
/// refute it.
pub const SAMPLE_SCOPE: &str = "sample-scale: no counterexample at this sample and epsilon grid; \
     not a statement about the underlying space";

/// One `(ε, φ(ε))` pair of a modulus table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModulusEntry {
    pub epsilon: f64,
    pub phi: f64,
}

/// How a modulus was obtained.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum ModulusKind {
    /// `φ(ε) = ε / (2S)`.
    #[serde(rename = "b-metric-closed-form")]
    BMetricClosedForm { s: f64 },
    /// `φ(ε) = δ(ε) / √2` with one continuity certificate per table entry.
    #[serde(rename = "theta-numeric")]
    ThetaNumeric { action: String, certificates: Vec<ContinuityCertificate> },
}

/// A uniform-regularity modulus as a finite table over an ε grid.
///
/// Invariants enforced at construction: every `ε` and `φ` is positive and
/// finite, the `ε` column is strictly increasing, and `φ` is nondecreasing
/// in `ε`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularityModulus {
    pub kind: ModulusKind,
    table: Vec<ModulusEntry>,
}

impl RegularityModulus {
    /// Closed-form b-metric modulus over the given ε values.
    pub fn b_metric(s: f64, epsilons: &[f64]) -> Result<Self> {
        let epsilons = normalized_grid(epsilons)?;
        let table = epsilons
            .iter()
            .map(|&epsilon| Ok(ModulusEntry { epsilon, phi: modulus_b_metric(s, epsilon)? }))
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(ModulusKind::BMetricClosedForm { s }, table)
    }

    /// Numeric θ modulus over the given ε values, one continuity certificate
    /// per entry.
    pub fn theta(
        action: &BAction,
        epsilons: &[f64],
        start_resolution: u32,
        tol: &Tolerances,
    ) -> Result<Self> {
        let epsilons = normalized_grid(epsilons)?;
        let mut table = Vec::with_capacity(epsilons.len());
        let mut certificates = Vec::with_capacity(epsilons.len());
        for &epsilon in &epsilons {
            let (phi, certificate) = modulus_theta(action, epsilon, start_resolution, tol)?;
            table.push(ModulusEntry { epsilon, phi });
            certificates.push(certificate);
        }
        Self::from_table(
            ModulusKind::ThetaNumeric { action: action.name().to_owned(), certificates },
            table,
        )
    }

    /// Caller-supplied table, validated.
    pub fn from_table(kind: ModulusKind, table: Vec<ModulusEntry>) -> Result<Self> {
        for entry in &table {
            if !entry.epsilon.is_finite() || entry.epsilon <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "modulus table epsilon must be positive and finite, got {}",
                    entry.epsilon
                )));
            }
            if !entry.phi.is_finite() || entry.phi <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "modulus value must be positive and finite, got {} at epsilon {}",
                    entry.phi, entry.epsilon
                )));
            }
        }
        for pair in table.windows(2) {
            if pair[1].epsilon <= pair[0].epsilon {
                return Err(Error::InvalidParameter(
                    "modulus table epsilons must be strictly increasing".into(),
                ));
            }
            if pair[1].phi < pair[0].phi {
                return Err(Error::InvalidParameter(
                    "modulus must be nondecreasing in epsilon".into(),
                ));
            }
        }
        Ok(Self { kind, table })
    }

    pub fn table(&self) -> &[ModulusEntry] {
        &self.table
    }

    pub fn epsilons(&self) -> Vec<f64> {
        self.table.iter().map(|e| e.epsilon).collect()
    }

    /// `φ(ε)` for an ε present in the table (matched within 1e-12 relative).
    pub fn phi_at(&self, epsilon: f64) -> Result<f64> {
        self.table
            .iter()
            .find(|e| (e.epsilon - epsilon).abs() <= 1e-12 * epsilon.abs().max(1.0))
            .map(|e| e.phi)
            .ok_or(Error::ModulusEntryMissing(epsilon))
    }
}

fn normalized_grid(epsilons: &[f64]) -> Result<Vec<f64>> {
    for &e in epsilons {
        if !e.is_finite() || e <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "epsilon values must be positive and finite, got {e}"
            )));
        }
    }
    let mut grid = epsilons.to_vec();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    Ok(grid)
}

/// The closed-form b-metric modulus `φ(ε) = ε / (2S)`.
pub fn modulus_b_metric(s: f64, epsilon: f64) -> Result<f64> {
    if !s.is_finite() || s <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "relaxation constant must be positive and finite, got {s}"
        )));
    }
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be positive and finite, got {epsilon}"
        )));
    }
    Ok(epsilon / (2.0 * s))
}

/// The numeric θ modulus `φ(ε) = δ(ε) / √2`, together with the continuity
/// certificate backing it. Two legs below `φ(ε)` put the pair inside the
/// certified quarter-disk of radius `δ(ε)`.
pub fn modulus_theta(
    action: &BAction,
    epsilon: f64,
    start_resolution: u32,
    tol: &Tolerances,
) -> Result<(f64, ContinuityCertificate)> {
    let certificate = origin_continuity_delta(action, epsilon, start_resolution, tol)?;
    Ok((certificate.delta / SQRT_2, certificate))
}

/// For every ε in the grid, flag the ordered triples whose two legs are
/// strictly below `φ(ε)` while the third side still reaches `ε`.
///
/// Hypothesis and conclusion are both taken literally: legs exactly equal to
/// `φ(ε)` are outside the hypothesis, and a third side exactly equal to `ε`
/// is a violation. Triples with `x = z` can never be flagged since their
/// third side is the diagonal entry `d(x, x) = 0 < ε`; any positive modulus
/// works for them.
pub fn verify_uniform_regularity(
    d: &DistanceMatrix,
    modulus: &RegularityModulus,
    epsilons: &[f64],
) -> Result<AxiomReport> {
    let n = d.n();
    let mut violations = Vec::new();
    for &epsilon in epsilons {
        let phi = modulus.phi_at(epsilon)?;
        for x in 0..n {
            let row_x = d.row(x);
            for y in 0..n {
                if row_x[y] < phi {
                    let row_y = d.row(y);
                    for z in 0..n {
                        if row_y[z] < phi && row_x[z] >= epsilon {
                            violations.push(Violation {
                                axiom: AxiomTag::UniformRegularity,
                                witness: Witness::Points(vec![x, y, z]),
                                left: row_x[z],
                                right: epsilon,
                                slack: row_x[z] - epsilon,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(AxiomReport::from_violations(violations))
}

/// Pass/fail per gate condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GateConditions {
    pub identity: bool,
    pub symmetry: bool,
    pub uniform_regularity: bool,
}

/// Sample-scale metrizability certificate: the point axioms plus uniform
/// regularity under one modulus, with all witnesses retained.
#[derive(Debug, Clone, Serialize)]
pub struct ChittendenCertificate {
    pub passed: bool,
    pub conditions: GateConditions,
    pub epsilon_grid: Vec<f64>,
    pub modulus: RegularityModulus,
    pub witnesses: Vec<Violation>,
    pub scope: &'static str,
}

/// Run the full gate: identity, symmetry, and uniform regularity.
pub fn chittenden_gate(
    d: &DistanceMatrix,
    modulus: &RegularityModulus,
    epsilons: &[f64],
    tol: &Tolerances,
) -> Result<ChittendenCertificate> {
    let points = check_point_axioms(d, tol);
    let regularity = verify_uniform_regularity(d, modulus, epsilons)?;
    let identity = !points.has(AxiomTag::Identity);
    let symmetry = !points.has(AxiomTag::Symmetry);
    let uniform_regularity = regularity.passed;
    let mut witnesses = points.violations;
    witnesses.extend(regularity.violations);
    Ok(ChittendenCertificate {
        passed: identity && symmetry && uniform_regularity,
        conditions: GateConditions { identity, symmetry, uniform_regularity },
        epsilon_grid: epsilons.to_vec(),
        modulus: modulus.clone(),
        witnesses,
        scope: SAMPLE_SCOPE,
    })
}

/// Default ε grid for a sample: [`EPSILON_GRID_LEN`] log-spaced values from
/// half the smallest positive distance to twice the largest. Empty when the
/// sample has no positive distance.
pub fn default_epsilon_grid(d: &DistanceMatrix) -> Vec<f64> {
    let Some(lo) = d.min_positive_entry() else {
        return Vec::new();
    };
    let (a, b) = ((0.5 * lo).ln(), (2.0 * d.max_entry()).ln());
    (0..EPSILON_GRID_LEN)
        .map(|k| (a + (b - a) * k as f64 / (EPSILON_GRID_LEN - 1) as f64).exp())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distances::{DistanceMatrix, PointSet};

    fn matrix(rows: &[&[f64]]) -> DistanceMatrix {
        let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        DistanceMatrix::from_rows(PointSet::anonymous(rows.len()), &rows).unwrap()
    }

    fn squared_line() -> DistanceMatrix {
        matrix(&[&[0.0, 1.0, 4.0], &[1.0, 0.0, 1.0], &[4.0, 1.0, 0.0]])
    }

    #[test]
    fn b_metric_modulus_closed_form() {
        assert_eq!(modulus_b_metric(2.0, 1.0).unwrap(), 0.25);
        assert_eq!(modulus_b_metric(1.0, 3.0).unwrap(), 1.5);
        assert!(matches!(modulus_b_metric(0.0, 1.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(modulus_b_metric(2.0, 0.0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn modulus_table_is_sorted_positive_and_monotone() {
        let modulus = RegularityModulus::b_metric(2.0, &[4.0, 1.0, 2.0, 1.0]).unwrap();
        let eps: Vec<f64> = modulus.table().iter().map(|e| e.epsilon).collect();
        assert_eq!(eps, vec![1.0, 2.0, 4.0]);
        for pair in modulus.table().windows(2) {
            assert!(pair[0].phi <= pair[1].phi);
        }
        assert_eq!(modulus.phi_at(2.0).unwrap(), 0.5);
        assert!(matches!(modulus.phi_at(3.0), Err(Error::ModulusEntryMissing(_))));
    }

    #[test]
    fn from_table_rejects_broken_invariants() {
        let kind = ModulusKind::BMetricClosedForm { s: 1.0 };
        let bad_order = vec![
            ModulusEntry { epsilon: 2.0, phi: 1.0 },
            ModulusEntry { epsilon: 1.0, phi: 0.5 },
        ];
        assert!(matches!(
            RegularityModulus::from_table(kind.clone(), bad_order),
            Err(Error::InvalidParameter(_))
        ));
        let decreasing_phi = vec![
            ModulusEntry { epsilon: 1.0, phi: 1.0 },
            ModulusEntry { epsilon: 2.0, phi: 0.5 },
        ];
        assert!(matches!(
            RegularityModulus::from_table(kind.clone(), decreasing_phi),
            Err(Error::InvalidParameter(_))
        ));
        let nonpositive = vec![ModulusEntry { epsilon: 1.0, phi: 0.0 }];
        assert!(matches!(
            RegularityModulus::from_table(kind, nonpositive),
            Err(Error::InvalidParameter(_))
        ));
    }

    // The squared line is a 2-relaxed b-metric, so phi(eps) = eps / 4 must
    // leave no regular triple unexplained at any eps.
    #[test]
    fn squared_line_is_uniformly_regular_for_its_modulus() {
        let d = squared_line();
        let grid = default_epsilon_grid(&d);
        assert_eq!(grid.len(), EPSILON_GRID_LEN);
        let modulus = RegularityModulus::b_metric(2.0, &grid).unwrap();
        let report = verify_uniform_regularity(&d, &modulus, &grid).unwrap();
        assert!(report.passed, "{:?}", report.violations);
    }

    // Frozen counterexample: with an oversized modulus phi(3) = 1.5, the legs
    // d(0,1) = d(1,2) = 1 are below phi while d(0,2) = 4 >= 3.
    #[test]
    fn oversized_modulus_is_refuted_with_witness() {
        let d = squared_line();
        let kind = ModulusKind::BMetricClosedForm { s: 1.0 };
        let modulus = RegularityModulus::from_table(
            kind,
            vec![ModulusEntry { epsilon: 3.0, phi: 1.5 }],
        )
        .unwrap();
        let report = verify_uniform_regularity(&d, &modulus, &[3.0]).unwrap();
        assert!(!report.passed);
        let v = report
            .violations
            .iter()
            .find(|v| v.witness == Witness::Points(vec![0, 1, 2]))
            .expect("triple (0, 1, 2) must be flagged");
        assert_eq!(v.left, 4.0);
        assert_eq!(v.right, 3.0);
        assert_eq!(v.slack, 1.0);
    }

    // Legs exactly equal to phi are outside the hypothesis.
    #[test]
    fn hypothesis_boundary_is_exclusive() {
        let d = squared_line();
        let kind = ModulusKind::BMetricClosedForm { s: 1.0 };
        let modulus =
            RegularityModulus::from_table(kind, vec![ModulusEntry { epsilon: 3.0, phi: 1.0 }])
                .unwrap();
        let report = verify_uniform_regularity(&d, &modulus, &[3.0]).unwrap();
        assert!(report.passed, "{:?}", report.violations);
    }

    #[test]
    fn degenerate_triples_never_flagged() {
        // x = z triples have third side 0; even a huge modulus cannot flag
        // them on a two-point sample where no other triple exists
        let d = matrix(&[&[0.0, 5.0], &[5.0, 0.0]]);
        let kind = ModulusKind::BMetricClosedForm { s: 1.0 };
        let modulus =
            RegularityModulus::from_table(kind, vec![ModulusEntry { epsilon: 0.5, phi: 100.0 }])
                .unwrap();
        let report = verify_uniform_regularity(&d, &modulus, &[0.5]).unwrap();
        // (0, 1, 0) and (1, 0, 1) have both legs 5 < 100 and side 0 < 0.5;
        // (0, 0, 1) has a leg 0 and side 5 >= 0.5, so it is flagged, which is
        // correct: the modulus is genuinely too large for this sample
        assert!(report
            .violations
            .iter()
            .all(|v| matches!(&v.witness, Witness::Points(p) if p[0] != p[2])));
    }

    #[test]
    fn gate_combines_conditions_and_scope() {
        let d = squared_line();
        let grid = default_epsilon_grid(&d);
        let modulus = RegularityModulus::b_metric(2.0, &grid).unwrap();
        let cert = chittenden_gate(&d, &modulus, &grid, &Tolerances::default()).unwrap();
        assert!(cert.passed);
        assert!(cert.conditions.identity && cert.conditions.symmetry);
        assert!(cert.conditions.uniform_regularity);
        assert!(cert.witnesses.is_empty());
        assert_eq!(cert.scope, SAMPLE_SCOPE);

        // break symmetry; the gate must fail with the right condition marked
        let asym = matrix(&[&[0.0, 1.0, 4.0], &[2.0, 0.0, 1.0], &[4.0, 1.0, 0.0]]);
        let cert = chittenden_gate(&asym, &modulus, &grid, &Tolerances::default()).unwrap();
        assert!(!cert.passed);
        assert!(!cert.conditions.symmetry);
        assert!(cert.conditions.identity);
        assert!(!cert.witnesses.is_empty());
    }

    #[test]
    fn default_grid_spans_the_sample() {
        let d = squared_line();
        let grid = default_epsilon_grid(&d);
        assert_eq!(grid.len(), EPSILON_GRID_LEN);
        assert!((grid[0] - 0.5).abs() < 1e-12);
        assert!((grid[EPSILON_GRID_LEN - 1] - 8.0).abs() < 1e-12);
        for pair in grid.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        let zero = matrix(&[&[0.0]]);
        assert!(default_epsilon_grid(&zero).is_empty());
    }
}
