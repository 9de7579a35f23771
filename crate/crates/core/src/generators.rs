//! Sample generators with known constants, plus the named action registry.
//!
//! Every generator documents the relaxation constant its output is claimed
//! to satisfy, so tests can verify the claim rather than assume it. The
//! action registry carries, for each named family, the set of axioms it is
//! expected to violate; positive families have an empty set.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::baction::{BAction, DEFAULT_BUDGET, DEFAULT_RANGE};
use crate::distances::{DistanceMatrix, PointSet};
use crate::error::{Error, Result};
use crate::report::AxiomTag;

/// A named θ family and the axioms it is expected to break.
#[derive(Debug, Clone, Copy)]
pub struct ActionFamily {
    pub name: &'static str,
    pub summary: &'static str,
    pub expected_failures: &'static [AxiomTag],
}

/// The five built-in families addressable by name.
pub const ACTION_FAMILIES: &[ActionFamily] = &[
    ActionFamily {
        name: "additive",
        summary: "theta(s, t) = s + t; the plain triangle bound",
        expected_failures: &[],
    },
    ActionFamily {
        name: "additive-product",
        summary: "theta(s, t) = s + t + s t",
        expected_failures: &[],
    },
    ActionFamily {
        name: "squared-sum",
        summary: "theta(s, t) = (sqrt s + sqrt t)^2; bounds squared metrics",
        expected_failures: &[],
    },
    ActionFamily {
        name: "max",
        summary: "theta(s, t) = max(s, t); strict monotonicity fails on ties",
        expected_failures: &[AxiomTag::ActionMonotonicity],
    },
    ActionFamily {
        name: "shifted",
        summary: "theta(s, t) = s + t + 1; positive at the origin",
        expected_failures: &[
            AxiomTag::ActionOrigin,
            AxiomTag::ActionSolvability,
            AxiomTag::ActionContraction,
        ],
    },
];

/// Expected violation set for a named family, if the name is known.
pub fn expected_failures(name: &str) -> Option<&'static [AxiomTag]> {
    ACTION_FAMILIES.iter().find(|f| f.name == name).map(|f| f.expected_failures)
}

/// Optional overrides for [`gen_baction`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ActionParams {
    pub range: Option<f64>,
    pub budget: Option<u64>,
}

/// Instantiate a named action family.
pub fn gen_baction(name: &str, params: &ActionParams) -> Result<BAction> {
    let range = params.range.unwrap_or(DEFAULT_RANGE);
    let budget = params.budget.unwrap_or(DEFAULT_BUDGET);
    match name {
        "additive" => BAction::new(name, range, budget, |s, t| s + t),
        "additive-product" => BAction::new(name, range, budget, |s, t| s + t + s * t),
        "squared-sum" => BAction::new(name, range, budget, |s: f64, t: f64| {
            let r = s.sqrt() + t.sqrt();
            r * r
        }),
        "max" => BAction::new(name, range, budget, f64::max),
        "shifted" => BAction::new(name, range, budget, |s, t| s + t + 1.0),
        other => {
            let known: Vec<&str> = ACTION_FAMILIES.iter().map(|f| f.name).collect();
            Err(Error::InvalidParameter(format!(
                "unknown action family `{other}`; known families: {}",
                known.join(", ")
            )))
        }
    }
}

/// Distances `|x_i - x_j|^q` over points on the line, with the claimed
/// relaxation constant `2^(q-1)`.
///
/// The claim comes from `(a + b)^q ≤ 2^(q-1) (a^q + b^q)` for `q ≥ 1`
/// (power-mean inequality), applied to the two legs of any triple; it is
/// tight for the evenly spaced line.
pub fn gen_power_line(points: &[f64], q: f64) -> Result<(DistanceMatrix, f64)> {
    if !q.is_finite() || q < 1.0 {
        return Err(Error::InvalidParameter(format!("exponent q must satisfy q >= 1, got {q}")));
    }
    if points.is_empty() {
        return Err(Error::InvalidParameter("power line needs at least one point".into()));
    }
    for &x in points {
        if !x.is_finite() {
            return Err(Error::InvalidParameter(format!("non-finite coordinate {x}")));
        }
    }
    for (i, &x) in points.iter().enumerate() {
        if points[..i].contains(&x) {
            return Err(Error::InvalidParameter(format!("duplicate coordinate {x}")));
        }
    }
    let n = points.len();
    let labels = PointSet::new(points.iter().map(|x| format!("{x}")).collect())?;
    let mut entries = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..n {
            let gap = (points[i] - points[j]).abs();
            entries[i * n + j] = if q == 1.0 { gap } else { gap.powf(q) };
        }
    }
    let s_claim = if q == 1.0 { 1.0 } else { 2.0f64.powf(q - 1.0) };
    Ok((DistanceMatrix::from_flat(labels, entries)?, s_claim))
}

/// Distances `|P_i - P_j|^q` for `n` points drawn uniformly from the unit
/// square with a seeded generator; the claimed relaxation constant is again
/// `2^(q-1)`. Coordinates that collide exactly are redrawn so all pairwise
/// distances are positive.
pub fn gen_random_b_metric(n: usize, seed: u64, q: f64) -> Result<DistanceMatrix> {
    gen_random_b_metric_with_points(n, seed, q).map(|(d, _)| d)
}

/// Same as [`gen_random_b_metric`], also returning the planar coordinates
/// for provenance reporting.
pub fn gen_random_b_metric_with_points(
    n: usize,
    seed: u64,
    q: f64,
) -> Result<(DistanceMatrix, Vec<[f64; 2]>)> {
    if n == 0 {
        return Err(Error::InvalidParameter("sample size must be at least 1".into()));
    }
    if !q.is_finite() || q < 1.0 {
        return Err(Error::InvalidParameter(format!("exponent q must satisfy q >= 1, got {q}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coords: Vec<[f64; 2]> = Vec::with_capacity(n);
    while coords.len() < n {
        let candidate = [rng.random::<f64>(), rng.random::<f64>()];
        if !coords.contains(&candidate) {
            coords.push(candidate);
        }
    }
    let mut entries = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let dx = coords[i][0] - coords[j][0];
                let dy = coords[i][1] - coords[j][1];
                let euclid = (dx * dx + dy * dy).sqrt();
                entries[i * n + j] = if q == 1.0 { euclid } else { euclid.powf(q) };
            }
        }
    }
    let d = DistanceMatrix::from_flat(PointSet::anonymous(n), entries)?;
    Ok((d, coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distances::verify_b_metric;
    use crate::tolerances::Tolerances;

    #[test]
    fn registry_names_are_instantiable_and_consistent() {
        for family in ACTION_FAMILIES {
            let action = gen_baction(family.name, &ActionParams::default()).unwrap();
            assert_eq!(action.name(), family.name);
        }
        assert!(matches!(
            gen_baction("nope", &ActionParams::default()),
            Err(Error::InvalidParameter(_))
        ));
        assert_eq!(expected_failures("max"), Some(&[AxiomTag::ActionMonotonicity][..]));
        assert_eq!(expected_failures("additive"), Some(&[][..]));
        assert_eq!(expected_failures("nope"), None);
    }

    #[test]
    fn gen_baction_applies_overrides() {
        let params = ActionParams { range: Some(3.5), budget: Some(1234) };
        let action = gen_baction("additive", &params).unwrap();
        assert_eq!(action.range(), 3.5);
        assert_eq!(action.budget(), 1234);
        assert!(matches!(
            gen_baction("additive", &ActionParams { range: Some(-1.0), budget: None }),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn power_line_matches_hand_computation() {
        let (d, s_claim) = gen_power_line(&[0.0, 1.0, 2.0], 2.0).unwrap();
        assert_eq!(s_claim, 2.0);
        assert_eq!(d.get(0, 1), 1.0);
        assert_eq!(d.get(0, 2), 4.0);
        assert_eq!(d.get(2, 1), 1.0);
        assert_eq!(d.points().label(2), "2");
        let (_, s_claim) = gen_power_line(&[0.0, 1.0], 3.0).unwrap();
        assert_eq!(s_claim, 4.0);
        let (_, s_claim) = gen_power_line(&[0.0, 1.0], 1.0).unwrap();
        assert_eq!(s_claim, 1.0);
    }

    #[test]
    fn power_line_rejects_bad_input() {
        assert!(matches!(gen_power_line(&[], 2.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(gen_power_line(&[0.0, 0.0], 2.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(gen_power_line(&[0.0, 1.0], 0.5), Err(Error::InvalidParameter(_))));
        assert!(matches!(
            gen_power_line(&[0.0, f64::INFINITY], 2.0),
            Err(Error::InvalidParameter(_))
        ));
    }

    // The claimed constant is provable for power distances; spot-check it
    // instead of trusting it.
    #[test]
    fn generated_samples_verify_at_the_claimed_constant() {
        let tol = Tolerances::default();
        for q in [1.0, 1.5, 2.0, 3.0] {
            let (d, s_claim) = gen_power_line(&[0.0, 0.7, 1.9, 4.2, 4.3], q).unwrap();
            let report = verify_b_metric(&d, s_claim, &tol).unwrap();
            assert!(report.passed, "q = {q}: {:?}", report.violations);
        }
        for (seed, q) in [(1u64, 1.0), (2, 1.5), (3, 2.0), (4, 3.0)] {
            let d = gen_random_b_metric(20, seed, q).unwrap();
            let s_claim = if q == 1.0 { 1.0 } else { 2.0f64.powf(q - 1.0) };
            let report = verify_b_metric(&d, s_claim, &tol).unwrap();
            assert!(report.passed, "seed {seed} q {q}: {:?}", report.violations);
        }
    }

    #[test]
    fn random_samples_are_deterministic_per_seed() {
        let a = gen_random_b_metric(12, 99, 2.0).unwrap();
        let b = gen_random_b_metric(12, 99, 2.0).unwrap();
        assert_eq!(a, b);
        let c = gen_random_b_metric(12, 100, 2.0).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn random_samples_have_positive_off_diagonal() {
        let d = gen_random_b_metric(30, 7, 1.5).unwrap();
        for i in 0..d.n() {
            for j in 0..d.n() {
                if i != j {
                    assert!(d.get(i, j) > 0.0);
                } else {
                    assert_eq!(d.get(i, j), 0.0);
                }
            }
        }
        assert!(matches!(gen_random_b_metric(0, 1, 1.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(gen_random_b_metric(3, 1, 0.9), Err(Error::InvalidParameter(_))));
    }
}
