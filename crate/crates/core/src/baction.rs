//! Black-box binary actions on the nonnegative quadrant and their axioms.
//!
//! A [`BAction`] wraps an evaluable `θ(s, t)` together with a declared
//! sampling range and a per-check evaluation budget. All checks here are
//! falsification-only: they sample θ on finite grids and can refute an axiom
//! with a concrete witness, but a pass certifies nothing beyond the sampled
//! resolution. The four axioms checked:
//!
//! 1. origin and symmetry: `θ(0, 0) = 0` and `θ(s, t) = θ(t, s)`;
//! 2. strict monotonicity in each argument;
//! 3. solvability: for targets `m` in the image and `t ∈ [0, m]`, the
//!    equation `θ(s, t) = m` has a root `s ∈ [0, m]`;
//! 4. contraction on the axis: `θ(s, 0) ≤ s`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{AxiomReport, AxiomTag, Violation, Witness};
use crate::tolerances::Tolerances;

/// Default side resolution for axiom grids and continuity sampling.
pub const DEFAULT_GRID_N: usize = 64;
/// Default per-check evaluation budget.
pub const DEFAULT_BUDGET: u64 = 100_000_000;
/// Default declared range bound for sampling.
pub const DEFAULT_RANGE: f64 = 10.0;

/// Relative width at which the continuity radius bisection stops. Kept well
/// below the certificate stability threshold so refinement noise cannot mask
/// genuine grid effects.
const DELTA_REFINE_REL: f64 = 1e-9;
/// Resolution ceiling for certificate stabilization.
const MAX_RESOLUTION: u32 = 4096;
/// Number of image targets sampled by the solvability check.
const SOLVABILITY_TARGETS: usize = 16;
/// Fractions of `m` probed as the fixed argument `t` of each solve.
const SOLVABILITY_FRACTIONS: [f64; 9] =
    [0.0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875, 1.0];

/// A binary action `θ : [0, ∞)² → [0, ∞)` treated as a black box.
#[derive(Clone)]
pub struct BAction {
    name: String,
    range: f64,
    budget: u64,
    eval_fn: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for BAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BAction")
            .field("name", &self.name)
            .field("range", &self.range)
            .field("budget", &self.budget)
            .finish_non_exhaustive()
    }
}

impl BAction {
    pub fn new(
        name: impl Into<String>,
        range: f64,
        budget: u64,
        eval: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if !range.is_finite() || range <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "declared range must be positive and finite, got {range}"
            )));
        }
        if budget == 0 {
            return Err(Error::InvalidParameter("evaluation budget must be positive".into()));
        }
        Ok(Self { name: name.into(), range, budget, eval_fn: Arc::new(eval) })
    }

    pub fn with_defaults(
        name: impl Into<String>,
        eval: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self::new(name, DEFAULT_RANGE, DEFAULT_BUDGET, eval)
            .expect("default range and budget are valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn range(&self) -> f64 {
        self.range
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Evaluate, rejecting NaN, infinities, and negative values.
    pub fn eval(&self, s: f64, t: f64) -> Result<f64> {
        let value = (self.eval_fn)(s, t);
        if value.is_finite() && value >= 0.0 {
            Ok(value)
        } else {
            Err(Error::ActionEval { name: self.name.clone(), s, t, value })
        }
    }
}

/// Certificate that θ stays strictly below `epsilon` on the sampled
/// quarter-disk of radius `delta` around the origin.
///
/// `sup_observed` is the largest sampled value (interior grid plus boundary
/// arc) at the final `grid_resolution`. The radius is accepted only after it
/// is stable across two consecutive grid refinements, so the certificate is
/// resolution-checked, not resolution-blind.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityCertificate {
    pub epsilon: f64,
    pub delta: f64,
    pub sup_observed: f64,
    pub grid_resolution: u32,
}

/// Budget-counted evaluation within one check.
struct Meter<'a> {
    action: &'a BAction,
    context: &'static str,
    left: u64,
}

impl<'a> Meter<'a> {
    fn new(action: &'a BAction, context: &'static str) -> Self {
        Self { action, context, left: action.budget }
    }

    fn set_context(&mut self, context: &'static str) {
        self.context = context;
    }

    fn eval(&mut self, s: f64, t: f64) -> Result<f64> {
        if self.left == 0 {
            return Err(Error::BudgetExhausted {
                name: self.action.name.clone(),
                context: self.context.to_owned(),
            });
        }
        self.left -= 1;
        self.action.eval(s, t)
    }
}

/// Check the four action axioms on a uniform `grid_n x grid_n` grid over
/// `[0, range]²`.
///
/// Monotonicity is compared along axis-aligned neighbour pairs only: chains
/// of such comparisons reach every comparable grid pair, so a clean sweep
/// covers the whole grid while any violation still yields an adjacent
/// witness. Equality counts as a violation; the axiom is strict.
/// Solvability draws up to 16 targets from the observed image (capped at the
/// declared range, so every probe stays inside it) and solves for a spread
/// of `t ∈ [0, m]` at each.
pub fn check_baction_axioms(
    action: &BAction,
    grid_n: usize,
    tol: &Tolerances,
) -> Result<AxiomReport> {
    if grid_n < 2 {
        return Err(Error::InvalidParameter(format!("grid_n must be at least 2, got {grid_n}")));
    }
    let mut meter = Meter::new(action, "the axiom grid sweep");
    let range = action.range();
    let grid: Vec<f64> =
        (0..grid_n).map(|k| range * k as f64 / (grid_n - 1) as f64).collect();
    let mut table = vec![0.0f64; grid_n * grid_n];
    for i in 0..grid_n {
        for j in 0..grid_n {
            table[i * grid_n + j] = meter.eval(grid[i], grid[j])?;
        }
    }
    let th = |i: usize, j: usize| table[i * grid_n + j];

    let mut violations = Vec::new();

    let origin = th(0, 0);
    if origin.abs() > tol.tol_abs {
        violations.push(Violation {
            axiom: AxiomTag::ActionOrigin,
            witness: Witness::Values(vec![0.0, 0.0]),
            left: origin,
            right: 0.0,
            slack: origin.abs(),
        });
    }

    for i in 0..grid_n {
        for j in (i + 1)..grid_n {
            let (a, b) = (th(i, j), th(j, i));
            if (a - b).abs() > tol.tol_abs {
                violations.push(Violation {
                    axiom: AxiomTag::ActionSymmetry,
                    witness: Witness::Values(vec![grid[i], grid[j]]),
                    left: a,
                    right: b,
                    slack: (a - b).abs(),
                });
            }
        }
    }

    // witness layout for monotonicity: [s, t, s', t'] with (s, t) <= (s', t')
    // componentwise and one strict coordinate
    for i in 0..grid_n {
        for j in 0..grid_n - 1 {
            if th(i, j) >= th(i, j + 1) {
                violations.push(Violation {
                    axiom: AxiomTag::ActionMonotonicity,
                    witness: Witness::Values(vec![grid[i], grid[j], grid[i], grid[j + 1]]),
                    left: th(i, j),
                    right: th(i, j + 1),
                    slack: th(i, j) - th(i, j + 1),
                });
            }
        }
    }
    for i in 0..grid_n - 1 {
        for j in 0..grid_n {
            if th(i, j) >= th(i + 1, j) {
                violations.push(Violation {
                    axiom: AxiomTag::ActionMonotonicity,
                    witness: Witness::Values(vec![grid[i], grid[j], grid[i + 1], grid[j]]),
                    left: th(i, j),
                    right: th(i + 1, j),
                    slack: th(i, j) - th(i + 1, j),
                });
            }
        }
    }

    for i in 1..grid_n {
        let v = th(i, 0);
        if v > grid[i] + tol.tol_abs {
            violations.push(Violation {
                axiom: AxiomTag::ActionContraction,
                witness: Witness::Values(vec![grid[i]]),
                left: v,
                right: grid[i],
                slack: v - grid[i],
            });
        }
    }

    meter.set_context("the solvability check");
    let mut image: Vec<f64> = table.iter().copied().filter(|&v| v <= range).collect();
    image.sort_by(f64::total_cmp);
    image.dedup();
    for &m in &spread(&image, SOLVABILITY_TARGETS) {
        for &frac in &SOLVABILITY_FRACTIONS {
            let t = frac * m;
            match solve_with_meter(m, t, tol, &mut meter) {
                Ok(_) => {}
                Err(Error::NoRoot { .. }) => {
                    let at_zero = meter.eval(0.0, t)?;
                    let at_m = meter.eval(m, t)?;
                    // whichever endpoint puts the target out of reach
                    let (left, slack) =
                        if at_zero > m { (at_zero, at_zero - m) } else { (at_m, m - at_m) };
                    violations.push(Violation {
                        axiom: AxiomTag::ActionSolvability,
                        witness: Witness::Values(vec![m, t]),
                        left,
                        right: m,
                        slack,
                    });
                }
                Err(e) => return Err(e),
            }
            if m == 0.0 {
                break;
            }
        }
    }

    Ok(AxiomReport::from_violations(violations))
}

/// Up to `k` values spread evenly through a sorted slice, endpoints included.
fn spread(sorted: &[f64], k: usize) -> Vec<f64> {
    if sorted.len() <= k {
        return sorted.to_vec();
    }
    (0..k).map(|i| sorted[i * (sorted.len() - 1) / (k - 1)]).collect()
}

/// Solve `θ(s, t) = m` for `s ∈ [0, m]` by bisection.
///
/// For a valid action θ is strictly monotone in `s`, so the root is unique
/// when it exists. Fails with [`Error::NoRoot`] when `θ(·, t) - m` has no
/// sign change over `[0, m]`: a direct counterexample to solvability at
/// `(m, t)`.
pub fn solve_solvability(action: &BAction, m: f64, t: f64, tol: &Tolerances) -> Result<f64> {
    let mut meter = Meter::new(action, "the solvability check");
    solve_with_meter(m, t, tol, &mut meter)
}

fn solve_with_meter(m: f64, t: f64, tol: &Tolerances, meter: &mut Meter<'_>) -> Result<f64> {
    if !m.is_finite() || m < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "solve target must be finite and nonnegative, got {m}"
        )));
    }
    if !t.is_finite() || t < 0.0 || t > m {
        return Err(Error::InvalidParameter(format!("t = {t} must lie in [0, {m}]")));
    }
    let residual = tol.root_residual(m);
    let f_lo = meter.eval(0.0, t)? - m;
    if f_lo.abs() <= residual {
        return Ok(0.0);
    }
    let f_hi = meter.eval(m, t)? - m;
    if f_hi.abs() <= residual {
        return Ok(m);
    }
    if f_lo > 0.0 || f_hi < 0.0 {
        return Err(Error::NoRoot { m, t });
    }
    let (mut lo, mut hi) = (0.0f64, m);
    let mut best = f_lo.abs().min(f_hi.abs());
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let f_mid = meter.eval(mid, t)? - m;
        if f_mid.abs() <= residual {
            return Ok(mid);
        }
        best = best.min(f_mid.abs());
        if f_mid < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::RootStalled { m, t, residual, best })
}

/// Find the largest radius `δ ≤ min(range, ε)` whose sampled quarter-disk
/// keeps θ strictly below ε, then refine the sampling grid (doubling the
/// resolution) until the radius is stable across two consecutive
/// refinements.
///
/// The sample is the uniform grid over `[0, δ]²` restricted to
/// `{s² + t² ≤ δ²}` plus the boundary arc; the resolution is kept even so
/// the diagonal direction of the arc is always probed. The certificate is
/// falsification-grade: `sup_observed` is a sampled maximum, not a proven
/// supremum.
pub fn origin_continuity_delta(
    action: &BAction,
    epsilon: f64,
    start_resolution: u32,
    tol: &Tolerances,
) -> Result<ContinuityCertificate> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be positive and finite, got {epsilon}"
        )));
    }
    if start_resolution < 2 {
        return Err(Error::InvalidParameter(format!(
            "start resolution must be at least 2, got {start_resolution}"
        )));
    }
    let mut meter = Meter::new(action, "the origin-continuity search");
    let floor = tol.delta_floor_for(action.range());
    let mut resolution = start_resolution + start_resolution % 2;
    let mut previous: Option<f64> = None;
    let mut stable = 0u32;
    loop {
        let delta = search_delta(action, epsilon, resolution, floor, &mut meter)?;
        if let Some(prev) = previous {
            if (delta - prev).abs() <= tol.tol_rel * delta.max(prev) {
                stable += 1;
            } else {
                stable = 0;
            }
        }
        previous = Some(delta);
        if stable >= 2 {
            let sup_observed = sampled_sup(delta, resolution, &mut meter)?;
            return Ok(ContinuityCertificate {
                epsilon,
                delta,
                sup_observed,
                grid_resolution: resolution,
            });
        }
        if resolution >= MAX_RESOLUTION {
            return Err(Error::CertificateUnstable {
                name: action.name().to_owned(),
                epsilon,
                resolution,
            });
        }
        resolution *= 2;
    }
}

/// One radius search at a fixed grid resolution: geometric halving from
/// `min(range, ε)` down to the first radius whose sampled sup drops below ε,
/// then bisection between the last failing and first passing radius.
fn search_delta(
    action: &BAction,
    epsilon: f64,
    resolution: u32,
    floor: f64,
    meter: &mut Meter<'_>,
) -> Result<f64> {
    let start = action.range().min(epsilon);
    if sampled_sup(start, resolution, meter)? < epsilon {
        return Ok(start);
    }
    let mut failing = start;
    let passing = loop {
        let candidate = 0.5 * failing;
        if candidate <= floor {
            return Err(Error::ContinuityFailure {
                name: action.name().to_owned(),
                epsilon,
                floor,
            });
        }
        if sampled_sup(candidate, resolution, meter)? < epsilon {
            break candidate;
        }
        failing = candidate;
    };
    let (mut lo, mut hi) = (passing, failing);
    while hi - lo > DELTA_REFINE_REL * hi {
        let mid = 0.5 * (lo + hi);
        if sampled_sup(mid, resolution, meter)? < epsilon {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Largest sampled value of θ over the quarter-disk of radius `delta`:
/// interior grid points with `s² + t² ≤ δ²` plus the boundary arc.
fn sampled_sup(delta: f64, resolution: u32, meter: &mut Meter<'_>) -> Result<f64> {
    let r = resolution as usize;
    let limit = delta * delta;
    let mut sup = f64::NEG_INFINITY;
    for i in 0..=r {
        let s = delta * i as f64 / r as f64;
        let s2 = s * s;
        for j in 0..=r {
            let t = delta * j as f64 / r as f64;
            if s2 + t * t > limit {
                // t only grows within the row; nothing further is inside
                break;
            }
            let v = meter.eval(s, t)?;
            if v > sup {
                sup = v;
            }
        }
    }
    for k in 0..=r {
        let angle = FRAC_PI_2 * k as f64 / r as f64;
        let v = meter.eval(delta * angle.cos(), delta * angle.sin())?;
        if v > sup {
            sup = v;
        }
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn additive() -> BAction {
        BAction::with_defaults("additive", |s, t| s + t)
    }

    fn additive_product() -> BAction {
        BAction::with_defaults("additive-product", |s, t| s + t + s * t)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn constructor_rejects_bad_parameters() {
        assert!(matches!(
            BAction::new("x", 0.0, 10, |s, t| s + t),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            BAction::new("x", f64::INFINITY, 10, |s, t| s + t),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            BAction::new("x", 1.0, 0, |s, t| s + t),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn eval_rejects_non_finite_and_negative_values() {
        let bad = BAction::with_defaults("bad", |s, t| s - t);
        assert_eq!(bad.eval(3.0, 1.0).unwrap(), 2.0);
        let err = bad.eval(1.0, 3.0).unwrap_err();
        match err {
            Error::ActionEval { name, s, t, value } => {
                assert_eq!(name, "bad");
                assert_eq!((s, t), (1.0, 3.0));
                assert_eq!(value, -2.0);
            }
            other => panic!("unexpected error {other:?}"),
        }
        let nan = BAction::with_defaults("nan", |_, _| f64::NAN);
        assert!(matches!(nan.eval(0.0, 0.0), Err(Error::ActionEval { .. })));
    }

    #[test]
    fn additive_and_product_families_pass_all_axioms() {
        for action in [additive(), additive_product()] {
            let report = check_baction_axioms(&action, DEFAULT_GRID_N, &tol()).unwrap();
            assert!(report.passed, "{}: {:?}", action.name(), report.violations);
        }
        let squared_sum = BAction::with_defaults("squared-sum", |s: f64, t: f64| {
            let r = s.sqrt() + t.sqrt();
            r * r
        });
        let report = check_baction_axioms(&squared_sum, DEFAULT_GRID_N, &tol()).unwrap();
        assert!(report.passed, "squared-sum: {:?}", report.violations);
    }

    #[test]
    fn max_fails_monotonicity_and_nothing_else() {
        let max = BAction::with_defaults("max", f64::max);
        let report = check_baction_axioms(&max, DEFAULT_GRID_N, &tol()).unwrap();
        assert!(!report.passed);
        assert_eq!(report.violated_axioms(), vec![AxiomTag::ActionMonotonicity]);
        // every witness replays: theta at the larger point does not exceed
        // theta at the smaller one
        for v in &report.violations {
            let Witness::Values(w) = &v.witness else { panic!("expected value witness") };
            assert_eq!(w.len(), 4);
            let small = max.eval(w[0], w[1]).unwrap();
            let large = max.eval(w[2], w[3]).unwrap();
            assert!(small >= large);
            assert_eq!(v.left, small);
            assert_eq!(v.right, large);
        }
    }

    #[test]
    fn shifted_fails_origin_solvability_and_contraction() {
        let shifted = BAction::with_defaults("shifted", |s, t| s + t + 1.0);
        let report = check_baction_axioms(&shifted, DEFAULT_GRID_N, &tol()).unwrap();
        assert!(!report.passed);
        let tags = report.violated_axioms();
        assert!(tags.contains(&AxiomTag::ActionOrigin));
        assert!(tags.contains(&AxiomTag::ActionSolvability));
        assert!(tags.contains(&AxiomTag::ActionContraction));
        assert!(!tags.contains(&AxiomTag::ActionSymmetry));
        assert!(!tags.contains(&AxiomTag::ActionMonotonicity));
        let origin = report
            .violations
            .iter()
            .find(|v| v.axiom == AxiomTag::ActionOrigin)
            .unwrap();
        assert_eq!(origin.left, 1.0);
        assert_eq!(origin.right, 0.0);
    }

    #[test]
    fn budget_exhaustion_is_reported_not_looped() {
        let starved = BAction::new("additive", DEFAULT_RANGE, 100, |s, t| s + t).unwrap();
        let err = check_baction_axioms(&starved, DEFAULT_GRID_N, &tol()).unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted { .. }));
    }

    // Oracle: theta(s, t) = s + t + s t with t = 1 gives 2s + 1 = 5, s = 2.
    #[test]
    fn solve_recovers_known_roots() {
        let t = tol();
        let s = solve_solvability(&additive_product(), 5.0, 1.0, &t).unwrap();
        assert!((s - 2.0).abs() < 1e-9, "s = {s}");
        // additive: s + 2 = 5 at s = 3
        let s = solve_solvability(&additive(), 5.0, 2.0, &t).unwrap();
        assert!((s - 3.0).abs() < 1e-9, "s = {s}");
        // boundary root: s + 5 = 5 at s = 0
        let s = solve_solvability(&additive(), 5.0, 5.0, &t).unwrap();
        assert_eq!(s, 0.0);
    }

    #[test]
    fn solve_reports_missing_roots_and_bad_arguments() {
        let t = tol();
        let shifted = BAction::with_defaults("shifted", |s, t| s + t + 1.0);
        // theta(s, 0) = s + 1 never hits small m from below at s = 0 is 1 > 0.5
        assert!(matches!(
            solve_solvability(&shifted, 0.5, 0.0, &t),
            Err(Error::NoRoot { .. })
        ));
        assert!(matches!(
            solve_solvability(&additive(), -1.0, 0.0, &t),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            solve_solvability(&additive(), 1.0, 2.0, &t),
            Err(Error::InvalidParameter(_))
        ));
    }

    // Oracle: for theta = s + t the sup over the quarter-disk of radius r is
    // r * sqrt(2), attained at the 45 degree point of the arc; so the
    // threshold radius for epsilon is epsilon / sqrt(2).
    #[test]
    fn continuity_delta_of_additive_matches_closed_form() {
        for eps in [0.1, 1.0, 10.0] {
            let cert =
                origin_continuity_delta(&additive(), eps, DEFAULT_GRID_N as u32, &tol()).unwrap();
            let expected = eps / SQRT_2;
            assert!(
                (cert.delta - expected).abs() <= 1e-4 * expected,
                "eps {eps}: delta {} vs {expected}",
                cert.delta
            );
            assert!(cert.sup_observed < eps);
            assert_eq!(cert.epsilon, eps);
        }
    }

    // Oracle: for theta = s + t + s t at epsilon = 1 the arc maximum is
    // sqrt(2) r + r^2 / 2 (45 degrees); solving sqrt(2) r + r^2 / 2 = 1
    // gives r = 2 - sqrt(2).
    #[test]
    fn continuity_delta_of_additive_product_matches_root() {
        let cert =
            origin_continuity_delta(&additive_product(), 1.0, DEFAULT_GRID_N as u32, &tol())
                .unwrap();
        let expected = 2.0 - SQRT_2;
        assert!(
            (cert.delta - expected).abs() <= 1e-4 * expected,
            "delta {} vs {expected}",
            cert.delta
        );
    }

    #[test]
    fn continuity_delta_grows_with_epsilon() {
        let t = tol();
        let mut last = 0.0;
        for eps in [0.25, 0.5, 1.0, 2.0] {
            let cert =
                origin_continuity_delta(&additive_product(), eps, DEFAULT_GRID_N as u32, &t)
                    .unwrap();
            assert!(cert.delta > last, "delta must grow with epsilon");
            last = cert.delta;
        }
    }

    #[test]
    fn discontinuous_action_fails_with_diagnostic() {
        let shifted = BAction::with_defaults("shifted", |s, t| s + t + 1.0);
        let err =
            origin_continuity_delta(&shifted, 0.5, DEFAULT_GRID_N as u32, &tol()).unwrap_err();
        match err {
            Error::ContinuityFailure { name, epsilon, floor } => {
                assert_eq!(name, "shifted");
                assert_eq!(epsilon, 0.5);
                assert!(floor > 0.0);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    // Certificate stability: re-sampling the certified disk at four times
    // the resolution, with an independent sampler, must stay below epsilon.
    #[test]
    fn certificate_survives_denser_resampling() {
        let t = tol();
        for (action, eps) in [
            (additive(), 1.0),
            (additive_product(), 1.0),
            (
                BAction::with_defaults("squared-sum", |s: f64, t: f64| {
                    let r = s.sqrt() + t.sqrt();
                    r * r
                }),
                0.7,
            ),
        ] {
            let cert =
                origin_continuity_delta(&action, eps, DEFAULT_GRID_N as u32, &t).unwrap();
            let dense = cert.grid_resolution as usize * 4;
            let mut sup = f64::NEG_INFINITY;
            for i in 0..=dense {
                for j in 0..=dense {
                    let s = cert.delta * i as f64 / dense as f64;
                    let u = cert.delta * j as f64 / dense as f64;
                    if s * s + u * u <= cert.delta * cert.delta {
                        sup = sup.max(action.eval(s, u).unwrap());
                    }
                }
            }
            for k in 0..=dense {
                let angle = FRAC_PI_2 * k as f64 / dense as f64;
                sup = sup
                    .max(action.eval(cert.delta * angle.cos(), cert.delta * angle.sin()).unwrap());
            }
            assert!(
                sup < eps,
                "{}: dense sup {sup} reached eps {eps} inside certified disk",
                action.name()
            );
        }
    }
}
