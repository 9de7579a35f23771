//! Constructive metrization: snowflake, chain repair, and distortion
//! certificates.
//!
//! For a b-metric sample with relaxation constant `S`, raising every
//! distance to the power `p = log 2 / log 2S` makes the relaxed triangle
//! inequality nearly additive; the remaining defect is repaired exactly by
//! passing to the chain (shortest-path) infimum. The result is an honest
//! metric on the same points, and the entrywise ratio `d^p / metric` is
//! reported as a two-sided distortion certificate. The classical bound keeps
//! the maximal distortion at most 2 for a genuine b-metric; the pipeline
//! only insists on a configurable cap and halves `p` a few times before
//! giving up, returning the best attempt inside the error.

use serde::Serialize;

use crate::baction::BAction;
use crate::distances::{minimal_relaxation_constant, DistanceMatrix};
use crate::error::{Error, Result};
use crate::report::{AxiomReport, AxiomTag, Violation, Witness};
use crate::tolerances::Tolerances;

/// Largest point count accepted by the exhaustive chain oracle.
pub const EXHAUSTIVE_CHAIN_MAX_N: usize = 12;
/// Default cap on the maximal distortion of an accepted metrization.
pub const DEFAULT_DISTORTION_CAP: f64 = 4.0;
/// Default number of snowflake retries (halving `p`) before giving up.
pub const DEFAULT_RETRY_CAP: u32 = 6;
/// Relative tolerance when recognizing optimal chain continuations.
const CHAIN_STEP_REL: f64 = 1e-12;

/// Entrywise ratio bounds `d^p(i, j) / metric(i, j)` over `i != j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Distortion {
    pub max: f64,
    pub min: f64,
}

/// One optimal chain realizing `metric(from, to)`, with its recomputed
/// length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainWitness {
    pub from: usize,
    pub to: usize,
    pub path: Vec<usize>,
    pub length: f64,
}

/// A constructed metric together with its certificates.
#[derive(Debug, Clone)]
pub struct MetrizationResult {
    pub metric: DistanceMatrix,
    pub p: f64,
    pub distortion: Distortion,
    pub chains: Option<Vec<ChainWitness>>,
}

/// Knobs for [`metrize_b`] and [`metrize_theta`].
#[derive(Debug, Clone)]
pub struct MetrizeOptions {
    pub tolerances: Tolerances,
    pub distortion_cap: f64,
    pub retry_cap: u32,
    pub chains: bool,
}

impl Default for MetrizeOptions {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            distortion_cap: DEFAULT_DISTORTION_CAP,
            retry_cap: DEFAULT_RETRY_CAP,
            chains: false,
        }
    }
}

/// Raise every entry to the power `p ∈ (0, 1]`. `p = 1` returns the input
/// bitwise unchanged.
pub fn snowflake(d: &DistanceMatrix, p: f64) -> Result<DistanceMatrix> {
    if !p.is_finite() || p <= 0.0 || p > 1.0 {
        return Err(Error::InvalidParameter(format!("snowflake exponent must lie in (0, 1], got {p}")));
    }
    if p == 1.0 {
        return Ok(d.clone());
    }
    let entries = d.entries().iter().map(|&v| v.powf(p)).collect();
    DistanceMatrix::from_flat(d.points().clone(), entries)
}

/// The chain metric: for every pair, the infimum of total cost over chains
/// of intermediate points, computed by iterated relaxation over all
/// intermediates (the all-pairs shortest-path recurrence on the complete
/// graph).
///
/// The output never exceeds the input entrywise and is the largest such
/// table satisfying `out(i, j) ≤ cost(i, k) + out(k, j)`; on a table that is
/// already a metric it reproduces the input up to rounding. Every floating
/// operation involved (`+`, `min`) is monotone in its arguments, so the
/// repair itself is entrywise monotone in the input costs, exactly.
///
/// Relaxation passes repeat until one completes with no update. A single
/// pass can leave ulp-size triangle defects, because a later pass shortens a
/// leg after the pair was last compared against it; at the fixpoint,
/// `out(i, j) <= out(i, k) + out(k, j)` holds exactly in floating point for
/// every triple, and a further application returns the input bit for bit.
/// Termination is guaranteed: a non-final pass strictly decreases some
/// entry, and each entry ranges over a finite set of floats.
pub fn chain_metric(costs: &DistanceMatrix) -> DistanceMatrix {
    let n = costs.n();
    let mut dist = costs.entries().to_vec();
    loop {
        let mut changed = false;
        for k in 0..n {
            let row_k = dist[k * n..(k + 1) * n].to_vec();
            for i in 0..n {
                let dik = dist[i * n + k];
                let row_i = &mut dist[i * n..(i + 1) * n];
                for j in 0..n {
                    let via = dik + row_k[j];
                    if via < row_i[j] {
                        row_i[j] = via;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    DistanceMatrix::from_flat(costs.points().clone(), dist)
        .expect("relaxation keeps entries finite and nonnegative")
}

/// Exhaustive chain infimum by depth-first enumeration of all simple paths.
///
/// Deliberately independent of [`chain_metric`]: different traversal,
/// different summation order. The point count is capped because the path
/// count grows factorially.
pub fn exhaustive_chain_metric(costs: &DistanceMatrix) -> Result<DistanceMatrix> {
    let n = costs.n();
    if n > EXHAUSTIVE_CHAIN_MAX_N {
        return Err(Error::InvalidParameter(format!(
            "exhaustive chain enumeration is capped at {EXHAUSTIVE_CHAIN_MAX_N} points, got {n}"
        )));
    }
    let mut best = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut b = f64::INFINITY;
                dfs_chains(costs, i, j, 1u16 << i, 0.0, &mut b);
                best[i * n + j] = b;
            }
        }
    }
    DistanceMatrix::from_flat(costs.points().clone(), best)
}

fn dfs_chains(costs: &DistanceMatrix, u: usize, target: usize, visited: u16, acc: f64, best: &mut f64) {
    if acc >= *best {
        return;
    }
    if u == target {
        *best = acc;
        return;
    }
    for v in 0..costs.n() {
        if visited & (1u16 << v) == 0 {
            dfs_chains(costs, v, target, visited | (1u16 << v), acc + costs.get(u, v), best);
        }
    }
}

/// Greedy reconstruction of one optimal chain per unordered pair: from each
/// endpoint, take the smallest-index next hop whose continuation is still
/// optimal, which makes the witness set deterministic (lexicographic among
/// optimal chains).
pub fn witness_chains(costs: &DistanceMatrix, metric: &DistanceMatrix) -> Vec<ChainWitness> {
    let n = costs.n();
    let mut out = Vec::with_capacity(n.saturating_sub(1) * n / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let scale = metric.get(i, j).max(1.0);
            let mut path = vec![i];
            let mut length = 0.0;
            let mut u = i;
            let mut hops = 0usize;
            while u != j {
                hops += 1;
                let mut next = j;
                if hops <= n {
                    let remaining = metric.get(u, j);
                    for k in 0..n {
                        if k != u
                            && costs.get(u, k) + metric.get(k, j)
                                <= remaining + CHAIN_STEP_REL * scale
                        {
                            next = k;
                            break;
                        }
                    }
                }
                length += costs.get(u, next);
                path.push(next);
                u = next;
            }
            out.push(ChainWitness { from: i, to: j, path, length });
        }
    }
    out
}

fn distortion_between(snowflaked: &DistanceMatrix, metric: &DistanceMatrix) -> Distortion {
    let n = snowflaked.n();
    let (mut max, mut min) = (f64::NEG_INFINITY, f64::INFINITY);
    let mut seen = false;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let ratio = snowflaked.get(i, j) / metric.get(i, j);
                max = max.max(ratio);
                min = min.min(ratio);
                seen = true;
            }
        }
    }
    if seen {
        Distortion { max, min }
    } else {
        Distortion { max: 1.0, min: 1.0 }
    }
}

/// Construct a metric equivalent to a b-metric sample with relaxation
/// constant `s`.
///
/// The snowflake exponent starts at `p = 1` for `s ≤ 1` and
/// `p = log 2 / log(2s)` otherwise, and is halved up to `retry_cap` times
/// while the maximal distortion exceeds `distortion_cap`. On success the
/// distortion interval always contains 1, since the chain metric never
/// exceeds the snowflaked input while following its direct edges.
pub fn metrize_b(d: &DistanceMatrix, s: f64, opts: &MetrizeOptions) -> Result<MetrizationResult> {
    if !s.is_finite() || s <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "relaxation constant must be positive and finite, got {s}"
        )));
    }
    let mut p = if s <= 1.0 { 1.0 } else { std::f64::consts::LN_2 / (2.0 * s).ln() };
    let mut best: Option<MetrizationResult> = None;
    let attempts = opts.retry_cap + 1;
    for _ in 0..attempts {
        let snowflaked = snowflake(d, p)?;
        let metric = chain_metric(&snowflaked);
        let distortion = distortion_between(&snowflaked, &metric);
        let candidate = MetrizationResult { metric, p, distortion, chains: None };
        if distortion.max <= opts.distortion_cap {
            let chains = opts
                .chains
                .then(|| witness_chains(&snowflaked, &candidate.metric));
            return Ok(MetrizationResult { chains, ..candidate });
        }
        if best
            .as_ref()
            .is_none_or(|b| candidate.distortion.max < b.distortion.max)
        {
            best = Some(candidate);
        }
        p *= 0.5;
    }
    Err(Error::MetrizationFailure {
        cap: opts.distortion_cap,
        attempts,
        best: Box::new(best.expect("at least one attempt ran")),
    })
}

/// Sampled effective relaxation constant of an action over the realized
/// distance values: the largest `θ(a, b) / (a + b)` over unordered pairs
/// (including `a = b`) of distinct off-diagonal values. Returns 1 for
/// samples with no off-diagonal values.
pub fn sample_effective_relaxation(d: &DistanceMatrix, action: &BAction) -> Result<f64> {
    let mut values: Vec<f64> = d.off_diagonal().collect();
    values.sort_by(f64::total_cmp);
    values.dedup();
    if values.is_empty() {
        return Ok(1.0);
    }
    let mut s_eff = 0.0f64;
    for (i, &a) in values.iter().enumerate() {
        for &b in &values[i..] {
            let theta = action.eval(a, b)?;
            let legs = a + b;
            if legs > 0.0 {
                let ratio = theta / legs;
                if ratio > s_eff {
                    s_eff = ratio;
                }
            }
        }
    }
    Ok(s_eff)
}

/// Metrize a θ-bounded sample by reducing to [`metrize_b`] with the larger
/// of the sampled effective relaxation constant of θ and the sample's own
/// minimal relaxation constant.
pub fn metrize_theta(
    d: &DistanceMatrix,
    action: &BAction,
    opts: &MetrizeOptions,
) -> Result<MetrizationResult> {
    let s = sample_effective_relaxation(d, action)?.max(minimal_relaxation_constant(d));
    metrize_b(d, s, opts)
}

/// Check every invariant tying a metrization result back to its input:
/// exact triangle inequality, the upper bound by the snowflaked input, the
/// zero-set agreement, and the lower bound through the maximal distortion.
pub fn equivalence_check(
    d: &DistanceMatrix,
    result: &MetrizationResult,
    tol: &Tolerances,
) -> Result<AxiomReport> {
    let n = d.n();
    if result.metric.n() != n {
        return Err(Error::Malformed(format!(
            "metric has {} points, input has {n}",
            result.metric.n()
        )));
    }
    let snowflaked = snowflake(d, result.p)?;
    let m = &result.metric;
    let mut violations = Vec::new();
    for x in 0..n {
        let row_x = m.row(x);
        for y in 0..n {
            let mxy = row_x[y];
            let row_y = m.row(y);
            for z in 0..n {
                let bound = mxy + row_y[z];
                if row_x[z] > bound + tol.tol_abs {
                    violations.push(Violation {
                        axiom: AxiomTag::Triangle,
                        witness: Witness::Points(vec![x, y, z]),
                        left: row_x[z],
                        right: bound,
                        slack: row_x[z] - bound,
                    });
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (constructed, flaked) = (m.get(i, j), snowflaked.get(i, j));
            if constructed > flaked + tol.tol_abs {
                violations.push(Violation {
                    axiom: AxiomTag::UpperBound,
                    witness: Witness::Points(vec![i, j]),
                    left: constructed,
                    right: flaked,
                    slack: constructed - flaked,
                });
            }
            let floor = flaked / result.distortion.max;
            if constructed < floor - tol.tol_abs {
                violations.push(Violation {
                    axiom: AxiomTag::LowerBound,
                    witness: Witness::Points(vec![i, j]),
                    left: constructed,
                    right: floor,
                    slack: floor - constructed,
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let (constructed, original) = (m.get(i, j), d.get(i, j));
            if (constructed == 0.0) != (original == 0.0) {
                violations.push(Violation {
                    axiom: AxiomTag::ZeroSet,
                    witness: Witness::Points(vec![i, j]),
                    left: constructed,
                    right: original,
                    slack: (constructed - original).abs(),
                });
            }
        }
    }
    Ok(AxiomReport::from_violations(violations))
}
