//! Crate-wide error type.
//!
//! Structural problems (`Malformed`, `InvalidParameter`) are kept distinct
//! from mathematical failures (`NoRoot`, `ContinuityFailure`,
//! `MetrizationFailure`): the latter mean the input genuinely lacks the
//! claimed property and carry enough context to replay the counterexample.

use thiserror::Error;

use crate::metrization::MetrizationResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Structurally unusable input: wrong shape, non-finite or negative
    /// entries, duplicate labels, unparseable CSV.
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    /// The action produced NaN, an infinity, or a negative value.
    #[error("action `{name}` returned {value} at ({s}, {t}); action values must be finite and nonnegative")]
    ActionEval { name: String, s: f64, t: f64, value: f64 },

    /// The per-check evaluation budget ran out before the check finished.
    #[error("evaluation budget exhausted during {context} for action `{name}`")]
    BudgetExhausted { name: String, context: String },

    /// `θ(s, t) = m` has no root `s ∈ [0, m]`: a direct counterexample to
    /// the solvability axiom at `(m, t)`.
    #[error("theta(s, {t}) = {m} has no root s in [0, {m}]")]
    NoRoot { m: f64, t: f64 },

    /// Bisection bracketed a root but could not meet the residual tolerance.
    #[error("root of theta(s, {t}) = {m} stalled: best residual {best:e} above tolerance {residual:e}")]
    RootStalled { m: f64, t: f64, residual: f64, best: f64 },

    /// No sampling radius above the floor keeps the action below ε near the
    /// origin; the action is not continuous at (0, 0) at this scale.
    #[error("action `{name}` stays at or above epsilon = {epsilon} on every sampled disk down to radius {floor:e}")]
    ContinuityFailure { name: String, epsilon: f64, floor: f64 },

    /// The continuity radius kept drifting as the sampling grid was refined.
    #[error("continuity certificate for action `{name}` at epsilon = {epsilon} did not stabilize by grid resolution {resolution}")]
    CertificateUnstable { name: String, epsilon: f64, resolution: u32 },

    /// The modulus table has no entry for the requested ε.
    #[error("no modulus entry for epsilon = {0}")]
    ModulusEntryMissing(f64),

    /// Every snowflake retry exceeded the distortion cap; `best` is the
    /// attempt with the smallest maximal distortion.
    #[error("distortion cap {cap} unmet after {attempts} attempt(s); best max distortion {}", best.distortion.max)]
    MetrizationFailure { cap: f64, attempts: u32, best: Box<MetrizationResult> },
}
