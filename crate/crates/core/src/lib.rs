//! Finite-sample verification of generalized metric structures.
//!
//! The crate works with full pairwise distance tables over a finite point
//! set and answers three kinds of questions about them:
//!
//! * **Axiom checking.** Does the sample satisfy the b-metric axioms for a
//!   relaxation constant `S`, or the triangle inequality bounded by a binary
//!   action `θ`? Violations are reported with replayable witnesses, never as
//!   bare booleans ([`verify_b_metric`], [`verify_theta_metric`],
//!   [`check_baction_axioms`]).
//! * **Uniform regularity.** For a verified structure, produce a modulus
//!   `φ(ε)` such that two legs below `φ(ε)` force the third side below `ε`,
//!   either in closed form (`ε / 2S`) or numerically from an
//!   origin-continuity certificate for `θ` ([`RegularityModulus`],
//!   [`chittenden_gate`]).
//! * **Metrization.** Construct an honest metric equivalent to the sample by
//!   snowflaking and chain repair, with explicit distortion bounds and
//!   optional chain witnesses ([`metrize_b`], [`metrize_theta`]).
//!
//! Everything is falsification-grade: a passing report means no
//! counterexample exists in the sample (or on the sampling grid), not that
//! the underlying space has the property. Certificates say so explicitly.

pub mod baction;
pub mod chittenden;
pub mod distances;
pub mod error;
pub mod generators;
pub mod matrix_io;
pub mod metrization;
pub mod report;
pub mod tolerances;

pub use baction::{
    check_baction_axioms, origin_continuity_delta, solve_solvability, BAction,
    ContinuityCertificate, DEFAULT_BUDGET, DEFAULT_GRID_N, DEFAULT_RANGE,
};
pub use chittenden::{
    chittenden_gate, default_epsilon_grid, modulus_b_metric, modulus_theta,
    verify_uniform_regularity, ChittendenCertificate, GateConditions, ModulusEntry, ModulusKind,
    RegularityModulus, EPSILON_GRID_LEN, SAMPLE_SCOPE,
};
pub use distances::{
    check_point_axioms, minimal_relaxation_constant, verify_b_metric, verify_theta_metric,
    DistanceMatrix, PointSet,
};
pub use error::{Error, Result};
pub use generators::{
    expected_failures, gen_baction, gen_power_line, gen_random_b_metric,
    gen_random_b_metric_with_points, ActionFamily, ActionParams, ACTION_FAMILIES,
};
pub use matrix_io::{matrix_to_csv_string, parse_matrix_csv, read_matrix_csv, write_matrix_csv};
pub use metrization::{
    chain_metric, equivalence_check, exhaustive_chain_metric, metrize_b, metrize_theta,
    sample_effective_relaxation, snowflake, witness_chains, ChainWitness, Distortion,
    MetrizationResult, MetrizeOptions,
};
pub use report::{AxiomReport, AxiomTag, Violation, Witness};
pub use tolerances::Tolerances;
