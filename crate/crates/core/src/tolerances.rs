//! Numeric tolerances shared by every checker in the crate.
//!
//! All comparisons against mathematical bounds go through these values so
//! that a report never flips on the last ulp of a rounded sum. Each constant
//! documents the comparison it guards.

use serde::Serialize;

/// Absolute slack before a bound counts as violated. Distance sums for the
/// triangle checks lose at most a few ulps, far below this.
pub const DEFAULT_TOL_ABS: f64 = 1e-9;

/// Relative agreement threshold for iterative searches, in particular the
/// stability test on origin-continuity certificates across grid refinements.
pub const DEFAULT_TOL_REL: f64 = 1e-6;

/// Residual factor for root solving: a root of `θ(s, t) = m` is accepted
/// when `|θ(s, t) - m| ≤ DEFAULT_TOL_ROOT · max(1, m)`.
pub const DEFAULT_TOL_ROOT: f64 = 1e-10;

/// Floor factor for the continuity radius search: the search gives up once
/// the candidate radius drops below `DEFAULT_DELTA_FLOOR · range`.
pub const DEFAULT_DELTA_FLOOR: f64 = 1e-12;

/// Bundle of the tolerances above; every check takes one so callers can
/// tighten or loosen the whole pipeline consistently.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub tol_abs: f64,
    pub tol_rel: f64,
    pub tol_root: f64,
    pub delta_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tol_abs: DEFAULT_TOL_ABS,
            tol_rel: DEFAULT_TOL_REL,
            tol_root: DEFAULT_TOL_ROOT,
            delta_floor: DEFAULT_DELTA_FLOOR,
        }
    }
}

impl Tolerances {
    /// Accepted residual when solving `θ(s, t) = m`.
    pub fn root_residual(&self, m: f64) -> f64 {
        self.tol_root * m.abs().max(1.0)
    }

    /// Smallest continuity radius worth sampling for an action with the
    /// given declared range.
    pub fn delta_floor_for(&self, range: f64) -> f64 {
        self.delta_floor * range
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_residual_scales_with_large_targets_only() {
        let tol = Tolerances::default();
        assert_eq!(tol.root_residual(0.5), DEFAULT_TOL_ROOT);
        assert_eq!(tol.root_residual(100.0), DEFAULT_TOL_ROOT * 100.0);
    }
}
