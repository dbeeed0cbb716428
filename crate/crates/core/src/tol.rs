// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

//! Numerical thresholds.
//!
//! Degeneracy thresholds decide exact conditions (a vanishing curvature, a
//! point lying on a stratum) at finite precision. Check tolerances bound the
//! residuals of identities that hold exactly in exact arithmetic.

use serde::{Deserialize, Serialize};

/// Smallest admissible divisor leading coefficient.
pub const DIV_TOL: f64 = 1e-10;
/// Smallest admissible radicand leading coefficient.
pub const SQRT_TOL: f64 = 1e-10;

/// Residual bound for frame invariant checks.
pub const FRAME_TOL: f64 = 1e-8;
/// Curvatures `κ_i` (1 ≤ i ≤ n−1) at or below this make the frame undefined.
pub const FRAME_DEGENERACY_TOL: f64 = 1e-10;

/// `|P·u_n| ≥ 1 − POLE_TOL` counts as `P = ±u_n`.
pub const POLE_TOL: f64 = 1e-9;

pub const STRAT_TOL: f64 = 1e-7;
pub const AK_TOL: f64 = 1e-7;
pub const SIG_TOL: f64 = 1e-7;

/// Orthonormality and determinant of the frame.
pub const ORTHONORMAL_TOL: f64 = 1e-9;
/// Derivative relations of the frame and the dual curve.
pub const DERIVATIVE_LAW_TOL: f64 = 1e-8;
/// Identities between pedal, orthotomic and the two sphere maps.
pub const MAP_IDENTITY_TOL: f64 = 1e-12;
/// Agreement with closed-form curvature oracles and the unit `κ_1` jet.
pub const ORACLE_TOL: f64 = 1e-10;

/// Runtime-overridable thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub frame: f64,
    pub frame_degeneracy: f64,
    pub pole: f64,
    pub strat: f64,
    pub ak: f64,
    pub sig: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            frame: FRAME_TOL,
            frame_degeneracy: FRAME_DEGENERACY_TOL,
            pole: POLE_TOL,
            strat: STRAT_TOL,
            ak: AK_TOL,
            sig: SIG_TOL,
        }
    }
}
