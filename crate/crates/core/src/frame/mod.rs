// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

//! Moving frames of spherical unit-speed curves.
//!
//! Starting from `u_{-1} = 0`, `u_0 = γ` and `κ_0 = 0`, each further frame
//! vector is the normalized combination
//!
//! ```text
//! w_i = u_{i-1}' + κ_{i-1} u_{i-2},   κ_i = ‖w_i‖,   u_i = w_i / κ_i
//! ```
//!
//! for `1 ≤ i ≤ n−1`. The dual curve `u_n` completes `u_0 … u_{n−1}` to a
//! positively oriented orthonormal basis of `R^{n+1}`, and
//! `κ_n = u_{n−1}' · u_n`. Every quantity is carried as a jet; each
//! differentiation consumes one order.

mod cross;

pub use cross::{generalized_cross, generalized_cross_jets};

use serde::Serialize;
use thiserror::Error;

use crate::curve::{CurveError, CurveSpec};
use crate::grid::Grid;
use crate::jet::{Jet, JetError, JetVector};
use crate::linalg;
use crate::tol::Tolerances;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("frame undefined: κ_{index} = {value:e} at s = {s}")]
    FrameUndefined { index: usize, value: f64, s: f64 },
    #[error("curve is not unit speed at s = {s}: | |γ| - 1 | = {norm_dev:e}, | |γ'| - 1 | = {speed_dev:e}")]
    NotUnitSpeed { s: f64, norm_dev: f64, speed_dev: f64 },
    #[error("vectors do not span a hyperplane (Gram determinant {0:e})")]
    DegenerateSpan(f64),
    #[error("jet order {got} too small; need at least {need}")]
    InsufficientOrder { need: usize, got: usize },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Jet(#[from] JetError),
}

/// Frame vectors `u_0 … u_n` and curvatures `κ_0 … κ_n` at one parameter.
///
/// `u[i]` has jet order `K − i` for `i < n`, `u[n]` has order `K − n + 1`,
/// and `kappa[i]` has order `K − i` (with `κ_0 ≡ 0` stored at order `K`).
#[derive(Debug, Clone)]
pub struct FrameSample {
    pub s: f64,
    pub u: Vec<JetVector>,
    pub kappa: Vec<Jet>,
    pub input_order: usize,
}

impl FrameSample {
    /// Sphere dimension.
    pub fn n(&self) -> usize {
        self.u.len() - 1
    }

    /// The dual germ `u_n`.
    pub fn dual(&self) -> &JetVector {
        &self.u[self.n()]
    }

    pub fn kappa_n(&self) -> &Jet {
        &self.kappa[self.n()]
    }

    /// Lowest jet order carried by the sample (that of `κ_n`).
    pub fn surviving_order(&self) -> usize {
        self.kappa_n().order()
    }

    /// `u_i(s)` values.
    pub fn values(&self) -> Vec<Vec<f64>> {
        self.u.iter().map(JetVector::value).collect()
    }

    pub fn kappa_values(&self) -> Vec<f64> {
        self.kappa.iter().map(Jet::value).collect()
    }

    /// `max |u_i · u_k − δ_ik|` over all pairs.
    pub fn orthonormality_defect(&self) -> f64 {
        let v = self.values();
        let mut worst: f64 = 0.0;
        for i in 0..v.len() {
            for k in 0..v.len() {
                let target = if i == k { 1.0 } else { 0.0 };
                worst = worst.max((linalg::dot(&v[i], &v[k]) - target).abs());
            }
        }
        worst
    }

    /// `det(u_0, …, u_n)`.
    pub fn determinant(&self) -> f64 {
        linalg::det_columns(&self.values())
    }

    /// `max |u_i · u_k'|` for `0 ≤ i < k − 1 ≤ n − 2`.
    pub fn derivative_orthogonality_defect(&self) -> f64 {
        let v = self.values();
        let mut worst: f64 = 0.0;
        for k in 0..self.n() {
            let dk = self.u[k].derivative(1);
            for vi in v.iter().take(k.saturating_sub(1)) {
                worst = worst.max(linalg::dot(vi, &dk).abs());
            }
        }
        worst
    }

    /// `max |u_{k−1} · u_k' + κ_k|` for `1 ≤ k ≤ n − 1`.
    pub fn curvature_relation_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 1..self.n() {
            let prev = self.u[k - 1].value();
            let dk = self.u[k].derivative(1);
            worst = worst.max((linalg::dot(&prev, &dk) + self.kappa[k].value()).abs());
        }
        worst
    }

    /// `‖u_n' + κ_n u_{n−1}‖`.
    pub fn dual_derivative_defect(&self) -> f64 {
        let n = self.n();
        let dn = self.u[n].derivative(1);
        let prev = self.u[n - 1].value();
        linalg::norm(&linalg::axpy(&dn, self.kappa[n].value(), &prev))
    }

    /// `max_k |c_k(κ_1) − δ_{k0}|`.
    pub fn kappa1_defect(&self) -> f64 {
        let k1 = &self.kappa[1];
        k1.max_abs_diff(&Jet::one(k1.base(), k1.order()))
    }
}

/// Builds the frame of `curve` at `s` from a jet of order `order`.
pub fn compute_frame(
    curve: &CurveSpec,
    s: f64,
    order: usize,
    tol: &Tolerances,
) -> Result<FrameSample, FrameError> {
    let n = curve.n();
    let need = n + 1;
    if order < need {
        return Err(FrameError::InsufficientOrder { need, got: order });
    }
    let gamma = curve.jet(s, order)?;
    let base = gamma.base();
    let dim = n + 1;

    let norm_dev = (linalg::norm(&gamma.value()) - 1.0).abs();
    let speed_dev = (linalg::norm(&gamma.derivative(1)) - 1.0).abs();
    if norm_dev > tol.frame || speed_dev > tol.frame {
        return Err(FrameError::NotUnitSpeed {
            s,
            norm_dev,
            speed_dev,
        });
    }

    let mut u = Vec::with_capacity(dim);
    let mut kappa = Vec::with_capacity(dim);
    kappa.push(Jet::zero(base, order));
    u.push(gamma);

    let mut before_prev = JetVector::zero(base, dim, order);
    for i in 1..n {
        let prev = &u[i - 1];
        let d = prev.derive()?;
        let o = d.order();
        let lift = before_prev.truncate(o).try_mul_jet(&kappa[i - 1].truncate(o))?;
        let w = d.try_add(&lift)?;
        let k2 = w.dot(&w)?;
        let k_value = k2.value().max(0.0).sqrt();
        if !(k_value > tol.frame_degeneracy) {
            return Err(FrameError::FrameUndefined {
                index: i,
                value: k_value,
                s,
            });
        }
        let k = k2.sqrt_tol(0.0)?;
        let ui = w.try_div_jet(&k)?;
        before_prev = prev.truncate(o);
        kappa.push(k);
        u.push(ui);
    }

    let cross_order = order + 1 - n;
    let leading: Vec<JetVector> = u.iter().map(|v| v.truncate(cross_order)).collect();
    let dual = generalized_cross_jets(&leading, tol.frame_degeneracy)?;
    let kn = u[n - 1].derive()?.dot(&dual.truncate(order - n))?;
    u.push(dual);
    kappa.push(kn);

    Ok(FrameSample {
        s,
        u,
        kappa,
        input_order: order,
    })
}

/// Deviation of a curve from unit speed and from the sphere over a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitSpeedReport {
    pub samples: usize,
    pub max_speed_deviation: f64,
    pub max_norm_deviation: f64,
}

impl UnitSpeedReport {
    pub fn within(&self, tol: f64) -> bool {
        self.max_speed_deviation <= tol && self.max_norm_deviation <= tol
    }
}

/// Samples `| ‖γ′‖ − 1 |` and `| ‖γ‖ − 1 |` on the default grid.
pub fn unit_speed_check(curve: &CurveSpec, samples: usize) -> Result<UnitSpeedReport, FrameError> {
    let grid = Grid::centered(curve.domain(), samples.max(1));
    let mut report = UnitSpeedReport {
        samples: grid.len(),
        max_speed_deviation: 0.0,
        max_norm_deviation: 0.0,
    };
    for s in grid.iter() {
        let g = curve.jet(s, 1)?;
        report.max_norm_deviation = report
            .max_norm_deviation
            .max((linalg::norm(&g.value()) - 1.0).abs());
        report.max_speed_deviation = report
            .max_speed_deviation
            .max((linalg::norm(&g.derivative(1)) - 1.0).abs());
    }
    Ok(report)
}
