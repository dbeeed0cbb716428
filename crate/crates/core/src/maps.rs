// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

//! Pedal and orthotomic curves on `S^n`, and the two sphere maps that
//! relate them.
//!
//! For a point `P` and frame `u_0 … u_n` write `c_i = P · u_i`.
//!
//! * pedal: `ped = (P − c_n u_n) / √(1 − c_n²)`, undefined where `P = ±u_n`;
//! * orthotomic: `ort = P − 2 c_n u_n`, always defined;
//! * `Ψ_P(x) = (P − (P·x) x) / √(1 − (P·x)²)`, so that `ped = Ψ_P ∘ u_n`;
//! * `Φ_P(x) = 2 (P·x) x − P`, so that `ort = Φ_P ∘ ped` where the pedal
//!   exists and `ort = −Φ_P ∘ u_n` everywhere.
//!
//! `Φ_P` maps the sphere onto itself; on the sphere it is singular exactly on
//! the great sphere `P·x = 0` (when `n ≥ 2`), and it is a diffeomorphism on
//! the open hemisphere `H(P) = {P·x > 0}`, which contains every pedal value.

use serde::Serialize;
use thiserror::Error;

use crate::frame::FrameSample;
use crate::jet::{Jet, JetError, JetVector};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MapError {
    #[error("point has norm {0}, not on the unit sphere")]
    NotOnSphere(f64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("pedal undefined at s = {s}: P·u_n = {c_n}")]
    PedalUndefined { s: f64, c_n: f64 },
    #[error("Ψ_P undefined at x = ±P (P·x = {0})")]
    PsiUndefined(f64),
    #[error("Φ_P preimage of −P is not unique")]
    PreimageNotUnique,
    #[error(transparent)]
    Jet(#[from] JetError),
}

/// A unit vector in `R^{n+1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SpherePoint(Vec<f64>);

impl SpherePoint {
    /// Accepts `coords` if its norm is within `tol` of 1, then renormalizes.
    pub fn new(coords: Vec<f64>, tol: f64) -> Result<Self, MapError> {
        let r = linalg::norm(&coords);
        if !((r - 1.0).abs() <= tol) {
            return Err(MapError::NotOnSphere(r));
        }
        Ok(Self(linalg::scale(&coords, 1.0 / r)))
    }

    /// Radial projection of a nonzero vector.
    pub fn normalized(coords: &[f64]) -> Result<Self, MapError> {
        let r = linalg::norm(coords);
        if !(r > 0.0) || !r.is_finite() {
            return Err(MapError::NotOnSphere(r));
        }
        Ok(Self(linalg::scale(coords, 1.0 / r)))
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn antipode(&self) -> Self {
        Self(linalg::scale(&self.0, -1.0))
    }

    pub fn dot(&self, x: &[f64]) -> f64 {
        linalg::dot(&self.0, x)
    }
}

/// Open hemisphere `{x : P·x > 0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hemisphere {
    pub center: SpherePoint,
}

impl Hemisphere {
    pub fn new(center: SpherePoint) -> Self {
        Self { center }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.center.dot(x) > 0.0
    }
}

fn check_dim(p: &SpherePoint, dim: usize) -> Result<(), MapError> {
    if p.dim() != dim {
        return Err(MapError::DimensionMismatch(p.dim(), dim));
    }
    Ok(())
}

/// `P · u_n` as a germ.
pub fn dual_coefficient(frame: &FrameSample, p: &SpherePoint) -> Result<Jet, MapError> {
    check_dim(p, frame.n() + 1)?;
    Ok(frame.dual().dot_point(p.coords())?)
}

/// Whether `P = ±u_n(s)` at the frame's parameter.
pub fn is_pole(frame: &FrameSample, p: &SpherePoint, pole_tol: f64) -> bool {
    linalg::dot(p.coords(), &frame.dual().value()).abs() >= 1.0 - pole_tol
}

/// Pedal germ from the closed form `(P − c_n u_n) / √(1 − c_n²)`.
///
/// The denominator is taken as `‖P − c_n u_n‖`, which equals `√(1 − c_n²)`
/// but does not cancel catastrophically as `|c_n| → 1`.
pub fn pedal(frame: &FrameSample, p: &SpherePoint, pole_tol: f64) -> Result<JetVector, MapError> {
    let c = dual_coefficient(frame, p)?;
    if c.value().abs() > 1.0 - pole_tol {
        return Err(MapError::PedalUndefined {
            s: frame.s,
            c_n: c.value(),
        });
    }
    let dual = frame.dual();
    let order = dual.order();
    let pc = JetVector::constant(dual.base(), p.coords(), order);
    let num = reject_jet(&reject_jet(&pc, dual)?, dual)?;
    Ok(num.normalize()?)
}

// Component of `v` orthogonal to `x`. Near a pole the result is tiny, so
// callers apply it twice; dividing by `‖x‖²` covers `x` being unit only to
// rounding.
fn reject_jet(v: &JetVector, x: &JetVector) -> Result<JetVector, MapError> {
    let w = v.dot(x)?.try_div(&x.dot(x)?)?;
    Ok(v.try_sub(&x.try_mul_jet(&w)?)?)
}

fn reject(v: &[f64], x: &[f64]) -> Vec<f64> {
    linalg::axpy(v, -linalg::dot(v, x) / linalg::dot(x, x), x)
}

/// Pedal germ from its definition: the normalized projection of `P` onto
/// `span(u_0, …, u_{n−1})`.
pub fn pedal_by_projection(
    frame: &FrameSample,
    p: &SpherePoint,
    pole_tol: f64,
) -> Result<JetVector, MapError> {
    if is_pole(frame, p, pole_tol) {
        return Err(MapError::PedalUndefined {
            s: frame.s,
            c_n: linalg::dot(p.coords(), &frame.dual().value()),
        });
    }
    Ok(projection_sum(frame, p, 0.0)?.normalize()?)
}

/// `Σ_{i<n} c_i u_i + sign · c_n u_n`.
fn projection_sum(frame: &FrameSample, p: &SpherePoint, sign: f64) -> Result<JetVector, MapError> {
    let n = frame.n();
    check_dim(p, n + 1)?;
    let order = frame.dual().order();
    let mut acc = JetVector::zero(frame.dual().base(), n + 1, order);
    for i in 0..n {
        let ui = frame.u[i].truncate(order);
        let ci = ui.dot_point(p.coords())?;
        acc = acc.try_add(&ui.try_mul_jet(&ci)?)?;
    }
    if sign != 0.0 {
        let cn = dual_coefficient(frame, p)?;
        acc = acc.try_add(&frame.dual().try_mul_jet(&cn)?.scale(sign))?;
    }
    Ok(acc)
}

/// Orthotomic germ `P − 2 (P·u_n) u_n`.
pub fn orthotomic(frame: &FrameSample, p: &SpherePoint) -> Result<JetVector, MapError> {
    let c = dual_coefficient(frame, p)?;
    let dual = frame.dual();
    let pc = JetVector::constant(dual.base(), p.coords(), dual.order());
    Ok(pc.try_sub(&dual.try_mul_jet(&c)?.scale(2.0))?)
}

/// Orthotomic germ from the reflection sum `Σ_{i<n} c_i u_i − c_n u_n`.
pub fn orthotomic_by_sum(frame: &FrameSample, p: &SpherePoint) -> Result<JetVector, MapError> {
    projection_sum(frame, p, -1.0)
}

/// `Ψ_P(x) = (P − (P·x) x) / √(1 − (P·x)²)`, normalized by the norm of
/// the numerator as in [`pedal`].
pub fn psi_map(p: &SpherePoint, x: &[f64], pole_tol: f64) -> Result<Vec<f64>, MapError> {
    check_dim(p, x.len())?;
    let c = p.dot(x);
    if c.abs() >= 1.0 - pole_tol {
        return Err(MapError::PsiUndefined(c));
    }
    Ok(linalg::normalize(&reject(&reject(p.coords(), x), x)))
}

/// `Φ_P(x) = 2 (P·x) x − P`, defined on all of `R^{n+1}`.
pub fn phi_map(p: &SpherePoint, x: &[f64]) -> Vec<f64> {
    let c = p.dot(x);
    linalg::axpy(&linalg::scale(x, 2.0 * c), -1.0, p.coords())
}

/// `Φ_P` applied to a germ.
pub fn phi_map_jet(p: &SpherePoint, x: &JetVector) -> Result<JetVector, MapError> {
    check_dim(p, x.dim())?;
    let c = x.dot_point(p.coords())?;
    let pc = JetVector::constant(x.base(), p.coords(), x.order());
    Ok(x.try_mul_jet(&c)?.scale(2.0).try_sub(&pc)?)
}

/// The preimage of `y` under `Φ_P` inside `H(P)`: the normalized midpoint
/// of `y` and `P`.
pub fn phi_preimage(p: &SpherePoint, y: &[f64], pole_tol: f64) -> Result<Vec<f64>, MapError> {
    check_dim(p, y.len())?;
    if p.dot(y) <= -1.0 + pole_tol {
        return Err(MapError::PreimageNotUnique);
    }
    let mid = linalg::scale(&linalg::add(y, p.coords()), 0.5);
    Ok(linalg::normalize(&mid))
}

/// Whether `x ∈ S^n` is a singular point of `Φ_P` restricted to the sphere.
///
/// On `S^1` the map is angle doubling and has no singular points.
pub fn phi_singular(p: &SpherePoint, x: &[f64], pole_tol: f64) -> bool {
    let n = p.dim() - 1;
    n >= 2 && p.dot(x).abs() <= pole_tol
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::curve::{CurveSpec, FnCurve, Interval};
    use crate::frame::compute_frame;
    use crate::tol::{Tolerances, POLE_TOL};

    fn point(c: &[f64]) -> SpherePoint {
        SpherePoint::new(c.to_vec(), 1e-12).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        linalg::distance(a, b) <= tol
    }

    fn small_circle_frame(s: f64) -> FrameSample {
        let r = 0.8;
        let h = 0.6;
        let eval = FnCurve::new(3, move |s, order| {
            let (sn, cs) = Jet::variable(s, order).scale(1.0 / r).sin_cos();
            JetVector::new(vec![cs.scale(r), sn.scale(r), Jet::constant(s, h, order)]).unwrap()
        });
        let c = CurveSpec::new(2, Interval::new(-2.5, 2.5), Arc::new(eval)).unwrap();
        compute_frame(&c, s, 8, &Tolerances::default()).unwrap()
    }

    fn great_circle_frame(s: f64) -> FrameSample {
        let eval = FnCurve::new(3, |s, order| {
            let (sn, cs) = Jet::variable(s, order).sin_cos();
            JetVector::new(vec![cs, sn, Jet::zero(s, order)]).unwrap()
        });
        let c = CurveSpec::new(2, Interval::new(-3.0, 3.0), Arc::new(eval)).unwrap();
        compute_frame(&c, s, 8, &Tolerances::default()).unwrap()
    }

    #[test]
    fn psi_near_pole_is_accurate() {
        // just outside the pole band, with x unit only to rounding
        let p = point(&[0.0, 0.0, 1.0]);
        let theta = (4.0 * POLE_TOL).sqrt();
        let x = linalg::scale(&[theta.sin(), 0.0, theta.cos()], 1.0 + 4.0 * f64::EPSILON);
        let psi = psi_map(&p, &x, POLE_TOL).unwrap();
        assert!(close(&psi, &[-theta.cos(), 0.0, theta.sin()], 1e-11));
        let c = p.dot(&x);
        let ort = linalg::axpy(p.coords(), -2.0 * c, &x);
        let reflected = linalg::axpy(&linalg::scale(&psi, 2.0 * p.dot(&psi)), -1.0, p.coords());
        assert!(close(&ort, &reflected, 1e-14));
    }

    #[test]
    fn sphere_point_validation() {
        assert!(SpherePoint::new(vec![0.0, 0.0, 1.1], 1e-6).is_err());
        let p = SpherePoint::new(vec![0.0, 0.0, 1.0 + 1e-7], 1e-6).unwrap();
        assert_eq!(p.coords()[2], 1.0);
        assert!(SpherePoint::normalized(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn small_circle_pedal_and_orthotomic() {
        let f = small_circle_frame(0.0);
        let p = point(&[0.0, 0.0, 1.0]);
        let ped = pedal(&f, &p, POLE_TOL).unwrap();
        assert!(close(&ped.value(), &[0.8, 0.0, 0.6], 1e-15));
        let ort = orthotomic(&f, &p).unwrap();
        assert!(close(&ort.value(), &[0.96, 0.0, -0.28], 1e-15));
        let by_sum = orthotomic_by_sum(&f, &p).unwrap();
        assert!(ort.max_abs_diff(&by_sum) < 1e-12);
        let by_proj = pedal_by_projection(&f, &p, POLE_TOL).unwrap();
        assert!(close(&by_proj.value(), &ped.value(), 1e-14));
    }

    #[test]
    fn point_orthogonal_to_dual_is_fixed() {
        // P = u_1(0) is orthogonal to u_2(0)
        let f = small_circle_frame(0.0);
        let p = point(&f.u[1].value());
        assert!(close(
            &pedal(&f, &p, POLE_TOL).unwrap().value(),
            p.coords(),
            1e-15
        ));
        assert!(close(&orthotomic(&f, &p).unwrap().value(), p.coords(), 1e-15));
    }

    #[test]
    fn great_circle_pedal_is_constant() {
        let p = point(&[1.0, 0.0, 0.0]);
        for s in [-1.0, 0.0, 0.7] {
            let f = great_circle_frame(s);
            let ped = pedal(&f, &p, POLE_TOL).unwrap();
            assert!(ped.max_abs_diff(&JetVector::constant(s, p.coords(), ped.order())) < 1e-14);
        }
    }

    #[test]
    fn pole_behaviour() {
        let f = small_circle_frame(0.0);
        let p = point(&f.dual().value());
        assert!(matches!(
            pedal(&f, &p, POLE_TOL),
            Err(MapError::PedalUndefined { .. })
        ));
        assert!(is_pole(&f, &p, POLE_TOL));
        let ort = orthotomic(&f, &p).unwrap();
        assert!(close(&ort.value(), p.antipode().coords(), 1e-15));
        let q = p.antipode();
        assert!(close(&orthotomic(&f, &q).unwrap().value(), p.coords(), 1e-15));
    }

    #[test]
    fn psi_examples() {
        let p = point(&[0.0, 0.0, 1.0]);
        assert!(close(
            &psi_map(&p, &[1.0, 0.0, 0.0], POLE_TOL).unwrap(),
            p.coords(),
            0.0
        ));
        let y = psi_map(&p, &[-0.6, 0.0, 0.8], POLE_TOL).unwrap();
        assert!(close(&y, &[0.8, 0.0, 0.6], 1e-15));
        assert!((linalg::norm(&y) - 1.0).abs() < 1e-15);
        assert!(matches!(
            psi_map(&p, &[0.0, 0.0, -1.0], POLE_TOL),
            Err(MapError::PsiUndefined(_))
        ));
    }

    #[test]
    fn phi_examples() {
        let p = point(&[0.0, 0.0, 1.0]);
        assert!(close(&phi_map(&p, p.coords()), p.coords(), 0.0));
        assert!(close(&phi_map(&p, &[0.0, 1.0, 0.0]), &[0.0, 0.0, -1.0], 0.0));
        assert!(close(&phi_map(&p, &[0.8, 0.0, 0.6]), &[0.96, 0.0, -0.28], 1e-15));
        // germ form agrees with the pointwise form
        let f = small_circle_frame(0.3);
        let g = phi_map_jet(&p, f.dual()).unwrap();
        assert!(close(&g.value(), &phi_map(&p, &f.dual().value()), 1e-15));
    }

    #[test]
    fn phi_preimage_examples() {
        let p = point(&[0.0, 0.0, 1.0]);
        assert!(close(
            &phi_preimage(&p, p.coords(), POLE_TOL).unwrap(),
            p.coords(),
            1e-15
        ));
        let x = phi_preimage(&p, &[0.96, 0.0, -0.28], POLE_TOL).unwrap();
        assert!(close(&x, &[0.8, 0.0, 0.6], 1e-15));
        assert!(Hemisphere::new(p.clone()).contains(&x));
        assert_eq!(
            phi_preimage(&p, &[0.0, 0.0, -1.0], POLE_TOL),
            Err(MapError::PreimageNotUnique)
        );
    }

    #[test]
    fn phi_singular_locus() {
        let p = point(&[0.0, 0.0, 1.0]);
        assert!(!phi_singular(&p, p.coords(), POLE_TOL));
        assert!(phi_singular(&p, &[1.0, 0.0, 0.0], POLE_TOL));
        let q = point(&[1.0, 0.0]);
        assert!(!phi_singular(&q, &[0.0, 1.0], POLE_TOL));
        assert!(!phi_singular(&q, &[0.6, 0.8], POLE_TOL));
    }
}
