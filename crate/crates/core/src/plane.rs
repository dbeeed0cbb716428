// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

//! Pedal and orthotomic curves of plane curves.
//!
//! With unit normal `N`, the plane pedal is `P + ((γ − P)·N) N` and the
//! orthotomic is `P + 2((γ − P)·N) N`, so `ort = L ∘ ped` for the affine
//! diffeomorphism `L(x) = 2x − P`. The normal is the tangent rotated a
//! quarter turn counterclockwise; the relation holds for either orientation.

use std::sync::Arc;

use crate::curve::{ArclengthCurve, CurveError, CurveEvaluator, FnCurve, Interval};
use crate::jet::{Jet, JetError, JetVector};
use crate::tol::DIV_TOL;

/// A unit-speed plane curve.
#[derive(Debug, Clone)]
pub struct PlaneCurve {
    pub name: String,
    pub domain: Interval,
    evaluator: Arc<dyn CurveEvaluator>,
}

impl PlaneCurve {
    pub fn new(name: impl Into<String>, domain: Interval, evaluator: Arc<dyn CurveEvaluator>) -> Self {
        assert_eq!(evaluator.ambient_dim(), 2, "plane curves live in R^2");
        Self {
            name: name.into(),
            domain,
            evaluator,
        }
    }

    pub fn jet(&self, s: f64, order: usize) -> Result<JetVector, CurveError> {
        self.domain.check(s)?;
        self.evaluator.jet(s, order)
    }
}

/// `(cos s, sin s)`.
pub fn unit_circle() -> PlaneCurve {
    let eval = FnCurve::new(2, |s, order| {
        let (sn, cs) = Jet::variable(s, order).sin_cos();
        JetVector::new(vec![cs, sn]).expect("uniform components")
    });
    let d = std::f64::consts::PI;
    PlaneCurve::new("unit-circle", Interval::new(-d, d), Arc::new(eval))
}

/// The ellipse `(a cos t, b sin t)` reparameterized by arclength from `t = 0`.
pub fn ellipse(a: f64, b: f64) -> Result<PlaneCurve, CurveError> {
    let raw = FnCurve::new(2, move |t, order| {
        let (sn, cs) = Jet::variable(t, order).sin_cos();
        JetVector::new(vec![cs.scale(a), sn.scale(b)]).expect("uniform components")
    });
    let t_max = 0.95 * std::f64::consts::PI;
    let curve = ArclengthCurve::new(Arc::new(raw), Interval::new(-t_max, t_max), 0.0)?;
    let domain = curve.domain();
    Ok(PlaneCurve::new("ellipse", domain, Arc::new(curve)))
}

fn unit_normal(germ: &JetVector) -> Result<(JetVector, usize), JetError> {
    let t = germ.derive()?;
    let speed = t.norm().map_err(|_| JetError::NotInvertible(0.0))?;
    if !(speed.value() > DIV_TOL) {
        return Err(JetError::NotInvertible(speed.value()));
    }
    let o = t.order();
    let tx = t.component(0).clone();
    let ty = t.component(1).clone();
    Ok((JetVector::new(vec![-&ty, tx])?, o))
}

fn support_multiple(germ: &JetVector, p: [f64; 2], factor: f64) -> Result<JetVector, JetError> {
    if germ.dim() != 2 {
        return Err(JetError::DimensionMismatch(germ.dim(), 2));
    }
    let (normal, o) = unit_normal(germ)?;
    let g = germ.truncate(o);
    let pc = JetVector::constant(g.base(), &p, o);
    let offset = g.try_sub(&pc)?.dot(&normal)?;
    pc.try_add(&normal.try_mul_jet(&offset)?.scale(factor))
}

/// `ped(s) = P + ((γ(s) − P)·N(s)) N(s)`; one jet order is lost to `N`.
pub fn plane_pedal(germ: &JetVector, p: [f64; 2]) -> Result<JetVector, JetError> {
    support_multiple(germ, p, 1.0)
}

/// `ort(s) = P + 2((γ(s) − P)·N(s)) N(s)`.
pub fn plane_orthotomic(germ: &JetVector, p: [f64; 2]) -> Result<JetVector, JetError> {
    support_multiple(germ, p, 2.0)
}
