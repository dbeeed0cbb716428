// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

//! Curves as jet-producing evaluators.
//!
//! A [`CurveEvaluator`] returns the Taylor germ of a curve at any parameter
//! value. [`CurveSpec`] adds the sphere dimension and the parameter interval
//! for curves on `S^n`. [`ArclengthCurve`] turns any regular evaluator into a
//! unit-speed one; [`ProjectedPolynomial`] is the radial projection of a
//! polynomial curve onto the sphere.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::jet::{Jet, JetError, JetVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("parameter {s} lies outside the curve domain ({min}, {max})")]
    OutOfDomain { s: f64, min: f64, max: f64 },
    #[error("sphere curves need n >= 2 (got {0})")]
    DimensionTooSmall(usize),
    #[error("evaluator returns vectors in R^{got}, expected R^{expected}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("arclength inversion did not converge at s = {0}")]
    ArclengthInversion(f64),
    #[error(transparent)]
    Jet(#[from] JetError),
}

/// Open parameter interval `(min, max)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub min: f64,
    pub max: f64,
}

impl Interval {
    pub fn new(min: f64, max: f64) -> Self {
        assert!(min < max, "empty interval ({min}, {max})");
        Self { min, max }
    }

    pub fn contains(&self, s: f64) -> bool {
        s > self.min && s < self.max
    }

    pub fn center(&self) -> f64 {
        0.5 * (self.min + self.max)
    }

    pub fn width(&self) -> f64 {
        self.max - self.min
    }

    pub fn check(&self, s: f64) -> Result<(), CurveError> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(CurveError::OutOfDomain {
                s,
                min: self.min,
                max: self.max,
            })
        }
    }
}

/// Produces the germ of a curve at a requested parameter and jet order.
pub trait CurveEvaluator: Send + Sync + fmt::Debug {
    /// Dimension of the ambient space the curve lives in.
    fn ambient_dim(&self) -> usize;

    fn jet(&self, s: f64, order: usize) -> Result<JetVector, CurveError>;
}

/// Evaluator backed by a closure.
pub struct FnCurve<F> {
    ambient_dim: usize,
    f: F,
}

impl<F> FnCurve<F>
where
    F: Fn(f64, usize) -> JetVector + Send + Sync,
{
    pub fn new(ambient_dim: usize, f: F) -> Self {
        Self { ambient_dim, f }
    }
}

impl<F> fmt::Debug for FnCurve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnCurve")
            .field("ambient_dim", &self.ambient_dim)
            .finish_non_exhaustive()
    }
}

impl<F> CurveEvaluator for FnCurve<F>
where
    F: Fn(f64, usize) -> JetVector + Send + Sync,
{
    fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    fn jet(&self, s: f64, order: usize) -> Result<JetVector, CurveError> {
        Ok((self.f)(s, order))
    }
}

/// A curve `γ: I → S^n`, declared unit speed by its constructor.
#[derive(Debug, Clone)]
pub struct CurveSpec {
    n: usize,
    domain: Interval,
    evaluator: Arc<dyn CurveEvaluator>,
}

impl CurveSpec {
    pub fn new(n: usize, domain: Interval, evaluator: Arc<dyn CurveEvaluator>) -> Result<Self, CurveError> {
        if n < 2 {
            return Err(CurveError::DimensionTooSmall(n));
        }
        if evaluator.ambient_dim() != n + 1 {
            return Err(CurveError::AmbientMismatch {
                expected: n + 1,
                got: evaluator.ambient_dim(),
            });
        }
        Ok(Self { n, domain, evaluator })
    }

    /// Sphere dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn evaluator(&self) -> &Arc<dyn CurveEvaluator> {
        &self.evaluator
    }

    /// Germ of `γ` at `s`, rejecting parameters outside the domain.
    pub fn jet(&self, s: f64, order: usize) -> Result<JetVector, CurveError> {
        self.domain.check(s)?;
        self.evaluator.jet(s, order)
    }

    pub fn point(&self, s: f64) -> Result<Vec<f64>, CurveError> {
        Ok(self.jet(s, 0)?.value())
    }
}

/// Polynomial curve `t ↦ (p_0(t), …, p_m(t))`, coefficients lowest first.
#[derive(Debug, Clone)]
pub struct PolynomialCurve {
    components: Vec<Vec<f64>>,
}

impl PolynomialCurve {
    pub fn new(components: Vec<Vec<f64>>) -> Self {
        assert!(!components.is_empty());
        Self { components }
    }

    fn jet_vector(&self, t: f64, order: usize) -> JetVector {
        let var = Jet::variable(t, order);
        let comps = self
            .components
            .iter()
            .map(|poly| {
                poly.iter()
                    .rev()
                    .fold(Jet::zero(t, order), |acc, &c| (&acc * &var).add_scalar(c))
            })
            .collect();
        JetVector::new(comps).expect("uniform components")
    }
}

impl CurveEvaluator for PolynomialCurve {
    fn ambient_dim(&self) -> usize {
        self.components.len()
    }

    fn jet(&self, t: f64, order: usize) -> Result<JetVector, CurveError> {
        Ok(self.jet_vector(t, order))
    }
}

/// Radial projection `x(t) / ‖x(t)‖` of a polynomial curve onto the sphere.
#[derive(Debug, Clone)]
pub struct ProjectedPolynomial {
    poly: PolynomialCurve,
}

impl ProjectedPolynomial {
    pub fn new(components: Vec<Vec<f64>>) -> Self {
        Self {
            poly: PolynomialCurve::new(components),
        }
    }
}

impl CurveEvaluator for ProjectedPolynomial {
    fn ambient_dim(&self) -> usize {
        self.poly.ambient_dim()
    }

    fn jet(&self, t: f64, order: usize) -> Result<JetVector, CurveError> {
        Ok(self.poly.jet_vector(t, order).normalize()?)
    }
}

/// Order of the local Taylor pieces used to integrate the speed.
const QUADRATURE_ORDER: usize = 16;
/// Length of each Taylor piece in the raw parameter.
const QUADRATURE_STEP: f64 = 0.05;

/// Arclength reparameterization of a regular curve.
///
/// Arclength is measured from `origin` in the raw parameter, so `s = 0`
/// corresponds to `t = origin`. The speed is tabulated once as local Taylor
/// pieces on each side of `origin`; the arclength integral and its inverse
/// are evaluated from the table, and locally the germ is reparameterized by
/// series reversion.
#[derive(Debug, Clone)]
pub struct ArclengthCurve {
    raw: Arc<dyn CurveEvaluator>,
    raw_domain: Interval,
    origin: f64,
    domain: Interval,
    above: SpeedTable,
    below: SpeedTable,
}

/// Taylor pieces of the speed starting at `origin` and stepping by `step`
/// (negative below the origin).
#[derive(Debug, Clone)]
struct SpeedTable {
    origin: f64,
    step: f64,
    /// Speed coefficients at each piece start.
    pieces: Vec<Vec<f64>>,
    /// Arclength from `origin` to each piece start.
    cumulative: Vec<f64>,
}

impl SpeedTable {
    fn build(raw: &Arc<dyn CurveEvaluator>, origin: f64, end: f64) -> Result<Self, CurveError> {
        let span = end - origin;
        let count = (span.abs() / QUADRATURE_STEP).ceil().max(1.0) as usize;
        let step = span / count as f64;
        let mut pieces = Vec::with_capacity(count);
        let mut cumulative = Vec::with_capacity(count);
        let mut total = 0.0;
        for i in 0..count {
            let base = origin + i as f64 * step;
            let speed = raw.jet(base, QUADRATURE_ORDER + 1)?.derive()?.norm()?;
            cumulative.push(total);
            total += speed.integral_over(step);
            pieces.push(speed.coeffs().to_vec());
        }
        Ok(Self {
            origin,
            step,
            pieces,
            cumulative,
        })
    }

    fn locate(&self, t: f64) -> (usize, f64) {
        let x = (t - self.origin) / self.step;
        let i = (x.floor().max(0.0) as usize).min(self.pieces.len() - 1);
        (i, t - (self.origin + i as f64 * self.step))
    }

    fn arclength(&self, t: f64) -> f64 {
        let (i, dt) = self.locate(t);
        let mut acc = 0.0;
        let mut pow = dt;
        for (k, c) in self.pieces[i].iter().enumerate() {
            acc += c * pow / (k + 1) as f64;
            pow *= dt;
        }
        self.cumulative[i] + acc
    }

    /// Start of the piece containing arclength `s`, advanced linearly.
    fn guess(&self, s: f64) -> f64 {
        let i = self.cumulative.partition_point(|c| c.abs() <= s.abs()).max(1) - 1;
        let base = self.origin + i as f64 * self.step;
        base + (s - self.cumulative[i]) / self.pieces[i][0]
    }

    fn speed(&self, t: f64) -> f64 {
        let (i, dt) = self.locate(t);
        self.pieces[i].iter().rev().fold(0.0, |acc, c| acc * dt + c)
    }
}

impl ArclengthCurve {
    pub fn new(raw: Arc<dyn CurveEvaluator>, raw_domain: Interval, origin: f64) -> Result<Self, CurveError> {
        raw_domain.check(origin)?;
        let above = SpeedTable::build(&raw, origin, raw_domain.max)?;
        let below = SpeedTable::build(&raw, origin, raw_domain.min)?;
        let mut curve = Self {
            raw,
            raw_domain,
            origin,
            domain: Interval::new(-1.0, 1.0),
            above,
            below,
        };
        let lo = curve.arclength(raw_domain.min)?;
        let hi = curve.arclength(raw_domain.max)?;
        curve.domain = Interval::new(lo, hi);
        Ok(curve)
    }

    /// Arclength domain.
    pub fn domain(&self) -> Interval {
        self.domain
    }

    fn table(&self, t: f64) -> &SpeedTable {
        if t >= self.origin {
            &self.above
        } else {
            &self.below
        }
    }

    /// Signed arclength from `origin` to raw parameter `t`.
    pub fn arclength(&self, t: f64) -> Result<f64, CurveError> {
        Ok(self.table(t).arclength(t))
    }

    /// Raw parameter at arclength `s` by Newton iteration.
    pub fn raw_parameter(&self, s: f64) -> Result<f64, CurveError> {
        let start = if s >= 0.0 { &self.above } else { &self.below };
        let (lo, hi) = (self.raw_domain.min, self.raw_domain.max);
        let mut t = start.guess(s).clamp(lo, hi);
        for _ in 0..60 {
            let table = self.table(t);
            let step = (table.arclength(t) - s) / table.speed(t);
            t = (t - step).clamp(lo, hi);
            if step.abs() <= 1e-15 * t.abs().max(1.0) {
                return Ok(t);
            }
        }
        Err(CurveError::ArclengthInversion(s))
    }
}

impl CurveEvaluator for ArclengthCurve {
    fn ambient_dim(&self) -> usize {
        self.raw.ambient_dim()
    }

    fn jet(&self, s: f64, order: usize) -> Result<JetVector, CurveError> {
        let t = self.raw_parameter(s)?;
        if !self.raw_domain.contains(t) {
            return Err(CurveError::OutOfDomain {
                s,
                min: self.domain.min,
                max: self.domain.max,
            });
        }
        let raw = self.raw.jet(t, order)?;
        Ok(raw.arclength_reparameterize()?.with_base(s))
    }
}
