// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

use super::{Jet, JetError};
use crate::tol::DIV_TOL;

/// An `R^m`-valued curve germ: one [`Jet`] per coordinate, all sharing base
/// and order.
#[derive(Debug, Clone, PartialEq)]
pub struct JetVector {
    components: Vec<Jet>,
}

impl JetVector {
    pub fn new(components: Vec<Jet>) -> Result<Self, JetError> {
        let first = components.first().ok_or(JetError::Empty)?;
        for c in &components[1..] {
            if c.base() != first.base() {
                return Err(JetError::BaseMismatch(first.base(), c.base()));
            }
            if c.order() != first.order() {
                return Err(JetError::OrderMismatch(first.order(), c.order()));
            }
        }
        Ok(Self { components })
    }

    /// Constant germ at `point`.
    pub fn constant(base: f64, point: &[f64], order: usize) -> Self {
        Self {
            components: point.iter().map(|&x| Jet::constant(base, x, order)).collect(),
        }
    }

    pub fn zero(base: f64, dim: usize, order: usize) -> Self {
        Self {
            components: vec![Jet::zero(base, order); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn base(&self) -> f64 {
        self.components[0].base()
    }

    pub fn order(&self) -> usize {
        self.components[0].order()
    }

    pub fn components(&self) -> &[Jet] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Jet {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Jet> {
        self.components
    }

    pub fn value(&self) -> Vec<f64> {
        self.coefficient(0)
    }

    /// The `k`-th Taylor coefficient vector.
    pub fn coefficient(&self, k: usize) -> Vec<f64> {
        self.components.iter().map(|c| c.coeff(k)).collect()
    }

    /// The `k`-th derivative vector at the base.
    pub fn derivative(&self, k: usize) -> Vec<f64> {
        self.components.iter().map(|c| c.derivative(k)).collect()
    }

    pub fn with_base(self, base: f64) -> Self {
        Self {
            components: self.components.into_iter().map(|c| c.with_base(base)).collect(),
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            components: self.components.iter().map(|c| c.truncate(order)).collect(),
        }
    }

    fn check_dim(&self, other: &JetVector) -> Result<(), JetError> {
        if self.dim() != other.dim() {
            return Err(JetError::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }

    fn zip_with(
        &self,
        other: &JetVector,
        f: impl Fn(&Jet, &Jet) -> Result<Jet, JetError>,
    ) -> Result<JetVector, JetError> {
        self.check_dim(other)?;
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| f(a, b))
            .collect::<Result<_, _>>()?;
        Ok(JetVector { components })
    }

    pub fn try_add(&self, other: &JetVector) -> Result<JetVector, JetError> {
        self.zip_with(other, Jet::try_add)
    }

    pub fn try_sub(&self, other: &JetVector) -> Result<JetVector, JetError> {
        self.zip_with(other, Jet::try_sub)
    }

    /// Componentwise product with a scalar jet.
    pub fn try_mul_jet(&self, factor: &Jet) -> Result<JetVector, JetError> {
        let components = self
            .components
            .iter()
            .map(|c| c.try_mul(factor))
            .collect::<Result<_, _>>()?;
        Ok(JetVector { components })
    }

    pub fn try_div_jet(&self, divisor: &Jet) -> Result<JetVector, JetError> {
        let inv = divisor.recip()?;
        self.try_mul_jet(&inv)
    }

    pub fn scale(&self, factor: f64) -> JetVector {
        JetVector {
            components: self.components.iter().map(|c| c.scale(factor)).collect(),
        }
    }

    /// Scalar product of two germs.
    pub fn dot(&self, other: &JetVector) -> Result<Jet, JetError> {
        self.check_dim(other)?;
        let mut acc = Jet::zero(self.base(), self.order());
        for (a, b) in self.components.iter().zip(&other.components) {
            acc = acc.try_add(&a.try_mul(b)?)?;
        }
        Ok(acc)
    }

    /// Scalar product with a constant vector.
    pub fn dot_point(&self, point: &[f64]) -> Result<Jet, JetError> {
        if point.len() != self.dim() {
            return Err(JetError::DimensionMismatch(self.dim(), point.len()));
        }
        let mut acc = Jet::zero(self.base(), self.order());
        for (a, &p) in self.components.iter().zip(point) {
            acc = &acc + &a.scale(p);
        }
        Ok(acc)
    }

    pub fn norm(&self) -> Result<Jet, JetError> {
        self.dot(self)?.sqrt()
    }

    /// `self / ‖self‖`.
    pub fn normalize(&self) -> Result<JetVector, JetError> {
        let n = self.norm()?;
        self.try_div_jet(&n)
    }

    pub fn derive(&self) -> Result<JetVector, JetError> {
        let components = self
            .components
            .iter()
            .map(Jet::derive)
            .collect::<Result<_, _>>()?;
        Ok(JetVector { components })
    }

    /// Componentwise `self ∘ inner` for a displacement jet `inner`.
    pub fn compose(&self, inner: &Jet) -> Result<JetVector, JetError> {
        let components = self
            .components
            .iter()
            .map(|c| c.compose(inner))
            .collect::<Result<_, _>>()?;
        Ok(JetVector { components })
    }

    /// Reparameterizes the germ by arclength measured from the base.
    ///
    /// The result is expanded at arclength 0 (rebase with
    /// [`JetVector::with_base`] as needed) and has unit speed up to order
    /// `K - 1`. Fails at irregular points.
    pub fn arclength_reparameterize(&self) -> Result<JetVector, JetError> {
        let order = self.order();
        if order == 0 {
            return Err(JetError::OrderZero);
        }
        let speed = self.derive()?.dot(&self.derive()?)?;
        if !(speed.value().sqrt() > DIV_TOL) {
            return Err(JetError::NotInvertible(speed.value().sqrt()));
        }
        let speed = speed.sqrt_tol(0.0)?;
        // arclength as a displacement jet in the original parameter
        let arc = speed.integrate();
        let param_of_arc = arc.invert()?.with_base(0.0);
        self.compose(&param_of_arc)
    }

    pub fn max_abs_diff(&self, other: &JetVector) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(base: f64, omega: f64, order: usize) -> JetVector {
        let (s, c) = Jet::variable(base, order).scale(omega).sin_cos();
        JetVector::new(vec![c, s, Jet::zero(base, order)]).unwrap()
    }

    #[test]
    fn dot_and_norm_examples() {
        let e1 = JetVector::constant(0.0, &[1.0, 0.0, 0.0], 3);
        let e2 = JetVector::constant(0.0, &[0.0, 1.0, 0.0], 3);
        assert_eq!(e1.dot(&e2).unwrap(), Jet::zero(0.0, 3));
        assert_eq!(e1.dot(&e1).unwrap(), Jet::one(0.0, 3));
        assert_eq!(e1.norm().unwrap(), Jet::one(0.0, 3));

        let c = circle(0.0, 1.0, 3);
        let d = c.derive().unwrap();
        let dot = c.truncate(2).dot(&d).unwrap();
        assert!(dot.max_abs_diff(&Jet::zero(0.0, 2)) < 1e-15);
    }

    #[test]
    fn rejects_mixed_components() {
        let a = Jet::zero(0.0, 2);
        let b = Jet::zero(0.0, 3);
        assert!(JetVector::new(vec![a.clone(), b]).is_err());
        assert!(JetVector::new(vec![a.clone(), a.with_base(1.0)]).is_err());
        assert!(JetVector::new(vec![]).is_err());
    }

    #[test]
    fn unit_speed_input_is_unchanged() {
        let c = circle(0.0, 1.0, 8);
        let r = c.arclength_reparameterize().unwrap();
        assert!(r.max_abs_diff(&c) < 1e-14);
    }

    #[test]
    fn double_speed_circle_becomes_unit_speed() {
        let fast = circle(0.0, 2.0, 8);
        let slow = circle(0.0, 1.0, 8);
        let r = fast.arclength_reparameterize().unwrap();
        assert!(r.max_abs_diff(&slow) < 1e-13, "{r:?}");
        let v = r.derive().unwrap();
        let speed2 = v.dot(&v).unwrap();
        assert!(speed2.max_abs_diff(&Jet::one(0.0, 7)) < 1e-13);
    }

    #[test]
    fn irregular_point_is_rejected() {
        // (t^2, t^3, 0) has zero velocity at t = 0
        let t = Jet::variable(0.0, 4);
        let germ = JetVector::new(vec![t.powi(2), t.powi(3), Jet::zero(0.0, 4)]).unwrap();
        assert!(germ.arclength_reparameterize().is_err());
    }
}
