// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

//! Truncated Taylor series ("jets") of scalar functions of one variable.
//!
//! A [`Jet`] of order `K` at base point `s0` stores the Taylor coefficients
//! `c_k = f^(k)(s0) / k!` for `k = 0..=K`. Arithmetic is exact up to the
//! truncation order, so every derivative used elsewhere in the crate comes
//! out of Cauchy products rather than finite differences. Derivative values
//! are recovered with [`Jet::derivative`].

mod vector;

pub use vector::JetVector;

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::tol::{DIV_TOL, SQRT_TOL};

/// Errors raised by jet arithmetic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum JetError {
    #[error("jet must have at least one coefficient")]
    Empty,
    #[error("jet base mismatch: {0} vs {1}")]
    BaseMismatch(f64, f64),
    #[error("jet order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("division by a jet with leading coefficient {0:e}")]
    DivisionBlowup(f64),
    #[error("square root of a jet with non-positive leading coefficient {0:e}")]
    NonPositiveSqrt(f64),
    #[error("cannot differentiate an order-0 jet")]
    OrderZero,
    #[error("inner jet of a composition must vanish at its base (got {0:e})")]
    NonzeroInnerConstant(f64),
    #[error("jet with linear coefficient {0:e} is not invertible")]
    NotInvertible(f64),
    #[error("vector dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// A truncated Taylor expansion `f(base + t) = Σ c_k t^k + O(t^{K+1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    base: f64,
    coeffs: Vec<f64>,
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * j as f64)
}

impl Jet {
    pub fn new(base: f64, coeffs: Vec<f64>) -> Result<Self, JetError> {
        if coeffs.is_empty() {
            return Err(JetError::Empty);
        }
        Ok(Self { base, coeffs })
    }

    pub fn constant(base: f64, value: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        Self { base, coeffs }
    }

    pub fn zero(base: f64, order: usize) -> Self {
        Self::constant(base, 0.0, order)
    }

    pub fn one(base: f64, order: usize) -> Self {
        Self::constant(base, 1.0, order)
    }

    /// The independent variable itself: value `base`, slope 1.
    pub fn variable(base: f64, order: usize) -> Self {
        let mut jet = Self::constant(base, base, order);
        if order >= 1 {
            jet.coeffs[1] = 1.0;
        }
        jet
    }

    /// The displacement `t ↦ t`, i.e. the identity for [`Jet::compose`].
    pub fn identity(base: f64, order: usize) -> Self {
        let mut jet = Self::zero(base, order);
        if order >= 1 {
            jet.coeffs[1] = 1.0;
        }
        jet
    }

    /// Jet from derivative values `f(s0), f'(s0), f''(s0), ...`.
    pub fn from_derivatives(base: f64, derivatives: &[f64]) -> Result<Self, JetError> {
        let coeffs = derivatives
            .iter()
            .enumerate()
            .map(|(k, d)| d / factorial(k))
            .collect();
        Self::new(base, coeffs)
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// `f^(k)(base)`; zero beyond the truncation order.
    pub fn derivative(&self, k: usize) -> f64 {
        self.coeff(k) * factorial(k)
    }

    /// Same coefficients, reinterpreted at another expansion point.
    pub fn with_base(mut self, base: f64) -> Self {
        self.base = base;
        self
    }

    /// Drops coefficients above `order` (no-op if already lower).
    pub fn truncate(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.coeffs.len());
        Self {
            base: self.base,
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    /// Evaluates the truncated polynomial at displacement `t`.
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    fn check_compatible(&self, other: &Jet) -> Result<(), JetError> {
        if self.base != other.base {
            return Err(JetError::BaseMismatch(self.base, other.base));
        }
        if self.order() != other.order() {
            return Err(JetError::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Jet) -> Result<Jet, JetError> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Jet {
            base: self.base,
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Jet) -> Result<Jet, JetError> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Jet {
            base: self.base,
            coeffs,
        })
    }

    /// Cauchy product truncated at the common order.
    pub fn try_mul(&self, other: &Jet) -> Result<Jet, JetError> {
        self.check_compatible(other)?;
        Ok(self.cauchy(other))
    }

    fn cauchy(&self, other: &Jet) -> Jet {
        let len = self.coeffs.len();
        let mut coeffs = vec![0.0; len];
        for (k, out) in coeffs.iter_mut().enumerate() {
            *out = (0..=k).map(|j| self.coeffs[j] * other.coeffs[k - j]).sum();
        }
        Jet {
            base: self.base,
            coeffs,
        }
    }

    /// Quotient with the default blow-up threshold.
    pub fn try_div(&self, other: &Jet) -> Result<Jet, JetError> {
        self.try_div_tol(other, DIV_TOL)
    }

    pub fn try_div_tol(&self, other: &Jet, tol: f64) -> Result<Jet, JetError> {
        self.check_compatible(other)?;
        let b0 = other.coeffs[0];
        if !(b0.abs() > tol) {
            return Err(JetError::DivisionBlowup(b0));
        }
        let len = self.coeffs.len();
        let mut q = vec![0.0; len];
        for k in 0..len {
            let acc: f64 = (0..k).map(|j| q[j] * other.coeffs[k - j]).sum();
            q[k] = (self.coeffs[k] - acc) / b0;
        }
        Ok(Jet {
            base: self.base,
            coeffs: q,
        })
    }

    /// `1 / self`.
    pub fn recip(&self) -> Result<Jet, JetError> {
        Jet::one(self.base, self.order()).try_div(self)
    }

    /// Principal square root with the default threshold on the leading
    /// coefficient.
    pub fn sqrt(&self) -> Result<Jet, JetError> {
        self.sqrt_tol(SQRT_TOL)
    }

    pub fn sqrt_tol(&self, tol: f64) -> Result<Jet, JetError> {
        let a0 = self.coeffs[0];
        if !(a0 > tol) {
            return Err(JetError::NonPositiveSqrt(a0));
        }
        let len = self.coeffs.len();
        let mut r = vec![0.0; len];
        r[0] = a0.sqrt();
        for k in 1..len {
            let acc: f64 = (1..k).map(|j| r[j] * r[k - j]).sum();
            r[k] = (self.coeffs[k] - acc) / (2.0 * r[0]);
        }
        Ok(Jet {
            base: self.base,
            coeffs: r,
        })
    }

    /// Term-by-term derivative; the order drops by one.
    pub fn derive(&self) -> Result<Jet, JetError> {
        if self.order() == 0 {
            return Err(JetError::OrderZero);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| k as f64 * c)
            .collect();
        Ok(Jet {
            base: self.base,
            coeffs,
        })
    }

    /// Antiderivative vanishing at the base; the order rises by one.
    pub fn integrate(&self) -> Jet {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(0.0);
        coeffs.extend(self.coeffs.iter().enumerate().map(|(k, c)| c / (k + 1) as f64));
        Jet {
            base: self.base,
            coeffs,
        }
    }

    /// `∫_0^h` of the truncated polynomial.
    pub fn integral_over(&self, h: f64) -> f64 {
        let mut acc = 0.0;
        let mut pow = h;
        for (k, c) in self.coeffs.iter().enumerate() {
            acc += c * pow / (k + 1) as f64;
            pow *= h;
        }
        acc
    }

    /// Taylor coefficients of `self ∘ inner`.
    ///
    /// `inner` is a displacement jet (`inner(0) = 0`) at the new base; the
    /// result lives at `inner`'s base. Orders must agree.
    pub fn compose(&self, inner: &Jet) -> Result<Jet, JetError> {
        if self.order() != inner.order() {
            return Err(JetError::OrderMismatch(self.order(), inner.order()));
        }
        let g0 = inner.coeffs[0];
        if g0 != 0.0 {
            return Err(JetError::NonzeroInnerConstant(g0));
        }
        let order = self.order();
        let mut acc = Jet::constant(inner.base, self.coeffs[order], order);
        for k in (0..order).rev() {
            acc = acc.cauchy(inner);
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// Series reversion: `h` with `self ∘ h = identity` to the jet order.
    ///
    /// `self` must be a displacement jet with a nonzero linear term. The
    /// result is also a displacement jet, with the same base.
    pub fn invert(&self) -> Result<Jet, JetError> {
        let g0 = self.coeffs[0];
        if g0 != 0.0 {
            return Err(JetError::NonzeroInnerConstant(g0));
        }
        let g1 = self.coeff(1);
        if !(g1.abs() > DIV_TOL) {
            return Err(JetError::NotInvertible(g1));
        }
        let order = self.order();
        let mut h = Jet::zero(self.base, order);
        h.coeffs[1] = 1.0 / g1;
        // coefficient k of g∘h is g1·h_k plus terms in h_1..h_{k-1} only
        for k in 2..=order {
            let partial = self.compose(&h)?;
            h.coeffs[k] = -partial.coeffs[k] / g1;
        }
        Ok(h)
    }

    pub fn scale(&self, factor: f64) -> Jet {
        Jet {
            base: self.base,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn add_scalar(&self, value: f64) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += value;
        out
    }

    /// `(sin f, cos f)` by the coupled recurrence `s' = c f'`, `c' = -s f'`.
    pub fn sin_cos(&self) -> (Jet, Jet) {
        let len = self.coeffs.len();
        let mut s = vec![0.0; len];
        let mut c = vec![0.0; len];
        s[0] = self.coeffs[0].sin();
        c[0] = self.coeffs[0].cos();
        for k in 1..len {
            let mut sk = 0.0;
            let mut ck = 0.0;
            for j in 1..=k {
                let w = j as f64 * self.coeffs[j];
                sk += w * c[k - j];
                ck -= w * s[k - j];
            }
            s[k] = sk / k as f64;
            c[k] = ck / k as f64;
        }
        (
            Jet {
                base: self.base,
                coeffs: s,
            },
            Jet {
                base: self.base,
                coeffs: c,
            },
        )
    }

    pub fn sin(&self) -> Jet {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Jet {
        self.sin_cos().1
    }

    /// Integer power by repeated multiplication.
    pub fn powi(&self, exp: u32) -> Jet {
        let mut acc = Jet::one(self.base, self.order());
        for _ in 0..exp {
            acc = acc.cauchy(self);
        }
        acc
    }

    /// Largest coefficientwise difference; `f64::INFINITY` on mismatch.
    pub fn max_abs_diff(&self, other: &Jet) -> f64 {
        if self.check_compatible(other).is_err() {
            return f64::INFINITY;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

// Operator forms panic on mismatched jets; the checked `try_*` methods are
// the fallible surface.

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.try_add(rhs).expect("jet addition")
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.try_sub(rhs).expect("jet subtraction")
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        self.try_mul(rhs).expect("jet multiplication")
    }
}

impl Mul<f64> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        &self + &rhs
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        &self - &rhs
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        &self * &rhs
    }
}
