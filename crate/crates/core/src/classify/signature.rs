// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

//! Vanishing-order signatures of curve germs.
//!
//! For a germ `f` at `s0`, entry `m` of the signature is the smallest order
//! `a` at which `span{f^(1)(s0), …, f^(a)(s0)}` reaches dimension `m`. The
//! signature is unchanged by reparameterizing the source. Under a target
//! diffeomorphism the entries below `2·a_1` are unchanged as well (higher
//! derivatives of the diffeomorphism only contribute at order `≥ 2·a_1`),
//! which covers every exponent of the monomial normal forms used by the
//! classifier.
//!
//! Germs on the sphere are first pushed into the tangent hyperplane at
//! `f(s0)` by central projection, so the signature has at most `n` entries
//! and matches the exponent list of a normal form in `R^n`.

use serde::Serialize;

use crate::jet::JetVector;
use crate::linalg;

use super::ClassifyError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingSignature {
    /// Strictly increasing derivative orders at which the span gains a
    /// dimension.
    pub orders: Vec<usize>,
    /// Highest derivative order inspected.
    pub depth: usize,
    /// Largest possible number of entries (dimension of the target).
    pub max_rank: usize,
}

impl VanishingSignature {
    /// Every available dimension was reached within the depth.
    pub fn saturated(&self) -> bool {
        self.orders.len() == self.max_rank
    }

    pub fn first(&self) -> Option<usize> {
        self.orders.first().copied()
    }

    /// Entries that are invariant under target diffeomorphisms (below
    /// twice the first entry).
    pub fn invariant_prefix(&self) -> &[usize] {
        match self.first() {
            Some(a1) => {
                let end = self.orders.iter().take_while(|&&a| a < 2 * a1).count();
                &self.orders[..end]
            }
            None => &[],
        }
    }
}

/// Rank growth of the derivative vectors of `germ` in its ambient space.
pub fn vanishing_signature(
    germ: &JetVector,
    depth: usize,
    sig_tol: f64,
) -> Result<VanishingSignature, ClassifyError> {
    rank_growth(germ, depth, sig_tol, germ.dim())
}

fn rank_growth(
    germ: &JetVector,
    depth: usize,
    sig_tol: f64,
    max_rank: usize,
) -> Result<VanishingSignature, ClassifyError> {
    if depth > germ.order() {
        return Err(ClassifyError::InconclusiveJetOrder {
            need: depth,
            got: germ.order(),
        });
    }
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut orders = Vec::new();
    for a in 1..=depth {
        if basis.len() == max_rank {
            break;
        }
        // Taylor coefficients span the same flag as derivatives.
        let mut v = germ.coefficient(a);
        for _ in 0..2 {
            for b in &basis {
                let c = linalg::dot(&v, b);
                v = linalg::axpy(&v, -c, b);
            }
        }
        let r = linalg::norm(&v);
        if r > sig_tol {
            basis.push(linalg::scale(&v, 1.0 / r));
            orders.push(a);
        }
    }
    Ok(VanishingSignature {
        orders,
        depth,
        max_rank,
    })
}

/// Signature of a germ on `S^n`, computed in the central-projection chart
/// `x ↦ x / (c·x) − c` centered at `c = f(s0)`.
pub fn spherical_signature(
    germ: &JetVector,
    depth: usize,
    sig_tol: f64,
) -> Result<VanishingSignature, ClassifyError> {
    let center = germ.value();
    let along = germ.dot_point(&center)?;
    let chart = germ.try_div_jet(&along)?;
    let offset = JetVector::constant(germ.base(), &center, germ.order());
    let chart = chart.try_sub(&offset)?;
    rank_growth(&chart, depth, sig_tol, germ.dim() - 1)
}
