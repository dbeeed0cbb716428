// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

//! Built-in spherical curves with known curvatures.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::curve::{ArclengthCurve, CurveError, CurveSpec, FnCurve, Interval, ProjectedPolynomial};
use crate::jet::{Jet, JetVector};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("unknown curve {0:?}")]
    UnknownCurve(String),
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Closed-form facts the pipeline is checked against.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Oracle {
    /// Constant curvatures `κ_1 … κ_n`, when the curve has them.
    pub kappa: Option<Vec<f64>>,
    /// Vanishing order `k` of `κ_n` at `s = 0`, when built to have one.
    pub dual_ak_at_origin: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub n: usize,
    pub params: BTreeMap<&'static str, f64>,
    pub spec: CurveSpec,
    pub oracle: Oracle,
    /// `false` when `κ_i` vanishes for some `1 ≤ i ≤ n−1`, so the frame
    /// does not exist.
    pub frame_defined: bool,
}

impl CatalogEntry {
    /// `name` followed by its parameters, e.g. `small-circle(n=2, r=0.8)`.
    pub fn label(&self) -> String {
        let mut parts = vec![format!("n={}", self.n)];
        parts.extend(self.params.iter().map(|(k, v)| format!("{k}={v}")));
        format!("{}({})", self.name, parts.join(", "))
    }
}

/// Options selecting a catalog curve. Unset fields take the defaults below.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CurveParams {
    pub n: Option<usize>,
    pub r: Option<f64>,
    pub k: Option<usize>,
    pub a: Option<f64>,
    pub b: Option<f64>,
}

pub const DEFAULT_N: usize = 2;
pub const DEFAULT_R: f64 = 0.8;
pub const DEFAULT_A: f64 = 1.0;
pub const DEFAULT_B: f64 = 0.3;
/// Raw parameter range of the projected polynomial curves.
pub const AK_RAW_HALF_WIDTH: f64 = 0.3;

pub const CURVE_NAMES: [&str; 3] = ["great-circle", "small-circle", "ak-curve"];

fn check_n(n: usize) -> Result<(), CatalogError> {
    if !(2..=3).contains(&n) {
        return Err(CatalogError::InvalidParameter {
            name: "n",
            value: n as f64,
            reason: "catalog curves exist for n = 2 and n = 3",
        });
    }
    Ok(())
}

/// `(cos s, sin s, 0, …)`.
pub fn great_circle(n: usize) -> Result<CatalogEntry, CatalogError> {
    check_n(n)?;
    let eval = FnCurve::new(n + 1, move |s, order| {
        let (sn, cs) = Jet::variable(s, order).sin_cos();
        let mut comps = vec![cs, sn];
        comps.resize(n + 1, Jet::zero(s, order));
        JetVector::new(comps).expect("uniform components")
    });
    let spec = CurveSpec::new(n, Interval::new(-PI, PI), Arc::new(eval))?;
    let mut kappa = vec![0.0; n];
    kappa[0] = 1.0;
    Ok(CatalogEntry {
        name: "great-circle",
        n,
        params: BTreeMap::new(),
        spec,
        oracle: Oracle {
            kappa: Some(kappa),
            dual_ak_at_origin: None,
        },
        frame_defined: n == 2,
    })
}

/// `(r cos(s/r), r sin(s/r), √(1 − r²), 0, …)`, with `κ_2 = √(1 − r²)/r`
/// and `κ_3 = 0`.
pub fn small_circle(n: usize, r: f64) -> Result<CatalogEntry, CatalogError> {
    check_n(n)?;
    if !(r > 0.0 && r < 1.0) {
        return Err(CatalogError::InvalidParameter {
            name: "r",
            value: r,
            reason: "radius must lie in (0, 1)",
        });
    }
    let h = (1.0 - r * r).sqrt();
    let eval = FnCurve::new(n + 1, move |s, order| {
        let (sn, cs) = Jet::variable(s, order).scale(1.0 / r).sin_cos();
        let mut comps = vec![cs.scale(r), sn.scale(r), Jet::constant(s, h, order)];
        comps.resize(n + 1, Jet::zero(s, order));
        JetVector::new(comps).expect("uniform components")
    });
    let spec = CurveSpec::new(n, Interval::new(-PI * r, PI * r), Arc::new(eval))?;
    let mut kappa = vec![1.0, h / r];
    kappa.resize(n, 0.0);
    Ok(CatalogEntry {
        name: "small-circle",
        n,
        params: BTreeMap::from([("r", r)]),
        spec,
        oracle: Oracle {
            kappa: Some(kappa),
            dual_ak_at_origin: None,
        },
        frame_defined: true,
    })
}

/// Projection of `(1, t + b t², a t^{k+3})` (on `S²`) or
/// `(1, t + b t², t², a t^{k+4})` (on `S³`), by arclength from `t = 0`.
///
/// In the chart `x_0 = 1` the curve has an inflection (`n = 2`) or a
/// flattening (`n = 3`) of order `k + 1` at the origin, so `κ_n` has an
/// `A_k` zero at `s = 0`.
pub fn ak_curve(n: usize, k: usize, a: f64, b: f64) -> Result<CatalogEntry, CatalogError> {
    check_n(n)?;
    if !(a != 0.0 && a.is_finite()) {
        return Err(CatalogError::InvalidParameter {
            name: "a",
            value: a,
            reason: "leading coefficient must be nonzero",
        });
    }
    if !b.is_finite() {
        return Err(CatalogError::InvalidParameter {
            name: "b",
            value: b,
            reason: "must be finite",
        });
    }
    let monomial = |e: usize, c: f64| {
        let mut p = vec![0.0; e + 1];
        p[e] = c;
        p
    };
    let mut comps = vec![vec![1.0], vec![0.0, 1.0, b]];
    if n == 2 {
        comps.push(monomial(k + 3, a));
    } else {
        comps.push(vec![0.0, 0.0, 1.0]);
        comps.push(monomial(k + 4, a));
    }
    let raw = ProjectedPolynomial::new(comps);
    let w = AK_RAW_HALF_WIDTH;
    let curve = ArclengthCurve::new(Arc::new(raw), Interval::new(-w, w), 0.0)?;
    let domain = curve.domain();
    let spec = CurveSpec::new(n, domain, Arc::new(curve))?;
    Ok(CatalogEntry {
        name: "ak-curve",
        n,
        params: BTreeMap::from([("a", a), ("b", b), ("k", k as f64)]),
        spec,
        oracle: Oracle {
            kappa: None,
            dual_ak_at_origin: Some(k),
        },
        frame_defined: true,
    })
}

pub fn lookup(name: &str, params: &CurveParams) -> Result<CatalogEntry, CatalogError> {
    let n = params.n.unwrap_or(DEFAULT_N);
    match name {
        "great-circle" => great_circle(n),
        "small-circle" => small_circle(n, params.r.unwrap_or(DEFAULT_R)),
        "ak-curve" => ak_curve(
            n,
            params.k.unwrap_or(0),
            params.a.unwrap_or(DEFAULT_A),
            params.b.unwrap_or(DEFAULT_B),
        ),
        other => Err(CatalogError::UnknownCurve(other.to_string())),
    }
}

/// Every built-in entry with its standard parameters.
pub fn catalog_list() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for n in [2, 3] {
        out.push(great_circle(n).expect("valid parameters"));
        for r in [0.5, DEFAULT_R] {
            out.push(small_circle(n, r).expect("valid parameters"));
        }
        for k in [0, 1] {
            out.push(ak_curve(n, k, DEFAULT_A, DEFAULT_B).expect("valid parameters"));
        }
    }
    out
}
