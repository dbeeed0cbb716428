// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

//! Parsing of `--P` values.
//!
//! Accepted forms are comma-separated coordinates (`0,0,1`) and the frame
//! anchors `gamma(x)`, `u_k(x)` and `-u_k(x)`, where `x` is a number or
//! `s0`. A leading `−` (U+2212) is accepted as a minus sign.

use thiserror::Error;

use crate::curve::CurveSpec;
use crate::frame::compute_frame;
use crate::linalg;
use crate::maps::SpherePoint;
use crate::tol::Tolerances;

/// `‖P‖` may deviate from 1 by this much before normalization.
pub const POINT_NORM_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PointError {
    #[error("malformed point {0:?}")]
    Malformed(String),
    #[error("point has {got} coordinates; the curve lives in R^{expected}")]
    Dimension { expected: usize, got: usize },
    #[error("point norm {0} deviates from 1 by more than 1e-6")]
    NotUnit(f64),
    #[error("frame index {index} out of range 0..={n}")]
    Index { index: usize, n: usize },
    #[error("cannot resolve anchor: {0}")]
    Anchor(String),
}

#[derive(Debug, Clone, PartialEq)]
enum PointSpec {
    Coords(Vec<f64>),
    Frame {
        index: usize,
        negate: bool,
        at: Option<f64>,
    },
}

fn parse_at(arg: &str) -> Option<Option<f64>> {
    let arg = arg.trim();
    if arg == "s0" {
        Some(None)
    } else {
        arg.replace('\u{2212}', "-").parse().ok().map(Some)
    }
}

fn parse(text: &str) -> Result<PointSpec, PointError> {
    let malformed = || PointError::Malformed(text.to_string());
    let t = text.trim().replace('\u{2212}', "-");
    if let Some(open) = t.find('(') {
        let body = t[open + 1..].strip_suffix(')').ok_or_else(malformed)?;
        let at = parse_at(body).ok_or_else(malformed)?;
        let (negate, head) = match t[..open].trim().strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, t[..open].trim()),
        };
        let index = if head == "gamma" {
            0
        } else {
            head.strip_prefix("u_")
                .and_then(|k| k.parse().ok())
                .ok_or_else(malformed)?
        };
        return Ok(PointSpec::Frame { index, negate, at });
    }
    let coords = t
        .split(',')
        .map(|c| c.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| malformed())?;
    if coords.iter().any(|c| !c.is_finite()) {
        return Err(malformed());
    }
    Ok(PointSpec::Coords(coords))
}

/// Resolves `text` to a unit vector for `curve`, evaluating frame anchors
/// at the given parameter (or at `s0`).
pub fn resolve_point(
    text: &str,
    curve: &CurveSpec,
    s0: f64,
    tol: &Tolerances,
) -> Result<SpherePoint, PointError> {
    let dim = curve.n() + 1;
    let coords = match parse(text)? {
        PointSpec::Coords(c) => c,
        PointSpec::Frame { index, negate, at } => {
            if index > curve.n() {
                return Err(PointError::Index { index, n: curve.n() });
            }
            let s = at.unwrap_or(s0);
            let frame =
                compute_frame(curve, s, curve.n() + 1, tol).map_err(|e| PointError::Anchor(e.to_string()))?;
            let v = frame.u[index].value();
            if negate {
                v.into_iter().map(|x| -x).collect()
            } else {
                v
            }
        }
    };
    if coords.len() != dim {
        return Err(PointError::Dimension {
            expected: dim,
            got: coords.len(),
        });
    }
    let r = linalg::norm(&coords);
    SpherePoint::new(coords, POINT_NORM_TOL).map_err(|_| PointError::NotUnit(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::small_circle;

    #[test]
    fn forms() {
        let e = small_circle(2, 0.8).unwrap();
        let tol = Tolerances::default();
        let r = |t: &str| resolve_point(t, &e.spec, 0.0, &tol);
        assert_eq!(r("0,0,1").unwrap().coords(), &[0.0, 0.0, 1.0]);
        let g = r("gamma(0)").unwrap();
        assert!((g.coords()[0] - 0.8).abs() < 1e-15);
        let u = r("u_2(s0)").unwrap();
        assert!((u.coords()[0] + 0.6).abs() < 1e-15);
        let m = r("\u{2212}u_2(0)").unwrap();
        assert!((m.coords()[0] - 0.6).abs() < 1e-15);
        assert_eq!(r("-u_2(0)").unwrap(), m);
    }

    #[test]
    fn rejections() {
        let e = small_circle(2, 0.8).unwrap();
        let tol = Tolerances::default();
        let r = |t: &str| resolve_point(t, &e.spec, 0.0, &tol);
        assert!(matches!(r("0,0,1.01"), Err(PointError::NotUnit(_))));
        assert!(r("0,0,1.0000001").is_ok());
        assert!(matches!(r("0,1"), Err(PointError::Dimension { .. })));
        assert!(matches!(r("u_3(0)"), Err(PointError::Index { .. })));
        assert!(matches!(r("p(0)"), Err(PointError::Malformed(_))));
        assert!(matches!(r("a,b,c"), Err(PointError::Malformed(_))));
    }
}
