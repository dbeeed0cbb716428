// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

//! Uniform parameter grids anchored at a chosen sample.

use serde::Serialize;

use crate::curve::Interval;

/// Fraction of the distance from the anchor to each domain end that a
/// default grid may cover.
pub const DEFAULT_COVERAGE: f64 = 0.9;

pub const DEFAULT_SAMPLES: usize = 512;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    pub anchor: f64,
    pub step: f64,
    pub points: Vec<f64>,
}

impl Grid {
    /// `samples` uniform points `anchor + j·step`. The anchor is always a
    /// grid point; `⌊(samples−1)/2⌋` points lie below it and the rest above.
    /// With `step = None` the step is the largest one keeping the grid inside
    /// `coverage` of the distance to either domain end.
    pub fn anchored(domain: Interval, anchor: f64, samples: usize, step: Option<f64>, coverage: f64) -> Self {
        let samples = samples.max(1);
        let below = (samples - 1) / 2;
        let above = samples - 1 - below;
        let step = step.unwrap_or_else(|| {
            let mut h = f64::INFINITY;
            if below > 0 {
                h = h.min(coverage * (anchor - domain.min) / below as f64);
            }
            if above > 0 {
                h = h.min(coverage * (domain.max - anchor) / above as f64);
            }
            if h.is_finite() {
                h
            } else {
                0.0
            }
        });
        let points = (0..samples)
            .map(|j| anchor + (j as f64 - below as f64) * step)
            .collect();
        Self { anchor, step, points }
    }

    /// The default grid: centered on the domain midpoint.
    pub fn centered(domain: Interval, samples: usize) -> Self {
        Self::anchored(domain, domain.center(), samples, None, DEFAULT_COVERAGE)
    }

    /// Small grid around `anchor` used for germ-level witnesses.
    pub fn neighborhood(domain: Interval, anchor: f64, radius: f64, samples: usize) -> Self {
        let room = (anchor - domain.min).min(domain.max - anchor) * DEFAULT_COVERAGE;
        let r = radius.min(room);
        let half = ((samples.max(1) - 1) / 2).max(1);
        let odd = 2 * half + 1;
        Self::anchored(domain, anchor, odd, Some(r / half as f64), 1.0)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().copied()
    }
}
