// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

//! Residual checks of frame and map identities over sample grids, and the
//! explicit equivalence witnesses for orthotomic germs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::CatalogEntry;
use crate::classify::{locate_point, spherical_signature, ClassifyError, StratumKind, VanishingSignature};
use crate::curve::{CurveError, CurveSpec};
use crate::frame::{compute_frame, FrameError, FrameSample};
use crate::grid::Grid;
use crate::linalg;
use crate::maps::{self, MapError, SpherePoint};
use crate::tol::{Tolerances, DERIVATIVE_LAW_TOL, MAP_IDENTITY_TOL, ORACLE_TOL, ORTHONORMAL_TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Seed of every randomized check.
pub const SEED: u64 = 0x5EED_0F0E;
pub const RANDOM_SPHERE_POINTS: usize = 10_000;
pub const RANDOM_PREIMAGES: usize = 1_000;
pub const RANDOM_PROBES: usize = 20;

/// Maximum residual of one identity over a set of samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub samples: usize,
    /// Samples where the identity is not defined (the pedal at a pole).
    pub skipped: usize,
    /// Parameter (or random index) of the largest residual.
    pub worst_sample: Option<f64>,
}

impl IdentityCheck {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            max_residual: 0.0,
            tolerance,
            passed: true,
            samples: 0,
            skipped: 0,
            worst_sample: None,
        }
    }

    fn record(&mut self, at: f64, residual: f64) {
        self.samples += 1;
        // NaN residuals count as failures
        if !(residual <= self.max_residual) {
            self.max_residual = if residual.is_nan() {
                f64::INFINITY
            } else {
                residual
            };
            self.worst_sample = Some(at);
        }
        self.passed = self.max_residual <= self.tolerance;
    }

    fn skip(&mut self) {
        self.skipped += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridDescription {
    pub samples: usize,
    pub anchor: f64,
    pub step: f64,
    pub min: f64,
    pub max: f64,
}

impl GridDescription {
    pub fn of(grid: &Grid) -> Self {
        let (min, max) = grid.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), s| {
            (a.min(s), b.max(s))
        });
        Self {
            samples: grid.len(),
            anchor: grid.anchor,
            step: grid.step,
            min,
            max,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessCase {
    /// `P ≠ ±u_n(s0)`: `Φ_P` carries the pedal germ to the orthotomic germ.
    PedalWitness,
    /// `P = ±u_n(s0)`: `−Φ_P` carries the dual germ to the orthotomic germ.
    DualWitness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessVerdict {
    Passed,
    Failed,
    Unclassified,
}

/// Data certifying that an explicit sphere map relates the orthotomic germ
/// to the pedal germ or the dual germ at `s0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceWitness {
    pub s0: f64,
    pub case: WitnessCase,
    pub grid: GridDescription,
    /// Case 1: `min P·ped(s)` over the neighborhood (hemisphere landing).
    pub min_hemisphere_margin: Option<f64>,
    /// `min |P·x|` over the points where `Φ_P` is applied; positive means
    /// `Φ_P` is regular there.
    pub min_regularity_margin: f64,
    /// Case 1: `max ‖Φ_P(ped) − ort‖`; case 2: `max ‖ort + Φ_P(u_n)‖`.
    pub max_residual: f64,
    pub tolerance: f64,
    /// Case 2: `‖ort(s0) + P‖`.
    pub ort_at_s0_residual: Option<f64>,
    /// Case 2: signatures of the orthotomic and dual germs.
    pub ort_signature: Option<VanishingSignature>,
    pub dual_signature: Option<VanishingSignature>,
    pub verdict: WitnessVerdict,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub curve: String,
    pub point: Vec<f64>,
    pub grid: GridDescription,
    pub checks: Vec<IdentityCheck>,
    pub witness: Option<EquivalenceWitness>,
    pub passed: bool,
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Failed checks, by name.
    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }

    fn finish(&mut self) {
        let witness_ok = self
            .witness
            .as_ref()
            .is_none_or(|w| w.verdict != WitnessVerdict::Failed);
        self.passed = witness_ok && self.checks.iter().all(|c| c.passed);
    }
}

/// Frames on a grid, computed once and reused for several points.
#[derive(Debug, Clone)]
pub struct FrameCache {
    pub grid: Grid,
    pub frames: Vec<FrameSample>,
}

pub fn default_frame_order(n: usize) -> usize {
    n + 3
}

impl FrameCache {
    pub fn build(curve: &CurveSpec, grid: Grid, tol: &Tolerances) -> Result<Self, FrameError> {
        let order = default_frame_order(curve.n());
        let frames = grid
            .iter()
            .map(|s| compute_frame(curve, s, order, tol))
            .collect::<Result<_, _>>()?;
        Ok(Self { grid, frames })
    }
}

/// Checks that depend on the curve only.
pub fn frame_checks(entry: &CatalogEntry, cache: &FrameCache) -> Vec<IdentityCheck> {
    let mut ortho = IdentityCheck::new("frame-orthonormality", ORTHONORMAL_TOL);
    let mut det = IdentityCheck::new("frame-determinant", ORTHONORMAL_TOL);
    let mut dorth = IdentityCheck::new("derivative-orthogonality", DERIVATIVE_LAW_TOL);
    let mut curv = IdentityCheck::new("curvature-relation", DERIVATIVE_LAW_TOL);
    let mut dual = IdentityCheck::new("dual-derivative", DERIVATIVE_LAW_TOL);
    let mut k1 = IdentityCheck::new("kappa1-jet", ORACLE_TOL);
    let mut oracle = IdentityCheck::new("curvature-oracle", ORACLE_TOL);
    for f in &cache.frames {
        ortho.record(f.s, f.orthonormality_defect());
        det.record(f.s, (f.determinant() - 1.0).abs());
        dorth.record(f.s, f.derivative_orthogonality_defect());
        curv.record(f.s, f.curvature_relation_defect());
        dual.record(f.s, f.dual_derivative_defect());
        k1.record(f.s, f.kappa1_defect());
        if let Some(kappa) = &entry.oracle.kappa {
            let worst = f
                .kappa_values()
                .iter()
                .skip(1)
                .zip(kappa)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            oracle.record(f.s, worst);
        }
    }
    let mut out = vec![ortho, det, dorth, curv, dual, k1];
    if entry.oracle.kappa.is_some() {
        out.push(oracle);
    }
    out
}

/// Identities between pedal, orthotomic, `Ψ_P` and `Φ_P` along the curve.
pub fn map_checks(
    cache: &FrameCache,
    p: &SpherePoint,
    tol: &Tolerances,
) -> Result<Vec<IdentityCheck>, VerifyError> {
    let mut factor = IdentityCheck::new("pedal-factorization", MAP_IDENTITY_TOL);
    let mut pdef = IdentityCheck::new("pedal-definition", MAP_IDENTITY_TOL);
    let mut odef = IdentityCheck::new("orthotomic-definition", MAP_IDENTITY_TOL);
    let mut refl = IdentityCheck::new("reflection", MAP_IDENTITY_TOL);
    let mut comp = IdentityCheck::new("composition", MAP_IDENTITY_TOL);
    let mut fig = IdentityCheck::new("midpoint-relation", MAP_IDENTITY_TOL);
    let mut witness = IdentityCheck::new("pedal-witness", MAP_IDENTITY_TOL);
    let mut ext = IdentityCheck::new("pole-extension", MAP_IDENTITY_TOL);
    // residual = max(0, −P·ped); the check demands P·ped > 0
    let mut hemi = IdentityCheck::new("hemisphere-landing", 0.0);
    let mut regular = IdentityCheck::new("phi-regular-along-pedal", 0.0);

    for f in &cache.frames {
        let s = f.s;
        let un = f.dual().value();
        let ort = maps::orthotomic(f, p)?.value();
        let phi_un = maps::phi_map(p, &un);
        ext.record(s, linalg::norm(&linalg::add(&ort, &phi_un)));
        odef.record(s, linalg::distance(&ort, &maps::orthotomic_by_sum(f, p)?.value()));

        if maps::is_pole(f, p, tol.pole) {
            for c in [
                &mut factor,
                &mut pdef,
                &mut refl,
                &mut comp,
                &mut fig,
                &mut witness,
                &mut hemi,
                &mut regular,
            ] {
                c.skip();
            }
            continue;
        }
        let ped = maps::pedal(f, p, tol.pole)?.value();
        let psi = maps::psi_map(p, &un, tol.pole)?;
        factor.record(s, linalg::distance(&ped, &psi));
        pdef.record(
            s,
            linalg::distance(&ped, &maps::pedal_by_projection(f, p, tol.pole)?.value()),
        );
        let cos = p.dot(&ped);
        let reflected = linalg::axpy(&linalg::scale(&ped, 2.0 * cos), -1.0, p.coords());
        refl.record(s, linalg::distance(&ort, &reflected));
        comp.record(s, linalg::distance(&ort, &maps::phi_map(p, &psi)));
        let mid = linalg::scale(&linalg::add(&ort, p.coords()), 0.5);
        fig.record(s, linalg::distance(&mid, &linalg::scale(&ped, cos)));
        witness.record(s, linalg::distance(&maps::phi_map(p, &ped), &ort));
        hemi.record(s, if cos > 0.0 { 0.0 } else { 1.0 - cos });
        regular.record(
            s,
            if maps::phi_singular(p, &ped, tol.pole) {
                1.0
            } else {
                0.0
            },
        );
    }
    Ok(vec![
        factor, pdef, odef, refl, comp, fig, witness, ext, hemi, regular,
    ])
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = linalg::norm(&v);
        if r > 1e-3 && r <= 1.0 {
            return linalg::scale(&v, 1.0 / r);
        }
    }
}

/// Checks of `Φ_P` and `Ψ_P` on random points of the sphere.
pub fn random_map_checks(
    p: &SpherePoint,
    seed: u64,
    tol: &Tolerances,
) -> Result<Vec<IdentityCheck>, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = p.dim();
    let mut sphere = IdentityCheck::new("phi-preserves-sphere", MAP_IDENTITY_TOL);
    let mut psi = IdentityCheck::new("phi-psi-antipodal", MAP_IDENTITY_TOL);
    for i in 0..RANDOM_SPHERE_POINTS {
        let x = random_unit(&mut rng, dim);
        let y = maps::phi_map(p, &x);
        sphere.record(i as f64, (linalg::norm(&y) - 1.0).abs());
        if i < RANDOM_PREIMAGES {
            match maps::psi_map(p, &x, tol.pole) {
                Ok(q) => {
                    let lhs = maps::phi_map(p, &q);
                    psi.record(i as f64, linalg::norm(&linalg::add(&lhs, &y)));
                }
                Err(_) => psi.skip(),
            }
        }
    }
    let mut pre = IdentityCheck::new("phi-preimage-roundtrip", MAP_IDENTITY_TOL);
    for i in 0..RANDOM_PREIMAGES {
        let y = random_unit(&mut rng, dim);
        match maps::phi_preimage(p, &y, tol.pole) {
            Ok(x) => pre.record(i as f64, linalg::distance(&maps::phi_map(p, &x), &y)),
            Err(_) => pre.skip(),
        }
    }
    Ok(vec![sphere, psi, pre])
}

fn undefined_report(
    entry: &CatalogEntry,
    p: &SpherePoint,
    grid: &Grid,
    err: &FrameError,
) -> VerificationReport {
    let mut check = IdentityCheck::new("frame-defined", 0.0);
    check.record(grid.anchor, f64::INFINITY);
    let mut report = VerificationReport {
        curve: entry.label(),
        point: p.coords().to_vec(),
        grid: GridDescription::of(grid),
        checks: vec![check],
        witness: None,
        passed: false,
        note: Some(err.to_string()),
    };
    report.finish();
    report
}

/// Every identity of the frame and the maps for one point.
pub fn verify_identities(
    entry: &CatalogEntry,
    p: &SpherePoint,
    grid: &Grid,
    tol: &Tolerances,
) -> Result<VerificationReport, VerifyError> {
    match FrameCache::build(&entry.spec, grid.clone(), tol) {
        Ok(cache) => verify_with_cache(entry, &cache, p, tol),
        Err(e @ FrameError::FrameUndefined { .. }) => Ok(undefined_report(entry, p, grid, &e)),
        Err(e) => Err(e.into()),
    }
}

pub fn verify_with_cache(
    entry: &CatalogEntry,
    cache: &FrameCache,
    p: &SpherePoint,
    tol: &Tolerances,
) -> Result<VerificationReport, VerifyError> {
    if p.dim() != entry.n + 1 {
        return Err(MapError::DimensionMismatch(p.dim(), entry.n + 1).into());
    }
    let mut checks = frame_checks(entry, cache);
    checks.extend(map_checks(cache, p, tol)?);
    checks.extend(random_map_checks(p, SEED, tol)?);
    let mut report = VerificationReport {
        curve: entry.label(),
        point: p.coords().to_vec(),
        grid: GridDescription::of(&cache.grid),
        checks,
        witness: None,
        passed: false,
        note: None,
    };
    report.finish();
    Ok(report)
}

/// Radius and sample count of the neighborhood grid around `s0`.
pub const WITNESS_RADIUS: f64 = 0.1;
pub const WITNESS_SAMPLES: usize = 41;
/// Depth to which the two germ signatures are compared at a pole.
pub const WITNESS_SIGNATURE_DEPTH: usize = 3;

pub fn equivalence_witness(
    curve: &CurveSpec,
    p: &SpherePoint,
    s0: f64,
    tol: &Tolerances,
) -> Result<EquivalenceWitness, VerifyError> {
    let n = curve.n();
    let grid = Grid::neighborhood(curve.domain(), s0, WITNESS_RADIUS, WITNESS_SAMPLES);
    let centre = compute_frame(curve, s0, 2 * n + 4, tol)?;
    let pole = locate_point(&centre, p, tol).kind == StratumKind::Pole;
    let order = default_frame_order(n);
    let mut max_residual: f64 = 0.0;
    let mut min_margin = f64::INFINITY;
    let mut min_regular = f64::INFINITY;
    let mut failed = false;

    for s in grid.iter() {
        let f = compute_frame(curve, s, order, tol)?;
        let ort = maps::orthotomic(&f, p)?.value();
        if pole {
            let un = f.dual().value();
            max_residual = max_residual.max(linalg::norm(&linalg::add(&ort, &maps::phi_map(p, &un))));
            min_regular = min_regular.min(p.dot(&un).abs());
        } else {
            // A pole elsewhere in the neighborhood ends the germ-level claim.
            if maps::is_pole(&f, p, tol.pole) {
                failed = true;
                continue;
            }
            let ped = maps::pedal(&f, p, tol.pole)?.value();
            let cos = p.dot(&ped);
            min_margin = min_margin.min(cos);
            min_regular = min_regular.min(cos.abs());
            max_residual = max_residual.max(linalg::distance(&maps::phi_map(p, &ped), &ort));
        }
    }

    let mut witness = EquivalenceWitness {
        s0,
        case: if pole {
            WitnessCase::DualWitness
        } else {
            WitnessCase::PedalWitness
        },
        grid: GridDescription::of(&grid),
        min_hemisphere_margin: (!pole).then_some(min_margin),
        min_regularity_margin: min_regular,
        max_residual,
        tolerance: MAP_IDENTITY_TOL,
        ort_at_s0_residual: None,
        ort_signature: None,
        dual_signature: None,
        verdict: WitnessVerdict::Passed,
        note: None,
    };
    let regular = min_regular > tol.pole;
    failed |= !(max_residual <= MAP_IDENTITY_TOL) || !regular;
    if pole {
        let ort = maps::orthotomic(&centre, p)?;
        witness.ort_at_s0_residual = Some(linalg::norm(&linalg::add(&ort.value(), p.coords())));
        let so = spherical_signature(&ort, WITNESS_SIGNATURE_DEPTH, tol.sig)?;
        let sd = spherical_signature(centre.dual(), WITNESS_SIGNATURE_DEPTH, tol.sig)?;
        failed |= !(witness.ort_at_s0_residual.unwrap() <= MAP_IDENTITY_TOL) || so.orders != sd.orders;
        let degenerate = sd.orders.is_empty();
        witness.ort_signature = Some(so);
        witness.dual_signature = Some(sd);
        if degenerate && !failed {
            witness.verdict = WitnessVerdict::Unclassified;
            witness.note = Some("dual germ is constant to the inspected depth".to_string());
            return Ok(witness);
        }
    } else {
        failed |= !(min_margin > 0.0);
    }
    if failed {
        witness.verdict = WitnessVerdict::Failed;
    }
    Ok(witness)
}

/// [`verify_identities`] plus the witness at `s0`.
pub fn verify_point(
    entry: &CatalogEntry,
    p: &SpherePoint,
    grid: &Grid,
    s0: f64,
    tol: &Tolerances,
) -> Result<VerificationReport, VerifyError> {
    let mut report = verify_identities(entry, p, grid, tol)?;
    if entry.frame_defined {
        report.witness = Some(equivalence_witness(&entry.spec, p, s0, tol)?);
        report.finish();
    }
    Ok(report)
}

/// Labeled test points: `±u_i(s0)`, normalized midpoints of non-antipodal
/// pairs of those, and `random` seeded random points.
pub fn probe_set(frame: &FrameSample, random: usize, seed: u64) -> Vec<(String, SpherePoint)> {
    let mut anchors = Vec::new();
    for (i, u) in frame.values().into_iter().enumerate() {
        anchors.push((format!("u_{i}"), u.clone()));
        anchors.push((format!("-u_{i}"), linalg::scale(&u, -1.0)));
    }
    let mut out: Vec<(String, SpherePoint)> = anchors
        .iter()
        .map(|(l, v)| (l.clone(), SpherePoint::normalized(v).expect("unit frame vector")))
        .collect();
    for a in 0..anchors.len() {
        for b in (a + 1)..anchors.len() {
            let sum = linalg::add(&anchors[a].1, &anchors[b].1);
            if linalg::norm(&sum) > 0.5 {
                let label = format!("mid({},{})", anchors[a].0, anchors[b].0);
                out.push((label, SpherePoint::normalized(&sum).expect("nonzero")));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = frame.n() + 1;
    for i in 0..random {
        let v = random_unit(&mut rng, dim);
        out.push((format!("random[{i}]"), SpherePoint::normalized(&v).expect("unit")));
    }
    out
}

/// Agreement of jet derivatives with central differences.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DifferenceCheck {
    pub max_order: usize,
    pub step: f64,
    /// `max ‖D^k − δ_h D^{k−1}‖ / max(1, ‖δ_h D^{k−1}‖)` over samples and
    /// `1 ≤ k ≤ max_order`. Vector norms keep the measure independent of the
    /// ambient coordinates.
    pub max_relative_error: f64,
    pub worst_sample: f64,
    pub worst_order: usize,
}

/// Compares the `k`-th jet derivative of the curve with the central
/// difference `(D^{k−1}(s+h) − D^{k−1}(s−h)) / 2h` of jet derivatives one
/// order lower, for `1 ≤ k ≤ max_order`.
///
/// Differencing the lower derivative (rather than the position `k` times)
/// keeps roundoff at `ε/h`, so an `h` like `1e−4` stays meaningful through
/// fourth order.
pub fn difference_check(
    curve: &CurveSpec,
    grid: &Grid,
    max_order: usize,
    h: f64,
) -> Result<DifferenceCheck, VerifyError> {
    let mut out = DifferenceCheck {
        max_order,
        step: h,
        max_relative_error: 0.0,
        worst_sample: grid.anchor,
        worst_order: 1,
    };
    for s in grid.iter() {
        let mid = curve.jet(s, max_order)?;
        let plus = curve.jet(s + h, max_order)?;
        let minus = curve.jet(s - h, max_order)?;
        for k in 1..=max_order {
            let exact = mid.derivative(k);
            let (dp, dm) = (plus.derivative(k - 1), minus.derivative(k - 1));
            let fd = linalg::scale(&linalg::sub(&dp, &dm), 0.5 / h);
            let rel = linalg::distance(&exact, &fd) / linalg::norm(&fd).max(1.0);
            if !(rel <= out.max_relative_error) {
                out.max_relative_error = rel;
                out.worst_sample = s;
                out.worst_order = k;
            }
        }
    }
    Ok(out)
}
