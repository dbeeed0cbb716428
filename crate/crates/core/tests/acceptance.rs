// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use orthotomic::catalog::{ak_curve, catalog_list, small_circle, CatalogEntry};
use orthotomic::classify::{
    classify_orthotomic_germ, ClassifyOptions, Clause, StratumKind, VanishingSignature,
};
use orthotomic::frame::compute_frame;
use orthotomic::grid::Grid;
use orthotomic::linalg;
use orthotomic::maps::{self, SpherePoint};
use orthotomic::plane::{ellipse, plane_orthotomic, plane_pedal, unit_circle, PlaneCurve};
use orthotomic::tol::Tolerances;
use orthotomic::verify::{
    default_frame_order, difference_check, equivalence_witness, probe_set, random_map_checks, FrameCache,
    WitnessCase, SEED,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 512;

type Outcome = Result<String, String>;

/// Running maximum of a residual, remembering where it occurred.
struct Worst {
    value: f64,
    at: String,
}

impl Worst {
    fn new() -> Self {
        Self {
            value: 0.0,
            at: String::new(),
        }
    }

    fn record(&mut self, value: f64, at: impl FnOnce() -> String) {
        // NaN must register as a failure
        if value.is_nan() || value > self.value {
            self.value = if value.is_nan() { f64::INFINITY } else { value };
            self.at = at();
        }
    }

    fn judge(&self, what: &str, tol: f64) -> Outcome {
        let line = format!("{what} {:.2e} (tol {tol:.0e}) at {}", self.value, self.at);
        if self.value <= tol {
            Ok(line)
        } else {
            Err(line)
        }
    }
}

fn frame_curves() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for n in [2, 3] {
        for r in [0.5, 0.8] {
            out.push(small_circle(n, r).unwrap());
        }
        for k in [0, 1] {
            out.push(ak_curve(n, k, 1.0, 0.3).unwrap());
        }
    }
    out
}

fn caches(tol: &Tolerances) -> Result<Vec<(CatalogEntry, FrameCache)>, String> {
    frame_curves()
        .into_iter()
        .map(|e| {
            let grid = Grid::centered(e.spec.domain(), SAMPLES);
            let cache =
                FrameCache::build(&e.spec, grid, tol).map_err(|err| format!("{}: {err}", e.label()))?;
            Ok((e, cache))
        })
        .collect()
}

fn all(parts: Vec<Outcome>) -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for p in parts {
        match p {
            Ok(l) => lines.push(l),
            Err(l) => {
                ok = false;
                lines.push(l);
            }
        }
    }
    let joined = lines.join("; ");
    if ok {
        Ok(joined)
    } else {
        Err(joined)
    }
}

fn orthonormality(curves: &[(CatalogEntry, FrameCache)]) -> Outcome {
    let mut w = Worst::new();
    for (e, c) in curves {
        for f in &c.frames {
            w.record(f.orthonormality_defect(), || format!("{} s={}", e.label(), f.s));
        }
    }
    w.judge("max |u_i·u_k − δ_ik|", 1e-9)
}

fn derivative_laws(curves: &[(CatalogEntry, FrameCache)]) -> Outcome {
    let mut orth = Worst::new();
    let mut curv = Worst::new();
    let mut k1 = Worst::new();
    for (e, c) in curves {
        for f in &c.frames {
            let at = || format!("{} s={}", e.label(), f.s);
            orth.record(f.derivative_orthogonality_defect(), at);
            curv.record(f.curvature_relation_defect(), at);
            k1.record(f.kappa1_defect(), at);
        }
    }
    all(vec![
        orth.judge("derivative orthogonality", 1e-8),
        curv.judge("curvature relation", 1e-8),
        k1.judge("κ_1 − 1", 1e-10),
    ])
}

fn dual_law(curves: &[(CatalogEntry, FrameCache)]) -> Outcome {
    let mut w = Worst::new();
    for (e, c) in curves {
        for f in &c.frames {
            w.record(f.dual_derivative_defect(), || format!("{} s={}", e.label(), f.s));
        }
    }
    w.judge("max ‖u_n′ + κ_n u_{n−1}‖", 1e-8)
}

fn curvature_oracle(curves: &[(CatalogEntry, FrameCache)]) -> Outcome {
    let (e, c) = curves
        .iter()
        .find(|(e, _)| e.name == "small-circle" && e.n == 2 && e.params["r"] == 0.8)
        .ok_or("small circle r = 0.8 missing")?;
    let mut w = Worst::new();
    for f in &c.frames {
        w.record((f.kappa_values()[2] - 0.75).abs(), || {
            format!("{} s={}", e.label(), f.s)
        });
    }
    w.judge("max |κ_2 − 0.75|", 1e-10)
}

struct ProbeResiduals {
    identities: Worst,
    witness: Worst,
    min_margin: f64,
    non_pole: usize,
    probes: usize,
}

fn probe_residuals(
    curves: &[(CatalogEntry, FrameCache)],
    tol: &Tolerances,
) -> Result<ProbeResiduals, String> {
    let mut out = ProbeResiduals {
        identities: Worst::new(),
        witness: Worst::new(),
        min_margin: f64::INFINITY,
        non_pole: 0,
        probes: 0,
    };
    for (e, c) in curves {
        let centre = compute_frame(&e.spec, c.grid.anchor, default_frame_order(e.n), tol)
            .map_err(|x| x.to_string())?;
        for (label, p) in probe_set(&centre, 20, SEED) {
            out.probes += 1;
            let mut pole_hit = false;
            let mut margin = f64::INFINITY;
            let mut witness = Worst::new();
            for f in &c.frames {
                let at = || format!("{} P={label} s={}", e.label(), f.s);
                let un = f.dual().value();
                let ort = maps::orthotomic(f, &p).map_err(|x| x.to_string())?.value();
                let phi_un = maps::phi_map(&p, &un);
                if maps::is_pole(f, &p, tol.pole) {
                    pole_hit = true;
                    continue;
                }
                let ped = maps::pedal(f, &p, tol.pole).map_err(|x| x.to_string())?.value();
                let psi = maps::psi_map(&p, &un, tol.pole).map_err(|x| x.to_string())?;
                let cos = p.dot(&ped);
                let reflected = linalg::axpy(&linalg::scale(&ped, 2.0 * cos), -1.0, p.coords());
                let phi_psi = maps::phi_map(&p, &psi);
                let mid = linalg::scale(&linalg::add(&ort, p.coords()), 0.5);
                let residuals = [
                    ("ped = Ψ_P∘u_n", linalg::distance(&ped, &psi)),
                    ("reflection", linalg::distance(&ort, &reflected)),
                    ("composition", linalg::distance(&ort, &phi_psi)),
                    ("Φ_P∘Ψ_P = −Φ_P", linalg::norm(&linalg::add(&phi_psi, &phi_un))),
                    ("midpoint", linalg::distance(&mid, &linalg::scale(&ped, cos))),
                ];
                for (name, r) in residuals {
                    out.identities.record(r, || {
                        format!("{} ({name}, 1 − |P·u_n| = {:.1e})", at(), 1.0 - p.dot(&un).abs())
                    });
                }
                margin = margin.min(cos);
                witness.record(linalg::distance(&maps::phi_map(&p, &ped), &ort), at);
            }
            if !pole_hit {
                out.non_pole += 1;
                out.min_margin = out.min_margin.min(margin);
                out.witness.record(witness.value, || witness.at.clone());
            }
        }
    }
    Ok(out)
}

fn map_identities(r: &ProbeResiduals) -> Outcome {
    r.identities
        .judge(&format!("{} probes, max identity residual", r.probes), 1e-12)
}

fn pedal_witness(r: &ProbeResiduals) -> Outcome {
    let margin = if r.min_margin > 0.0 {
        Ok(format!("min P·ped {:.3e} > 0", r.min_margin))
    } else {
        Err(format!("min P·ped {:.3e} not positive", r.min_margin))
    };
    all(vec![
        margin,
        r.witness.judge(
            &format!("{} non-pole probes, max ‖Φ_P(ped) − ort‖", r.non_pole),
            1e-12,
        ),
    ])
}

fn dual_witness(tol: &Tolerances) -> Outcome {
    let mut parts = Vec::new();
    for r in [0.5, 0.8] {
        let e = small_circle(2, r).unwrap();
        for s0 in [0.0, 0.3] {
            let f = compute_frame(&e.spec, s0, default_frame_order(2), tol).map_err(|x| x.to_string())?;
            let un = f.dual().value();
            for sign in [1.0, -1.0] {
                let p = SpherePoint::normalized(&linalg::scale(&un, sign)).unwrap();
                let w = equivalence_witness(&e.spec, &p, s0, tol).map_err(|x| x.to_string())?;
                let tag = format!(
                    "{} s0={s0} P={}u_2",
                    e.label(),
                    if sign > 0.0 { "+" } else { "−" }
                );
                let orders =
                    |s: &Option<VanishingSignature>| s.as_ref().map(|s| s.orders.clone()).unwrap_or_default();
                let (so, sd) = (orders(&w.ort_signature), orders(&w.dual_signature));
                let agree = !sd.is_empty() && so == sd;
                let at_s0 = w.ort_at_s0_residual.unwrap_or(f64::INFINITY);
                let line = format!(
                    "{tag}: ‖ort(s0)+P‖ {at_s0:.1e}, grid {:.1e}, signatures {so:?}/{sd:?}",
                    w.max_residual
                );
                let ok =
                    w.case == WitnessCase::DualWitness && at_s0 <= 1e-12 && w.max_residual <= 1e-12 && agree;
                parts.push(if ok { Ok(line) } else { Err(line) });
            }
        }
    }
    summarize(parts)
}

/// Collapses many passing sub-results into a count; failures are listed.
fn summarize(parts: Vec<Outcome>) -> Outcome {
    let total = parts.len();
    let failures: Vec<String> = parts.into_iter().filter_map(Result::err).collect();
    if failures.is_empty() {
        Ok(format!("{total} cases"))
    } else {
        Err(format!(
            "{} of {total} cases: {}",
            failures.len(),
            failures.join("; ")
        ))
    }
}

fn classification(tol: &Tolerances) -> Outcome {
    let opts = ClassifyOptions::default();
    let mut scenarios: Vec<(CatalogEntry, &str, SpherePoint, Clause, Vec<usize>)> = Vec::new();
    for r in [0.5, 0.8] {
        let e = small_circle(2, r).unwrap();
        let f = compute_frame(&e.spec, 0.0, default_frame_order(2), tol).map_err(|x| x.to_string())?;
        let u = f.values();
        let u0 = SpherePoint::normalized(&u[0]).unwrap();
        let u2 = SpherePoint::normalized(&u[2]).unwrap();
        let top = SpherePoint::normalized(&[0.0, 0.0, 1.0]).unwrap();
        scenarios.push((e.clone(), "u_0(0)", u0, Clause::RegularDualLower, vec![2, 3]));
        scenarios.push((e.clone(), "(0,0,1)", top, Clause::RegularDualUpper, vec![1, 0]));
        scenarios.push((e, "u_2(0)", u2, Clause::PoleDual, vec![1, 0]));
    }
    for n in [2, 3] {
        let e = ak_curve(n, 0, 1.0, 0.3).unwrap();
        let mut c = vec![1.0; n + 1];
        c[0] = 0.5;
        let p = SpherePoint::normalized(&c).unwrap();
        let mut expected = vec![2, 3];
        expected.resize(n, 0);
        scenarios.push((e, "(0.5,1,…)", p, Clause::SimpleZeroTop, expected));
    }

    let mut parts = Vec::new();
    for (e, label, p, clause, exponents) in scenarios {
        let g = classify_orthotomic_germ(&e.spec, &p, 0.0, &opts).map_err(|x| x.to_string())?;
        let claimed: Vec<usize> = g.exponents.iter().copied().filter(|&x| x != 0).take(2).collect();
        let computed: Vec<usize> = g.signature.orders.iter().copied().take(claimed.len()).collect();
        let mut ok =
            g.clause == clause && g.exponents == exponents && !claimed.is_empty() && computed == claimed;
        if clause == Clause::RegularDualUpper || clause == Clause::SimpleZeroTop {
            ok &= g.diagnostics.stratum.kind == StratumKind::Stratum(e.n);
        }
        if clause == Clause::RegularDualLower {
            ok &= g.diagnostics.stratum.kind == StratumKind::Stratum(0);
        }
        if clause == Clause::PoleDual {
            ok &= g.diagnostics.stratum.kind == StratumKind::Pole;
        }
        let line = format!(
            "{} P={label}: {} {:?}, signature {:?}",
            e.label(),
            g.source,
            g.exponents,
            g.signature.orders
        );
        parts.push(if ok { Ok(line) } else { Err(line) });
    }
    summarize(parts)
}

fn random_phi(tol: &Tolerances) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xACCE);
    let mut sphere = Worst::new();
    let mut roundtrip = Worst::new();
    for n in [2, 3] {
        for trial in 0..4 {
            let v: Vec<f64> = (0..=n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let p = SpherePoint::normalized(&v).unwrap();
            let checks = random_map_checks(&p, SEED + trial, tol).map_err(|x| x.to_string())?;
            for c in checks {
                let at = || format!("n={n} trial {trial} {}", c.name);
                match c.name {
                    "phi-preserves-sphere" if c.samples == 10_000 => sphere.record(c.max_residual, at),
                    "phi-preimage-roundtrip" if c.samples + c.skipped == 1_000 => {
                        roundtrip.record(c.max_residual, at)
                    }
                    "phi-preserves-sphere" | "phi-preimage-roundtrip" => sphere.record(f64::INFINITY, at),
                    _ => {}
                }
            }
        }
    }
    all(vec![
        sphere.judge("10⁴ points, max | ‖Φ_P(x)‖ − 1 |", 1e-12),
        roundtrip.judge("10³ preimages, max ‖Φ_P(x) − y‖", 1e-12),
    ])
}

fn plane_relation() -> Outcome {
    let curves: Vec<PlaneCurve> = vec![unit_circle(), ellipse(2.0, 1.0).map_err(|x| x.to_string())?];
    let points = [[0.0, 0.0], [0.3, -0.5], [1.5, 2.0]];
    let mut w = Worst::new();
    for c in &curves {
        let grid = Grid::centered(c.domain, SAMPLES);
        for s in grid.iter() {
            let g = c.jet(s, 4).map_err(|x| x.to_string())?;
            for p in points {
                let ped = plane_pedal(&g, p).map_err(|x| x.to_string())?.value();
                let ort = plane_orthotomic(&g, p).map_err(|x| x.to_string())?.value();
                let l = linalg::axpy(&linalg::scale(&ped, 2.0), -1.0, &p);
                w.record(linalg::distance(&ort, &l), || format!("{} P={p:?} s={s}", c.name));
            }
        }
    }
    w.judge("max ‖ort − (2·ped − P)‖", 1e-12)
}

fn differences() -> Outcome {
    let mut w = Worst::new();
    let entries = catalog_list();
    for e in &entries {
        let grid = Grid::centered(e.spec.domain(), 64);
        let d = difference_check(&e.spec, &grid, 4, 1e-4).map_err(|x| x.to_string())?;
        w.record(d.max_relative_error, || {
            format!("{} s={} order {}", e.label(), d.worst_sample, d.worst_order)
        });
    }
    w.judge(&format!("{} curves, max relative error", entries.len()), 1e-6)
}

fn determinism() -> Outcome {
    let runs: [&[&str]; 5] = [
        &[
            "frame",
            "--curve",
            "ak-curve",
            "--n",
            "3",
            "--samples",
            "64",
            "--format",
            "csv",
        ],
        &[
            "map",
            "--curve",
            "small-circle",
            "--P",
            "0,0,1",
            "--samples",
            "64",
        ],
        &["classify", "--curve", "small-circle", "--P", "gamma(0)"],
        &[
            "verify",
            "--curve",
            "small-circle",
            "--r",
            "0.5",
            "--P",
            "0.6,0,0.8",
            "--samples",
            "64",
        ],
        &["catalog", "--format", "csv"],
    ];
    let mut parts = Vec::new();
    for args in runs {
        let once = || {
            Command::new(env!("CARGO_BIN_EXE_orthotomic"))
                .args(args)
                .output()
                .map_err(|x| x.to_string())
        };
        let (a, b) = (once()?, once()?);
        let same =
            a.stdout == b.stdout && a.stderr == b.stderr && a.status == b.status && !a.stdout.is_empty();
        let line = format!("{} ({} bytes)", args[0], a.stdout.len());
        parts.push(if same { Ok(line) } else { Err(line) });
    }
    summarize(parts)
}

fn main() -> ExitCode {
    let tol = Tolerances::default();
    let start = Instant::now();
    let mut failed = 0;
    let mut report = |id: usize, name: &str, outcome: Outcome| {
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {id:>2} {name}: {detail}");
    };

    match caches(&tol) {
        Ok(curves) => {
            report(1, "frame orthonormality", orthonormality(&curves));
            report(2, "frame derivative laws", derivative_laws(&curves));
            report(3, "dual derivative law", dual_law(&curves));
            report(4, "small circle curvature oracle", curvature_oracle(&curves));
            match probe_residuals(&curves, &tol) {
                Ok(r) => {
                    report(5, "map identities over probes", map_identities(&r));
                    report(6, "pedal witness", pedal_witness(&r));
                }
                Err(e) => {
                    report(5, "map identities over probes", Err(e.clone()));
                    report(6, "pedal witness", Err(e));
                }
            }
        }
        Err(e) => {
            for (id, name) in [
                (1, "frame orthonormality"),
                (2, "frame derivative laws"),
                (3, "dual derivative law"),
                (4, "small circle curvature oracle"),
                (5, "map identities over probes"),
                (6, "pedal witness"),
            ] {
                report(id, name, Err(e.clone()));
            }
        }
    }
    report(7, "dual witness at poles", dual_witness(&tol));
    report(8, "classification against signatures", classification(&tol));
    report(9, "Φ_P on random points", random_phi(&tol));
    report(10, "plane pedal and orthotomic", plane_relation());
    report(11, "jets against finite differences", differences());
    report(12, "CLI determinism", determinism());

    println!("{} failed, {:.1}s", failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
