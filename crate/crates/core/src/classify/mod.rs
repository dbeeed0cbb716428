// Copyright 2026 the Orthotomic Authors
// SPDX-License-Identifier: Apache-2.0

//! Normal forms of orthotomic germs.
//!
//! The point `P` is located in the flag of strata spanned by the frame at
//! `s0`, the vanishing order of `κ_n` at `s0` is measured, and the two are
//! looked up in the table of known normal forms. Each verdict carries the
//! vanishing-order signature of the germ, computed independently from its
//! jets, so the claimed exponents can be checked.

mod signature;

pub use signature::{spherical_signature, vanishing_signature, VanishingSignature};

use serde::Serialize;
use thiserror::Error;

use crate::curve::{CurveError, CurveSpec};
use crate::frame::{compute_frame, FrameError, FrameSample};
use crate::grid::Grid;
use crate::jet::{Jet, JetError};
use crate::linalg;
use crate::maps::{self, MapError, SpherePoint};
use crate::tol::Tolerances;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error("jet order {got} is too small to decide; need {need}")]
    InconclusiveJetOrder { need: usize, got: usize },
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StratumKind {
    Pole,
    Stratum(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StratumLocation {
    pub kind: StratumKind,
    /// `c_j = P·u_j(s0)` for `j = 0…n`.
    pub witnesses: Vec<f64>,
}

impl StratumLocation {
    pub fn is_pole(&self) -> bool {
        self.kind == StratumKind::Pole
    }

    pub fn stratum(&self) -> Option<usize> {
        match self.kind {
            StratumKind::Stratum(i) => Some(i),
            StratumKind::Pole => None,
        }
    }
}

/// Places `P` in the flag `S^0 ⊂ … ⊂ S^n` at the frame's parameter.
///
/// `Stratum(i)` means `c_j ≈ 0` for every `j > i` while `c_i` is not.
pub fn locate_point(frame: &FrameSample, p: &SpherePoint, tol: &Tolerances) -> StratumLocation {
    let witnesses: Vec<f64> = frame.u.iter().map(|u| p.dot(&u.value())).collect();
    let n = frame.n();
    let kind = if witnesses[n].abs() >= 1.0 - tol.pole {
        StratumKind::Pole
    } else {
        // P is a unit vector, so some witness exceeds strat_tol.
        let i = witnesses.iter().rposition(|c| c.abs() > tol.strat).unwrap_or(0);
        StratumKind::Stratum(i)
    };
    StratumLocation { kind, witnesses }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AkType {
    #[serde(rename = "not-singular")]
    NotSingular,
    #[serde(rename = "A_k")]
    A(usize),
}

/// Vanishing order of a scalar germ: `A(k)` when the first `k + 1`
/// derivatives vanish and the next does not.
pub fn ak_type(f: &Jet, ak_tol: f64) -> Result<AkType, ClassifyError> {
    if f.order() < 1 {
        return Err(ClassifyError::InconclusiveJetOrder { need: 1, got: 0 });
    }
    if f.value().abs() > ak_tol {
        return Ok(AkType::NotSingular);
    }
    (1..=f.order())
        .find(|&j| f.derivative(j).abs() > ak_tol)
        .map(|j| AkType::A(j - 1))
        .ok_or(ClassifyError::InconclusiveJetOrder {
            need: f.order() + 1,
            got: f.order(),
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Equivalence {
    L,
    A,
    Unclassified,
}

/// Which entry of the normal-form table produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Clause {
    /// `P = ±u_n(s0)`: the germ is `L`-equivalent to the dual germ.
    PoleDual,
    /// Regular dual, `P` in stratum `n` or `n−1`.
    RegularDualUpper,
    /// Regular dual, `P` in stratum `i ≤ n−2`.
    RegularDualLower,
    /// `κ_n` of type `A_k`, `k ≤ n−2`, `P` in stratum `n`.
    SingularDualTop,
    /// `κ_n` of type `A_{n−1}`, `P` in stratum `n`.
    SingularDualTopMaximal,
    /// `κ_n` of type `A_0`, `P` in stratum `n`.
    SimpleZeroTop,
    /// `κ_n` of type `A_0`, `P` in stratum `1…n−1`.
    SimpleZeroMiddle,
    /// `κ_n` of type `A_0`, `P` in stratum `0`.
    SimpleZeroBottom,
    None,
}

impl Clause {
    /// Label used in reports.
    pub fn label(self) -> &'static str {
        match self {
            Clause::PoleDual => "Theorem 1(2)",
            Clause::RegularDualUpper => "Corollary 2.2(1)",
            Clause::RegularDualLower => "Corollary 2.2(2)",
            Clause::SingularDualTop => "Corollary 2.6(1)",
            Clause::SingularDualTopMaximal => "Corollary 2.6(2)",
            Clause::SimpleZeroTop => "Corollary 2.7(1)",
            Clause::SimpleZeroMiddle => "Corollary 2.7(2)",
            Clause::SimpleZeroBottom => "Corollary 2.7(3)",
            Clause::None => "none",
        }
    }

    /// Clauses whose exponent list is unambiguous enough to check against
    /// a computed signature.
    pub fn checkable(self) -> bool {
        matches!(
            self,
            Clause::RegularDualUpper
                | Clause::RegularDualLower
                | Clause::SimpleZeroTop
                | Clause::SingularDualTop
        )
    }
}

/// Where the reported exponents come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExponentBasis {
    /// The normal form of the clause.
    Clause,
    /// The computed signature (clause gives no usable list).
    Signature,
    None,
}

/// Grid search for `P = ±u_n(s)` over the domain.
///
/// A miss only shows that no sample (after local refinement) comes within
/// the pole tolerance; it does not prove `P` avoids the dual image.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualImageSearch {
    pub samples: usize,
    pub coverage: f64,
    /// `min_s min(‖P − u_n(s)‖, ‖P + u_n(s)‖)`.
    pub min_distance: f64,
    pub argmin: f64,
    pub hit: bool,
    pub semi_decision: bool,
}

pub const DUAL_SEARCH_SAMPLES: usize = 2048;
pub const DUAL_SEARCH_COVERAGE: f64 = 0.999;

fn dual_distance(curve: &CurveSpec, p: &SpherePoint, s: f64, tol: &Tolerances) -> Result<f64, ClassifyError> {
    let frame = compute_frame(curve, s, curve.n() + 1, tol)?;
    let un = frame.dual().value();
    let plus = linalg::distance(p.coords(), &un);
    let minus = linalg::distance(p.coords(), &linalg::scale(&un, -1.0));
    Ok(plus.min(minus))
}

pub fn search_dual_image(
    curve: &CurveSpec,
    p: &SpherePoint,
    samples: usize,
    tol: &Tolerances,
) -> Result<DualImageSearch, ClassifyError> {
    let domain = curve.domain();
    let grid = Grid::anchored(domain, domain.center(), samples, None, DUAL_SEARCH_COVERAGE);
    let mut best = (f64::INFINITY, grid.anchor);
    for s in grid.iter() {
        let d = dual_distance(curve, p, s, tol)?;
        if d < best.0 {
            best = (d, s);
        }
    }
    // Golden-section refinement in the bracket around the best sample.
    let h = grid.step;
    let (mut a, mut b) = (
        (best.1 - h).max(grid.points[0]),
        (best.1 + h).min(*grid.points.last().unwrap()),
    );
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..200 {
        if b - a <= 1e-14 * (1.0 + best.1.abs()) {
            break;
        }
        let x1 = b - g * (b - a);
        let x2 = a + g * (b - a);
        let (d1, d2) = (
            dual_distance(curve, p, x1, tol)?,
            dual_distance(curve, p, x2, tol)?,
        );
        if d1 < best.0 {
            best = (d1, x1);
        }
        if d2 < best.0 {
            best = (d2, x2);
        }
        if d1 < d2 {
            b = x2;
        } else {
            a = x1;
        }
    }
    // |P·u_n| ≥ 1 − pole_tol  ⇔  min ‖P ∓ u_n‖² ≤ 2 pole_tol
    let hit = best.0 * best.0 <= 2.0 * tol.pole;
    Ok(DualImageSearch {
        samples: grid.len(),
        coverage: DUAL_SEARCH_COVERAGE,
        min_distance: best.0,
        argmin: best.1,
        hit,
        semi_decision: true,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    pub stratum: StratumLocation,
    /// `None` when `κ_n` vanishes to the available jet order.
    pub ak: Option<AkType>,
    pub kappa_n: f64,
    pub jet_order: usize,
    /// Signature of the dual germ `u_n`.
    pub dual_signature: VanishingSignature,
    pub dual_image: Option<DualImageSearch>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GermClass {
    pub equivalence: Equivalence,
    /// `n` entries; `0` marks a zero slot.
    pub exponents: Vec<usize>,
    pub exponent_basis: ExponentBasis,
    pub clause: Clause,
    pub source: &'static str,
    /// The normal form as written in the table.
    pub normal_form: String,
    /// Signature of the orthotomic germ.
    pub signature: VanishingSignature,
    /// Whether the leading signature entries equal the leading nonzero
    /// exponents; `None` when the clause is not checkable.
    pub signature_matches: Option<bool>,
    pub notes: Vec<String>,
    pub diagnostics: Diagnostics,
}

impl GermClass {
    pub fn is_classified(&self) -> bool {
        self.equivalence != Equivalence::Unclassified
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    /// Jet order of `γ`; `None` means `2n + 4`.
    pub order: Option<usize>,
    pub tol: Tolerances,
    pub dual_search_samples: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            order: None,
            tol: Tolerances::default(),
            dual_search_samples: DUAL_SEARCH_SAMPLES,
        }
    }
}

pub fn default_order(n: usize) -> usize {
    2 * n + 4
}

fn monomial_form(exponents: &[usize]) -> String {
    let parts: Vec<String> = exponents
        .iter()
        .map(|&e| match e {
            0 => "0".to_string(),
            1 => "s".to_string(),
            e => format!("s^{e}"),
        })
        .collect();
    format!("s ↦ ({})", parts.join(", "))
}

fn padded(mut nonzero: Vec<usize>, n: usize) -> Vec<usize> {
    nonzero.resize(n, 0);
    nonzero
}

/// Leading entries compared against a claimed exponent list: up to two.
pub fn signature_agrees(signature: &VanishingSignature, exponents: &[usize]) -> bool {
    let claimed: Vec<usize> = exponents.iter().copied().filter(|&e| e > 0).collect();
    let k = claimed.len().min(2);
    signature.orders.len() >= k && signature.orders[..k] == claimed[..k]
}

struct Verdict {
    equivalence: Equivalence,
    exponents: Vec<usize>,
    basis: ExponentBasis,
    clause: Clause,
    normal_form: String,
    notes: Vec<String>,
}

impl Verdict {
    fn from_clause(equivalence: Equivalence, clause: Clause, exponents: Vec<usize>) -> Self {
        Self {
            equivalence,
            normal_form: monomial_form(&exponents),
            exponents,
            basis: ExponentBasis::Clause,
            clause,
            notes: Vec::new(),
        }
    }

    fn unclassified(n: usize, note: impl Into<String>) -> Self {
        Self {
            equivalence: Equivalence::Unclassified,
            exponents: vec![0; n],
            basis: ExponentBasis::None,
            clause: Clause::None,
            normal_form: String::new(),
            notes: vec![note.into()],
        }
    }
}

/// Classifies the orthotomic germ of `curve` relative to `P` at `s0`.
pub fn classify_orthotomic_germ(
    curve: &CurveSpec,
    p: &SpherePoint,
    s0: f64,
    opts: &ClassifyOptions,
) -> Result<GermClass, ClassifyError> {
    let n = curve.n();
    if p.dim() != n + 1 {
        return Err(MapError::DimensionMismatch(p.dim(), n + 1).into());
    }
    let order = opts.order.unwrap_or_else(|| default_order(n));
    let tol = &opts.tol;
    let frame = compute_frame(curve, s0, order, tol)?;
    let stratum = locate_point(&frame, p, tol);
    let kn = frame.kappa_n();
    let ak = match ak_type(kn, tol.ak) {
        Ok(a) => Some(a),
        Err(ClassifyError::InconclusiveJetOrder { .. }) => None,
        Err(e) => return Err(e),
    };

    let ort = maps::orthotomic(&frame, p)?;
    let signature = spherical_signature(&ort, ort.order(), tol.sig)?;
    let dual = frame.dual();
    let dual_signature = spherical_signature(dual, dual.order(), tol.sig)?;

    let mut dual_image = None;
    let verdict = match (stratum.kind, ak) {
        (StratumKind::Pole, _) => pole_verdict(n, ak, &dual_signature),
        (_, None) => Verdict::unclassified(n, "κ_n vanishes to the available jet order"),
        (StratumKind::Stratum(i), Some(AkType::NotSingular)) => {
            let search = search_dual_image(curve, p, opts.dual_search_samples, tol)?;
            let hit = search.hit;
            dual_image = Some(search);
            if hit {
                Verdict::unclassified(n, "P lies on the sampled dual image")
            } else if i + 1 >= n {
                Verdict::from_clause(Equivalence::L, Clause::RegularDualUpper, padded(vec![1], n))
            } else {
                let run = ((n - i)..=(2 * n - 2 * i - 1)).collect();
                Verdict::from_clause(Equivalence::L, Clause::RegularDualLower, padded(run, n))
            }
        }
        (StratumKind::Stratum(i), Some(AkType::A(0))) => simple_zero_verdict(n, i, &signature),
        (StratumKind::Stratum(i), Some(AkType::A(k))) if i == n => {
            if k + 2 <= n {
                let run = ((k + 2)..=(2 * k + 3)).collect();
                Verdict::from_clause(Equivalence::L, Clause::SingularDualTop, padded(run, n))
            } else if k + 1 == n {
                let mut v = Verdict::from_clause(
                    Equivalence::A,
                    Clause::SingularDualTopMaximal,
                    ((n + 1)..=(2 * n)).collect(),
                );
                v.normal_form = "s ↦ (s^{n+1}, s^{k+2}, …, s^{2n})".to_string();
                v.notes.push(
                    "stated form repeats the exponent n+1 when k = n−1; \
                     exponents use the consecutive run n+1…2n"
                        .to_string(),
                );
                v
            } else {
                Verdict::unclassified(n, format!("κ_n has type A_{k} with k ≥ n"))
            }
        }
        (StratumKind::Stratum(i), Some(AkType::A(k))) => Verdict::unclassified(
            n,
            format!("no normal form for κ_n of type A_{k} with P in stratum {i}"),
        ),
    };

    let signature_matches = (verdict.basis == ExponentBasis::Clause && verdict.clause.checkable())
        .then(|| signature_agrees(&signature, &verdict.exponents));

    Ok(GermClass {
        equivalence: verdict.equivalence,
        exponents: verdict.exponents,
        exponent_basis: verdict.basis,
        clause: verdict.clause,
        source: verdict.clause.label(),
        normal_form: verdict.normal_form,
        signature,
        signature_matches,
        notes: verdict.notes,
        diagnostics: Diagnostics {
            stratum,
            ak,
            kappa_n: kn.value(),
            jet_order: order,
            dual_signature,
            dual_image,
        },
    })
}

fn pole_verdict(n: usize, ak: Option<AkType>, dual_signature: &VanishingSignature) -> Verdict {
    match ak {
        Some(AkType::NotSingular) => {
            Verdict::from_clause(Equivalence::L, Clause::PoleDual, padded(vec![1], n))
        }
        _ if dual_signature.orders.is_empty() => Verdict::unclassified(
            n,
            "P is a pole and the dual germ is constant to the available order",
        ),
        _ => {
            let mut v = Verdict::from_clause(
                Equivalence::L,
                Clause::PoleDual,
                padded(dual_signature.orders.clone(), n),
            );
            v.basis = ExponentBasis::Signature;
            v.normal_form = "germ of u_n".to_string();
            v
        }
    }
}

fn simple_zero_verdict(n: usize, i: usize, signature: &VanishingSignature) -> Verdict {
    if i == n {
        Verdict::from_clause(Equivalence::L, Clause::SimpleZeroTop, padded(vec![2, 3], n))
    } else if i == 0 {
        let mut run = vec![n + 1];
        run.extend((n + 3)..=(2 * n + 1));
        Verdict::from_clause(Equivalence::A, Clause::SimpleZeroBottom, run)
    } else {
        let mut v = Verdict::from_clause(
            Equivalence::A,
            Clause::SimpleZeroMiddle,
            padded(signature.orders.clone(), n),
        );
        v.basis = ExponentBasis::Signature;
        v.normal_form = format!("stated form ambiguous; computed signature {:?}", signature.orders);
        v.notes
            .push("element counts of the stated normal form do not total n".to_string());
        v
    }
}

/// Parameters where the pedal is singular, by the frame criterion and by
/// direct inspection of the pedal jet.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PedalSingularSet {
    /// `|κ_n(s)| ≤ tol` or `P` in a stratum `≤ n − 2`.
    pub criterion: Vec<f64>,
    /// `‖ped′(s)‖ ≤ tol`.
    pub jet: Vec<f64>,
    /// Samples where the two predicates disagree.
    pub disagreements: Vec<f64>,
    /// Samples skipped because `P = ±u_n(s)`.
    pub poles: Vec<f64>,
}

/// Threshold for `‖ped′‖` and `|κ_n|` in the singular-set criterion.
pub const PEDAL_SINGULAR_TOL: f64 = 1e-8;

pub fn pedal_singular_set(
    curve: &CurveSpec,
    p: &SpherePoint,
    grid: &Grid,
    tol: &Tolerances,
) -> Result<PedalSingularSet, ClassifyError> {
    let n = curve.n();
    let order = n + 2;
    let mut out = PedalSingularSet {
        criterion: Vec::new(),
        jet: Vec::new(),
        disagreements: Vec::new(),
        poles: Vec::new(),
    };
    for s in grid.iter() {
        let frame = compute_frame(curve, s, order, tol)?;
        let loc = locate_point(&frame, p, tol);
        let Some(i) = loc.stratum() else {
            out.poles.push(s);
            continue;
        };
        let by_criterion = frame.kappa_n().value().abs() <= PEDAL_SINGULAR_TOL || i + 2 <= n;
        let ped = maps::pedal(&frame, p, tol.pole)?;
        let by_jet = linalg::norm(&ped.derivative(1)) <= PEDAL_SINGULAR_TOL;
        if by_criterion {
            out.criterion.push(s);
        }
        if by_jet {
            out.jet.push(s);
        }
        if by_criterion != by_jet {
            out.disagreements.push(s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ak_examples() {
        assert_eq!(
            ak_type(&Jet::new(0.0, vec![0.75, 0.0, 0.0]).unwrap(), 1e-7).unwrap(),
            AkType::NotSingular
        );
        assert_eq!(
            ak_type(&Jet::new(0.0, vec![0.0, 2.0, 0.0]).unwrap(), 1e-7).unwrap(),
            AkType::A(0)
        );
        // κ''' = 3!·5
        assert_eq!(
            ak_type(&Jet::new(0.0, vec![0.0, 0.0, 0.0, 5.0]).unwrap(), 1e-7).unwrap(),
            AkType::A(2)
        );
        assert!(matches!(
            ak_type(&Jet::zero(0.0, 4), 1e-7),
            Err(ClassifyError::InconclusiveJetOrder { .. })
        ));
    }

    #[test]
    fn comparison_uses_leading_nonzero_exponents() {
        let sig = |orders: Vec<usize>| VanishingSignature {
            orders,
            depth: 6,
            max_rank: 2,
        };
        assert!(signature_agrees(&sig(vec![1, 2]), &[1, 0]));
        assert!(signature_agrees(&sig(vec![2, 3]), &[2, 3]));
        assert!(!signature_agrees(&sig(vec![2, 4]), &[2, 3]));
        assert!(!signature_agrees(&sig(vec![2]), &[2, 3]));
    }

    #[test]
    fn monomial_forms() {
        assert_eq!(monomial_form(&[1, 0]), "s ↦ (s, 0)");
        assert_eq!(monomial_form(&[2, 3, 0]), "s ↦ (s^2, s^3, 0)");
    }
}
