//! End-to-end verification of a curve: direction-curve systems, curvature
//! predictions and their inversion, corollaries, class correspondences and,
//! for catalog entries, agreement with the reference closed forms. Results
//! are flattened into named pass/fail [`Check`]s.

use std::sync::Arc;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::catalog::{match_constants, CatalogEntry, ConstantMatch, ReferenceParameter};
use crate::classify::{classify_with, correspondence_report, ClassReport, ClassifyOptions, Correspondence, ReportTriple};
use crate::curve::{frenet_apparatus, Curve3, FrameOptions, Vec3};
use crate::direction::{
    corollary_checks, COROLLARY_FLOOR, recover_donor_curvatures, residual_check, CorollaryCheck, CurvaturePairs, DirectionCurve,
    DirectionKind, DirectionVariant, ResidualReport,
};
use crate::error::Result;
use crate::indicatrix::{indicatrix_in_donor_parameter, Indicatrix};
use crate::numerics::Grid;

/// Required |⟨N_β, target⟩| is `1 − ALIGNMENT_TOL`.
pub const ALIGNMENT_TOL: f64 = 1e-4;
/// Bound on |‖T‖ − 1| along the indicatrix.
pub const UNIT_NORM_TOL: f64 = 1e-9;
/// Bound on closed-form versus measured indicatrix curvatures.
pub const INDICATRIX_TOL: f64 = 1e-4;

/// One named verification outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Measured error, when the check is quantitative.
    pub value: Option<f64>,
    pub tolerance: Option<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    /// Passes when `value ≤ tolerance`.
    pub fn bound(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value: Some(value),
            tolerance: Some(tolerance),
            pass: value <= tolerance,
            detail: None,
        }
    }

    pub fn flag(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            value: None,
            tolerance: None,
            pass,
            detail: Some(detail.into()),
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// All checks passed.
pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Everything measured for one direction kind.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KindVerification {
    pub kind: DirectionKind,
    /// `None` when β has no Frenet frame anywhere (a straight line).
    pub residual: Option<ResidualReport>,
    pub classification: Option<ClassReport>,
    pub correspondences: Vec<Correspondence>,
    pub corollaries: Vec<CorollaryCheck>,
    /// Max error of (κ_T, τ_T) recovered from the measured (κ_β, τ_β).
    pub recovery_error: Option<f64>,
    pub checks: Vec<Check>,
}

/// Verification of one curve on one grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Verification {
    pub curve: ClassReport,
    pub indicatrix: ClassReport,
    pub kinds: Vec<KindVerification>,
    pub checks: Vec<Check>,
}

/// How the evolute and Mannheim phases are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseChoice {
    /// Use the phases of the given kinds.
    Given,
    /// Replace them by [`DirectionKind::centered`] phases.
    Centered,
}

/// Checks the tangent indicatrix: unit norm of the sampled indicatrix, and
/// closed-form (κ_T, τ_T) against curvatures measured directly on the
/// indicatrix parametrized by the donor parameter.
pub fn indicatrix_checks(ind: &Indicatrix) -> Result<Vec<Check>> {
    let raw = indicatrix_in_donor_parameter(ind.donor())?;
    let mut norm_error = 0.0f64;
    let mut kappa_error = 0.0f64;
    let mut tau_error = 0.0f64;
    let mut checked = 0usize;
    for (i, &t) in ind.params().iter().enumerate() {
        norm_error = norm_error.max((raw.point(t)?.norm() - 1.0).abs());
        let closed = ind.node_apparatus(i);
        let Ok(measured) = frenet_apparatus(&raw, t) else {
            continue;
        };
        let scale = 1.0f64.max(closed.kappa.abs());
        kappa_error = kappa_error.max((measured.kappa - closed.kappa.abs()).abs() / scale);
        tau_error = tau_error.max((measured.tau - closed.tau).abs() / 1.0f64.max(closed.tau.abs()));
        checked += 1;
    }
    Ok(vec![
        Check::bound("indicatrix.unit-norm", norm_error, UNIT_NORM_TOL),
        Check::bound("indicatrix.kappa", kappa_error, INDICATRIX_TOL).with_detail(format!("{checked} nodes")),
        Check::bound("indicatrix.tau", tau_error, INDICATRIX_TOL).with_detail(format!("{checked} nodes")),
    ])
}

/// Max relative error of donor curvatures recovered from the measured
/// curvatures of β. Measured κ_β is signed by the predicted curvature so
/// that the Bertrand rotation can be inverted exactly; recovered values are
/// compared in magnitude where the inversion only determines magnitudes,
/// and only where |(κ_β, τ_β)| is at least [`COROLLARY_FLOOR`] of its peak.
pub fn recovery_error(curve: &DirectionCurve) -> Result<Option<f64>> {
    let ind = curve.indicatrix();
    let mut pairs = CurvaturePairs {
        s: Vec::new(),
        kappa: Vec::new(),
        tau: Vec::new(),
    };
    let mut nodes = Vec::new();
    for (i, sample) in curve.samples().iter().enumerate() {
        if let Some(frame) = sample.measured.frame() {
            pairs.s.push(sample.s_beta);
            pairs.kappa.push(frame.kappa.copysign(sample.predicted_kappa));
            pairs.tau.push(frame.tau);
            nodes.push(i);
        }
    }
    if nodes.len() < 5 {
        return Ok(None);
    }
    let (kappa, tau) = recover_donor_curvatures(curve.kind(), &pairs)?;
    let signed = matches!(curve.kind().variant, DirectionVariant::Bertrand { .. });
    // The evolute and Mannheim inversions divide by κ_β² + τ_β², so nodes
    // where β's curvature vector nearly vanishes are not compared.
    let magnitude = |i: usize| {
        let s = &curve.samples()[i];
        s.predicted_kappa.hypot(s.predicted_tau)
    };
    let peak = nodes.iter().map(|&i| magnitude(i)).fold(0.0f64, f64::max);
    let mut error = 0.0f64;
    for (k, &i) in nodes.iter().enumerate() {
        if !signed && magnitude(i) < COROLLARY_FLOOR * peak {
            continue;
        }
        let app = ind.node_apparatus(i);
        for (got, want) in [(kappa[k], app.kappa), (tau[k], app.tau)] {
            let e = if signed {
                (got - want).abs()
            } else {
                (got.abs() - want.abs()).abs()
            };
            error = error.max(e / 1.0f64.max(want.abs()));
        }
    }
    Ok(Some(error))
}

fn verify_kind(
    kind: DirectionKind,
    ind: &Arc<Indicatrix>,
    grid: &Grid,
    options: &ClassifyOptions,
    curve_report: &ClassReport,
    indicatrix_report: &ClassReport,
) -> Result<KindVerification> {
    let tol = options.tol;
    let name = kind.name();
    let beta = DirectionCurve::new(kind, ind.clone(), Vec3::zeros())?;
    let mut checks = Vec::new();
    let residual = match residual_check(&kind, &beta) {
        Ok(r) => {
            checks.push(Check::bound(
                format!("{name}.system"),
                r.max_system_residual().max(r.expansion_residual),
                tol,
            ));
            if let Some(a) = r.min_alignment {
                checks.push(Check::bound(format!("{name}.normal-alignment"), 1.0 - a, ALIGNMENT_TOL));
            }
            checks.push(Check::bound(
                format!("{name}.predicted-curvatures"),
                r.kappa_error.max(r.tau_error),
                tol,
            ));
            Some(r)
        }
        Err(e) if e.is_degenerate() => None,
        Err(e) => return Err(e),
    };
    let recovery = if residual.is_some() { recovery_error(&beta)? } else { None };
    if let Some(e) = recovery {
        checks.push(Check::bound(format!("{name}.recovery"), e, tol));
    }
    let corollaries = if residual.is_some() {
        corollary_checks(&beta)?
    } else {
        Vec::new()
    };
    for c in corollaries.iter().filter(|c| c.nodes_checked > 0) {
        checks.push(Check::bound(format!("{name}.corollary"), c.max_error, tol).with_detail(c.name.clone()));
    }
    let classification = match classify_with(beta.curve(), grid, options) {
        Ok(r) => Some(r),
        Err(e) if e.is_degenerate() => None,
        Err(e) => return Err(e),
    };
    let correspondences = match &classification {
        Some(r) => correspondence_report(
            &kind,
            ReportTriple {
                curve: curve_report,
                indicatrix: indicatrix_report,
                direction: r,
            },
        ),
        None => Vec::new(),
    };
    for c in &correspondences {
        let detail = match (c.applicable, c.left, c.right) {
            (true, Some(l), Some(r)) => format!("{} (left = {l}, right = {r})", c.statement),
            _ => format!("{} (not applicable: a side is degenerate)", c.statement),
        };
        checks.push(Check::flag(c.id.clone(), c.pass, detail));
    }
    if residual.is_none() {
        let straight = classification.as_ref().is_some_and(|r| r.is_straight_line);
        checks.push(Check::flag(
            format!("{name}.frames"),
            straight,
            "the direction curve has no Frenet frame; accepted only if it is a straight line",
        ));
    }
    Ok(KindVerification {
        kind,
        residual,
        classification,
        correspondences,
        corollaries,
        recovery_error: recovery,
        checks,
    })
}

/// Verifies `curve` on `grid` for each kind. The per-kind work runs on
/// scoped threads; results keep the order of `kinds`.
pub fn verify_curve(
    curve: &Curve3,
    grid: &Grid,
    frames: &FrameOptions,
    kinds: &[DirectionKind],
    phases: PhaseChoice,
    tol: f64,
) -> Result<Verification> {
    let options = ClassifyOptions {
        tol,
        frame: *frames,
        ..Default::default()
    };
    let ind = Arc::new(Indicatrix::new(curve, grid, frames)?);
    let curve_report = classify_with(curve, grid, &options)?;
    let indicatrix_report = classify_with(&indicatrix_in_donor_parameter(curve)?, grid, &options)?;
    let mut checks = indicatrix_checks(&ind)?;
    let kinds: Vec<DirectionKind> = kinds
        .iter()
        .map(|k| match phases {
            PhaseChoice::Given => *k,
            PhaseChoice::Centered => k.centered(&ind),
        })
        .collect();
    let results: Vec<Result<KindVerification>> = thread::scope(|scope| {
        let handles: Vec<_> = kinds
            .iter()
            .map(|&kind| {
                let ind = &ind;
                let (options, cr, ir) = (&options, &curve_report, &indicatrix_report);
                scope.spawn(move || verify_kind(kind, ind, grid, options, cr, ir))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    });
    let kinds = results.into_iter().collect::<Result<Vec<_>>>()?;
    for k in &kinds {
        checks.extend(k.checks.iter().cloned());
    }
    Ok(Verification {
        curve: curve_report,
        indicatrix: indicatrix_report,
        kinds,
        checks,
    })
}

/// A direction curve built with the figure constants and its alignment
/// with the reference closed form.
#[derive(Debug, Clone)]
pub struct ReferenceComparison {
    pub kind: DirectionKind,
    pub curve: DirectionCurve,
    pub matched: ConstantMatch,
}

/// Builds the indicatrix and the three direction curves of a catalog entry
/// on its own grid and frame mode with the figure constants, and aligns
/// each with its closed form. Returns `None` for entries without figures.
pub fn compare_with_references(entry: &CatalogEntry) -> Result<Option<(Arc<Indicatrix>, Vec<ReferenceComparison>)>> {
    let (Some(constants), Some(kinds)) = (entry.figures, entry.figure_kinds()) else {
        return Ok(None);
    };
    let ind = Arc::new(Indicatrix::new(&entry.curve, &entry.grid, &FrameOptions::with_mode(entry.frame_mode))?);
    let results: Vec<Result<ReferenceComparison>> = thread::scope(|scope| {
        let handles: Vec<_> = kinds
            .iter()
            .map(|&kind| {
                let ind = &ind;
                scope.spawn(move || -> Result<ReferenceComparison> {
                    let curve = DirectionCurve::new(kind, ind.clone(), Vec3::zeros())?;
                    let reference = entry
                        .reference(kind.name())
                        .expect("entries with figures carry all three closed forms");
                    let params: Vec<f64> = curve
                        .samples()
                        .iter()
                        .map(|s| match reference.parameter {
                            ReferenceParameter::IndicatrixArcLength => s.s_beta,
                            ReferenceParameter::DonorParameter => s.t_param,
                        })
                        .collect();
                    let matched = match_constants(&params, &curve.points(), reference, &constants)?;
                    Ok(ReferenceComparison { kind, curve, matched })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("comparison thread panicked"))
            .collect()
    });
    Ok(Some((ind, results.into_iter().collect::<Result<Vec<_>>>()?)))
}

/// Checks for [`compare_with_references`]: sup-norm per kind, with the
/// per-component deviations in the detail.
pub fn reference_checks(entry: &CatalogEntry, comparisons: &[ReferenceComparison]) -> Vec<Check> {
    comparisons
        .iter()
        .map(|c| {
            let [x, y, z] = c.matched.component_sup;
            let mut detail = format!("component sup-norms ({x:.3e}, {y:.3e}, {z:.3e})");
            if let Some(p) = c.matched.phase {
                detail.push_str(&format!("; fitted phase constant {p:.10}"));
            }
            Check::bound(
                format!("closed-form.{}", c.kind.name()),
                c.matched.sup_norm,
                entry.reference_tolerance,
            )
            .with_detail(detail)
        })
        .collect()
}

/// Agreement of the sampled indicatrix with its reference closed form.
pub fn indicatrix_reference_check(entry: &CatalogEntry, ind: &Indicatrix) -> Result<Option<Check>> {
    let (Some(reference), Some(constants)) = (&entry.indicatrix_reference, entry.figures) else {
        return Ok(None);
    };
    let points: Vec<Vec3> = ind.frames().iter().map(|f| f.tangent).collect();
    let params: Vec<f64> = match reference.parameter {
        ReferenceParameter::IndicatrixArcLength => ind.integrals().iter().map(|v| v.arc).collect(),
        ReferenceParameter::DonorParameter => ind.params(),
    };
    let m = match_constants(&params, &points, reference, &constants)?;
    Ok(Some(
        Check::bound("closed-form.indicatrix", m.sup_norm, entry.reference_tolerance)
            .with_detail(format!("offset {:.3e}", m.offset.norm())),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{example_7_1, lookup};
    use std::f64::consts::FRAC_PI_3;

    #[test]
    fn helix_verification_passes() {
        let e = example_7_1();
        let kinds = [
            DirectionKind::evolute(0.0),
            DirectionKind::bertrand(FRAC_PI_3),
            DirectionKind::mannheim(0.0),
        ];
        let v = verify_curve(&e.curve, &e.analysis_grid, &FrameOptions::default(), &kinds, PhaseChoice::Centered, 1e-3)
            .unwrap();
        for c in &v.checks {
            assert!(c.pass, "{c:?}");
        }
        assert!(v.kinds[2].residual.is_none());
        assert!(v.kinds[2].classification.as_ref().unwrap().is_straight_line);
        assert!(v.checks.iter().any(|c| c.name == "mannheim.circle-straight-line" && c.pass));
    }

    #[test]
    fn references_match_for_the_helix_example() {
        let e = example_7_1();
        let (ind, cmp) = compare_with_references(&e).unwrap().unwrap();
        for c in reference_checks(&e, &cmp) {
            assert!(c.pass, "{c:?}");
        }
        assert!(indicatrix_reference_check(&e, &ind).unwrap().unwrap().pass);
        assert!(compare_with_references(&lookup("circle").unwrap()).unwrap().is_none());
    }

    #[test]
    fn failing_bound_is_reported() {
        let c = Check::bound("x", 2.0, 1.0);
        assert!(!c.pass);
        assert!(!all_pass(&[c, Check::flag("y", true, "")]));
    }
}
