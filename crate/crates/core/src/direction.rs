//! Direction curves of the tangent indicatrix: integral curves of
//! `X = x T_T + y N_T + z B_T` whose principal normal is T_T (evolute
//! direction), N_T (Bertrand direction) or B_T (Mannheim direction).
//!
//! β is integrated in the donor parameter `t`: `dβ/dt = (ds_T/dt) X`, so β is
//! unit speed in the indicatrix arc length `s_T` and its own arc length is
//! `s_T` measured from the grid start.

use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::curve::{
    curvature_vector, frenet_apparatus, oriented_frame, sigma_at, Curve3, FrameOptions,
    FrenetApparatus, Vec3, VectorFn,
};
use crate::error::{Error, Result};
use crate::indicatrix::{closed_form, indicatrix_in_donor_parameter, Indicatrix, IndicatrixApparatus};
use crate::numerics::{central_difference, cumulative_samples, default_step, gauss_legendre, sampled_derivative, Grid};

/// Which of the three direction curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "lowercase")]
pub enum DirectionVariant {
    Evolute,
    Bertrand { theta: f64 },
    Mannheim,
}

/// A direction-curve kind together with the integration constant added to
/// the coefficient angle integral (unused by the Bertrand variant).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectionKind {
    pub variant: DirectionVariant,
    pub phase: f64,
}

/// Indicatrix frame vector that becomes the principal normal of β.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrameAxis {
    Tangent,
    Normal,
    Binormal,
}

impl FrameAxis {
    fn index(self) -> usize {
        match self {
            FrameAxis::Tangent => 0,
            FrameAxis::Normal => 1,
            FrameAxis::Binormal => 2,
        }
    }
}

impl DirectionKind {
    pub fn new(variant: DirectionVariant, phase: f64) -> Result<Self> {
        if let DirectionVariant::Bertrand { theta } = variant {
            if !theta.is_finite() {
                return Err(Error::domain("Bertrand angle must be finite"));
            }
        }
        if !phase.is_finite() {
            return Err(Error::domain("phase must be finite"));
        }
        Ok(Self { variant, phase })
    }

    pub fn evolute(phase: f64) -> Self {
        Self {
            variant: DirectionVariant::Evolute,
            phase,
        }
    }

    pub fn bertrand(theta: f64) -> Self {
        Self {
            variant: DirectionVariant::Bertrand { theta },
            phase: 0.0,
        }
    }

    pub fn mannheim(phase: f64) -> Self {
        Self {
            variant: DirectionVariant::Mannheim,
            phase,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.variant {
            DirectionVariant::Evolute => "evolute",
            DirectionVariant::Bertrand { .. } => "bertrand",
            DirectionVariant::Mannheim => "mannheim",
        }
    }

    pub fn target(&self) -> FrameAxis {
        match self.variant {
            DirectionVariant::Evolute => FrameAxis::Tangent,
            DirectionVariant::Bertrand { .. } => FrameAxis::Normal,
            DirectionVariant::Mannheim => FrameAxis::Binormal,
        }
    }

    /// The same kind with its phase chosen so that the coefficient angle
    /// sweeps a range centred where |κ_β| peaks: π/2 for the evolute kind,
    /// 0 for the Mannheim kind. When the sweep is shorter than π the
    /// resulting direction curve has no inflection. Bertrand kinds are
    /// returned unchanged.
    pub fn centered(self, ind: &Indicatrix) -> Self {
        let Some(last) = ind.integrals().last() else {
            return self;
        };
        let phase = match self.variant {
            DirectionVariant::Evolute => FRAC_PI_2 - 0.5 * last.tau,
            DirectionVariant::Mannheim => -0.5 * last.kappa,
            DirectionVariant::Bertrand { .. } => return self,
        };
        Self { phase, ..self }
    }

    fn needs_tau_integral(&self) -> bool {
        matches!(self.variant, DirectionVariant::Evolute)
    }
}

/// The triple (x, y, z) with x² + y² + z² = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectionCoefficients {
    pub t_param: f64,
    pub s_t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl DirectionCoefficients {
    pub fn as_vec(&self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }
}

/// Angle of the coefficient triple: `phase + ∫τ_T ds_T` (evolute),
/// θ (Bertrand) or `phase + ∫κ_T ds_T` (Mannheim), together with `s_T`.
fn angle_at(kind: &DirectionKind, ind: &Indicatrix, t: f64) -> Result<(f64, f64)> {
    let v = ind.integrals_with(t, kind.needs_tau_integral())?;
    let angle = match kind.variant {
        DirectionVariant::Evolute => kind.phase + v.tau,
        DirectionVariant::Bertrand { theta } => theta,
        DirectionVariant::Mannheim => kind.phase + v.kappa,
    };
    Ok((angle, v.arc))
}

fn triple(kind: &DirectionKind, angle: f64) -> Vec3 {
    let (s, c) = angle.sin_cos();
    match kind.variant {
        DirectionVariant::Evolute => Vec3::new(0.0, s, c),
        DirectionVariant::Bertrand { .. } => Vec3::new(c, 0.0, s),
        DirectionVariant::Mannheim => Vec3::new(s, c, 0.0),
    }
}

/// Closed-form coefficients at donor parameter `t`.
pub fn coefficients(kind: &DirectionKind, ind: &Indicatrix, t: f64) -> Result<DirectionCoefficients> {
    let (angle, s_t) = angle_at(kind, ind, t)?;
    let c = triple(kind, angle);
    Ok(DirectionCoefficients {
        t_param: t,
        s_t,
        x: c.x,
        y: c.y,
        z: c.z,
    })
}

/// Derivatives (x′, y′, z′) with respect to `s_T`, from the closed forms.
pub fn coefficient_derivatives(kind: &DirectionKind, ind: &Indicatrix, t: f64) -> Result<Vec3> {
    let (angle, _) = angle_at(kind, ind, t)?;
    let (s, c) = angle.sin_cos();
    Ok(match kind.variant {
        DirectionVariant::Evolute => {
            let tau = ind.apparatus_at(t)?.tau;
            Vec3::new(0.0, tau * c, -tau * s)
        }
        DirectionVariant::Bertrand { .. } => Vec3::zeros(),
        DirectionVariant::Mannheim => {
            let kappa = ind.apparatus_at(t)?.kappa;
            Vec3::new(kappa * c, -kappa * s, 0.0)
        }
    })
}

/// `x x′ + y y′ + z z′` along the trajectory, with derivatives with respect
/// to `s_T` estimated by central differences in `t`.
pub fn coefficient_orthogonality(kind: &DirectionKind, ind: &Indicatrix, t: f64) -> Result<f64> {
    let c = coefficients(kind, ind, t)?.as_vec();
    let dc: Vec3 = central_difference(
        |x| {
            coefficients(kind, ind, x)
                .map(|c| c.as_vec())
                .unwrap_or(Vec3::repeat(f64::NAN))
        },
        t,
        1,
        default_step(1, t),
    )?;
    let w = ind.rates_at(t)?.arc;
    Ok(c.dot(&dc) / w)
}

/// The unit field X at donor parameter `t`.
pub fn direction_field(kind: &DirectionKind, ind: &Indicatrix, t: f64) -> Result<Vec3> {
    Ok(field_and_rate(kind, ind, t)?.0)
}

/// X and `ds_T/dt` at `t`; only the frame and the needed angle integral are
/// evaluated.
fn field_and_rate(kind: &DirectionKind, ind: &Indicatrix, t: f64) -> Result<(Vec3, f64)> {
    let frame = ind.frame_at(t)?;
    let app = closed_form(&frame, 0.0, f64::NAN);
    let (angle, _) = angle_at(kind, ind, t)?;
    let c = triple(kind, angle);
    let x = app.tangent * c.x + app.normal * c.y + app.binormal * c.z;
    Ok((x, frame.kappa * frame.speed))
}

/// The kind's closed-form (κ_β, τ_β), signed as the formulas give them.
pub fn predicted_curvatures(kind: &DirectionKind, ind: &Indicatrix, t: f64) -> Result<(f64, f64)> {
    let app = ind.apparatus_at(t)?;
    let (angle, _) = angle_at(kind, ind, t)?;
    Ok(predicted_from(kind, &app, angle))
}

fn predicted_from(kind: &DirectionKind, app: &IndicatrixApparatus, angle: f64) -> (f64, f64) {
    let (s, c) = angle.sin_cos();
    let (k, tau) = (app.kappa, app.tau);
    match kind.variant {
        DirectionVariant::Evolute => (-k * s, k * c),
        DirectionVariant::Bertrand { .. } => (k * c - tau * s, k * s + tau * c),
        DirectionVariant::Mannheim => (tau * c, tau * s),
    }
}

/// Measured Frenet data of β at one node, or why it is unavailable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Measurement {
    Frame(FrenetApparatus),
    Degenerate { reason: String },
}

impl Measurement {
    pub fn frame(&self) -> Option<&FrenetApparatus> {
        match self {
            Measurement::Frame(f) => Some(f),
            Measurement::Degenerate { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionSample {
    pub t_param: f64,
    /// Arc length of β, equal to `s_T`.
    pub s_beta: f64,
    pub point: Vec3,
    pub coefficients: DirectionCoefficients,
    pub predicted_kappa: f64,
    pub predicted_tau: f64,
    pub measured: Measurement,
}

/// Speeds `|ds_T/dt|` below this mark β as stationary at a node.
const STATIONARY: f64 = 1e-9;

/// A sampled direction curve with measured and predicted curvatures.
#[derive(Debug, Clone)]
pub struct DirectionCurve {
    kind: DirectionKind,
    beta0: Vec3,
    indicatrix: Arc<Indicatrix>,
    curve: Curve3,
    samples: Vec<DirectionSample>,
}

/// Integrates the direction curve of `curve`'s tangent indicatrix over `grid`
/// starting from `beta0`, with strict frames.
pub fn integrate_direction_curve(
    kind: DirectionKind,
    curve: &Curve3,
    grid: &Grid,
    beta0: Vec3,
) -> Result<DirectionCurve> {
    let ind = Indicatrix::new(curve, grid, &FrameOptions::default())?;
    DirectionCurve::new(kind, Arc::new(ind), beta0)
}

impl DirectionCurve {
    pub fn new(kind: DirectionKind, indicatrix: Arc<Indicatrix>, beta0: Vec3) -> Result<Self> {
        let kind = DirectionKind::new(kind.variant, kind.phase)?;
        let grid = *indicatrix.grid();
        let nodes = grid.nodes();
        let mut velocity = Vec::with_capacity(nodes.len());
        let mut coeffs = Vec::with_capacity(nodes.len());
        let mut predicted = Vec::with_capacity(nodes.len());
        for (i, &t) in nodes.iter().enumerate() {
            let app = indicatrix.node_apparatus(i);
            let (angle, s_t) = angle_at(&kind, &indicatrix, t).map_err(|e| e.at_node(i))?;
            let c = triple(&kind, angle);
            let x = app.tangent * c.x + app.normal * c.y + app.binormal * c.z;
            velocity.push(x * indicatrix.rates()[i].arc);
            coeffs.push(DirectionCoefficients {
                t_param: t,
                s_t,
                x: c.x,
                y: c.y,
                z: c.z,
            });
            predicted.push(predicted_from(&kind, &app, angle));
        }
        let points: Vec<Vec3> = cumulative_samples(&velocity, grid.step())?
            .into_iter()
            .map(|p| p + beta0)
            .collect();
        let curve = beta_curve(kind, indicatrix.clone(), Arc::new(points.clone()))?;
        let mut samples = Vec::with_capacity(nodes.len());
        for (i, &t) in nodes.iter().enumerate() {
            let measured = if indicatrix.rates()[i].arc.abs() <= STATIONARY {
                Measurement::Degenerate {
                    reason: "the indicatrix is stationary here".into(),
                }
            } else {
                match frenet_apparatus(&curve, t) {
                    Ok(frame) => Measurement::Frame(frame),
                    Err(e) if e.is_degenerate() => Measurement::Degenerate {
                        reason: e.at_node(i).to_string(),
                    },
                    Err(e) => return Err(e.at_node(i)),
                }
            };
            samples.push(DirectionSample {
                t_param: t,
                s_beta: coeffs[i].s_t,
                point: points[i],
                coefficients: coeffs[i],
                predicted_kappa: predicted[i].0,
                predicted_tau: predicted[i].1,
                measured,
            });
        }
        Ok(Self {
            kind,
            beta0,
            indicatrix,
            curve,
            samples,
        })
    }

    pub fn kind(&self) -> &DirectionKind {
        &self.kind
    }

    pub fn beta0(&self) -> Vec3 {
        self.beta0
    }

    pub fn indicatrix(&self) -> &Indicatrix {
        &self.indicatrix
    }

    /// β as a curve in the donor parameter.
    pub fn curve(&self) -> &Curve3 {
        &self.curve
    }

    pub fn samples(&self) -> &[DirectionSample] {
        &self.samples
    }

    pub fn points(&self) -> Vec<Vec3> {
        self.samples.iter().map(|s| s.point).collect()
    }

    /// σ of β at node `i`, measured from β's own frames.
    pub fn measured_sigma(&self, i: usize) -> Result<f64> {
        let t = self.samples[i].t_param;
        let opts = FrameOptions::default();
        let frame = oriented_frame(&self.curve, t, &opts, None).map_err(|e| e.at_node(i))?;
        sigma_at(&self.curve, &frame, &opts).map_err(|e| e.at_node(i))
    }
}

/// β(t) = node value + Gauss–Legendre integral of `(ds_T/dt) X` from the
/// nearest node; the first derivative is that integrand itself.
fn beta_curve(kind: DirectionKind, ind: Arc<Indicatrix>, points: Arc<Vec<Vec3>>) -> Result<Curve3> {
    let grid = *ind.grid();
    let velocity = {
        let ind = ind.clone();
        move |t: f64| {
            field_and_rate(&kind, &ind, t)
                .map(|(x, w)| x * w)
                .unwrap_or(Vec3::repeat(f64::NAN))
        }
    };
    let v_map = velocity.clone();
    let map: VectorFn = Arc::new(move |t| {
        let i = grid.nearest(t);
        let t0 = grid.node(i);
        if t == t0 {
            points[i]
        } else {
            points[i] + gauss_legendre(&v_map, t0, t)
        }
    });
    Curve3::from_parts((grid.start(), grid.end()), map, [Some(Arc::new(velocity)), None, None])
}

/// Outcome of checking a direction curve against one kind's system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// Kind whose system and normal alignment were checked.
    pub system: DirectionKind,
    pub nodes_checked: usize,
    pub nodes_skipped: usize,
    /// Max residual of each of the system's three equations, relative to
    /// `max(1, |κ_T|, |τ_T|)`.
    pub system_residuals: [f64; 3],
    /// Max residual of the general expansion of κ_β N_β in the indicatrix
    /// frame, on the same scale.
    pub expansion_residual: f64,
    /// Smallest |⟨N_β, target⟩| over nodes with |predicted κ_β| > 1e-3.
    pub min_alignment: Option<f64>,
    /// Max ||κ_β| measured − |κ_β| predicted| / max(1, |κ_β| predicted).
    pub kappa_error: f64,
    /// Max |τ_β measured − τ_β predicted| / max(1, |τ_β| predicted).
    pub tau_error: f64,
}

impl ResidualReport {
    pub fn max_system_residual(&self) -> f64 {
        self.system_residuals.iter().fold(0.0, |a, &b| a.max(b))
    }

    /// True when residuals and curvature errors are within `tol` and the
    /// normal alignment is within `align_tol` of 1.
    pub fn passes(&self, tol: f64, align_tol: f64) -> bool {
        self.max_system_residual() <= tol
            && self.expansion_residual <= tol
            && self.kappa_error <= tol
            && self.tau_error <= tol
            && self.min_alignment.is_none_or(|a| a >= 1.0 - align_tol)
    }
}

/// Predicted |κ_β| below which the normal is too ill-conditioned to compare.
pub const ALIGNMENT_FLOOR: f64 = 1e-3;

/// Checks `curve` against the system of `system`: each component of the
/// expansion `κ_β N_β = (x′ − yκ_T)T_T + (y′ + xκ_T − zτ_T)N_T + (z′ + yτ_T)B_T`
/// must vanish except the one along the system's target, which must equal
/// the measured κ_β along that target. Also checks the normal alignment and
/// the measured curvatures against the curve's own predictions.
pub fn residual_check(system: &DirectionKind, curve: &DirectionCurve) -> Result<ResidualReport> {
    let ind = curve.indicatrix();
    let target = system.target().index();
    let mut report = ResidualReport {
        system: *system,
        nodes_checked: 0,
        nodes_skipped: 0,
        system_residuals: [0.0; 3],
        expansion_residual: 0.0,
        min_alignment: None,
        kappa_error: 0.0,
        tau_error: 0.0,
    };
    for (i, sample) in curve.samples().iter().enumerate() {
        let t = sample.t_param;
        if ind.rates()[i].arc.abs() <= STATIONARY {
            report.nodes_skipped += 1;
            continue;
        }
        let app = ind.node_apparatus(i);
        let basis = [app.tangent, app.normal, app.binormal];
        let c = sample.coefficients;
        let d = coefficient_derivatives(curve.kind(), ind, t)?;
        let lhs = [
            d.x - c.y * app.kappa,
            d.y + c.x * app.kappa - c.z * app.tau,
            d.z + c.y * app.tau,
        ];
        let k_vec = curvature_vector(curve.curve(), t).map_err(|e| e.at_node(i))?;
        let scale = 1.0f64.max(app.kappa.abs()).max(app.tau.abs());
        for j in 0..3 {
            let projection = k_vec.dot(&basis[j]);
            let expansion = (lhs[j] - projection).abs() / scale;
            report.expansion_residual = report.expansion_residual.max(expansion);
            let rhs = if j == target { projection } else { 0.0 };
            report.system_residuals[j] = report.system_residuals[j].max((lhs[j] - rhs).abs() / scale);
        }
        report.nodes_checked += 1;
        let Some(frame) = sample.measured.frame() else {
            continue;
        };
        if sample.predicted_kappa.abs() <= ALIGNMENT_FLOOR {
            continue;
        }
        let alignment = frame.normal.dot(&basis[target]).abs();
        report.min_alignment = Some(report.min_alignment.map_or(alignment, |a: f64| a.min(alignment)));
        let pk = sample.predicted_kappa.abs();
        report.kappa_error = report
            .kappa_error
            .max((frame.kappa - pk).abs() / 1.0f64.max(pk));
        let pt = sample.predicted_tau;
        report.tau_error = report.tau_error.max((frame.tau - pt).abs() / 1.0f64.max(pt.abs()));
    }
    if curve.samples().iter().all(|s| s.measured.frame().is_none()) {
        return Err(Error::Degenerate {
            reason: format!("the {} direction curve has no Frenet frame at any node", curve.kind().name()),
            index: None,
        });
    }
    Ok(report)
}

/// Sampled (κ, τ) of a curve against its arc length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvaturePairs {
    pub s: Vec<f64>,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
}

/// Inverts the kind's curvature relations: recovers (κ_T, τ_T) from the
/// direction curve's (κ_β, τ_β) sampled against `s_β = s_T`. The quotient
/// κ²/(κ²+τ²) · (τ/κ)′ is evaluated as (κτ′ − τκ′)/(κ² + τ²), which stays
/// finite where κ_β vanishes. Square roots recover magnitudes only.
pub fn recover_donor_curvatures(kind: &DirectionKind, beta: &CurvaturePairs) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = beta.s.len();
    if beta.kappa.len() != n || beta.tau.len() != n {
        return Err(Error::domain("curvature arrays must have equal length"));
    }
    if let DirectionVariant::Bertrand { theta } = kind.variant {
        let (s, c) = theta.sin_cos();
        let kappa = beta.kappa.iter().zip(&beta.tau).map(|(k, t)| k * c + t * s).collect();
        let tau = beta.kappa.iter().zip(&beta.tau).map(|(k, t)| -k * s + t * c).collect();
        return Ok((kappa, tau));
    }
    let norm2: Vec<f64> = beta.kappa.iter().zip(&beta.tau).map(|(k, t)| k * k + t * t).collect();
    if let Some(i) = norm2.iter().position(|&q| q <= 1e-12) {
        return Err(Error::Degenerate {
            reason: "κ_β² + τ_β² vanishes".into(),
            index: Some(i),
        });
    }
    let dk = sampled_derivative(&beta.s, &beta.kappa)?;
    let dt = sampled_derivative(&beta.s, &beta.tau)?;
    let modulus: Vec<f64> = norm2.iter().map(|q| q.sqrt()).collect();
    let rotation: Vec<f64> = (0..n)
        .map(|i| (beta.kappa[i] * dt[i] - beta.tau[i] * dk[i]) / norm2[i])
        .collect();
    Ok(match kind.variant {
        DirectionVariant::Mannheim => (rotation, modulus),
        _ => (modulus, rotation),
    })
}

/// One corollary relation checked along a direction curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorollaryCheck {
    pub name: String,
    pub max_error: f64,
    pub nodes_checked: usize,
}

/// Fraction of the largest |κ_β| below which σ_β, which involves a
/// derivative of τ_β/κ_β, is too ill-conditioned to compare.
pub const COROLLARY_FLOOR: f64 = 0.1;

/// Checks the corollary relations of the curve's kind at nodes where β is
/// well away from an inflection (|predicted κ_β| above [`COROLLARY_FLOOR`]
/// times its maximum):
/// evolute — |τ_β/κ_β| = |cot(angle)| and |σ_β| = |τ_T/κ_T|;
/// Bertrand — |σ_β| = |σ of the indicatrix|;
/// Mannheim — |τ_T/κ_T| · |σ_β| = 1.
pub fn corollary_checks(curve: &DirectionCurve) -> Result<Vec<CorollaryCheck>> {
    let ind = curve.indicatrix();
    let kind = curve.kind();
    let raw = indicatrix_in_donor_parameter(ind.donor())?;
    let opts = FrameOptions::default();
    let mut ratio = CorollaryCheck {
        name: "evolute: |tau/kappa| of beta equals |cot| of the coefficient angle".into(),
        max_error: 0.0,
        nodes_checked: 0,
    };
    let mut sigma = CorollaryCheck {
        name: match kind.variant {
            DirectionVariant::Evolute => "evolute: |sigma| of beta equals |tau_T/kappa_T|",
            DirectionVariant::Bertrand { .. } => "bertrand: |sigma| of beta equals |sigma| of the indicatrix",
            DirectionVariant::Mannheim => "mannheim: |tau_T/kappa_T| * |sigma| of beta equals 1",
        }
        .into(),
        max_error: 0.0,
        nodes_checked: 0,
    };
    let peak = curve.samples().iter().fold(0.0f64, |a, s| a.max(s.predicted_kappa.abs()));
    let floor = ALIGNMENT_FLOOR.max(COROLLARY_FLOOR * peak);
    for (i, sample) in curve.samples().iter().enumerate() {
        let Some(frame) = sample.measured.frame() else {
            continue;
        };
        if sample.predicted_kappa.abs() <= floor {
            continue;
        }
        // Stencils must stay inside the tabulated range.
        let Ok(sigma_beta) = curve.measured_sigma(i) else {
            continue;
        };
        let app = ind.node_apparatus(i);
        let ratio_t = app.tau / app.kappa;
        let error = match kind.variant {
            DirectionVariant::Evolute => {
                let (angle, _) = angle_at(kind, ind, sample.t_param)?;
                let cot = angle.cos() / angle.sin();
                let e = ((frame.tau / frame.kappa).abs() - cot.abs()).abs() / 1.0f64.max(cot.abs());
                ratio.max_error = ratio.max_error.max(e);
                ratio.nodes_checked += 1;
                (sigma_beta.abs() - ratio_t.abs()).abs() / 1.0f64.max(ratio_t.abs())
            }
            DirectionVariant::Bertrand { .. } => {
                let t = sample.t_param;
                let Ok(f) = oriented_frame(&raw, t, &opts, None) else {
                    continue;
                };
                let Ok(sigma_ind) = sigma_at(&raw, &f, &opts) else {
                    continue;
                };
                (sigma_beta.abs() - sigma_ind.abs()).abs() / 1.0f64.max(sigma_ind.abs())
            }
            DirectionVariant::Mannheim => (ratio_t.abs() * sigma_beta.abs() - 1.0).abs(),
        };
        sigma.max_error = sigma.max_error.max(error);
        sigma.nodes_checked += 1;
    }
    let mut out = Vec::new();
    if matches!(kind.variant, DirectionVariant::Evolute) {
        out.push(ratio);
    }
    out.push(sigma);
    Ok(out)
}
