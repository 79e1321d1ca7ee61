//! Curve classes decided from sampled curvature data — general helix,
//! slant helix, spherical curve and their combinations — and the
//! correspondences between the classes of a curve, its tangent indicatrix
//! and a direction curve of that indicatrix.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::curve::{curvature_profile_with, Curve3, FrameOptions, Vec3, EPS_KAPPA};
use crate::direction::{DirectionKind, DirectionVariant};
use crate::error::{Error, Result};
use crate::numerics::{mean_sd, Grid};

/// Default tolerance for classification decisions.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-3;

/// Default bound on the sphere-fit residual relative to the radius. Points
/// are far more accurate than finite-difference curvature data, so this is
/// much tighter than the constancy tolerance.
pub const DEFAULT_SPHERE_TOL: f64 = 1e-6;

/// Means below this magnitude are compared in absolute rather than relative
/// terms, so that identically vanishing functions (σ of a circular helix,
/// f of a planar curve) count as constant.
pub const MEAN_FLOOR: f64 = 1e-2;

/// Fitted spheres larger than this multiple of the point-cloud diameter are
/// treated as planes, not spheres.
const MAX_RADIUS_RATIO: f64 = 1e3;

/// Least-squares sphere through sampled points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sphere {
    pub center: Vec3,
    pub radius: f64,
    /// Largest | ‖p − center‖ − radius | over the samples.
    pub max_residual: f64,
}

/// Fits `‖p‖² = 2⟨c, p⟩ + d` in the least-squares sense; the radius is
/// `√(d + ‖c‖²)`. Returns `None` when the fit has no real radius.
pub fn best_fit_sphere(points: &[Vec3]) -> Result<Option<Sphere>> {
    if points.len() < 4 {
        return Err(Error::domain("a sphere fit needs at least four points"));
    }
    let n = points.len();
    let a = DMatrix::from_fn(n, 4, |i, j| if j < 3 { 2.0 * points[i][j] } else { 1.0 });
    let b = DVector::from_iterator(n, points.iter().map(|p| p.norm_squared()));
    let svd = a.svd(true, true);
    let x = svd
        .solve(&b, 1e-12 * svd.singular_values.max())
        .map_err(|e| Error::degenerate(format!("sphere fit failed: {e}")))?;
    let center = Vec3::new(x[0], x[1], x[2]);
    let r2 = x[3] + center.norm_squared();
    if !(r2 > 0.0 && r2.is_finite()) {
        return Ok(None);
    }
    let radius = r2.sqrt();
    let max_residual = points.iter().map(|p| ((p - center).norm() - radius).abs()).fold(0.0, f64::max);
    Ok(Some(Sphere {
        center,
        radius,
        max_residual,
    }))
}

/// Spread statistic used for "is constant": `sd / max(|mean|, MEAN_FLOOR)`.
pub fn relative_spread(samples: &[f64]) -> f64 {
    let (mean, sd) = mean_sd(samples);
    sd / mean.abs().max(MEAN_FLOOR)
}

/// Which classes a sampled curve belongs to. Curvature-based flags are
/// `false` and `degenerate` is set when the curve is a straight line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub is_general_helix: bool,
    pub is_slant_helix: bool,
    pub is_spherical: bool,
    pub is_circle_on_sphere: bool,
    pub is_spherical_helix: bool,
    pub is_spherical_slant_helix: bool,
    pub is_straight_line: bool,
    /// Curvature vanishes everywhere, so frame-based classes do not apply.
    pub degenerate: bool,
    /// Decision statistics: spreads of f, σ and κ, the largest |τ| and the
    /// sphere residual relative to the radius.
    pub scores: BTreeMap<String, f64>,
    pub sphere: Option<Sphere>,
    pub tolerance: f64,
}

impl ClassReport {
    /// A frame-based flag, or `None` when the curve is degenerate.
    pub fn flag(&self, class: CurveClass) -> Option<bool> {
        let value = match class {
            CurveClass::StraightLine => return Some(self.is_straight_line),
            CurveClass::Spherical => return Some(self.is_spherical),
            CurveClass::GeneralHelix => self.is_general_helix,
            CurveClass::SlantHelix => self.is_slant_helix,
            CurveClass::CircleOnSphere => self.is_circle_on_sphere,
            CurveClass::SphericalHelix => self.is_spherical_helix,
            CurveClass::SphericalSlantHelix => self.is_spherical_slant_helix,
        };
        (!self.degenerate).then_some(value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveClass {
    GeneralHelix,
    SlantHelix,
    Spherical,
    CircleOnSphere,
    SphericalHelix,
    SphericalSlantHelix,
    StraightLine,
}

impl CurveClass {
    fn describe(self) -> &'static str {
        match self {
            CurveClass::GeneralHelix => "a helix",
            CurveClass::SlantHelix => "a slant helix",
            CurveClass::Spherical => "spherical",
            CurveClass::CircleOnSphere => "a circle on a sphere",
            CurveClass::SphericalHelix => "a spherical helix",
            CurveClass::SphericalSlantHelix => "a spherical slant helix",
            CurveClass::StraightLine => "a straight line",
        }
    }
}

/// Thresholds and frame handling for [`classify_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    /// Bound on the relative spread of f, σ and κ (and on |τ| for circles).
    pub tol: f64,
    /// Bound on the sphere-fit residual relative to the radius.
    pub sphere_tol: f64,
    pub frame: FrameOptions,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_CLASSIFY_TOL,
            sphere_tol: DEFAULT_SPHERE_TOL,
            frame: FrameOptions::default(),
        }
    }
}

/// Classifies `curve` on `grid` with strict frames.
pub fn classify(curve: &Curve3, grid: &Grid, tol: f64) -> Result<ClassReport> {
    classify_with(
        curve,
        grid,
        &ClassifyOptions {
            tol,
            ..Default::default()
        },
    )
}

pub fn classify_with(curve: &Curve3, grid: &Grid, options: &ClassifyOptions) -> Result<ClassReport> {
    let ClassifyOptions { tol, sphere_tol, frame: ref opts } = *options;
    for (name, v) in [("tolerance", tol), ("sphere tolerance", sphere_tol)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::domain(format!("{name} must be positive, got {v}")));
        }
    }
    let nodes = grid.nodes();
    let points = nodes.iter().map(|&t| curve.point(t)).collect::<Result<Vec<_>>>()?;
    let max_kappa = nodes
        .iter()
        .enumerate()
        .map(|(i, &t)| curve.curvature(t).map_err(|e| e.at_node(i)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let mut scores = BTreeMap::new();
    scores.insert("max_kappa".to_string(), max_kappa);
    if max_kappa <= opts.eps_kappa.max(EPS_KAPPA) {
        return Ok(ClassReport {
            is_general_helix: false,
            is_slant_helix: false,
            is_spherical: false,
            is_circle_on_sphere: false,
            is_spherical_helix: false,
            is_spherical_slant_helix: false,
            is_straight_line: true,
            degenerate: true,
            scores,
            sphere: None,
            tolerance: tol,
        });
    }
    let profile = curvature_profile_with(curve, grid, opts)?;
    let f_spread = relative_spread(&profile.f);
    let sigma_spread = relative_spread(&profile.sigma);
    let kappa_spread = relative_spread(&profile.kappa);
    let max_tau = profile.tau.iter().fold(0.0f64, |a, t| a.max(t.abs()));
    scores.insert("f".into(), f_spread);
    scores.insert("sigma".into(), sigma_spread);
    scores.insert("kappa".into(), kappa_spread);
    scores.insert("max_abs_tau".into(), max_tau);

    let diameter = points
        .iter()
        .flat_map(|p| points.iter().map(move |q| (p - q).norm()))
        .fold(0.0, f64::max);
    let sphere = best_fit_sphere(&points)?;
    let is_spherical = match &sphere {
        Some(s) => {
            let rel = s.max_residual / s.radius;
            scores.insert("sphere".into(), rel);
            rel <= sphere_tol && s.radius <= MAX_RADIUS_RATIO * diameter
        }
        None => false,
    };
    let is_general_helix = f_spread <= tol;
    let is_slant_helix = sigma_spread <= tol;
    Ok(ClassReport {
        is_general_helix,
        is_slant_helix,
        is_spherical,
        is_circle_on_sphere: is_spherical && kappa_spread <= tol && max_tau <= tol,
        is_spherical_helix: is_spherical && is_general_helix,
        is_spherical_slant_helix: is_spherical && is_slant_helix,
        is_straight_line: false,
        degenerate: false,
        scores,
        sphere,
        tolerance: tol,
    })
}

/// Which curve a side of a correspondence refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subject {
    /// The original curve α.
    Curve,
    /// Its tangent indicatrix.
    Indicatrix,
    /// The direction curve β.
    Direction,
}

/// One "if and only if" statement evaluated on classification reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Correspondence {
    pub id: String,
    pub statement: String,
    pub left: Option<bool>,
    pub right: Option<bool>,
    /// Both sides are defined.
    pub applicable: bool,
    /// Both sides agree (vacuously true when not applicable).
    pub pass: bool,
}

/// Reports for the three curves involved in a correspondence.
#[derive(Debug, Clone, Copy)]
pub struct ReportTriple<'a> {
    pub curve: &'a ClassReport,
    pub indicatrix: &'a ClassReport,
    pub direction: &'a ClassReport,
}

type Statement = (&'static str, Subject, CurveClass, CurveClass);

fn statements(kind: &DirectionKind) -> &'static [Statement] {
    use CurveClass::*;
    use Subject::*;
    match kind.variant {
        DirectionVariant::Evolute => &[
            ("evolute.circle-helix", Indicatrix, CircleOnSphere, GeneralHelix),
            ("evolute.spherical-helix-slant-helix", Indicatrix, SphericalHelix, SlantHelix),
            ("evolute.helix-helix", Curve, GeneralHelix, GeneralHelix),
            ("evolute.slant-helix-slant-helix", Curve, SlantHelix, SlantHelix),
        ],
        DirectionVariant::Bertrand { .. } => &[
            ("bertrand.spherical-helix-helix", Indicatrix, SphericalHelix, GeneralHelix),
            ("bertrand.spherical-slant-helix-slant-helix", Indicatrix, SphericalSlantHelix, SlantHelix),
            ("bertrand.slant-helix-helix", Curve, SlantHelix, GeneralHelix),
        ],
        DirectionVariant::Mannheim => &[
            ("mannheim.spherical-helix-slant-helix", Indicatrix, SphericalHelix, SlantHelix),
            ("mannheim.circle-straight-line", Indicatrix, CircleOnSphere, StraightLine),
            ("mannheim.straight-line-helix", Curve, StraightLine, GeneralHelix),
            ("mannheim.slant-helix-slant-helix", Curve, SlantHelix, SlantHelix),
        ],
    }
}

/// Evaluates every class correspondence of the given direction kind.
pub fn correspondence_report(kind: &DirectionKind, reports: ReportTriple<'_>) -> Vec<Correspondence> {
    statements(kind)
        .iter()
        .map(|&(id, subject, left_class, right_class)| {
            let (who, report) = match subject {
                Subject::Curve => ("the curve", reports.curve),
                Subject::Indicatrix => ("the tangent indicatrix", reports.indicatrix),
                Subject::Direction => ("the direction curve", reports.direction),
            };
            let left = report.flag(left_class);
            let right = reports.direction.flag(right_class);
            let applicable = left.is_some() && right.is_some();
            Correspondence {
                id: id.into(),
                statement: format!(
                    "{who} is {} if and only if the {} direction curve is {}",
                    left_class.describe(),
                    kind.name(),
                    right_class.describe()
                ),
                left,
                right,
                applicable,
                pass: !applicable || left == right,
            }
        })
        .collect()
}
