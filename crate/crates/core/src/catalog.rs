//! Built-in curves, including the two worked examples with their reference
//! closed-form indicatrices and direction curves, plus constant matching
//! between numerical and closed-form curves.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::curve::{Curve3, FrameMode, Vec3};
use crate::direction::DirectionKind;
use crate::error::{Error, Result};
use crate::expr::CurveExpression;
use crate::numerics::Grid;

/// Free constants of the reference closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceConstants {
    /// Bertrand angle θ.
    pub theta: f64,
    /// Evolute-direction integration constant θ₁.
    pub theta1: f64,
    /// Mannheim-direction integration constant θ₂.
    pub theta2: f64,
    /// Translation constants c₁…c₉.
    pub c: [f64; 9],
}

impl ReferenceConstants {
    /// Constants used for the figures of the circular-helix example.
    pub fn helix_figures() -> Self {
        Self {
            theta: FRAC_PI_3,
            theta1: FRAC_PI_4,
            theta2: FRAC_PI_4,
            c: [0.0; 9],
        }
    }

    /// Constants used for the figures of the slant-helix example.
    pub fn slant_helix_figures() -> Self {
        Self {
            theta: FRAC_PI_3,
            theta1: FRAC_PI_3,
            theta2: 0.0,
            c: [0.0; 9],
        }
    }

    fn bindings(&self) -> Vec<(String, f64)> {
        let mut v = vec![
            ("th".to_string(), self.theta),
            ("th1".to_string(), self.theta1),
            ("th2".to_string(), self.theta2),
        ];
        v.extend(self.c.iter().enumerate().map(|(i, &c)| (format!("c{}", i + 1), c)));
        v
    }

    fn with(&self, name: &str, value: f64) -> Self {
        let mut out = *self;
        match name {
            "th" => out.theta = value,
            "th1" => out.theta1 = value,
            "th2" => out.theta2 = value,
            _ => {}
        }
        out
    }
}

/// Parameter in which a closed form is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceParameter {
    /// Arc length `s_T` of the tangent indicatrix.
    IndicatrixArcLength,
    /// The donor curve's own parameter.
    DonorParameter,
}

/// A reference closed-form curve, written with the variable `t` and the
/// constants `th`, `th1`, `th2`, `c1`…`c9`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceCurve {
    /// "indicatrix", "evolute", "bertrand" or "mannheim".
    pub kind: String,
    pub formula: String,
    pub parameter: ReferenceParameter,
    /// Name of the integration constant that plays the role of the phase.
    pub phase_constant: Option<String>,
}

impl ReferenceCurve {
    fn new(kind: &str, formula: &str, parameter: ReferenceParameter, phase: Option<&str>) -> Self {
        Self {
            kind: kind.into(),
            formula: formula.into(),
            parameter,
            phase_constant: phase.map(Into::into),
        }
    }

    pub fn expression(&self, constants: &ReferenceConstants) -> Result<CurveExpression> {
        let bindings = constants.bindings();
        let refs: Vec<(&str, f64)> = bindings.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        CurveExpression::parse_with(&self.formula, &refs)
    }

    pub fn curve(&self, constants: &ReferenceConstants, domain: (f64, f64)) -> Result<Curve3> {
        self.expression(constants)?.into_curve(domain)
    }
}

/// A named curve with its recommended sampling.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub formula: String,
    pub curve: Curve3,
    /// Grid for constructing and plotting the indicatrix and direction curves.
    pub grid: Grid,
    /// Frame handling on `grid`.
    pub frame_mode: FrameMode,
    /// Grid free of curvature zeros, for classification and theorem checks.
    pub analysis_grid: Grid,
    pub indicatrix_reference: Option<ReferenceCurve>,
    pub references: Vec<ReferenceCurve>,
    /// Constants used to draw the reference figures, if any.
    pub figures: Option<ReferenceConstants>,
    /// Sup-norm bound for agreement with the closed forms.
    pub reference_tolerance: f64,
    pub notes: String,
}

impl CatalogEntry {
    fn from_formula(id: &str, formula: &str, domain: (f64, f64), count: usize, notes: &str) -> Result<Self> {
        let curve = CurveExpression::parse(formula)?.into_curve(domain)?;
        let grid = Grid::new(domain.0, domain.1, count)?;
        Ok(Self {
            id: id.into(),
            formula: formula.into(),
            curve,
            grid,
            frame_mode: FrameMode::Strict,
            analysis_grid: grid,
            indicatrix_reference: None,
            references: Vec::new(),
            figures: None,
            reference_tolerance: 0.0,
            notes: notes.into(),
        })
    }

    /// Direction kinds with the figure constants: θ₁ and θ₂ are the
    /// evolute and Mannheim angles at the start of `grid`.
    pub fn figure_kinds(&self) -> Option<[DirectionKind; 3]> {
        self.figures.map(|k| {
            [
                DirectionKind::evolute(k.theta1),
                DirectionKind::bertrand(k.theta),
                DirectionKind::mannheim(k.theta2),
            ]
        })
    }

    /// The closed-form direction curve of the given kind name, if there is one.
    pub fn reference(&self, kind: &str) -> Option<&ReferenceCurve> {
        self.references.iter().find(|r| r.kind == kind)
    }
}

/// The circular helix `(cos(s/√2), sin(s/√2), s/√2)` in arc length, on
/// `s ∈ [0, 4π]` so that its indicatrix arc length covers `[0, 2π]`.
pub fn example_7_1() -> CatalogEntry {
    use ReferenceParameter::IndicatrixArcLength as S;
    let mut e = CatalogEntry::from_formula(
        "ex7.1",
        "cos(t/sqrt(2)), sin(t/sqrt(2)), t/sqrt(2)",
        (0.0, 4.0 * PI),
        401,
        "circular helix with curvature = torsion = 1/2, parametrized by arc length",
    )
    .expect("built-in formula is valid");
    e.indicatrix_reference = Some(ReferenceCurve::new(
        "indicatrix",
        "-(1/sqrt(2))*sin(sqrt(2)*t), (1/sqrt(2))*cos(sqrt(2)*t), 1/sqrt(2)",
        S,
        None,
    ));
    e.references = vec![
        ReferenceCurve::new(
            "evolute",
            "-(1/sqrt(2))*sin(th1)*cos(sqrt(2)*t) + c1, \
             -(1/sqrt(2))*sin(th1)*sin(sqrt(2)*t) + c2, \
             t*cos(th1) + c3",
            S,
            Some("th1"),
        ),
        ReferenceCurve::new(
            "bertrand",
            "-(1/sqrt(2))*cos(th)*sin(sqrt(2)*t) + c4, \
             (1/sqrt(2))*cos(th)*cos(sqrt(2)*t) + c5, \
             t*sin(th) + c6",
            S,
            None,
        ),
        ReferenceCurve::new("mannheim", "-t*sin(th2) + c7, -t*cos(th2) + c8, c9", S, Some("th2")),
    ];
    e.figures = Some(ReferenceConstants::helix_figures());
    e.reference_tolerance = 1e-5;
    e
}

/// A unit-speed slant helix (σ ≡ −1) whose curvature vanishes at odd
/// multiples of π/2, on `t ∈ [0, 2π]`. Frames are continued through those
/// inflections; the analysis grid `[−1.2, 1.2]` avoids them.
pub fn example_7_2() -> CatalogEntry {
    use ReferenceParameter::DonorParameter as T;
    let mut e = CatalogEntry::from_formula(
        "ex7.2",
        "(3/sqrt(2))*sin(sqrt(2)*t)*cos(t) - 2*sin(t)*cos(sqrt(2)*t), \
         (3/sqrt(2))*cos(sqrt(2)*t)*cos(t) + 2*sin(t)*sin(sqrt(2)*t), \
         -(1/sqrt(2))*cos(t)",
        (0.0, 2.0 * PI),
        401,
        "unit-speed slant helix with curvature |cos t| and torsion -sin t",
    )
    .expect("built-in formula is valid");
    e.frame_mode = FrameMode::Continued;
    e.analysis_grid = Grid::new(-1.2, 1.2, 401).expect("valid grid");
    e.indicatrix_reference = Some(ReferenceCurve::new(
        "indicatrix",
        "cos(sqrt(2)*t)*cos(t) + (1/sqrt(2))*sin(sqrt(2)*t)*sin(t), \
         -sin(sqrt(2)*t)*cos(t) + (1/sqrt(2))*cos(sqrt(2)*t)*sin(t), \
         (1/sqrt(2))*sin(t)",
        T,
        None,
    ));
    e.references = vec![
        ReferenceCurve::new(
            "evolute",
            "(1/8)*(-(-1 + sqrt(2))*cos(th1 - sqrt(2)*t) + (1 + sqrt(2))*cos(th1 + sqrt(2)*t) \
               - (3 + 2*sqrt(2))*cos(th1 + (-2 + sqrt(2))*t) + (-3 + 2*sqrt(2))*cos(th1 - (2 + sqrt(2))*t)) + c1, \
             (1/8)*(-(-1 + sqrt(2))*sin(th1 - sqrt(2)*t) - (1 + sqrt(2))*sin(th1 + sqrt(2)*t) \
               + (3 + 2*sqrt(2))*sin(th1 + (-2 + sqrt(2))*t) + (-3 + 2*sqrt(2))*sin(th1 - (2 + sqrt(2))*t)) + c2, \
             (1/(4*sqrt(2)))*(-2*t*cos(th1) + sin(th1 - 2*t)) + c3",
            T,
            Some("th1"),
        ),
        ReferenceCurve::new(
            "bertrand",
            "(1/2)*(2*cos(t)*cos(sqrt(2)*t) + sqrt(2)*sin(t)*sin(sqrt(2)*t))*(cos(th) + sin(th)) + c4, \
             (1/2)*(sqrt(2)*cos(sqrt(2)*t)*sin(t) - 2*cos(t)*sin(sqrt(2)*t))*(cos(th) + sin(th)) + c5, \
             (1/sqrt(2))*sin(t)*(cos(th) - sin(th)) + c6",
            T,
            None,
        ),
        ReferenceCurve::new(
            "mannheim",
            "(1/8)*((1 + sqrt(2))*sin(th2 - sqrt(2)*t) - (-1 + sqrt(2))*sin(th2 + sqrt(2)*t) \
               - (3 + 2*sqrt(2))*sin(th2 + (2 - sqrt(2))*t) + (-3 + 2*sqrt(2))*sin(th2 + (2 + sqrt(2))*t)) + c7, \
             (1/8)*(-(1 + sqrt(2))*cos(th2 - sqrt(2)*t) - (-1 + sqrt(2))*cos(th2 + sqrt(2)*t) \
               + (3 + 2*sqrt(2))*cos(th2 + (2 - sqrt(2))*t) + (-3 + 2*sqrt(2))*cos(th2 + (2 + sqrt(2))*t)) + c8, \
             -(1/(4*sqrt(2)))*(cos(th2 + 2*t) - 2*t*sin(th2)) + c9",
            T,
            Some("th2"),
        ),
    ];
    e.figures = Some(ReferenceConstants::slant_helix_figures());
    e.reference_tolerance = 1e-4;
    e
}

/// Planar circle, straight line, twisted cubic and a unit-speed slant helix.
pub fn standard_curves() -> Vec<CatalogEntry> {
    let entries = [
        ("circle", "cos(t), sin(t), 0", (0.0, 2.0 * PI), 401, "planar unit circle: curvature 1, torsion 0"),
        ("line", "t, 0, 0", (0.0, 1.0), 101, "straight line: no Frenet frame anywhere"),
        ("twisted-cubic", "t, t^2, t^3", (-1.0, 1.0), 401, "generic space curve: neither helix nor slant helix"),
        (
            "slant-helix",
            "1.2*sin(2*t/3) + 0.075*sin(8*t/3), 1.2*cos(2*t/3) + 0.075*cos(8*t/3), -0.8*cos(t)",
            (-1.0, 1.0),
            401,
            "unit-speed slant helix with sigma = -3/4 and non-constant tau/kappa",
        ),
    ];
    entries
        .iter()
        .map(|(id, f, d, n, notes)| CatalogEntry::from_formula(id, f, *d, *n, notes).expect("built-in formula is valid"))
        .collect()
}

/// Every built-in entry, worked examples first.
pub fn all_entries() -> Vec<CatalogEntry> {
    let mut v = vec![example_7_1(), example_7_2()];
    v.extend(standard_curves());
    v
}

/// Ids accepted by [`lookup`].
pub fn ids() -> Vec<String> {
    all_entries().into_iter().map(|e| e.id).collect()
}

pub fn lookup(id: &str) -> Option<CatalogEntry> {
    all_entries().into_iter().find(|e| e.id == id)
}

/// Result of aligning a closed form with sampled points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantMatch {
    /// Phase constant that minimizes the sup-norm, if the closed form has one.
    pub phase: Option<f64>,
    /// Translation added to the closed form (solved at the left endpoint).
    pub offset: Vec3,
    /// Largest per-component deviation after alignment.
    pub component_sup: [f64; 3],
    pub sup_norm: f64,
}

fn deviation(params: &[f64], points: &[Vec3], expr: &CurveExpression) -> (Vec3, [f64; 3]) {
    let offset = points[0] - expr.point(params[0]);
    let mut sup = [0.0f64; 3];
    for (p, q) in params.iter().zip(points) {
        let d = q - expr.point(*p) - offset;
        for k in 0..3 {
            sup[k] = sup[k].max(d[k].abs());
        }
    }
    (offset, sup)
}

fn sup_of(c: &[f64; 3]) -> f64 {
    c.iter().fold(0.0, |a, &b| a.max(b))
}

/// Aligns `reference` with `points` sampled at the reference parameter values
/// `params`: the translation constants are solved at the left endpoint and,
/// when the closed form has a phase constant, it is found by a coarse scan
/// followed by golden-section minimization of the sup-norm.
pub fn match_constants(
    params: &[f64],
    points: &[Vec3],
    reference: &ReferenceCurve,
    constants: &ReferenceConstants,
) -> Result<ConstantMatch> {
    if params.len() != points.len() || params.is_empty() {
        return Err(Error::domain("parameter and point arrays must be non-empty and of equal length"));
    }
    let Some(name) = reference.phase_constant.as_deref() else {
        let (offset, component_sup) = deviation(params, points, &reference.expression(constants)?);
        return Ok(ConstantMatch {
            phase: None,
            offset,
            component_sup,
            sup_norm: sup_of(&component_sup),
        });
    };
    let eval = |phase: f64| -> Result<f64> {
        let e = reference.expression(&constants.with(name, phase))?;
        Ok(sup_of(&deviation(params, points, &e).1))
    };
    const SCAN: usize = 72;
    let step = 2.0 * PI / SCAN as f64;
    let mut best = (f64::INFINITY, 0.0);
    for k in 0..SCAN {
        let phase = -PI + k as f64 * step;
        let v = eval(phase)?;
        if v < best.0 {
            best = (v, phase);
        }
    }
    let (mut a, mut b) = (best.1 - step, best.1 + step);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (eval(x1)?, eval(x2)?);
    for _ in 0..80 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = eval(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = eval(x2)?;
        }
    }
    let phase = 0.5 * (a + b);
    let e = reference.expression(&constants.with(name, phase))?;
    let (offset, component_sup) = deviation(params, points, &e);
    Ok(ConstantMatch {
        phase: Some(phase),
        offset,
        component_sup,
        sup_norm: sup_of(&component_sup),
    })
}
