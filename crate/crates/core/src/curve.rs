//! Parametric space curves and their Frenet apparatus.

use std::fmt;
use std::sync::Arc;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{
    central_difference, cumulative_simpson, default_step, five_point, fourth_order_difference, fourth_order_step,
    gauss_legendre, invert_monotone,
    CumulativeTable, Grid, Sample,
};

pub type Vec3 = Vector3<f64>;

/// A vector-valued function of the curve parameter. Must be side-effect free.
pub type VectorFn = Arc<dyn Fn(f64) -> Vec3 + Send + Sync>;

/// Curvature below which N and B are considered undefined.
pub const EPS_KAPPA: f64 = 1e-8;

/// Speed below which a parametrization is considered stationary.
pub const EPS_SPEED: f64 = 1e-12;

const PROBE_POINTS: usize = 16;
const PROBE_TOLERANCE: f64 = 1e-4;

/// A parametric map from an interval into 3-space with access to the first
/// three derivatives. Missing derivatives are estimated by central
/// differences of the highest lower order that is available.
#[derive(Clone)]
pub struct Curve3 {
    map: VectorFn,
    derivatives: [Option<VectorFn>; 3],
    domain: (f64, f64),
    step: Option<f64>,
}

impl fmt::Debug for Curve3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Curve3")
            .field("domain", &self.domain)
            .field(
                "analytic_orders",
                &self
                    .derivatives
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| d.is_some())
                    .map(|(i, _)| i + 1)
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl Curve3 {
    pub fn new(domain: (f64, f64), map: impl Fn(f64) -> Vec3 + Send + Sync + 'static) -> Result<Self> {
        let curve = Self::from_parts(domain, Arc::new(map), [None, None, None])?;
        for t in curve.probes() {
            curve.point(t)?;
        }
        Ok(curve)
    }

    pub(crate) fn from_parts(
        domain: (f64, f64),
        map: VectorFn,
        derivatives: [Option<VectorFn>; 3],
    ) -> Result<Self> {
        if !(domain.0.is_finite() && domain.1.is_finite() && domain.0 < domain.1) {
            return Err(Error::domain(format!(
                "curve domain [{}, {}] is not a proper interval",
                domain.0, domain.1
            )));
        }
        Ok(Self {
            map,
            derivatives,
            domain,
            step: None,
        })
    }

    /// Attaches analytic derivative suppliers and checks them against
    /// central differences at 16 probe points.
    pub fn with_derivatives(
        mut self,
        d1: Option<VectorFn>,
        d2: Option<VectorFn>,
        d3: Option<VectorFn>,
    ) -> Result<Self> {
        self.derivatives = [d1, d2, d3];
        for order in 1..=3u8 {
            if self.derivatives[order as usize - 1].is_none() {
                continue;
            }
            for t in self.probes() {
                let supplied = self.derivative(t, order)?;
                let lower = order - 1;
                let h = default_step(1, t).max(1e-4 * (1.0 + t.abs()));
                let estimate: Vec3 =
                    central_difference(|x| self.lower(x, lower), t, 1, h)?;
                let scale = 1.0f64.max(supplied.norm());
                if (supplied - estimate).amax() > PROBE_TOLERANCE * scale {
                    return Err(Error::domain(format!(
                        "supplied derivative of order {order} disagrees with central differences at t = {t} \
                         (|difference| = {:e})",
                        (supplied - estimate).amax()
                    )));
                }
            }
        }
        Ok(self)
    }

    fn lower(&self, t: f64, order: u8) -> Vec3 {
        if order == 0 {
            (self.map)(t)
        } else {
            self.derivative(t, order).unwrap_or(Vec3::repeat(f64::NAN))
        }
    }

    /// Overrides the finite-difference step used for missing derivatives.
    pub fn with_step(mut self, h: f64) -> Self {
        self.step = Some(h);
        self
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn has_analytic_derivative(&self, order: u8) -> bool {
        (1..=3).contains(&order) && self.derivatives[order as usize - 1].is_some()
    }

    fn probes(&self) -> impl Iterator<Item = f64> + '_ {
        let (a, b) = self.domain;
        (0..PROBE_POINTS).map(move |k| a + (k as f64 + 0.5) / PROBE_POINTS as f64 * (b - a))
    }

    pub fn point(&self, t: f64) -> Result<Vec3> {
        let p = (self.map)(t);
        if p.all_finite() {
            Ok(p)
        } else {
            Err(Error::Evaluation { param: t })
        }
    }

    /// The `order`-th derivative (1, 2 or 3) at `t`.
    pub fn derivative(&self, t: f64, order: u8) -> Result<Vec3> {
        if !(1..=3).contains(&order) {
            return Err(Error::domain(format!("unsupported derivative order {order}")));
        }
        if let Some(d) = &self.derivatives[order as usize - 1] {
            let v = d(t);
            return if v.all_finite() {
                Ok(v)
            } else {
                Err(Error::Evaluation { param: t })
            };
        }
        let base = (1..order)
            .rev()
            .find(|k| self.derivatives[*k as usize - 1].is_some())
            .unwrap_or(0);
        let remaining = order - base;
        if base == 0 {
            let h = self.step.unwrap_or_else(|| default_step(remaining, t));
            central_difference(|x| (self.map)(x), t, remaining, h)
        } else {
            let d = self.derivatives[base as usize - 1].as_ref().expect("checked");
            let h = self.step.unwrap_or_else(|| fourth_order_step(t));
            fourth_order_difference(|x| d(x), t, remaining, h)
        }
    }

    /// The first three derivatives at `t`. When only the first is analytic,
    /// the second and third share one five-point stencil of it.
    pub fn jet(&self, t: f64) -> Result<[Vec3; 3]> {
        match &self.derivatives {
            [Some(d1), None, None] => {
                let h = self.step.unwrap_or_else(|| fourth_order_step(t));
                let mut v = [Vec3::zeros(); 5];
                for (k, slot) in v.iter_mut().enumerate() {
                    let x = t + (k as f64 - 2.0) * h;
                    *slot = d1(x);
                    if !slot.all_finite() {
                        return Err(Error::Evaluation { param: x });
                    }
                }
                Ok([v[2], five_point(&v, 1, h), five_point(&v, 2, h)])
            }
            _ => Ok([self.derivative(t, 1)?, self.derivative(t, 2)?, self.derivative(t, 3)?]),
        }
    }

    /// Unit tangent at `t`.
    pub fn tangent(&self, t: f64) -> Result<Vec3> {
        let d1 = self.derivative(t, 1)?;
        let speed = d1.norm();
        if speed <= EPS_SPEED {
            return Err(Error::DegenerateSpeed { param: t, index: None });
        }
        Ok(d1 / speed)
    }

    pub fn speed(&self, t: f64) -> Result<f64> {
        Ok(self.derivative(t, 1)?.norm())
    }

    /// Unsigned curvature; zero (not an error) on straight pieces.
    pub fn curvature(&self, t: f64) -> Result<f64> {
        let d1 = self.derivative(t, 1)?;
        let d2 = self.derivative(t, 2)?;
        let speed = d1.norm();
        if speed <= EPS_SPEED {
            return Err(Error::DegenerateSpeed { param: t, index: None });
        }
        Ok(d1.cross(&d2).norm() / speed.powi(3))
    }

    /// Applies a rigid motion `p ↦ R p + shift`.
    pub fn transformed(&self, rotation: nalgebra::Rotation3<f64>, shift: Vec3) -> Curve3 {
        let map = self.map.clone();
        let mut derivatives: [Option<VectorFn>; 3] = [None, None, None];
        for (slot, d) in derivatives.iter_mut().zip(self.derivatives.iter()) {
            if let Some(d) = d.clone() {
                *slot = Some(Arc::new(move |t| rotation * d(t)));
            }
        }
        Curve3 {
            map: Arc::new(move |t| rotation * map(t) + shift),
            derivatives,
            domain: self.domain,
            step: self.step,
        }
    }

    /// Regular reparametrization `u ↦ self(phi(u))` on `domain`, with `phi`
    /// and its first three derivatives supplied.
    pub fn reparametrized(
        &self,
        domain: (f64, f64),
        phi: impl Fn(f64) -> [f64; 4] + Send + Sync + Clone + 'static,
    ) -> Result<Curve3> {
        let base = self.clone();
        let b1 = self.clone();
        let p1 = phi.clone();
        let b2 = self.clone();
        let p2 = phi.clone();
        let map: VectorFn = Arc::new(move |u| base.lower(phi(u)[0], 0));
        let d1: VectorFn = Arc::new(move |u| {
            let [x, x1, _, _] = p1(u);
            b1.lower(x, 1) * x1
        });
        let d2: VectorFn = Arc::new(move |u| {
            let [x, x1, x2, _] = p2(u);
            b2.lower(x, 2) * (x1 * x1) + b2.lower(x, 1) * x2
        });
        Curve3::from_parts(domain, map, [Some(d1), Some(d2), None])
    }
}

/// How frames are handled where curvature vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum FrameMode {
    /// Curvature must stay above the threshold; κ ≥ 0.
    #[default]
    Strict,
    /// Isolated inflection points are crossed by keeping N continuous along
    /// the grid, which makes κ signed.
    Continued,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameOptions {
    pub mode: FrameMode,
    pub eps_kappa: f64,
    /// Step of the five-point stencil used for κ′ and τ′.
    pub rate_step: f64,
}

impl Default for FrameOptions {
    fn default() -> Self {
        Self {
            mode: FrameMode::Strict,
            eps_kappa: EPS_KAPPA,
            rate_step: 5e-3,
        }
    }
}

impl FrameOptions {
    pub fn continued() -> Self {
        Self {
            mode: FrameMode::Continued,
            ..Self::default()
        }
    }

    pub fn with_mode(mode: FrameMode) -> Self {
        Self {
            mode,
            ..Self::default()
        }
    }
}

/// Orthonormal Frenet triple with curvature and torsion at one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrenetApparatus {
    pub t_param: f64,
    pub tangent: Vec3,
    pub normal: Vec3,
    pub binormal: Vec3,
    pub kappa: f64,
    pub tau: f64,
}

/// A Frenet frame that may have been flipped for continuity, so `kappa`
/// carries a sign. `speed` is ‖α′‖ in the curve's own parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedFrame {
    pub t_param: f64,
    pub tangent: Vec3,
    pub normal: Vec3,
    pub binormal: Vec3,
    pub kappa: f64,
    pub tau: f64,
    pub speed: f64,
    /// Normal taken from the third derivative because κ vanished here.
    pub inflection: bool,
}

impl SignedFrame {
    pub fn apparatus(&self) -> FrenetApparatus {
        FrenetApparatus {
            t_param: self.t_param,
            tangent: self.tangent,
            normal: self.normal,
            binormal: self.binormal,
            kappa: self.kappa,
            tau: self.tau,
        }
    }

    fn flipped(mut self) -> Self {
        self.normal = -self.normal;
        self.binormal = -self.binormal;
        self.kappa = -self.kappa;
        self
    }
}

/// Frenet apparatus from α′, α″, α‴ at a general parameter, with the
/// default curvature threshold.
pub fn frenet_apparatus(curve: &Curve3, t: f64) -> Result<FrenetApparatus> {
    frenet_apparatus_with(curve, t, EPS_KAPPA)
}

pub fn frenet_apparatus_with(curve: &Curve3, t: f64, eps_kappa: f64) -> Result<FrenetApparatus> {
    raw_frame(curve, t, eps_kappa, false).map(|f| f.apparatus())
}

fn raw_frame(curve: &Curve3, t: f64, eps_kappa: f64, allow_inflection: bool) -> Result<SignedFrame> {
    let [d1, d2, d3] = curve.jet(t)?;
    let speed = d1.norm();
    if speed <= EPS_SPEED {
        return Err(Error::DegenerateSpeed { param: t, index: None });
    }
    let tangent = d1 / speed;
    let c = d1.cross(&d2);
    let cn = c.norm();
    let kappa = cn / speed.powi(3);
    if kappa > eps_kappa {
        let binormal = c / cn;
        let normal = binormal.cross(&tangent);
        return Ok(SignedFrame {
            t_param: t,
            tangent,
            normal,
            binormal,
            kappa,
            tau: c.dot(&d3) / (cn * cn),
            speed,
            inflection: false,
        });
    }
    if !allow_inflection {
        return Err(Error::DegenerateFrame {
            param: t,
            kappa,
            index: None,
        });
    }
    // At an isolated zero of κ the normal is the direction of the part of
    // α‴ orthogonal to α′, and τ = ⟨α⁗, B⟩ / (2 ‖α′‖ ⟨α‴, N⟩).
    let perp = d3 - tangent * d3.dot(&tangent);
    if perp.norm() / speed.powi(4) <= eps_kappa {
        return Err(Error::DegenerateFrame {
            param: t,
            kappa,
            index: None,
        });
    }
    let normal = perp / perp.norm();
    let binormal = tangent.cross(&normal);
    let h = default_step(1, t) * 10.0;
    let d4: Vec3 = central_difference(|x| curve.lower(x, 3), t, 1, h)?;
    let tau = d4.dot(&binormal) / (2.0 * speed * d3.dot(&normal));
    let signed = if d2.dot(&normal) < 0.0 { -kappa } else { kappa };
    Ok(SignedFrame {
        t_param: t,
        tangent,
        normal,
        binormal,
        kappa: signed,
        tau,
        speed,
        inflection: true,
    })
}

/// Frame at `t`, oriented so that N agrees with `reference` in continued mode.
pub fn oriented_frame(
    curve: &Curve3,
    t: f64,
    opts: &FrameOptions,
    reference: Option<&Vec3>,
) -> Result<SignedFrame> {
    let continued = opts.mode == FrameMode::Continued;
    let frame = raw_frame(curve, t, opts.eps_kappa, continued)?;
    match reference {
        Some(r) if continued && frame.normal.dot(r) < 0.0 => Ok(frame.flipped()),
        _ => Ok(frame),
    }
}

/// Frames at every node of a grid, oriented continuously in continued mode.
#[derive(Debug, Clone)]
pub struct FrameTrack {
    grid: Grid,
    opts: FrameOptions,
    frames: Vec<SignedFrame>,
}

impl FrameTrack {
    pub fn new(curve: &Curve3, grid: &Grid, opts: &FrameOptions) -> Result<Self> {
        let mut frames: Vec<SignedFrame> = Vec::with_capacity(grid.count());
        for (i, t) in grid.nodes().into_iter().enumerate() {
            let reference = frames.last().map(|f| f.normal);
            let frame = oriented_frame(curve, t, opts, reference.as_ref()).map_err(|e| e.at_node(i))?;
            frames.push(frame);
        }
        Ok(Self {
            grid: *grid,
            opts: *opts,
            frames,
        })
    }

    pub fn frames(&self) -> &[SignedFrame] {
        &self.frames
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn options(&self) -> &FrameOptions {
        &self.opts
    }

    /// Frame at an arbitrary parameter, oriented like the nearest node.
    pub fn frame_at(&self, curve: &Curve3, t: f64) -> Result<SignedFrame> {
        let i = self.grid.nearest(t);
        if t == self.grid.node(i) {
            return Ok(self.frames[i]);
        }
        oriented_frame(curve, t, &self.opts, Some(&self.frames[i].normal))
    }

    /// σ at the parameter of `frame`; see [`sigma_at`].
    pub fn sigma_at(&self, curve: &Curve3, frame: &SignedFrame) -> Result<f64> {
        sigma_at(curve, frame, &self.opts)
    }
}

/// σ = (κ τ′ − τ κ′) / (‖α′‖ (κ² + τ²)^{3/2}) at the parameter of `frame`,
/// which equals κ²/(κ²+τ²)^{3/2} · (τ/κ)′ in arc length wherever κ ≠ 0.
/// κ′ and τ′ come from a five-point stencil of frames oriented like `frame`.
pub fn sigma_at(curve: &Curve3, frame: &SignedFrame, opts: &FrameOptions) -> Result<f64> {
    let t = frame.t_param;
    let h = opts.rate_step * (1.0 + t.abs()).min(10.0);
    let eval = |x: f64| -> Result<(f64, f64)> {
        let f = oriented_frame(curve, x, opts, Some(&frame.normal))?;
        Ok((f.kappa, f.tau))
    };
    let (k2p, t2p) = eval(t + 2.0 * h)?;
    let (k1p, t1p) = eval(t + h)?;
    let (k1m, t1m) = eval(t - h)?;
    let (k2m, t2m) = eval(t - 2.0 * h)?;
    let dk = (-k2p + 8.0 * k1p - 8.0 * k1m + k2m) / (12.0 * h);
    let dt = (-t2p + 8.0 * t1p - 8.0 * t1m + t2m) / (12.0 * h);
    let (k, tau) = (frame.kappa, frame.tau);
    let norm2 = k * k + tau * tau;
    if norm2 <= 1e-24 {
        return Err(Error::degenerate("κ² + τ² vanishes"));
    }
    Ok((k * dt - tau * dk) / (frame.speed * norm2.powf(1.5)))
}

/// Curvature vector κN = (α″ − ⟨α″, T⟩T) / ‖α′‖², defined even where the
/// curvature vanishes.
pub fn curvature_vector(curve: &Curve3, t: f64) -> Result<Vec3> {
    let d1 = curve.derivative(t, 1)?;
    let d2 = curve.derivative(t, 2)?;
    let speed = d1.norm();
    if speed <= EPS_SPEED {
        return Err(Error::DegenerateSpeed { param: t, index: None });
    }
    let tangent = d1 / speed;
    Ok((d2 - tangent * d2.dot(&tangent)) / (speed * speed))
}

/// A non-negative rate `t ↦ ds/dt` whose running integral is tabulated.
pub type RateFn = Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>;

/// Arc length (or any other monotone running integral) as a function of
/// the raw parameter.
#[derive(Clone)]
pub struct ArcLengthTable {
    table: CumulativeTable,
    rate: RateFn,
}

impl fmt::Debug for ArcLengthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArcLengthTable").field("table", &self.table).finish()
    }
}

impl ArcLengthTable {
    /// Tabulates the running integral of `rate` over `grid`; the result must
    /// be strictly increasing.
    pub fn from_rate(grid: &Grid, rate: RateFn) -> Result<Self> {
        let table = cumulative_simpson(|t| rate(t).unwrap_or(f64::NAN), grid)?;
        if !table.is_strictly_increasing() {
            return Err(Error::degenerate("arc length table is not strictly increasing"));
        }
        Ok(Self { table, rate })
    }

    pub fn table(&self) -> &CumulativeTable {
        &self.table
    }

    pub fn total(&self) -> f64 {
        self.table.last()
    }

    /// Arc length from the grid start to `t`.
    pub fn arclength_at(&self, t: f64) -> Result<f64> {
        let p = self.table.parameters();
        let i = nearest_index(p, t);
        let local = gauss_legendre(|x| (self.rate)(x).unwrap_or(f64::NAN), p[i], t);
        let s = self.table.values()[i] + local;
        if s.is_finite() {
            Ok(s)
        } else {
            Err(Error::Evaluation { param: t })
        }
    }

    /// Raw parameter whose arc length is `s`; monotone-cubic inversion of the
    /// table refined by Newton steps on the exact local integral of the rate.
    pub fn parameter_at(&self, s: f64) -> Result<f64> {
        let total = self.total();
        let p = self.table.parameters();
        let mut t = if s <= 0.0 {
            p[0]
        } else if s >= total {
            p[p.len() - 1]
        } else {
            invert_monotone(&self.table, s)?
        };
        for _ in 0..4 {
            let residual = self.arclength_at(t)? - s;
            if residual.abs() <= 1e-15 * (1.0 + s.abs()) {
                break;
            }
            let rate = (self.rate)(t)?;
            if rate <= EPS_SPEED {
                break;
            }
            let dt = residual / rate;
            t -= dt;
            if dt.abs() <= 1e-15 * (1.0 + t.abs()) {
                break;
            }
        }
        Ok(t)
    }
}

pub(crate) fn nearest_index(p: &[f64], t: f64) -> usize {
    let idx = p.partition_point(|&x| x < t);
    if idx == 0 {
        0
    } else if idx >= p.len() {
        p.len() - 1
    } else if (p[idx] - t).abs() < (t - p[idx - 1]).abs() {
        idx
    } else {
        idx - 1
    }
}

/// Cumulative arc length of `curve` over `grid`.
pub fn arclength_table(curve: &Curve3, grid: &Grid) -> Result<ArcLengthTable> {
    for (i, t) in grid.nodes().into_iter().enumerate() {
        if curve.speed(t)? <= EPS_SPEED {
            return Err(Error::DegenerateSpeed { param: t, index: Some(i) });
        }
    }
    let c = curve.clone();
    ArcLengthTable::from_rate(grid, Arc::new(move |t| c.speed(t)))
}

/// The same curve parametrized by arc length measured from the grid start.
pub fn reparametrize_by_arclength(curve: &Curve3, grid: &Grid) -> Result<Curve3> {
    let table = Arc::new(arclength_table(curve, grid)?);
    let total = table.total();
    let (tm, cm) = (table.clone(), curve.clone());
    let (td, cd) = (table, curve.clone());
    let map: VectorFn = Arc::new(move |s| match tm.parameter_at(s) {
        Ok(t) => cm.lower(t, 0),
        Err(_) => Vec3::repeat(f64::NAN),
    });
    let d1: VectorFn = Arc::new(move |s| match td.parameter_at(s).and_then(|t| cd.tangent(t)) {
        Ok(v) => v,
        Err(_) => Vec3::repeat(f64::NAN),
    });
    Curve3::from_parts((0.0, total), map, [Some(d1), None, None])
}

/// Sampled κ, τ, f = τ/κ and σ along a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureProfile {
    pub params: Vec<f64>,
    pub s_values: Vec<f64>,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
    pub f: Vec<f64>,
    pub sigma: Vec<f64>,
}

impl CurvatureProfile {
    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }
}

pub fn curvature_profile(curve: &Curve3, grid: &Grid) -> Result<CurvatureProfile> {
    curvature_profile_with(curve, grid, &FrameOptions::default())
}

pub fn curvature_profile_with(curve: &Curve3, grid: &Grid, opts: &FrameOptions) -> Result<CurvatureProfile> {
    let track = FrameTrack::new(curve, grid, opts)?;
    let arc = arclength_table(curve, grid)?;
    let mut sigma = Vec::with_capacity(grid.count());
    for (i, frame) in track.frames().iter().enumerate() {
        sigma.push(track.sigma_at(curve, frame).map_err(|e| e.at_node(i))?);
    }
    let frames = track.frames();
    Ok(CurvatureProfile {
        params: grid.nodes(),
        s_values: arc.table().values().to_vec(),
        kappa: frames.iter().map(|f| f.kappa).collect(),
        tau: frames.iter().map(|f| f.tau).collect(),
        f: frames.iter().map(|f| f.tau / f.kappa).collect(),
        sigma,
    })
}
