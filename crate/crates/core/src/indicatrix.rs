//! The tangent indicatrix `t ↦ T(t)` of a curve and its Frenet apparatus,
//! evaluated in closed form from the donor curve's frame, f = τ/κ and σ.
//!
//! Everything here is indexed by the donor's own parameter `t`. The
//! indicatrix arc length is `s_T(t) = ∫ κ ‖α′‖ dt`; in continued frame mode κ
//! is signed, so `s_T` is signed as well and turns back at inflections of
//! the donor, where the indicatrix has a cusp.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::curve::{
    ArcLengthTable, Curve3, FrameMode, FrameOptions, FrameTrack, SignedFrame, Vec3, VectorFn,
    EPS_SPEED,
};
use crate::error::{Error, Result};
use crate::numerics::{gauss_legendre, Grid};

/// Frenet apparatus of the tangent indicatrix at one donor parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndicatrixApparatus {
    /// Donor parameter.
    pub t_param: f64,
    /// Indicatrix arc length measured from the grid start.
    pub s_t: f64,
    pub tangent: Vec3,
    pub normal: Vec3,
    pub binormal: Vec3,
    /// κ_T = √(1 + f²); negative only in continued mode where κ < 0.
    pub kappa: f64,
    /// τ_T = σ κ_T.
    pub tau: f64,
}

/// Derivatives with respect to the donor parameter of the indicatrix arc
/// length and of the two phase integrals ∫κ_T ds_T and ∫τ_T ds_T.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndicatrixRates {
    pub arc: f64,
    pub kappa: f64,
    pub tau: f64,
}

/// Running integrals of [`IndicatrixRates`] from the grid start.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndicatrixIntegrals {
    /// s_T.
    pub arc: f64,
    /// ∫ κ_T ds_T.
    pub kappa: f64,
    /// ∫ τ_T ds_T.
    pub tau: f64,
}

impl IndicatrixRates {
    fn as_vec(&self) -> Vec3 {
        Vec3::new(self.arc, self.kappa, self.tau)
    }
}

impl IndicatrixIntegrals {
    fn from_vec(v: Vec3) -> Self {
        Self {
            arc: v.x,
            kappa: v.y,
            tau: v.z,
        }
    }
}

/// Closed-form indicatrix apparatus from a donor frame and its σ.
pub fn closed_form(frame: &SignedFrame, sigma: f64, s_t: f64) -> IndicatrixApparatus {
    let (k, tau) = (frame.kappa, frame.tau);
    let r = k.hypot(tau);
    IndicatrixApparatus {
        t_param: frame.t_param,
        s_t,
        tangent: frame.normal,
        normal: (frame.tangent * -k + frame.binormal * tau) / r,
        binormal: (frame.tangent * tau + frame.binormal * k) / r,
        kappa: r / k,
        tau: sigma * r / k,
    }
}

fn rates_from(frame: &SignedFrame, sigma: f64) -> IndicatrixRates {
    let k = frame.kappa.hypot(frame.tau) * frame.speed;
    IndicatrixRates {
        arc: frame.kappa * frame.speed,
        kappa: k,
        tau: sigma * k,
    }
}

/// Tabulated indicatrix data of a donor curve on a grid: frames, σ, rates
/// and their running integrals at every node, with off-node evaluation.
#[derive(Debug, Clone)]
pub struct Indicatrix {
    donor: Curve3,
    track: FrameTrack,
    sigma: Vec<f64>,
    rates: Vec<IndicatrixRates>,
    integrals: Vec<IndicatrixIntegrals>,
}

impl Indicatrix {
    pub fn new(curve: &Curve3, grid: &Grid, opts: &FrameOptions) -> Result<Self> {
        let track = FrameTrack::new(curve, grid, opts)?;
        let sigma = track
            .frames()
            .iter()
            .enumerate()
            .map(|(i, f)| track.sigma_at(curve, f).map_err(|e| e.at_node(i)))
            .collect::<Result<Vec<_>>>()?;
        let rates: Vec<IndicatrixRates> = track
            .frames()
            .iter()
            .zip(&sigma)
            .map(|(f, &s)| rates_from(f, s))
            .collect();
        let mut ind = Self {
            donor: curve.clone(),
            track,
            sigma,
            rates,
            integrals: Vec::new(),
        };
        ind.integrals = ind.tabulate_integrals()?;
        Ok(ind)
    }

    /// Node values of the running integrals, accumulated with the same
    /// per-interval Gauss–Legendre rule that [`Indicatrix::integrals_at`]
    /// uses between nodes, so the interpolated integrals are continuous.
    fn tabulate_integrals(&self) -> Result<Vec<IndicatrixIntegrals>> {
        let nodes = self.grid().nodes();
        let mut total = Vec3::zeros();
        let mut out = Vec::with_capacity(nodes.len());
        out.push(IndicatrixIntegrals::from_vec(total));
        for (i, w) in nodes.windows(2).enumerate() {
            let piece = gauss_legendre(
                |x| self.rates_at(x).map(|r| r.as_vec()).unwrap_or(Vec3::repeat(f64::NAN)),
                w[0],
                w[1],
            );
            if !piece.iter().all(|v| v.is_finite()) {
                return Err(Error::Evaluation { param: w[0] }.at_node(i));
            }
            total += piece;
            out.push(IndicatrixIntegrals::from_vec(total));
        }
        Ok(out)
    }

    pub fn donor(&self) -> &Curve3 {
        &self.donor
    }

    pub fn grid(&self) -> &Grid {
        self.track.grid()
    }

    pub fn options(&self) -> &FrameOptions {
        self.track.options()
    }

    pub fn frames(&self) -> &[SignedFrame] {
        self.track.frames()
    }

    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    pub fn rates(&self) -> &[IndicatrixRates] {
        &self.rates
    }

    pub fn integrals(&self) -> &[IndicatrixIntegrals] {
        &self.integrals
    }

    pub fn params(&self) -> Vec<f64> {
        self.grid().nodes()
    }

    /// Closed-form apparatus at node `i`.
    pub fn node_apparatus(&self, i: usize) -> IndicatrixApparatus {
        closed_form(&self.frames()[i], self.sigma[i], self.integrals[i].arc)
    }

    /// Closed-form apparatus at every node.
    pub fn apparatus(&self) -> Vec<IndicatrixApparatus> {
        (0..self.grid().count()).map(|i| self.node_apparatus(i)).collect()
    }

    /// Evaluation is allowed a little beyond the grid, enough for difference
    /// stencils centred on the end nodes; integrals are extrapolated there.
    fn check_range(&self, t: f64) -> Result<()> {
        let g = self.grid();
        let slack = 4.0 * g.step() + 25.0 * self.options().rate_step;
        if t < g.start() - slack || t > g.end() + slack {
            return Err(Error::domain(format!(
                "parameter {t} lies outside the tabulated range [{}, {}]",
                g.start(),
                g.end()
            )));
        }
        Ok(())
    }

    /// Donor frame at `t`, oriented consistently with the tabulated frames.
    pub fn frame_at(&self, t: f64) -> Result<SignedFrame> {
        self.check_range(t)?;
        self.track.frame_at(&self.donor, t)
    }

    fn frame_and_sigma(&self, t: f64) -> Result<(SignedFrame, f64)> {
        self.check_range(t)?;
        let i = self.grid().nearest(t);
        if t == self.grid().node(i) {
            return Ok((self.frames()[i], self.sigma[i]));
        }
        let frame = self.track.frame_at(&self.donor, t)?;
        let sigma = self.track.sigma_at(&self.donor, &frame)?;
        Ok((frame, sigma))
    }

    pub fn sigma_at(&self, t: f64) -> Result<f64> {
        self.frame_and_sigma(t).map(|(_, s)| s)
    }

    pub fn rates_at(&self, t: f64) -> Result<IndicatrixRates> {
        let (frame, sigma) = self.frame_and_sigma(t)?;
        Ok(rates_from(&frame, sigma))
    }

    /// Running integrals at `t`: the tabulated value at the nearest node plus
    /// a Gauss–Legendre integral of the rates over the remaining gap.
    pub fn integrals_at(&self, t: f64) -> Result<IndicatrixIntegrals> {
        self.integrals_with(t, true)
    }

    /// As [`Indicatrix::integrals_at`], but skips σ when `with_tau` is false
    /// and then leaves the τ integral as NaN.
    pub fn integrals_with(&self, t: f64, with_tau: bool) -> Result<IndicatrixIntegrals> {
        self.check_range(t)?;
        let i = self.grid().nearest(t);
        let t0 = self.grid().node(i);
        let base = self.integrals[i];
        if t == t0 {
            return Ok(base);
        }
        let rate = |x: f64| -> Result<IndicatrixRates> {
            if with_tau {
                self.rates_at(x)
            } else {
                Ok(rates_from(&self.track.frame_at(&self.donor, x)?, 0.0))
            }
        };
        let local = gauss_legendre(
            |x| rate(x).map(|r| r.as_vec()).unwrap_or(Vec3::repeat(f64::NAN)),
            t0,
            t,
        );
        if !local.iter().all(|v| v.is_finite()) {
            return Err(Error::Evaluation { param: t });
        }
        Ok(IndicatrixIntegrals {
            arc: base.arc + local.x,
            kappa: base.kappa + local.y,
            tau: if with_tau { base.tau + local.z } else { f64::NAN },
        })
    }

    /// Closed-form apparatus at an arbitrary donor parameter.
    pub fn apparatus_at(&self, t: f64) -> Result<IndicatrixApparatus> {
        let (frame, sigma) = self.frame_and_sigma(t)?;
        let s_t = self.integrals_with(t, false)?.arc;
        Ok(closed_form(&frame, sigma, s_t))
    }

    /// The indicatrix as a curve in the donor parameter, `t ↦ T(t)`, with its
    /// first derivative `(α″ − ⟨α″, T⟩ T) / ‖α′‖` taken from the donor's
    /// derivatives and higher orders by differencing. This path never uses
    /// the closed forms, so it serves as an independent measurement.
    pub fn raw_curve(&self) -> Result<Curve3> {
        indicatrix_in_donor_parameter(&self.donor)
    }
}

/// The curve `t ↦ T(t)` of unit tangents of `curve`.
pub fn indicatrix_in_donor_parameter(curve: &Curve3) -> Result<Curve3> {
    let (cm, cd) = (curve.clone(), curve.clone());
    let map: VectorFn = Arc::new(move |t| cm.tangent(t).unwrap_or(Vec3::repeat(f64::NAN)));
    let d1: VectorFn = Arc::new(move |t| {
        let (Ok(a1), Ok(a2)) = (cd.derivative(t, 1), cd.derivative(t, 2)) else {
            return Vec3::repeat(f64::NAN);
        };
        let speed = a1.norm();
        if speed <= EPS_SPEED {
            return Vec3::repeat(f64::NAN);
        }
        let tangent = a1 / speed;
        (a2 - tangent * a2.dot(&tangent)) / speed
    });
    Curve3::from_parts(curve.domain(), map, [Some(d1), None, None])
}

/// The tangent indicatrix parametrized by its own (unsigned) arc length
/// `s_T = ∫ κ ds`, with `s_T = 0` at the grid start. Every point lies on the
/// unit sphere.
pub fn tangent_indicatrix(curve: &Curve3, grid: &Grid) -> Result<Curve3> {
    let c = curve.clone();
    for (i, t) in grid.nodes().into_iter().enumerate() {
        crate::curve::frenet_apparatus(curve, t).map_err(|e| e.at_node(i))?;
    }
    let rate = Arc::new(move |t: f64| Ok(c.curvature(t)? * c.speed(t)?));
    let table = Arc::new(ArcLengthTable::from_rate(grid, rate)?);
    let total = table.total();
    let (tm, cm) = (table.clone(), curve.clone());
    let (td, cd) = (table, curve.clone());
    let map: VectorFn = Arc::new(move |s| {
        tm.parameter_at(s)
            .and_then(|t| cm.tangent(t))
            .unwrap_or(Vec3::repeat(f64::NAN))
    });
    let d1: VectorFn = Arc::new(move |s| {
        td.parameter_at(s)
            .and_then(|t| crate::curve::frenet_apparatus(&cd, t))
            .map(|a| a.normal)
            .unwrap_or(Vec3::repeat(f64::NAN))
    });
    Curve3::from_parts((0.0, total), map, [Some(d1), None, None])
}

/// Closed-form indicatrix apparatus at donor parameter `t`, with `s_T`
/// measured from the start of the curve's domain.
pub fn indicatrix_apparatus(curve: &Curve3, t: f64) -> Result<IndicatrixApparatus> {
    let (a, _) = curve.domain();
    let opts = FrameOptions::with_mode(FrameMode::Strict);
    if t <= a {
        let grid = Grid::new(a, a + 1e-3, 3)?;
        let ind = Indicatrix::new(curve, &grid, &opts)?;
        return Ok(ind.node_apparatus(0));
    }
    let grid = Grid::new(a, t, 201)?;
    let ind = Indicatrix::new(curve, &grid, &opts)?;
    Ok(ind.node_apparatus(grid.count() - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::frenet_apparatus;
    use crate::expr::parse_curve_expression;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

    fn helix() -> Curve3 {
        parse_curve_expression("cos(t/sqrt(2)), sin(t/sqrt(2)), t/sqrt(2)", (0.0, 4.0 * PI)).unwrap()
    }

    #[test]
    fn helix_indicatrix_matches_its_closed_form() {
        let grid = Grid::new(0.0, 4.0 * PI, 401).unwrap();
        let ind = tangent_indicatrix(&helix(), &grid).unwrap();
        let (_, total) = ind.domain();
        assert_abs_diff_eq!(total, 2.0 * PI, epsilon = 1e-9);
        for k in 0..=40 {
            let s = total * k as f64 / 40.0;
            let p = ind.point(s).unwrap();
            let q = Vec3::new(
                -FRAC_1_SQRT_2 * (SQRT_2 * s).sin(),
                FRAC_1_SQRT_2 * (SQRT_2 * s).cos(),
                FRAC_1_SQRT_2,
            );
            assert!((p - q).amax() <= 1e-6, "s = {s}: {p} vs {q}");
            assert_abs_diff_eq!(p.norm(), 1.0, epsilon = 1e-9);
            assert_abs_diff_eq!(ind.speed(s).unwrap(), 1.0, epsilon = 1e-5);
        }
    }

    #[test]
    fn helix_apparatus_closed_forms() {
        let a = indicatrix_apparatus(&helix(), 1.3).unwrap();
        assert_abs_diff_eq!(a.kappa, SQRT_2, epsilon = 1e-6);
        assert_abs_diff_eq!(a.tau, 0.0, epsilon = 1e-5);
        assert_abs_diff_eq!(a.s_t, 0.65, epsilon = 1e-9);
    }

    #[test]
    fn circle_apparatus() {
        let c = parse_curve_expression("cos(t), sin(t), 0", (0.0, 6.0)).unwrap();
        let a = indicatrix_apparatus(&c, 2.0).unwrap();
        let frame = frenet_apparatus(&c, 2.0).unwrap();
        assert_abs_diff_eq!(a.kappa, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(a.tau, 0.0, epsilon = 1e-9);
        assert!((a.normal + frame.tangent).amax() <= 1e-9);
        assert!((a.tangent - frame.normal).amax() <= 1e-9);

        let grid = Grid::new(0.0, 6.0, 101).unwrap();
        let ind = tangent_indicatrix(&c, &grid).unwrap();
        for s in [0.0, 1.0, 3.3, 6.0] {
            let p = ind.point(s).unwrap();
            assert!((p - Vec3::new(-s.sin(), s.cos(), 0.0)).amax() <= 1e-8);
        }
    }

    #[test]
    fn closed_form_agrees_with_measured_indicatrix() {
        let c = parse_curve_expression("t, t^2, t^3", (-1.0, 1.0)).unwrap();
        let grid = Grid::new(-1.0, 1.0, 101).unwrap();
        let ind = Indicatrix::new(&c, &grid, &FrameOptions::default()).unwrap();
        let raw = ind.raw_curve().unwrap();
        for i in (0..grid.count()).step_by(10) {
            let t = grid.node(i);
            let closed = ind.node_apparatus(i);
            let measured = frenet_apparatus(&raw, t).unwrap();
            assert_abs_diff_eq!(closed.kappa, measured.kappa, epsilon = 1e-4);
            assert_abs_diff_eq!(closed.tau, measured.tau, epsilon = 1e-4);
            assert!((closed.tangent - measured.tangent).amax() <= 1e-6);
            assert!((closed.normal - measured.normal).amax() <= 1e-4);
            assert!((closed.binormal - measured.binormal).amax() <= 1e-4);
            assert!(closed.kappa >= 1.0);
        }
    }

    #[test]
    fn off_node_integrals_interpolate_tabulated_ones() {
        let grid = Grid::new(0.0, 4.0, 41).unwrap();
        let ind = Indicatrix::new(&helix(), &grid, &FrameOptions::default()).unwrap();
        let v = ind.integrals_at(1.234).unwrap();
        assert_abs_diff_eq!(v.arc, 0.617, epsilon = 1e-12);
        assert_abs_diff_eq!(v.kappa, SQRT_2 * 0.617, epsilon = 1e-9);
        assert_abs_diff_eq!(v.tau, 0.0, epsilon = 1e-6);
        assert!(matches!(ind.integrals_at(5.0), Err(Error::Domain(_))));
    }
}
