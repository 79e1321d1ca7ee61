//! Numerical kernels: central differences, cumulative composite Simpson
//! quadrature, monotone-table inversion and a constancy statistic.

use std::ops::{Add, Mul, Sub};

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute floor used by [`constancy_score`] for near-zero means.
pub const CONSTANCY_EPS_ABS: f64 = 1e-9;

/// Default relative threshold for declaring a sampled function constant.
pub const DEFAULT_CONSTANCY_TOL: f64 = 1e-4;

/// Values that finite-difference and quadrature kernels can operate on.
pub trait Sample: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn all_finite(&self) -> bool;
}

impl Sample for f64 {
    fn zero() -> Self {
        0.0
    }

    fn all_finite(&self) -> bool {
        self.is_finite()
    }
}

impl Sample for Vector3<f64> {
    fn zero() -> Self {
        Vector3::zeros()
    }

    fn all_finite(&self) -> bool {
        self.iter().all(|c| c.is_finite())
    }
}

/// A uniform sampling of `[start, end]`.
///
/// The node count is always odd so that Simpson panels tile the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    start: f64,
    end: f64,
    count: usize,
}

impl Grid {
    /// Builds a grid, rounding `count` up to the next odd integer.
    pub fn new(start: f64, end: f64, count: usize) -> Result<Self> {
        if !(start.is_finite() && end.is_finite()) {
            return Err(Error::domain("grid bounds must be finite"));
        }
        if start >= end {
            return Err(Error::domain(format!(
                "grid start {start} must be below end {end}"
            )));
        }
        if count < 3 {
            return Err(Error::domain(format!("grid count {count} must be at least 3")));
        }
        let count = if count.is_multiple_of(2) { count + 1 } else { count };
        Ok(Self { start, end, count })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn step(&self) -> f64 {
        (self.end - self.start) / (self.count - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            self.end
        } else {
            self.start + i as f64 * self.step()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.node(i)).collect()
    }

    /// Index of the node closest to `t`, clamped to the grid.
    pub fn nearest(&self, t: f64) -> usize {
        let x = ((t - self.start) / self.step()).round();
        if x <= 0.0 {
            0
        } else {
            (x as usize).min(self.count - 1)
        }
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.start && t <= self.end
    }
}

/// Running integral of a function tabulated on increasing parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CumulativeTable {
    parameters: Vec<f64>,
    values: Vec<f64>,
}

impl CumulativeTable {
    pub fn new(parameters: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if parameters.len() != values.len() || parameters.len() < 2 {
            return Err(Error::domain(
                "cumulative table needs at least two parameter/value pairs of equal length",
            ));
        }
        if parameters.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::domain("table parameters must be strictly increasing"));
        }
        if values[0] != 0.0 {
            return Err(Error::domain("cumulative table must start at zero"));
        }
        Ok(Self { parameters, values })
    }

    pub fn parameters(&self) -> &[f64] {
        &self.parameters
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn last(&self) -> f64 {
        *self.values.last().expect("table is non-empty")
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.values.windows(2).all(|w| w[1] > w[0])
    }
}

/// Estimates the `order`-th derivative of `f` at `t` with symmetric stencils
/// of accuracy O(h²).
pub fn central_difference<V, F>(f: F, t: f64, order: u8, h: f64) -> Result<V>
where
    V: Sample,
    F: Fn(f64) -> V,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::domain(format!("difference step must be positive, got {h}")));
    }
    let eval = |x: f64| -> Result<V> {
        let v = f(x);
        if v.all_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation { param: x })
        }
    };
    match order {
        1 => Ok((eval(t + h)? - eval(t - h)?) * (0.5 / h)),
        2 => Ok((eval(t + h)? - eval(t)? * 2.0 + eval(t - h)?) * (1.0 / (h * h))),
        3 => {
            let a = eval(t + 2.0 * h)? - eval(t - 2.0 * h)?;
            let b = eval(t + h)? - eval(t - h)?;
            Ok((a - b * 2.0) * (0.5 / (h * h * h)))
        }
        _ => Err(Error::domain(format!("unsupported derivative order {order}"))),
    }
}

/// Estimates the first or second derivative of `f` at `t` with five-point
/// symmetric stencils of accuracy O(h⁴). Used where a lower derivative is
/// known in closed form, so that a wide step keeps round-off small.
pub fn fourth_order_difference<V, F>(f: F, t: f64, order: u8, h: f64) -> Result<V>
where
    V: Sample,
    F: Fn(f64) -> V,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::domain(format!("difference step must be positive, got {h}")));
    }
    if !(1..=2).contains(&order) {
        return Err(Error::domain(format!("unsupported derivative order {order}")));
    }
    let mut v = [V::zero(); 5];
    for (k, slot) in v.iter_mut().enumerate() {
        let x = t + (k as f64 - 2.0) * h;
        *slot = f(x);
        if !slot.all_finite() {
            return Err(Error::Evaluation { param: x });
        }
    }
    Ok(five_point(&v, order, h))
}

/// Combines samples at `t - 2h, …, t + 2h` into an O(h⁴) derivative.
pub(crate) fn five_point<V: Sample>(v: &[V; 5], order: u8, h: f64) -> V {
    if order == 1 {
        ((v[3] - v[1]) * 8.0 + v[0] - v[4]) * (1.0 / (12.0 * h))
    } else {
        ((v[1] + v[3]) * 16.0 - v[2] * 30.0 - v[0] - v[4]) * (1.0 / (12.0 * h * h))
    }
}

/// Step for [`fourth_order_difference`]: `1e-3 (1 + |t|)`.
pub fn fourth_order_step(t: f64) -> f64 {
    1e-3 * (1.0 + t.abs())
}

/// Default difference step for an `order`-th derivative taken directly from
/// function values. First order uses `max(1e-5, 1e-6 (1 + |t|))`; each extra
/// order widens the step tenfold to keep round-off below truncation error.
pub fn default_step(order: u8, t: f64) -> f64 {
    let widen = 10f64.powi(order.saturating_sub(1) as i32);
    (1e-5 * widen).max(1e-6 * widen * (1.0 + t.abs()))
}

/// Cumulative composite Simpson integral of `f` over `grid`.
pub fn cumulative_simpson<F>(f: F, grid: &Grid) -> Result<CumulativeTable>
where
    F: Fn(f64) -> f64,
{
    let params = grid.nodes();
    let samples = params
        .iter()
        .map(|&t| {
            let v = f(t);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Evaluation { param: t })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let values = cumulative_samples(&samples, grid.step())?;
    CumulativeTable::new(params, values)
}

/// Cumulative integral of uniformly spaced samples.
///
/// Even-indexed entries are composite Simpson sums; odd-indexed entries add a
/// four-point single-interval rule to the preceding even entry, so every
/// entry integrates cubics exactly. An even sample count closes the final
/// interval with the trapezoid rule.
pub fn cumulative_samples<V: Sample>(samples: &[V], h: f64) -> Result<Vec<V>> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::domain("cumulative quadrature needs at least two samples"));
    }
    if let Some(i) = samples.iter().position(|s| !s.all_finite()) {
        return Err(Error::Evaluation { param: i as f64 * h });
    }
    let f = samples;
    let mut out = vec![V::zero(); n];
    if n == 2 {
        out[1] = (f[0] + f[1]) * (0.5 * h);
        return Ok(out);
    }
    let last_even = if n % 2 == 1 { n - 1 } else { n - 2 };
    let mut i = 2;
    while i <= last_even {
        out[i] = out[i - 2] + (f[i - 2] + f[i - 1] * 4.0 + f[i]) * (h / 3.0);
        i += 2;
    }
    let mut i = 1;
    while i < last_even {
        let step = if i >= 2 {
            (f[i - 1] * 13.0 + f[i] * 13.0 - f[i - 2] - f[i + 1]) * (h / 24.0)
        } else if n >= 4 {
            (f[0] * 9.0 + f[1] * 19.0 - f[2] * 5.0 + f[3]) * (h / 24.0)
        } else {
            (f[0] * 5.0 + f[1] * 8.0 - f[2]) * (h / 12.0)
        };
        out[i] = out[i - 1] + step;
        i += 2;
    }
    if n.is_multiple_of(2) {
        out[n - 1] = out[n - 2]
            + if n >= 4 {
                (f[n - 4] - f[n - 3] * 5.0 + f[n - 2] * 19.0 + f[n - 1] * 9.0) * (h / 24.0)
            } else {
                (f[n - 2] + f[n - 1]) * (0.5 * h)
            };
    }
    Ok(out)
}

const GL3_NODES: [f64; 3] = [-0.774_596_669_241_483_4, 0.0, 0.774_596_669_241_483_4];
const GL3_WEIGHTS: [f64; 3] = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];

/// Three-point Gauss-Legendre rule on `[a, b]`; exact for quintics.
pub fn gauss_legendre<V: Sample, F: Fn(f64) -> V>(f: F, a: f64, b: f64) -> V {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    GL3_NODES
        .iter()
        .zip(GL3_WEIGHTS.iter())
        .fold(V::zero(), |acc, (x, w)| acc + f(mid + half * x) * (w * half))
}

/// Shape-preserving (Fritsch-Carlson / PCHIP) slopes for a monotone table.
fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let d: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
    let mut m = vec![0.0; n];
    if n == 2 {
        m[0] = d[0];
        m[1] = d[0];
        return m;
    }
    for k in 1..n - 1 {
        if d[k - 1] * d[k] <= 0.0 {
            m[k] = 0.0;
        } else {
            let w1 = 2.0 * h[k] + h[k - 1];
            let w2 = h[k] + 2.0 * h[k - 1];
            m[k] = (w1 + w2) / (w1 / d[k - 1] + w2 / d[k]);
        }
    }
    let end_slope = |h0: f64, h1: f64, d0: f64, d1: f64| {
        let s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if s.signum() != d0.signum() || d0 == 0.0 {
            0.0
        } else if d0.signum() != d1.signum() && s.abs() > 3.0 * d0.abs() {
            3.0 * d0
        } else {
            s
        }
    };
    m[0] = end_slope(h[0], h[1], d[0], d[1]);
    m[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    m
}

fn hermite(x0: f64, x1: f64, y0: f64, y1: f64, m0: f64, m1: f64, x: f64) -> f64 {
    let h = x1 - x0;
    let s = (x - x0) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    (2.0 * s3 - 3.0 * s2 + 1.0) * y0
        + (s3 - 2.0 * s2 + s) * h * m0
        + (-2.0 * s3 + 3.0 * s2) * y1
        + (s3 - s2) * h * m1
}

/// Finds `t` with `cumulative(t) = v` on a nondecreasing table.
///
/// The table is interpolated by a monotone cubic in the parameter and the
/// crossing is located by bisection inside the enclosing segment, so the
/// result never leaves that segment.
pub fn invert_monotone(table: &CumulativeTable, v: f64) -> Result<f64> {
    let p = table.parameters();
    let y = table.values();
    let n = p.len();
    if y.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::domain("table values are not nondecreasing"));
    }
    if !v.is_finite() || v < y[0] || v > y[n - 1] {
        return Err(Error::domain(format!(
            "value {v} outside table range [{}, {}]",
            y[0],
            y[n - 1]
        )));
    }
    // first index with y[idx] >= v
    let idx = y.partition_point(|&yy| yy < v);
    if y[idx] == v {
        if idx + 1 < n && y[idx + 1] == v || idx > 0 && y[idx - 1] == v {
            return Err(Error::Degenerate {
                reason: format!("flat table segment at value {v}"),
                index: Some(idx),
            });
        }
        return Ok(p[idx]);
    }
    let seg = idx - 1;
    if y[seg + 1] == y[seg] {
        return Err(Error::Degenerate {
            reason: format!("flat table segment at value {v}"),
            index: Some(seg),
        });
    }
    let slopes = pchip_slopes(p, y);
    let eval = |t: f64| hermite(p[seg], p[seg + 1], y[seg], y[seg + 1], slopes[seg], slopes[seg + 1], t);
    let (mut lo, mut hi) = (p[seg], p[seg + 1]);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if eval(mid) < v {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Relative spread `sd / (|mean| + eps)`; the plain standard deviation when
/// the mean is below [`CONSTANCY_EPS_ABS`]. Zero means exactly constant.
pub fn constancy_score(samples: &[f64]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::domain("constancy score needs at least two samples"));
    }
    if samples.iter().any(|s| !s.is_finite()) {
        return Err(Error::domain("constancy score needs finite samples"));
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / n;
    let sd = var.sqrt();
    if mean.abs() < CONSTANCY_EPS_ABS {
        Ok(sd)
    } else {
        Ok(sd / (mean.abs() + CONSTANCY_EPS_ABS))
    }
}

/// First derivative of samples `v` taken at strictly monotone abscissae `x`,
/// using five-point finite-difference weights (Fornberg) on the nearest
/// stencil, shifted inward at the ends. Fourth-order accurate on smooth data.
pub fn sampled_derivative(x: &[f64], v: &[f64]) -> Result<Vec<f64>> {
    let n = x.len();
    if n != v.len() || n < 2 {
        return Err(Error::domain(
            "derivative needs at least two abscissa/value pairs of equal length",
        ));
    }
    let increasing = x.windows(2).all(|w| w[1] > w[0]);
    let decreasing = x.windows(2).all(|w| w[1] < w[0]);
    if !(increasing || decreasing) {
        return Err(Error::domain("abscissae must be strictly monotone"));
    }
    let width = n.min(5);
    Ok((0..n)
        .map(|i| {
            let lo = i.saturating_sub(width / 2).min(n - width);
            let stencil = &x[lo..lo + width];
            let w = fornberg_first_derivative(x[i], stencil);
            w.iter().zip(&v[lo..lo + width]).map(|(a, b)| a * b).sum()
        })
        .collect())
}

/// Weights of the first derivative at `z` for interpolation nodes `x`.
fn fornberg_first_derivative(z: f64, x: &[f64]) -> Vec<f64> {
    let n = x.len();
    // c[j][k]: weight of node j for the k-th derivative, k = 0, 1.
    let mut c = vec![[0.0f64; 2]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    for i in 1..n {
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                c[i][1] = c1 * (c[i - 1][0] - c5 * c[i - 1][1]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            c[j][1] = (c4 * c[j][1] - c[j][0]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.iter().map(|w| w[1]).collect()
}

/// Mean and population standard deviation.
pub fn mean_sd(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn sampled_derivative_is_exact_on_quartics() {
        let x: Vec<f64> = (0..9).map(|i| 0.3 * i as f64 + 0.01 * (i * i) as f64).collect();
        let v: Vec<f64> = x.iter().map(|t| t.powi(4) - 2.0 * t + 1.0).collect();
        let d = sampled_derivative(&x, &v).unwrap();
        for (t, dv) in x.iter().zip(&d) {
            assert_abs_diff_eq!(*dv, 4.0 * t.powi(3) - 2.0, epsilon = 1e-9);
        }
        let rev: Vec<f64> = x.iter().rev().copied().collect();
        let vr: Vec<f64> = v.iter().rev().copied().collect();
        let dr = sampled_derivative(&rev, &vr).unwrap();
        assert_abs_diff_eq!(dr[0], d[8], epsilon = 1e-9);
        assert!(sampled_derivative(&[0.0, 1.0, 0.5], &[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn grid_rounds_count_to_odd() {
        let g = Grid::new(0.0, 1.0, 4).unwrap();
        assert_eq!(g.count(), 5);
        assert_eq!(g.node(4), 1.0);
        assert!(Grid::new(1.0, 0.0, 5).is_err());
        assert!(Grid::new(0.0, 1.0, 2).is_err());
    }

    #[test]
    fn central_difference_examples() {
        let d: f64 = central_difference(|t| t * t, 1.0, 1, 1e-4).unwrap();
        assert_abs_diff_eq!(d, 2.0, epsilon = 1e-8);
        let c: f64 = central_difference(|_| 3.25, 0.7, 1, 1e-4).unwrap();
        assert_eq!(c, 0.0);
        let d3: f64 = central_difference(f64::sin, 0.0, 3, 1e-3).unwrap();
        assert_abs_diff_eq!(d3, -1.0, epsilon = 1e-5);
    }

    #[test]
    fn fourth_order_stencils_are_exact_on_quintics_and_quartics() {
        let p = |t: f64| 1.0 - 2.0 * t + 0.5 * t * t + t.powi(3) - 0.25 * t.powi(4);
        let dp = |t: f64| -2.0 + t + 3.0 * t * t - t.powi(3);
        let ddp = |t: f64| 1.0 + 6.0 * t - 3.0 * t * t;
        for t in [-1.0, 0.0, 0.7] {
            let d: f64 = fourth_order_difference(p, t, 1, 0.25).unwrap();
            assert_abs_diff_eq!(d, dp(t), epsilon = 1e-12);
            let d2: f64 = fourth_order_difference(p, t, 2, 0.25).unwrap();
            assert_abs_diff_eq!(d2, ddp(t), epsilon = 1e-12);
        }
        let r: Result<f64> = fourth_order_difference(|t| t, 0.0, 3, 0.1);
        assert!(r.is_err());
    }

    #[test]
    fn central_difference_rejects_bad_input() {
        let r: Result<f64> = central_difference(|t: f64| (t - 0.1).ln(), 0.1, 1, 1e-3);
        assert!(matches!(r, Err(Error::Evaluation { .. })));
        let r: Result<f64> = central_difference(|t| t, 0.0, 1, 0.0);
        assert!(r.is_err());
        let r: Result<f64> = central_difference(|t| t, 0.0, 4, 0.1);
        assert!(r.is_err());
    }

    #[test]
    fn simpson_examples() {
        let g = Grid::new(0.0, 2.0, 5).unwrap();
        assert_eq!(cumulative_simpson(|_| 1.0, &g).unwrap().last(), 2.0);
        let g = Grid::new(0.0, PI / 2.0, 101).unwrap();
        assert_abs_diff_eq!(cumulative_simpson(f64::cos, &g).unwrap().last(), 1.0, epsilon = 1e-8);
        let g = Grid::new(0.0, 1.0, 3).unwrap();
        assert_eq!(cumulative_simpson(|t| t, &g).unwrap().last(), 0.5);
    }

    #[test]
    fn simpson_odd_nodes_integrate_cubics() {
        let g = Grid::new(-1.0, 2.0, 11).unwrap();
        let f = |t: f64| 2.0 * t.powi(3) - t * t + 0.5 * t - 3.0;
        let anti = |t: f64| 0.5 * t.powi(4) - t.powi(3) / 3.0 + 0.25 * t * t - 3.0 * t;
        let table = cumulative_simpson(f, &g).unwrap();
        for (t, v) in table.parameters().iter().zip(table.values()) {
            assert_abs_diff_eq!(*v, anti(*t) - anti(-1.0), epsilon = 1e-12);
        }
    }

    #[test]
    fn even_sample_counts_stay_exact_on_cubics() {
        let h = 0.25;
        let f: Vec<f64> = (0..8).map(|i| (i as f64 * h).powi(3) - i as f64 * h).collect();
        let out = cumulative_samples(&f, h).unwrap();
        for (i, v) in out.iter().enumerate() {
            let t = i as f64 * h;
            assert_abs_diff_eq!(*v, t.powi(4) / 4.0 - t * t / 2.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn simpson_rejects_non_finite() {
        let g = Grid::new(0.0, 1.0, 5).unwrap();
        assert!(matches!(
            cumulative_simpson(|t| if t > 0.6 { f64::NAN } else { t }, &g),
            Err(Error::Evaluation { .. })
        ));
    }

    #[test]
    fn invert_examples() {
        let g = Grid::new(0.0, 2.0, 21).unwrap();
        let table = cumulative_simpson(|_| 1.0, &g).unwrap();
        assert_abs_diff_eq!(invert_monotone(&table, 1.3).unwrap(), 1.3, epsilon = 1e-9);
        assert_eq!(invert_monotone(&table, table.last()).unwrap(), 2.0);

        let g = Grid::new(0.0, 1.0, 101).unwrap();
        let table = cumulative_simpson(|t| 2.0 * t, &g).unwrap();
        assert_abs_diff_eq!(invert_monotone(&table, 0.25).unwrap(), 0.5, epsilon = 1e-6);
        // off-node value: analytic inverse is sqrt(v)
        assert_abs_diff_eq!(invert_monotone(&table, 0.3).unwrap(), 0.3f64.sqrt(), epsilon = 1e-6);
    }

    #[test]
    fn invert_errors() {
        let g = Grid::new(0.0, 1.0, 11).unwrap();
        let table = cumulative_simpson(|_| 1.0, &g).unwrap();
        assert!(matches!(invert_monotone(&table, 1.5), Err(Error::Domain(_))));
        assert!(matches!(invert_monotone(&table, -0.1), Err(Error::Domain(_))));

        let flat = CumulativeTable::new(vec![0.0, 1.0, 2.0, 3.0], vec![0.0, 1.0, 1.0, 2.0]).unwrap();
        assert!(matches!(invert_monotone(&flat, 1.0), Err(Error::Degenerate { .. })));
        assert_abs_diff_eq!(invert_monotone(&flat, 1.5).unwrap(), 2.5, epsilon = 0.5);
    }

    #[test]
    fn constancy_examples() {
        assert_eq!(constancy_score(&[3.0, 3.0, 3.0, 3.0]).unwrap(), 0.0);
        assert!(constancy_score(&[1.0, -1.0, 1.0, -1.0]).unwrap() > 0.5);
        assert!(constancy_score(&[1.0]).is_err());
    }
}
