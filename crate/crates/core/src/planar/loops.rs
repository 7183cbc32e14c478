//! Oriented immersed loops in the plane and one-parameter families of them.

use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::spline::CubicSpline;
use serde::{Deserialize, Serialize};

/// 2-d cross product `a × b = ax by - ay bx`.
#[inline]
pub fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Liouville form `λ = ½(x dy - y dx)` evaluated at `p` on `v`.
#[inline]
pub fn liouville(p: [f64; 2], v: [f64; 2]) -> f64 {
    0.5 * (p[0] * v[1] - p[1] * v[0])
}

/// A closed immersed planar loop sampled over the unit-period circle.
///
/// Tangents may be supplied analytically (preferred: quadrature of periodic
/// smooth integrands against exact tangents is spectrally accurate).
/// Without them, central differences are used, which makes [`signed_area`]
/// agree exactly with the shoelace formula on the sample polygon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImmersedLoop {
    params: Vec<f64>,
    points: Vec<[f64; 2]>,
    tangents: Option<Vec<[f64; 2]>>,
}

impl ImmersedLoop {
    pub fn new(params: Vec<f64>, points: Vec<[f64; 2]>) -> Result<Self> {
        Self::with_tangents(params, points, None)
    }

    pub fn with_tangents(
        params: Vec<f64>,
        points: Vec<[f64; 2]>,
        tangents: Option<Vec<[f64; 2]>>,
    ) -> Result<Self> {
        if params.len() != points.len() {
            return Err(Error::argument("loop params/points length mismatch"));
        }
        if params.len() < 8 {
            return Err(Error::argument(format!(
                "loop needs >= 8 samples, got {}",
                params.len()
            )));
        }
        for w in params.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::argument("loop parameters must be strictly increasing"));
            }
        }
        if params[0] < 0.0 || *params.last().unwrap() >= params[0] + 1.0 {
            return Err(Error::argument("loop parameters must fit one unit period"));
        }
        if let Some(t) = &tangents {
            if t.len() != points.len() {
                return Err(Error::argument("loop tangents length mismatch"));
            }
        }
        let lp = ImmersedLoop {
            params,
            points,
            tangents,
        };
        // immersion: |j'| > 0 at all samples
        let mut min_speed = f64::INFINITY;
        for i in 0..lp.len() {
            let t = lp.tangent(i);
            min_speed = min_speed.min((t[0] * t[0] + t[1] * t[1]).sqrt());
        }
        if !(min_speed > 1e-9) {
            return Err(Error::argument(format!(
                "loop is not immersed: min |j'| = {min_speed:.3e}"
            )));
        }
        Ok(lp)
    }

    /// Uniform-parameter loop from points alone.
    pub fn from_points(points: Vec<[f64; 2]>) -> Result<Self> {
        let n = points.len();
        let params = (0..n).map(|i| i as f64 / n as f64).collect();
        Self::new(params, points)
    }

    /// Circle of radius `r` centered at `c`, positively oriented, with
    /// analytic tangents.
    pub fn circle(c: [f64; 2], r: f64, n: usize) -> Result<Self> {
        use std::f64::consts::TAU;
        let params: Vec<f64> = (0..n).map(|i| i as f64 / n as f64).collect();
        let points = params
            .iter()
            .map(|&x| [c[0] + r * (TAU * x).cos(), c[1] + r * (TAU * x).sin()])
            .collect();
        let tangents = params
            .iter()
            .map(|&x| [-r * TAU * (TAU * x).sin(), r * TAU * (TAU * x).cos()])
            .collect();
        Self::with_tangents(params, points, Some(tangents))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn point(&self, i: usize) -> [f64; 2] {
        self.points[i]
    }

    pub fn has_analytic_tangents(&self) -> bool {
        self.tangents.is_some()
    }

    /// Parameter step after sample `i`, wrapping the circle.
    pub fn step_after(&self, i: usize) -> f64 {
        let n = self.len();
        if i + 1 < n {
            self.params[i + 1] - self.params[i]
        } else {
            1.0 - self.params[n - 1] + self.params[0]
        }
    }

    /// dj/dx at sample `i`: supplied tangent or periodic central difference.
    pub fn tangent(&self, i: usize) -> [f64; 2] {
        if let Some(t) = &self.tangents {
            return t[i];
        }
        let n = self.len();
        let prev = (i + n - 1) % n;
        let next = (i + 1) % n;
        let mut gap = self.params[next] - self.params[prev];
        if next <= prev {
            gap += 1.0;
        }
        [
            (self.points[next][0] - self.points[prev][0]) / gap,
            (self.points[next][1] - self.points[prev][1]) / gap,
        ]
    }

    /// Signed area `∫ j*λ` by periodic trapezoid quadrature of
    /// `½(x y' - y x')`. With difference tangents this is exactly the
    /// shoelace sum of the sample polygon; with analytic tangents it is
    /// spectrally accurate for smooth loops.
    pub fn signed_area(&self) -> f64 {
        let n = self.len();
        let mut acc = 0.0;
        for i in 0..n {
            let w = 0.5 * (self.step_after(i) + self.step_after((i + n - 1) % n));
            acc += w * liouville(self.points[i], self.tangent(i));
        }
        acc
    }

    /// Periodic splines through the samples, one per coordinate.
    pub fn splines(&self) -> Result<(CubicSpline, CubicSpline)> {
        let xs: Vec<f64> = self.points.iter().map(|p| p[0]).collect();
        let ys: Vec<f64> = self.points.iter().map(|p| p[1]).collect();
        Ok((
            CubicSpline::periodic(&self.params, &xs, 1.0)?,
            CubicSpline::periodic(&self.params, &ys, 1.0)?,
        ))
    }

    /// Precompose with a circle diffeomorphism: returns `k(x) = j(σ(x))`
    /// sampled on this loop's own parameter grid. `sigma` and `sigma_prime`
    /// are σ and σ' evaluated at the loop's parameters; tangents come from
    /// the chain rule on the periodic splines.
    pub fn reparametrized(&self, sigma: &[f64], sigma_prime: &[f64]) -> Result<ImmersedLoop> {
        if sigma.len() != self.len() || sigma_prime.len() != self.len() {
            return Err(Error::argument("σ sample length mismatch"));
        }
        for w in sigma.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::argument("σ must be strictly increasing"));
            }
        }
        if sigma_prime.iter().any(|&d| !(d > 0.0)) {
            return Err(Error::argument("σ' must be positive"));
        }
        let (sx, sy) = self.splines()?;
        let points: Vec<[f64; 2]> = sigma.iter().map(|&s| [sx.eval(s), sy.eval(s)]).collect();
        let tangents: Vec<[f64; 2]> = sigma
            .iter()
            .zip(sigma_prime)
            .map(|(&s, &dp)| [dp * sx.deriv(s), dp * sy.deriv(s)])
            .collect();
        ImmersedLoop::with_tangents(self.params.clone(), points, Some(tangents))
    }

    /// Pointwise image under `z ↦ s·z + offset` (tangents scale by `s`).
    pub fn scaled(&self, s: f64, offset: [f64; 2]) -> Result<ImmersedLoop> {
        let points = self
            .points
            .iter()
            .map(|p| [s * p[0] + offset[0], s * p[1] + offset[1]])
            .collect();
        let tangents = self
            .tangents
            .as_ref()
            .map(|ts| ts.iter().map(|t| [s * t[0], s * t[1]]).collect());
        ImmersedLoop::with_tangents(self.params.clone(), points, tangents)
    }
}

/// A one-parameter family of loops over a shared parameter grid.
#[derive(Debug, Clone)]
pub struct LoopFamily {
    time_grid: TimeGrid,
    loops: Vec<ImmersedLoop>,
    /// Optional analytic ∂j/∂t samples, `[t][x]`.
    velocities: Option<Vec<Vec<[f64; 2]>>>,
}

impl LoopFamily {
    pub fn new(
        time_grid: TimeGrid,
        loops: Vec<ImmersedLoop>,
        velocities: Option<Vec<Vec<[f64; 2]>>>,
    ) -> Result<Self> {
        if loops.len() != time_grid.len() {
            return Err(Error::argument("family length does not match time grid"));
        }
        let n = loops[0].len();
        if loops.iter().any(|l| l.len() != n) {
            return Err(Error::argument("family loops must share a sample count"));
        }
        if loops
            .iter()
            .any(|l| l.params() != loops[0].params())
        {
            return Err(Error::argument("family loops must share parameter values"));
        }
        if let Some(v) = &velocities {
            if v.len() != loops.len() || v.iter().any(|s| s.len() != n) {
                return Err(Error::argument("family velocity shape mismatch"));
            }
        }
        Ok(LoopFamily {
            time_grid,
            loops,
            velocities,
        })
    }

    pub fn time_grid(&self) -> &TimeGrid {
        &self.time_grid
    }

    pub fn loops(&self) -> &[ImmersedLoop] {
        &self.loops
    }

    pub fn sample_count(&self) -> usize {
        self.loops[0].len()
    }

    pub fn has_analytic_velocities(&self) -> bool {
        self.velocities.is_some()
    }

    /// ∂j/∂t at `(ti, xi)`: supplied, or central difference over time
    /// (one-sided second order at the ends).
    pub fn velocity(&self, ti: usize, xi: usize) -> [f64; 2] {
        if let Some(v) = &self.velocities {
            return v[ti][xi];
        }
        let t = self.time_grid.nodes();
        let nt = t.len();
        let p = |k: usize| self.loops[k].point(xi);
        let two = |a: [f64; 2], ca: f64, b: [f64; 2], cb: f64, c: [f64; 2], cc: f64| {
            [
                ca * a[0] + cb * b[0] + cc * c[0],
                ca * a[1] + cb * b[1] + cc * c[1],
            ]
        };
        if ti == 0 {
            let h0 = t[1] - t[0];
            let h1 = t[2] - t[1];
            two(
                p(0),
                -(2.0 * h0 + h1) / (h0 * (h0 + h1)),
                p(1),
                (h0 + h1) / (h0 * h1),
                p(2),
                -h0 / (h1 * (h0 + h1)),
            )
        } else if ti == nt - 1 {
            let h0 = t[nt - 1] - t[nt - 2];
            let h1 = t[nt - 2] - t[nt - 3];
            two(
                p(nt - 1),
                (2.0 * h0 + h1) / (h0 * (h0 + h1)),
                p(nt - 2),
                -(h0 + h1) / (h0 * h1),
                p(nt - 3),
                h0 / (h1 * (h0 + h1)),
            )
        } else {
            let hm = t[ti] - t[ti - 1];
            let hp = t[ti + 1] - t[ti];
            two(
                p(ti - 1),
                -hp / (hm * (hm + hp)),
                p(ti),
                (hp - hm) / (hm * hp),
                p(ti + 1),
                hm / (hp * (hm + hp)),
            )
        }
    }

    /// Apply `z ↦ √c z` pointwise to the whole family (velocities included).
    pub fn contracted(&self, c: f64) -> Result<LoopFamily> {
        if !(c > 0.0) {
            return Err(Error::argument(format!(
                "contraction factor must be positive, got {c}"
            )));
        }
        let s = c.sqrt();
        let loops = self
            .loops
            .iter()
            .map(|l| l.scaled(s, [0.0, 0.0]))
            .collect::<Result<Vec<_>>>()?;
        let velocities = self.velocities.as_ref().map(|vs| {
            vs.iter()
                .map(|slice| slice.iter().map(|v| [s * v[0], s * v[1]]).collect())
                .collect()
        });
        LoopFamily::new(self.time_grid.clone(), loops, velocities)
    }
}
