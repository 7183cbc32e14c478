//! Time/parameter grids, quadrature and finite differencing.
//!
//! Everything downstream (energies, primitives, flows) reduces to sampled
//! integrands on a [`TimeGrid`], so the rules here pin the numerical
//! conventions once: trapezoid weights by default, Simpson on uniform grids
//! with an odd node count, second-order differences for velocities.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Quadrature rule selector for [`integrate_1d`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadRule {
    Trapezoid,
    Simpson,
}

/// Strictly increasing sample nodes with trapezoid weights.
///
/// Nodes usually span `[0, 1]`, but any interval is allowed; weights always
/// sum to the span length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl TimeGrid {
    /// Uniform grid of `n` nodes on `[0, 1]`.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::uniform_on(n, 0.0, 1.0)
    }

    /// Uniform grid of `n` nodes on `[a, b]`.
    pub fn uniform_on(n: usize, a: f64, b: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::argument(format!("grid needs >= 2 nodes, got {n}")));
        }
        if !(b > a) || !a.is_finite() || !b.is_finite() {
            return Err(Error::argument(format!("bad grid interval [{a}, {b}]")));
        }
        let h = (b - a) / (n - 1) as f64;
        let nodes = (0..n).map(|i| a + h * i as f64).collect();
        Self::from_nodes(nodes)
    }

    /// Grid from explicit nodes; validates monotonicity and computes
    /// trapezoid weights.
    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::argument(format!(
                "grid needs >= 2 nodes, got {}",
                nodes.len()
            )));
        }
        for w in nodes.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::argument(format!(
                    "grid nodes must be strictly increasing ({} then {})",
                    w[0], w[1]
                )));
            }
        }
        if nodes.iter().any(|x| !x.is_finite()) {
            return Err(Error::argument("grid nodes must be finite"));
        }
        let n = nodes.len();
        let mut weights = vec![0.0; n];
        for i in 0..n - 1 {
            let h = nodes[i + 1] - nodes[i];
            weights[i] += 0.5 * h;
            weights[i + 1] += 0.5 * h;
        }
        Ok(TimeGrid { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn node(&self, i: usize) -> f64 {
        self.nodes[i]
    }

    pub fn span(&self) -> f64 {
        self.nodes[self.nodes.len() - 1] - self.nodes[0]
    }

    /// True when all steps agree to relative 1e-12.
    pub fn is_uniform(&self) -> bool {
        let h0 = self.nodes[1] - self.nodes[0];
        self.nodes
            .windows(2)
            .all(|w| ((w[1] - w[0]) - h0).abs() <= 1e-12 * h0.abs().max(1.0))
    }
}

/// Quadrature of sampled values over a grid. Deterministic, linear in the
/// integrand.
pub fn integrate_1d(samples: &[f64], grid: &TimeGrid) -> Result<f64> {
    integrate_1d_rule(samples, grid, QuadRule::Trapezoid)
}

/// Quadrature with an explicit rule. Simpson requires a uniform grid with an
/// odd number of nodes.
pub fn integrate_1d_rule(samples: &[f64], grid: &TimeGrid, rule: QuadRule) -> Result<f64> {
    if samples.len() != grid.len() {
        return Err(Error::argument(format!(
            "integrand length {} does not match grid length {}",
            samples.len(),
            grid.len()
        )));
    }
    match rule {
        QuadRule::Trapezoid => Ok(samples
            .iter()
            .zip(grid.weights())
            .map(|(f, w)| f * w)
            .sum()),
        QuadRule::Simpson => {
            let n = grid.len();
            if n % 2 == 0 {
                return Err(Error::argument(format!(
                    "Simpson rule needs an odd node count, got {n}"
                )));
            }
            if !grid.is_uniform() {
                return Err(Error::argument("Simpson rule needs a uniform grid"));
            }
            let h = grid.node(1) - grid.node(0);
            let mut acc = samples[0] + samples[n - 1];
            for (i, f) in samples.iter().enumerate().take(n - 1).skip(1) {
                acc += if i % 2 == 1 { 4.0 * f } else { 2.0 * f };
            }
            Ok(acc * h / 3.0)
        }
    }
}

/// Running integral with the trapezoid rule: `out[i] = ∫_{t0}^{ti} f`.
pub fn cumulative_integral(samples: &[f64], grid: &TimeGrid) -> Result<Vec<f64>> {
    if samples.len() != grid.len() {
        return Err(Error::argument(format!(
            "integrand length {} does not match grid length {}",
            samples.len(),
            grid.len()
        )));
    }
    let mut out = Vec::with_capacity(samples.len());
    let mut acc = 0.0;
    out.push(0.0);
    for i in 1..samples.len() {
        let h = grid.node(i) - grid.node(i - 1);
        acc += 0.5 * h * (samples[i] + samples[i - 1]);
        out.push(acc);
    }
    Ok(out)
}

/// Second-order derivative of a sampled scalar: 3-point central stencils in
/// the interior, one-sided 3-point stencils at the ends. Works on non-uniform
/// grids.
pub fn differentiate_scalar(samples: &[f64], grid: &TimeGrid) -> Result<Vec<f64>> {
    if samples.len() != grid.len() {
        return Err(Error::argument(format!(
            "sample length {} does not match grid length {}",
            samples.len(),
            grid.len()
        )));
    }
    let n = samples.len();
    if n < 3 {
        return Err(Error::argument(format!(
            "need >= 3 nodes to differentiate, got {n}"
        )));
    }
    let t = grid.nodes();
    let f = samples;
    let mut out = vec![0.0; n];
    // left end: quadratic through nodes 0,1,2 evaluated at node 0
    {
        let h0 = t[1] - t[0];
        let h1 = t[2] - t[1];
        out[0] = -(2.0 * h0 + h1) / (h0 * (h0 + h1)) * f[0] + (h0 + h1) / (h0 * h1) * f[1]
            - h0 / (h1 * (h0 + h1)) * f[2];
    }
    for i in 1..n - 1 {
        let hm = t[i] - t[i - 1];
        let hp = t[i + 1] - t[i];
        out[i] = -hp / (hm * (hm + hp)) * f[i - 1] + (hp - hm) / (hm * hp) * f[i]
            + hm / (hp * (hm + hp)) * f[i + 1];
    }
    {
        let h0 = t[n - 1] - t[n - 2];
        let h1 = t[n - 2] - t[n - 3];
        out[n - 1] = (2.0 * h0 + h1) / (h0 * (h0 + h1)) * f[n - 1]
            - (h0 + h1) / (h0 * h1) * f[n - 2]
            + h0 / (h1 * (h0 + h1)) * f[n - 3];
    }
    Ok(out)
}

/// Componentwise [`differentiate_scalar`] over a path of points.
pub fn differentiate_path(points: &[Vec<f64>], grid: &TimeGrid) -> Result<Vec<Vec<f64>>> {
    if points.len() != grid.len() {
        return Err(Error::argument(format!(
            "path length {} does not match grid length {}",
            points.len(),
            grid.len()
        )));
    }
    if points.len() < 3 {
        return Err(Error::argument(format!(
            "need >= 3 nodes to differentiate, got {}",
            points.len()
        )));
    }
    let dim = points[0].len();
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::argument("path points have mixed dimensions"));
    }
    let mut out = vec![vec![0.0; dim]; points.len()];
    let mut column = vec![0.0; points.len()];
    for d in 0..dim {
        for (i, p) in points.iter().enumerate() {
            column[i] = p[d];
        }
        let deriv = differentiate_scalar(&column, grid)?;
        for (i, v) in deriv.into_iter().enumerate() {
            out[i][d] = v;
        }
    }
    Ok(out)
}
