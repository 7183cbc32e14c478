//! Grid-sampled scalar fields over base × fiber boxes, and families of
//! linear/quadratic-at-infinity generating functions.

use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// One grid axis. Fiber axes are always intervals; the base axis may be a
/// unit circle (nodes in [0,1), wrap implied).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    nodes: Vec<f64>,
    circle: bool,
}

impl Axis {
    pub fn uniform(a: f64, b: f64, n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::argument("axis needs >= 4 nodes"));
        }
        if !(b > a) {
            return Err(Error::argument("axis interval must be nonempty"));
        }
        let h = (b - a) / (n - 1) as f64;
        Ok(Axis {
            nodes: (0..n).map(|i| a + h * i as f64).collect(),
            circle: false,
        })
    }

    pub fn circle(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::argument("circle axis needs >= 4 nodes"));
        }
        Ok(Axis {
            nodes: (0..n).map(|i| i as f64 / n as f64).collect(),
            circle: true,
        })
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

    pub fn is_circle(&self) -> bool {
        self.circle
    }

    pub fn node(&self, i: usize) -> f64 {
        self.nodes[i]
    }

    /// Step after node i (wrapping on circles).
    pub fn step_after(&self, i: usize) -> f64 {
        let n = self.nodes.len();
        if i + 1 < n {
            self.nodes[i + 1] - self.nodes[i]
        } else if self.circle {
            1.0 - self.nodes[n - 1] + self.nodes[0]
        } else {
            self.nodes[n - 1] - self.nodes[n - 2]
        }
    }

    /// Smallest node spacing.
    pub fn min_step(&self) -> f64 {
        (0..if self.circle { self.len() } else { self.len() - 1 })
            .map(|i| self.step_after(i))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Flat row-major storage over 1–3 axes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarField {
    shape: Vec<usize>,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(shape: Vec<usize>) -> Self {
        let len = shape.iter().product();
        ScalarField {
            shape,
            values: vec![0.0; len],
        }
    }

    pub fn from_values(shape: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if shape.iter().product::<usize>() != values.len() {
            return Err(Error::argument("field value count does not match shape"));
        }
        Ok(ScalarField { shape, values })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn ndim(&self) -> usize {
        self.shape.len()
    }

    #[inline]
    pub fn offset(&self, idx: &[usize]) -> usize {
        let mut off = 0;
        for (d, &i) in idx.iter().enumerate() {
            off = off * self.shape[d] + i;
        }
        off
    }

    #[inline]
    pub fn get(&self, idx: &[usize]) -> f64 {
        self.values[self.offset(idx)]
    }

    #[inline]
    pub fn set(&mut self, idx: &[usize], v: f64) {
        let off = self.offset(idx);
        self.values[off] = v;
    }

    /// Iterate all multi-indices in row-major order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let shape = self.shape.clone();
        let total: usize = shape.iter().product();
        (0..total).map(move |mut flat| {
            let mut idx = vec![0; shape.len()];
            for d in (0..shape.len()).rev() {
                idx[d] = flat % shape[d];
                flat /= shape[d];
            }
            idx
        })
    }

    /// Central-difference gradient component along axis `d` at a node
    /// (one-sided at interval ends, wrapping on circle axes).
    pub fn gradient_component(&self, axes: &[Axis], d: usize, idx: &[usize]) -> f64 {
        let n = self.shape[d];
        let axis = &axes[d];
        let mut lo = idx.to_vec();
        let mut hi = idx.to_vec();
        if axis.is_circle() {
            lo[d] = (idx[d] + n - 1) % n;
            hi[d] = (idx[d] + 1) % n;
            let mut gap = axis.node(hi[d]) - axis.node(lo[d]);
            if hi[d] <= lo[d] {
                gap += 1.0;
            }
            (self.get(&hi) - self.get(&lo)) / gap
        } else if idx[d] == 0 {
            hi[d] = 1;
            (self.get(&hi) - self.get(idx)) / (axis.node(1) - axis.node(0))
        } else if idx[d] == n - 1 {
            lo[d] = n - 2;
            (self.get(idx) - self.get(&lo)) / (axis.node(n - 1) - axis.node(n - 2))
        } else {
            lo[d] = idx[d] - 1;
            hi[d] = idx[d] + 1;
            (self.get(&hi) - self.get(&lo)) / (axis.node(hi[d]) - axis.node(lo[d]))
        }
    }

    /// Multilinear interpolation at a point (coordinates in axis units;
    /// circle axes wrap).
    pub fn interp(&self, axes: &[Axis], point: &[f64]) -> f64 {
        let ndim = self.ndim();
        let mut cells = Vec::with_capacity(ndim);
        for d in 0..ndim {
            cells.push(locate(&axes[d], point[d]));
        }
        let mut acc = 0.0;
        for corner in 0..(1usize << ndim) {
            let mut w = 1.0;
            let mut idx = vec![0usize; ndim];
            for d in 0..ndim {
                let (i0, i1, s) = cells[d];
                if corner >> d & 1 == 1 {
                    idx[d] = i1;
                    w *= s;
                } else {
                    idx[d] = i0;
                    w *= 1.0 - s;
                }
            }
            acc += w * self.get(&idx);
        }
        acc
    }
}

/// Locate `x` on an axis: (left node, right node, fractional position).
pub fn locate(axis: &Axis, x: f64) -> (usize, usize, f64) {
    let n = axis.len();
    let nodes = axis.nodes();
    if axis.is_circle() {
        let u = (x - nodes[0]).rem_euclid(1.0) + nodes[0];
        let i = match nodes.binary_search_by(|k| k.partial_cmp(&u).unwrap()) {
            Ok(i) => i,
            Err(i) => i.saturating_sub(1),
        }
        .min(n - 1);
        let j = (i + 1) % n;
        let h = axis.step_after(i);
        ((i), j, ((u - nodes[i]) / h).clamp(0.0, 1.0))
    } else {
        let xc = x.clamp(nodes[0], nodes[n - 1]);
        let i = match nodes.binary_search_by(|k| k.partial_cmp(&xc).unwrap()) {
            Ok(i) => i.min(n - 2),
            Err(i) => i.saturating_sub(1).min(n - 2),
        };
        let h = nodes[i + 1] - nodes[i];
        (i, i + 1, ((xc - nodes[i]) / h).clamp(0.0, 1.0))
    }
}

/// Declared behavior of a generating function outside its compact window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Tail {
    /// `ℓ(η) = Σ cᵢ ηᵢ`, with `ℓ ≠ 0`. Off the window `K(x,η) = ℓ(η)`.
    Linear { coeffs: Vec<f64> },
    /// `Q(η) = Σ dᵢ ηᵢ²`, nondegenerate. Off the window
    /// `K(x,η) = Q(η) + g(x)` for some base function g.
    Quadratic { diag: Vec<f64> },
}

impl Tail {
    pub fn eval(&self, eta: &[f64]) -> f64 {
        match self {
            Tail::Linear { coeffs } => coeffs.iter().zip(eta).map(|(c, e)| c * e).sum(),
            Tail::Quadratic { diag } => diag.iter().zip(eta).map(|(d, e)| d * e * e).sum(),
        }
    }

    fn validate_shape(&self, fiber_dim: usize) -> Result<()> {
        match self {
            Tail::Linear { coeffs } => {
                if coeffs.len() != fiber_dim {
                    return Err(Error::argument("linear tail dimension mismatch"));
                }
                if coeffs.iter().all(|c| *c == 0.0) {
                    return Err(Error::argument("linear tail must be nonzero"));
                }
            }
            Tail::Quadratic { diag } => {
                if diag.len() != fiber_dim {
                    return Err(Error::argument("quadratic tail dimension mismatch"));
                }
                if diag.iter().any(|d| *d == 0.0) {
                    return Err(Error::argument("quadratic tail must be nondegenerate"));
                }
            }
        }
        Ok(())
    }
}

pub type FamilyFn = Arc<dyn Fn(f64, f64, &[f64]) -> f64 + Send + Sync>;

/// A family `K_t(x, η)` of generating functions sampled on a shared
/// base × fiber grid, with a declared tail and action cap `R`
/// (`K = tail` wherever `|K| > R`).
#[derive(Clone)]
pub struct GeneratingFunctionFamily {
    time_grid: TimeGrid,
    base: Axis,
    fiber: Vec<Axis>,
    slices: Vec<ScalarField>,
    tail: Tail,
    action_cap: f64,
    /// Optional closed-form evaluator `(t, x, η) → K` for refinement.
    analytic: Option<FamilyFn>,
    /// Optional closed-form time derivative `(t, x, η) → K'`.
    analytic_dt: Option<FamilyFn>,
}

impl std::fmt::Debug for GeneratingFunctionFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GeneratingFunctionFamily")
            .field("times", &self.time_grid.len())
            .field("base", &self.base.len())
            .field(
                "fiber",
                &self.fiber.iter().map(|a| a.len()).collect::<Vec<_>>(),
            )
            .field("tail", &self.tail)
            .field("action_cap", &self.action_cap)
            .field("analytic", &self.analytic.is_some())
            .finish()
    }
}

pub const TAIL_MATCH_TOL: f64 = 1e-9;

impl GeneratingFunctionFamily {
    /// Sample a closed-form family on the grid.
    pub fn from_fn(
        time_grid: TimeGrid,
        base: Axis,
        fiber: Vec<Axis>,
        tail: Tail,
        action_cap: f64,
        f: FamilyFn,
        df_dt: Option<FamilyFn>,
    ) -> Result<Self> {
        let mut slices = Vec::with_capacity(time_grid.len());
        let mut shape = vec![base.len()];
        shape.extend(fiber.iter().map(|a| a.len()));
        for &t in time_grid.nodes() {
            let mut field = ScalarField::zeros(shape.clone());
            let idxs: Vec<Vec<usize>> = field.indices().collect();
            for idx in idxs {
                let x = base.node(idx[0]);
                let eta: Vec<f64> = idx[1..]
                    .iter()
                    .zip(&fiber)
                    .map(|(&i, a)| a.node(i))
                    .collect();
                field.set(&idx, f(t, x, &eta));
            }
            slices.push(field);
        }
        Self::from_slices(
            time_grid,
            base,
            fiber,
            slices,
            tail,
            action_cap,
            Some(f),
            df_dt,
        )
    }

    #[allow(clippy::too_many_arguments)]
    pub fn from_slices(
        time_grid: TimeGrid,
        base: Axis,
        fiber: Vec<Axis>,
        slices: Vec<ScalarField>,
        tail: Tail,
        action_cap: f64,
        analytic: Option<FamilyFn>,
        analytic_dt: Option<FamilyFn>,
    ) -> Result<Self> {
        if fiber.is_empty() || fiber.len() > 2 {
            return Err(Error::argument("fiber dimension must be 1 or 2"));
        }
        if fiber.iter().any(|a| a.is_circle()) {
            return Err(Error::argument("fiber axes must be intervals"));
        }
        tail.validate_shape(fiber.len())?;
        if !(action_cap > 0.0) {
            return Err(Error::argument("action cap must be positive"));
        }
        if slices.len() != time_grid.len() {
            return Err(Error::argument("slice count does not match time grid"));
        }
        let mut shape = vec![base.len()];
        shape.extend(fiber.iter().map(|a| a.len()));
        for s in &slices {
            if s.shape() != shape.as_slice() {
                return Err(Error::argument("slice shape mismatch"));
            }
        }
        let fam = GeneratingFunctionFamily {
            time_grid,
            base,
            fiber,
            slices,
            tail,
            action_cap,
            analytic,
            analytic_dt,
        };
        fam.validate_tail()?;
        Ok(fam)
    }

    /// Values on the outermost fiber shell must match the declared tail.
    fn validate_tail(&self) -> Result<()> {
        let fdims: Vec<usize> = self.fiber.iter().map(|a| a.len()).collect();
        for (ti, slice) in self.slices.iter().enumerate() {
            for ix in 0..self.base.len() {
                // track the per-x offset for quadratic tails
                let mut offset: Option<f64> = None;
                for idx in slice.indices() {
                    if idx[0] != ix {
                        continue;
                    }
                    let on_shell = idx[1..]
                        .iter()
                        .zip(&fdims)
                        .any(|(&i, &n)| i == 0 || i == n - 1);
                    if !on_shell {
                        continue;
                    }
                    let eta: Vec<f64> = idx[1..]
                        .iter()
                        .zip(&self.fiber)
                        .map(|(&i, a)| a.node(i))
                        .collect();
                    let resid = slice.get(&idx) - self.tail.eval(&eta);
                    match &self.tail {
                        Tail::Linear { .. } => {
                            if resid.abs() > TAIL_MATCH_TOL {
                                return Err(Error::argument(format!(
                                    "slice {ti}: shell value at x index {ix} deviates from the linear tail by {resid:.3e}"
                                )));
                            }
                        }
                        Tail::Quadratic { .. } => match offset {
                            None => offset = Some(resid),
                            Some(o) => {
                                if (resid - o).abs() > TAIL_MATCH_TOL {
                                    return Err(Error::argument(format!(
                                        "slice {ti}: quadratic tail offset varies along the shell at x index {ix} by {:.3e}",
                                        (resid - o).abs()
                                    )));
                                }
                            }
                        },
                    }
                }
            }
        }
        Ok(())
    }

    pub fn time_grid(&self) -> &TimeGrid {
        &self.time_grid
    }

    pub fn base(&self) -> &Axis {
        &self.base
    }

    pub fn fiber(&self) -> &[Axis] {
        &self.fiber
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber.len()
    }

    pub fn slice(&self, ti: usize) -> &ScalarField {
        &self.slices[ti]
    }

    pub fn slices(&self) -> &[ScalarField] {
        &self.slices
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn action_cap(&self) -> f64 {
        self.action_cap
    }

    pub fn analytic(&self) -> Option<&FamilyFn> {
        self.analytic.as_ref()
    }

    /// All axes of a slice: base then fiber.
    pub fn axes(&self) -> Vec<Axis> {
        let mut v = vec![self.base.clone()];
        v.extend(self.fiber.iter().cloned());
        v
    }

    /// K value at an off-grid point `(x, η…)`, analytic when available,
    /// multilinear otherwise.
    pub fn value_at(&self, ti: usize, point: &[f64]) -> f64 {
        if let Some(f) = &self.analytic {
            let t = self.time_grid.node(ti);
            return f(t, point[0], &point[1..]);
        }
        self.slices[ti].interp(&self.axes(), point)
    }

    /// Time derivative K' at an off-grid point, analytic when available,
    /// otherwise a 3-point difference of interpolated slice values.
    pub fn time_derivative_at(&self, ti: usize, point: &[f64]) -> f64 {
        if let Some(df) = &self.analytic_dt {
            let t = self.time_grid.node(ti);
            return df(t, point[0], &point[1..]);
        }
        let axes = self.axes();
        let nt = self.time_grid.len();
        let v = |k: usize| self.slices[k].interp(&axes, point);
        let t = self.time_grid.nodes();
        if nt < 3 {
            return (v(1) - v(0)) / (t[1] - t[0]);
        }
        if ti == 0 {
            let (h0, h1) = (t[1] - t[0], t[2] - t[1]);
            -(2.0 * h0 + h1) / (h0 * (h0 + h1)) * v(0) + (h0 + h1) / (h0 * h1) * v(1)
                - h0 / (h1 * (h0 + h1)) * v(2)
        } else if ti == nt - 1 {
            let (h0, h1) = (t[nt - 1] - t[nt - 2], t[nt - 2] - t[nt - 3]);
            (2.0 * h0 + h1) / (h0 * (h0 + h1)) * v(nt - 1) - (h0 + h1) / (h0 * h1) * v(nt - 2)
                + h0 / (h1 * (h0 + h1)) * v(nt - 3)
        } else {
            let (hm, hp) = (t[ti] - t[ti - 1], t[ti + 1] - t[ti]);
            -hp / (hm * (hm + hp)) * v(ti - 1) + (hp - hm) / (hm * hp) * v(ti)
                + hm / (hp * (hm + hp)) * v(ti + 1)
        }
    }
}
