//! Critical-point extraction for sampled generating functions.
//!
//! Two flavors: the fiberwise critical set (`∂_η K = 0` at fixed base
//! nodes, the locus that maps to the generated Legendrian) and full critical
//! points (`∇K = 0` over base and fiber, the locus carrying chord actions).
//!
//! Refinement strategy per the grid design: locate sign-enclosure cells of
//! the finite-difference gradient, then Newton on the multilinear gradient
//! interpolant with a bisection-style subdivision fallback. For a
//! 1-dimensional fiber the value column is splined and critical points come
//! from the closed-form roots of the spline derivative.

use crate::error::Result;
use crate::genfun::field::{locate, Axis, GeneratingFunctionFamily, ScalarField};
use crate::spline::CubicSpline;
use serde::{Deserialize, Serialize};

/// Degeneracy threshold on the smallest Hessian eigenvalue (relative to the
/// largest).
pub const DEGENERACY_TOL: f64 = 1e-6;

/// Residual target for refined gradient zeros (on the interpolant).
pub const REFINE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub time_index: usize,
    pub time: f64,
    /// Full coordinates `(x, η…)`; for fiberwise points `x` is a base node.
    pub location: Vec<f64>,
    /// Set for fiberwise points: the base node index.
    pub base_index: Option<usize>,
    pub value: f64,
    pub time_derivative: f64,
    pub morse_index: Option<usize>,
    pub degenerate: bool,
    /// |∇K| on the interpolant at the refined location.
    pub residual: f64,
}

/// Eigenvalues of a small symmetric matrix (dim ≤ 3), ascending.
fn symmetric_eigenvalues(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    match n {
        1 => vec![m[0][0]],
        2 => {
            let tr = m[0][0] + m[1][1];
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
            vec![tr / 2.0 - disc, tr / 2.0 + disc]
        }
        3 => {
            // analytic method for symmetric 3x3
            let p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
            let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
            let p2 = (m[0][0] - q).powi(2) + (m[1][1] - q).powi(2) + (m[2][2] - q).powi(2)
                + 2.0 * p1;
            if p2 <= 0.0 {
                return vec![q, q, q];
            }
            let p = (p2 / 6.0).sqrt();
            let mut b = vec![vec![0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    b[i][j] = (m[i][j] - if i == j { q } else { 0.0 }) / p;
                }
            }
            let detb = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
                - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
                + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
            let r = (detb / 2.0).clamp(-1.0, 1.0);
            let phi = r.acos() / 3.0;
            let e1 = q + 2.0 * p * phi.cos();
            let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
            let e2 = 3.0 * q - e1 - e3;
            let mut v = vec![e1, e2, e3];
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            v
        }
        _ => unreachable!("dims capped at 3"),
    }
}

/// FD Hessian over the chosen dimensions at a point, via the family's value
/// evaluator.
fn hessian_at(
    fam: &GeneratingFunctionFamily,
    ti: usize,
    point: &[f64],
    dims: &[usize],
    steps: &[f64],
) -> Vec<Vec<f64>> {
    let k = dims.len();
    let mut h = vec![vec![0.0; k]; k];
    let v0 = fam.value_at(ti, point);
    for a in 0..k {
        for b in a..k {
            let (da, db) = (dims[a], dims[b]);
            let (ha, hb) = (steps[a], steps[b]);
            let val = if a == b {
                let mut pp = point.to_vec();
                pp[da] += ha;
                let mut pm = point.to_vec();
                pm[da] -= ha;
                (fam.value_at(ti, &pp) - 2.0 * v0 + fam.value_at(ti, &pm)) / (ha * ha)
            } else {
                let mut pp = point.to_vec();
                pp[da] += ha;
                pp[db] += hb;
                let mut pm = point.to_vec();
                pm[da] += ha;
                pm[db] -= hb;
                let mut mp = point.to_vec();
                mp[da] -= ha;
                mp[db] += hb;
                let mut mm = point.to_vec();
                mm[da] -= ha;
                mm[db] -= hb;
                (fam.value_at(ti, &pp) - fam.value_at(ti, &pm) - fam.value_at(ti, &mp)
                    + fam.value_at(ti, &mm))
                    / (4.0 * ha * hb)
            };
            h[a][b] = val;
            h[b][a] = val;
        }
    }
    h
}

fn classify(
    fam: &GeneratingFunctionFamily,
    ti: usize,
    point: &[f64],
    dims: &[usize],
    steps: &[f64],
) -> (Option<usize>, bool) {
    let h = hessian_at(fam, ti, point, dims, steps);
    let eig = symmetric_eigenvalues(&h);
    let scale = eig.iter().fold(0.0f64, |a, e| a.max(e.abs())).max(1e-30);
    let min_abs = eig.iter().fold(f64::INFINITY, |a, e| a.min(e.abs()));
    let degenerate = min_abs < DEGENERACY_TOL * scale.max(1.0);
    let index = eig.iter().filter(|e| **e < 0.0).count();
    if degenerate {
        (None, true)
    } else {
        (Some(index), false)
    }
}

fn make_point(
    fam: &GeneratingFunctionFamily,
    ti: usize,
    location: Vec<f64>,
    base_index: Option<usize>,
    dims: &[usize],
    steps: &[f64],
    residual: f64,
    force_degenerate: bool,
) -> CriticalPoint {
    let value = fam.value_at(ti, &location);
    let time_derivative = fam.time_derivative_at(ti, &location);
    let (morse_index, degenerate) = if force_degenerate {
        (None, true)
    } else {
        classify(fam, ti, &location, dims, steps)
    };
    CriticalPoint {
        time_index: ti,
        time: fam.time_grid().node(ti),
        location,
        base_index,
        value,
        time_derivative,
        morse_index,
        degenerate,
        residual,
    }
}

/// Fiberwise critical set `{∂_η K_t = 0}` at a fixed time index: one scan
/// per base node.
pub fn fiberwise_critical_set(
    fam: &GeneratingFunctionFamily,
    ti: usize,
) -> Result<Vec<CriticalPoint>> {
    let mut out = Vec::new();
    match fam.fiber_dim() {
        1 => {
            let axis = &fam.fiber()[0];
            let slice = fam.slice(ti);
            let fiber_dims = [1usize];
            let steps = [axis.min_step()];
            for ix in 0..fam.base().len() {
                let column: Vec<f64> = (0..axis.len()).map(|ie| slice.get(&[ix, ie])).collect();
                // plateau detection: a run of nodes with (numerically) equal
                // values is a degenerate critical region
                let range = column.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                    - column.iter().cloned().fold(f64::INFINITY, f64::min);
                let flat_tol = 1e-12 * range.max(1.0);
                let mut run = 0usize;
                for ie in 1..axis.len() {
                    if (column[ie] - column[ie - 1]).abs() < flat_tol {
                        run += 1;
                        if run == 3 {
                            let mid = axis.node(ie - 1);
                            out.push(make_point(
                                fam,
                                ti,
                                vec![fam.base().node(ix), mid],
                                Some(ix),
                                &fiber_dims,
                                &steps,
                                0.0,
                                true,
                            ));
                        }
                    } else {
                        run = 0;
                    }
                }
                let sp = CubicSpline::natural(axis.nodes(), &column)?;
                for eta in sp.derivative_roots() {
                    out.push(make_point(
                        fam,
                        ti,
                        vec![fam.base().node(ix), eta],
                        Some(ix),
                        &fiber_dims,
                        &steps,
                        sp.deriv(eta).abs(),
                        false,
                    ));
                }
            }
        }
        2 => {
            let axes = fam.axes();
            let slice = fam.slice(ti);
            let fiber_dims = [1usize, 2usize];
            let steps = [fam.fiber()[0].min_step(), fam.fiber()[1].min_step()];
            // FD gradient fields over the fiber dims
            let grads: Vec<ScalarField> = (1..3)
                .map(|d| {
                    let mut g = ScalarField::zeros(slice.shape().to_vec());
                    let idxs: Vec<Vec<usize>> = slice.indices().collect();
                    for idx in idxs {
                        g.set(&idx, slice.gradient_component(&axes, d, &idx));
                    }
                    g
                })
                .collect();
            for ix in 0..fam.base().len() {
                let zeros = cell_zeros_fixed_base(&grads, &axes, &[1, 2], ix);
                for (loc, res, degenerate) in zeros {
                    out.push(make_point(
                        fam,
                        ti,
                        loc,
                        Some(ix),
                        &fiber_dims,
                        &steps,
                        res,
                        degenerate,
                    ));
                }
            }
        }
        _ => unreachable!(),
    }
    Ok(out)
}

/// Full critical points `{∇K_t = 0}` over base and fiber at one time index.
pub fn full_critical_points(
    fam: &GeneratingFunctionFamily,
    ti: usize,
) -> Result<Vec<CriticalPoint>> {
    let axes = fam.axes();
    let ndim = axes.len();
    let slice = fam.slice(ti);
    let grads: Vec<ScalarField> = (0..ndim)
        .map(|d| {
            let mut g = ScalarField::zeros(slice.shape().to_vec());
            let idxs: Vec<Vec<usize>> = slice.indices().collect();
            for idx in idxs {
                g.set(&idx, slice.gradient_component(&axes, d, &idx));
            }
            g
        })
        .collect();
    let dims: Vec<usize> = (0..ndim).collect();
    let steps: Vec<f64> = axes.iter().map(|a| a.min_step()).collect();
    let zeros = cell_zeros(&grads, &axes, &dims);
    let mut out: Vec<CriticalPoint> = Vec::new();
    for (loc, res, degenerate) in zeros {
        out.push(make_point(fam, ti, loc, None, &dims, &steps, res, degenerate));
    }
    Ok(out)
}

/// Find zeros of the interpolated gradient map with the base coordinate
/// frozen at node `ix` (fiberwise extraction for 2-dim fibers).
fn cell_zeros_fixed_base(
    grads: &[ScalarField],
    axes: &[Axis],
    active_dims: &[usize],
    ix: usize,
) -> Vec<(Vec<f64>, f64, bool)> {
    let eval = |p: &[f64]| -> Vec<f64> {
        let mut full = vec![axes[0].node(ix)];
        full.extend_from_slice(p);
        active_dims
            .iter()
            .map(|&d| grads[d - 1].interp(axes, &full))
            .collect()
    };
    let sub_axes: Vec<&Axis> = active_dims.iter().map(|&d| &axes[d]).collect();
    let raw = scan_cells(&sub_axes, &eval);
    raw.into_iter()
        .map(|(p, res, deg)| {
            let mut full = vec![axes[0].node(ix)];
            full.extend(p);
            (full, res, deg)
        })
        .collect()
}

/// Find zeros of the interpolated gradient map over the whole grid.
fn cell_zeros(
    grads: &[ScalarField],
    axes: &[Axis],
    active_dims: &[usize],
) -> Vec<(Vec<f64>, f64, bool)> {
    let eval = |p: &[f64]| -> Vec<f64> {
        active_dims.iter().map(|&d| grads[d].interp(axes, p)).collect()
    };
    let sub_axes: Vec<&Axis> = active_dims.iter().map(|&d| &axes[d]).collect();
    scan_cells(&sub_axes, &eval)
}

/// Scan all cells of the product grid for sign enclosures of every
/// component of `eval`, refine each hit, and deduplicate.
fn scan_cells(
    axes: &[&Axis],
    eval: &dyn Fn(&[f64]) -> Vec<f64>,
) -> Vec<(Vec<f64>, f64, bool)> {
    let ndim = axes.len();
    let cell_counts: Vec<usize> = axes
        .iter()
        .map(|a| if a.is_circle() { a.len() } else { a.len() - 1 })
        .collect();
    let total_cells: usize = cell_counts.iter().product();
    let mut found: Vec<(Vec<f64>, f64, bool)> = Vec::new();
    let min_sep: Vec<f64> = axes.iter().map(|a| 0.45 * a.min_step()).collect();
    let circle: Vec<bool> = axes.iter().map(|a| a.is_circle()).collect();

    for flat in 0..total_cells {
        let mut rest = flat;
        let mut cell = vec![0usize; ndim];
        for d in (0..ndim).rev() {
            cell[d] = rest % cell_counts[d];
            rest /= cell_counts[d];
        }
        // cell corner coordinates
        let lo: Vec<f64> = (0..ndim).map(|d| axes[d].node(cell[d])).collect();
        let hi: Vec<f64> = (0..ndim)
            .map(|d| axes[d].node(cell[d]) + axes[d].step_after(cell[d]))
            .collect();
        // corner values; every component needs both signs (or a zero)
        let ncorners = 1usize << ndim;
        let mut any_pos = vec![false; ndim];
        let mut any_neg = vec![false; ndim];
        let mut all_tiny = true;
        let mut scale = 0.0f64;
        for c in 0..ncorners {
            let p: Vec<f64> = (0..ndim)
                .map(|d| if c >> d & 1 == 1 { hi[d] } else { lo[d] })
                .collect();
            let g = eval(&p);
            for (d, &gd) in g.iter().enumerate() {
                scale = scale.max(gd.abs());
                if gd >= 0.0 {
                    any_pos[d] = true;
                }
                if gd <= 0.0 {
                    any_neg[d] = true;
                }
                if gd.abs() > 1e-11 {
                    all_tiny = false;
                }
            }
        }
        if !(0..ndim).all(|d| any_pos[d] && any_neg[d]) {
            continue;
        }
        if all_tiny {
            // gradient vanishes on the whole cell: degenerate region
            let center: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| 0.5 * (a + b)).collect();
            push_dedup(&mut found, (center, 0.0, true), &min_sep, &circle);
            continue;
        }
        if let Some((p, res)) = refine_in_cell(&lo, &hi, eval) {
            push_dedup(&mut found, (p, res, false), &min_sep, &circle);
        }
    }
    found
}

fn push_dedup(
    found: &mut Vec<(Vec<f64>, f64, bool)>,
    candidate: (Vec<f64>, f64, bool),
    min_sep: &[f64],
    circle: &[bool],
) {
    for (p, _, _) in found.iter() {
        let close = p
            .iter()
            .zip(&candidate.0)
            .zip(min_sep.iter().zip(circle))
            .all(|((a, b), (s, &wrap))| {
                let mut d = (a - b).abs();
                if wrap {
                    d = d.min((d - 1.0).abs());
                }
                d < *s
            });
        if close {
            return;
        }
    }
    found.push(candidate);
}

/// Damped Newton on the interpolated map inside a cell; falls back to
/// recursive bisection of the cell when Newton stalls.
fn refine_in_cell(
    lo: &[f64],
    hi: &[f64],
    eval: &dyn Fn(&[f64]) -> Vec<f64>,
) -> Option<(Vec<f64>, f64)> {
    let ndim = lo.len();
    let mut p: Vec<f64> = lo.iter().zip(hi).map(|(a, b)| 0.5 * (a + b)).collect();
    let fd: Vec<f64> = lo.iter().zip(hi).map(|(a, b)| 1e-7 * (b - a)).collect();
    let norm = |g: &[f64]| g.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut g = eval(&p);
    let mut best = (p.clone(), norm(&g));
    for _ in 0..60 {
        let gn = norm(&g);
        if gn < REFINE_TOL {
            return Some((p, gn));
        }
        // FD Jacobian of the interpolant
        let mut jac = vec![vec![0.0; ndim]; ndim];
        for d in 0..ndim {
            let mut pp = p.clone();
            pp[d] += fd[d];
            let gp = eval(&pp);
            for r in 0..ndim {
                jac[r][d] = (gp[r] - g[r]) / fd[d];
            }
        }
        let step = solve_damped(&jac, &g);
        let mut moved = false;
        // backtracking line search, clamped to the (slightly padded) cell
        let mut alpha = 1.0;
        for _ in 0..8 {
            let cand: Vec<f64> = (0..ndim)
                .map(|d| {
                    (p[d] - alpha * step[d])
                        .clamp(lo[d] - 0.25 * (hi[d] - lo[d]), hi[d] + 0.25 * (hi[d] - lo[d]))
                })
                .collect();
            let gc = eval(&cand);
            if norm(&gc) < gn {
                p = cand;
                g = gc;
                moved = true;
                break;
            }
            alpha *= 0.5;
        }
        if norm(&g) < best.1 {
            best = (p.clone(), norm(&g));
        }
        if !moved {
            break;
        }
    }
    // bisection fallback on the interpolant
    if let Some((p, r)) = bisect_box(lo, hi, eval, 0) {
        if r < best.1 {
            return Some((p, r));
        }
    }
    if best.1 < 1e-6 {
        Some(best)
    } else {
        None
    }
}

/// Solve (JᵀJ + λI) s = Jᵀ g for a damped Newton step.
fn solve_damped(jac: &[Vec<f64>], g: &[f64]) -> Vec<f64> {
    let n = g.len();
    let mut a = vec![vec![0.0; n]; n];
    let mut b = vec![0.0; n];
    let mut scale = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for k in 0..n {
                s += jac[k][i] * jac[k][j];
            }
            a[i][j] = s;
            scale = scale.max(s.abs());
        }
        for k in 0..n {
            b[i] += jac[k][i] * g[k];
        }
    }
    let lambda = 1e-10 * scale.max(1e-30);
    for (i, row) in a.iter_mut().enumerate() {
        row[i] += lambda;
    }
    gauss_solve(a, b)
}

fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let mut piv = col;
        for r in col + 1..n {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let d = a[col][col];
        if d.abs() < 1e-300 {
            continue;
        }
        for r in col + 1..n {
            let f = a[r][col] / d;
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut s = b[r];
        for c in r + 1..n {
            s -= a[r][c] * x[c];
        }
        x[r] = if a[r][r].abs() < 1e-300 { 0.0 } else { s / a[r][r] };
    }
    x
}

fn bisect_box(
    lo: &[f64],
    hi: &[f64],
    eval: &dyn Fn(&[f64]) -> Vec<f64>,
    depth: usize,
) -> Option<(Vec<f64>, f64)> {
    let ndim = lo.len();
    let center: Vec<f64> = lo.iter().zip(hi).map(|(a, b)| 0.5 * (a + b)).collect();
    let g = eval(&center);
    let gn = g.iter().map(|v| v * v).sum::<f64>().sqrt();
    if gn < REFINE_TOL || depth >= 40 {
        return Some((center, gn));
    }
    // pick the sub-box (corner octant) still enclosing sign changes
    let nsub = 1usize << ndim;
    for s in 0..nsub {
        let slo: Vec<f64> = (0..ndim)
            .map(|d| if s >> d & 1 == 1 { center[d] } else { lo[d] })
            .collect();
        let shi: Vec<f64> = (0..ndim)
            .map(|d| if s >> d & 1 == 1 { hi[d] } else { center[d] })
            .collect();
        let mut any_pos = vec![false; ndim];
        let mut any_neg = vec![false; ndim];
        for c in 0..(1usize << ndim) {
            let p: Vec<f64> = (0..ndim)
                .map(|d| if c >> d & 1 == 1 { shi[d] } else { slo[d] })
                .collect();
            let gc = eval(&p);
            for (d, &v) in gc.iter().enumerate() {
                if v >= 0.0 {
                    any_pos[d] = true;
                }
                if v <= 0.0 {
                    any_neg[d] = true;
                }
            }
        }
        if (0..ndim).all(|d| any_pos[d] && any_neg[d]) {
            return bisect_box(&slo, &shi, eval, depth + 1);
        }
    }
    Some((center, gn))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::field::{FamilyFn, Tail};
    use crate::grid::TimeGrid;
    use std::sync::Arc;

    fn quadratic_stabilization() -> GeneratingFunctionFamily {
        let tg = TimeGrid::uniform(2).unwrap();
        let base = Axis::circle(24).unwrap();
        let fiber = vec![Axis::uniform(-2.0, 2.0, 41).unwrap()];
        let f: FamilyFn =
            Arc::new(|_t, x, eta| (std::f64::consts::TAU * x).cos() + eta[0] * eta[0]);
        GeneratingFunctionFamily::from_fn(
            tg,
            base,
            fiber,
            Tail::Quadratic { diag: vec![1.0] },
            10.0,
            f,
            None,
        )
        .unwrap()
    }

    #[test]
    fn quadratic_fiber_critical_at_zero() {
        let fam = quadratic_stabilization();
        let crits = fiberwise_critical_set(&fam, 0).unwrap();
        assert_eq!(crits.len(), fam.base().len());
        for c in &crits {
            assert!(c.location[1].abs() < 1e-9, "η* = {}", c.location[1]);
            let x = c.location[0];
            let expect = (std::f64::consts::TAU * x).cos();
            assert!((c.value - expect).abs() < 1e-9);
            assert_eq!(c.morse_index, Some(0));
            assert!(!c.degenerate);
        }
    }

    #[test]
    fn cubic_fiber_critical_points_match_closed_form() {
        // K = g(x) + η³ - η inside the window, spliced to the linear tail
        // ℓ(η) = -η outside: critical points at η = ±1/√3 with values
        // g(x) ∓ 2/(3√3).
        let tg = TimeGrid::uniform(2).unwrap();
        let base = Axis::circle(16).unwrap();
        let fiber = vec![Axis::uniform(-6.0, 6.0, 241).unwrap()];
        let f: FamilyFn = Arc::new(|_t, x, eta| {
            let e = eta[0];
            let g = 0.2 * (std::f64::consts::TAU * x).sin();
            // smooth splice: cubic core in |η|<2, tail -η outside |η|>4
            let w = smoothstep((e.abs() - 2.0) / 2.0);
            (1.0 - w) * (g + e * e * e - e) + w * (-e)
        });
        let fam = GeneratingFunctionFamily::from_fn(
            tg,
            base,
            fiber,
            Tail::Linear { coeffs: vec![-1.0] },
            30.0,
            f,
            None,
        )
        .unwrap();
        let crits = fiberwise_critical_set(&fam, 0).unwrap();
        let inv = 1.0 / 3.0f64.sqrt();
        let mag = 2.0 / (3.0 * 3.0f64.sqrt());
        // exactly two interior points per base node; splice region adds none
        for ix in 0..fam.base().len() {
            let mine: Vec<&CriticalPoint> = crits
                .iter()
                .filter(|c| c.base_index == Some(ix))
                .collect();
            assert_eq!(mine.len(), 2, "base {ix}: {mine:?}");
            let g = 0.2 * (std::f64::consts::TAU * fam.base().node(ix)).sin();
            for c in mine {
                let eta = c.location[1];
                assert!(
                    (eta.abs() - inv).abs() < 2e-3,
                    "η = {eta}, expected ±{inv}"
                );
                let expect = if eta > 0.0 { g - mag } else { g + mag };
                assert!((c.value - expect).abs() < 1e-5, "value {}", c.value);
            }
        }
    }

    fn smoothstep(u: f64) -> f64 {
        let u = u.clamp(0.0, 1.0);
        u * u * (3.0 - 2.0 * u)
    }

    #[test]
    fn pure_linear_function_has_no_critical_points() {
        let tg = TimeGrid::uniform(2).unwrap();
        let base = Axis::circle(12).unwrap();
        let fiber = vec![Axis::uniform(-2.0, 2.0, 21).unwrap()];
        let f: FamilyFn = Arc::new(|_t, _x, eta| eta[0]);
        let fam = GeneratingFunctionFamily::from_fn(
            tg,
            base,
            fiber,
            Tail::Linear { coeffs: vec![1.0] },
            5.0,
            f,
            None,
        )
        .unwrap();
        assert!(fiberwise_critical_set(&fam, 0).unwrap().is_empty());
        assert!(full_critical_points(&fam, 0).unwrap().is_empty());
    }

    #[test]
    fn full_critical_points_of_product_function() {
        // K = cos(2πx) + η² on the circle × interval: full critical points
        // where sin(2πx) = 0 and η = 0, i.e. (0, 0) and (1/2, 0).
        let fam = quadratic_stabilization();
        let crits = full_critical_points(&fam, 0).unwrap();
        let mut xs: Vec<f64> = crits
            .iter()
            .map(|c| c.location[0].rem_euclid(1.0))
            .collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(xs.len(), 2, "{xs:?}");
        assert!(xs[0].abs() < 1e-6 || (xs[0] - 1.0).abs() < 1e-6, "{xs:?}");
        assert!((xs[1] - 0.5).abs() < 1e-6, "{xs:?}");
        for c in &crits {
            assert!(c.location[1].abs() < 1e-8);
            assert!(c.residual < 1e-8);
            // max at x=1/2 has index 1, min at x=0 has index 0
            let x = c.location[0].rem_euclid(1.0);
            if (x - 0.5).abs() < 1e-3 {
                assert_eq!(c.morse_index, Some(1));
                assert!((c.value - (-1.0 + 0.0)).abs() < 1e-9);
            } else {
                assert_eq!(c.morse_index, Some(0));
                assert!((c.value - 1.0).abs() < 1e-9);
            }
        }
    }
}
