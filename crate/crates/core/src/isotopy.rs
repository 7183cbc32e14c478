//! Sampled Legendrian isotopies and their validation.

use crate::error::{Error, Result};
use crate::grid::{differentiate_path, TimeGrid};
use crate::space::{ModelKind, ModelSpace, SymplectizationModel};
use serde::{Deserialize, Serialize};

/// Parameter grid along the Legendrian: a circle (unit period) or the unit
/// interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamGrid {
    nodes: Vec<f64>,
    circle: bool,
}

impl ParamGrid {
    pub fn uniform_circle(n: usize) -> Result<Self> {
        if n < 8 {
            return Err(Error::argument(format!(
                "parameter grid needs >= 8 samples, got {n}"
            )));
        }
        Ok(ParamGrid {
            nodes: (0..n).map(|i| i as f64 / n as f64).collect(),
            circle: true,
        })
    }

    pub fn uniform_interval(n: usize) -> Result<Self> {
        if n < 8 {
            return Err(Error::argument(format!(
                "parameter grid needs >= 8 samples, got {n}"
            )));
        }
        Ok(ParamGrid {
            nodes: (0..n).map(|i| i as f64 / (n - 1) as f64).collect(),
            circle: false,
        })
    }

    pub fn from_nodes(nodes: Vec<f64>, circle: bool) -> Result<Self> {
        if nodes.len() < 8 {
            return Err(Error::argument(format!(
                "parameter grid needs >= 8 samples, got {}",
                nodes.len()
            )));
        }
        for w in nodes.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::argument("parameter nodes must be strictly increasing"));
            }
        }
        if circle && (nodes[0] < 0.0 || *nodes.last().unwrap() >= nodes[0] + 1.0) {
            return Err(Error::argument("circle parameter nodes must fit one period"));
        }
        Ok(ParamGrid { nodes, circle })
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

    /// Parameter step from node `i` to its successor (wrapping on circles).
    pub fn step_after(&self, i: usize) -> f64 {
        let n = self.nodes.len();
        if i + 1 < n {
            self.nodes[i + 1] - self.nodes[i]
        } else {
            1.0 - self.nodes[n - 1] + self.nodes[0]
        }
    }
}

/// Where velocity samples came from; recorded for reproducibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VelocitySource {
    Supplied,
    FiniteDifference,
}

/// Circle-valued ambient coordinates of a model (index, period); differences
/// across these must take the nearest representative.
fn wrapped_dims(space: &ModelSpace) -> Vec<usize> {
    match space.kind {
        ModelKind::Jet1(crate::space::Base::Circle) => vec![0],
        ModelKind::Contactization { circle: true } => vec![0],
        ModelKind::ProductContactization { circle, model } => {
            let mut dims = if circle { vec![0] } else { vec![] };
            if model == SymplectizationModel::Cylinder {
                dims.push(2);
            }
            dims
        }
        _ => vec![],
    }
}

/// Difference `a - b` with circle-valued coordinates reduced to the nearest
/// representative.
pub(crate) fn ambient_diff(space: &ModelSpace, a: &[f64], b: &[f64]) -> Vec<f64> {
    let wraps = wrapped_dims(space);
    let mut out: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    for d in wraps {
        out[d] -= out[d].round();
    }
    out
}

#[derive(Debug, Clone, Default)]
pub struct IsotopyOptions {
    /// Supplied time-velocities `[t][x][dim]`; finite-differenced when absent.
    pub velocities: Option<Vec<Vec<Vec<f64>>>>,
    /// Supplied parameter-tangents `[t][x][dim]` used for the Legendrian
    /// check; central differences when absent.
    pub x_tangents: Option<Vec<Vec<Vec<f64>>>>,
    /// Legendrian tolerance; defaults to 1e-8 with supplied tangents. A
    /// finite-difference check needs a tolerance sized to the grid (O(h²)).
    pub legendrian_tol: Option<f64>,
}

pub const DEFAULT_LEGENDRIAN_TOL: f64 = 1e-8;

/// A time-grid × parameter-grid family of Legendrian samples with
/// velocities, validated against the ambient contact form at construction.
#[derive(Debug, Clone)]
pub struct SampledIsotopy {
    space: ModelSpace,
    time_grid: TimeGrid,
    param: ParamGrid,
    points: Vec<Vec<Vec<f64>>>,
    velocities: Vec<Vec<Vec<f64>>>,
    x_tangents: Option<Vec<Vec<Vec<f64>>>>,
    velocity_source: VelocitySource,
    worst_legendrian_defect: f64,
}

impl SampledIsotopy {
    pub fn new(
        space: ModelSpace,
        time_grid: TimeGrid,
        param: ParamGrid,
        points: Vec<Vec<Vec<f64>>>,
        opts: IsotopyOptions,
    ) -> Result<Self> {
        if time_grid.len() < 2 {
            return Err(Error::argument("time grid needs >= 2 nodes"));
        }
        if points.len() != time_grid.len() {
            return Err(Error::argument(format!(
                "points outer length {} does not match time grid {}",
                points.len(),
                time_grid.len()
            )));
        }
        let dim = space.dim();
        for (ti, slice) in points.iter().enumerate() {
            if slice.len() != param.len() {
                return Err(Error::argument(format!(
                    "time slice {ti} has {} samples, parameter grid has {}",
                    slice.len(),
                    param.len()
                )));
            }
            for (xi, p) in slice.iter().enumerate() {
                if p.len() != dim {
                    return Err(Error::argument(format!(
                        "sample ({ti},{xi}) has dimension {}, expected {dim}",
                        p.len()
                    )));
                }
                if p.iter().any(|c| !c.is_finite()) {
                    return Err(Error::argument(format!(
                        "sample ({ti},{xi}) has non-finite coordinates"
                    )));
                }
            }
        }

        let (velocities, velocity_source) = match opts.velocities {
            Some(v) => {
                if v.len() != points.len() || v.iter().any(|s| s.len() != param.len()) {
                    return Err(Error::argument("velocity array shape mismatch"));
                }
                (v, VelocitySource::Supplied)
            }
            None => {
                if time_grid.len() < 3 {
                    return Err(Error::Computation(
                        "velocities missing and fewer than 3 time nodes to difference".into(),
                    ));
                }
                let mut v = vec![vec![vec![0.0; dim]; param.len()]; time_grid.len()];
                // difference each parameter index through time, unwrapping
                // circle-valued coordinates first
                for xi in 0..param.len() {
                    let mut path: Vec<Vec<f64>> = Vec::with_capacity(time_grid.len());
                    path.push(points[0][xi].clone());
                    for ti in 1..time_grid.len() {
                        let prev = path[ti - 1].clone();
                        let step = ambient_diff(&space, &points[ti][xi], &points[ti - 1][xi]);
                        path.push(prev.iter().zip(&step).map(|(a, d)| a + d).collect());
                    }
                    let der = differentiate_path(&path, &time_grid)?;
                    for (ti, d) in der.into_iter().enumerate() {
                        v[ti][xi] = d;
                    }
                }
                (v, VelocitySource::FiniteDifference)
            }
        };

        let tol = opts
            .legendrian_tol
            .unwrap_or(DEFAULT_LEGENDRIAN_TOL);
        let iso = SampledIsotopy {
            space,
            time_grid,
            param,
            points,
            velocities,
            x_tangents: opts.x_tangents,
            velocity_source,
            worst_legendrian_defect: 0.0,
        };
        iso.validated(tol)
    }

    fn validated(mut self, tol: f64) -> Result<Self> {
        let mut worst = 0.0f64;
        let mut worst_loc = (0usize, 0usize);
        for ti in 0..self.time_grid.len() {
            for xi in 0..self.param.len() {
                let tangent = self.x_tangent(ti, xi);
                let defect = self
                    .space
                    .one_form(&self.points[ti][xi], &tangent)
                    .abs();
                if defect > worst {
                    worst = defect;
                    worst_loc = (ti, xi);
                }
            }
        }
        if worst > tol {
            return Err(Error::Legendrian {
                message: format!("isotopy samples exceed tolerance {tol:.1e}"),
                defect: worst,
                location: format!("(t index {}, x index {})", worst_loc.0, worst_loc.1),
            });
        }
        self.worst_legendrian_defect = worst;
        Ok(self)
    }

    /// Tangent in the parameter direction at sample `(ti, xi)`: supplied if
    /// available, otherwise a central difference over the parameter grid
    /// (one-sided at interval ends).
    pub fn x_tangent(&self, ti: usize, xi: usize) -> Vec<f64> {
        if let Some(tans) = &self.x_tangents {
            return tans[ti][xi].clone();
        }
        let n = self.param.len();
        let slice = &self.points[ti];
        let nodes = self.param.nodes();
        if self.param.is_circle() {
            let prev = (xi + n - 1) % n;
            let next = (xi + 1) % n;
            let mut gap = nodes[next] - nodes[prev];
            if next < prev || next == prev {
                gap += 1.0;
            }
            let diff = ambient_diff(&self.space, &slice[next], &slice[prev]);
            diff.iter().map(|d| d / gap).collect()
        } else if xi == 0 {
            let gap = nodes[1] - nodes[0];
            ambient_diff(&self.space, &slice[1], &slice[0])
                .iter()
                .map(|d| d / gap)
                .collect()
        } else if xi == n - 1 {
            let gap = nodes[n - 1] - nodes[n - 2];
            ambient_diff(&self.space, &slice[n - 1], &slice[n - 2])
                .iter()
                .map(|d| d / gap)
                .collect()
        } else {
            let gap = nodes[xi + 1] - nodes[xi - 1];
            ambient_diff(&self.space, &slice[xi + 1], &slice[xi - 1])
                .iter()
                .map(|d| d / gap)
                .collect()
        }
    }

    pub fn space(&self) -> &ModelSpace {
        &self.space
    }

    pub fn time_grid(&self) -> &TimeGrid {
        &self.time_grid
    }

    pub fn param(&self) -> &ParamGrid {
        &self.param
    }

    pub fn points(&self) -> &Vec<Vec<Vec<f64>>> {
        &self.points
    }

    pub fn velocities(&self) -> &Vec<Vec<Vec<f64>>> {
        &self.velocities
    }

    pub fn velocity_source(&self) -> VelocitySource {
        self.velocity_source
    }

    pub fn worst_legendrian_defect(&self) -> f64 {
        self.worst_legendrian_defect
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Base;
    use std::f64::consts::TAU;

    /// 1-jet family of g_t(θ) = t cos(2πθ) with analytic tangents.
    pub fn jet_cos_family(nt: usize, nx: usize) -> SampledIsotopy {
        let space = ModelSpace::jet1(Base::Circle);
        let tg = TimeGrid::uniform(nt).unwrap();
        let pg = ParamGrid::uniform_circle(nx).unwrap();
        let mut points = Vec::with_capacity(nt);
        let mut vels = Vec::with_capacity(nt);
        let mut tans = Vec::with_capacity(nt);
        for &t in tg.nodes() {
            let mut ps = Vec::with_capacity(nx);
            let mut vs = Vec::with_capacity(nx);
            let mut xs = Vec::with_capacity(nx);
            for &x in pg.nodes() {
                let (sin, cos) = (TAU * x).sin_cos();
                ps.push(vec![x, -t * TAU * sin, t * cos]);
                vs.push(vec![0.0, -TAU * sin, cos]);
                xs.push(vec![1.0, -t * TAU * TAU * cos, -t * TAU * sin]);
            }
            points.push(ps);
            vels.push(vs);
            tans.push(xs);
        }
        SampledIsotopy::new(
            space,
            tg,
            pg,
            points,
            IsotopyOptions {
                velocities: Some(vels),
                x_tangents: Some(tans),
                legendrian_tol: None,
            },
        )
        .unwrap()
    }

    #[test]
    fn jet_family_validates_with_analytic_tangents() {
        let iso = jet_cos_family(11, 64);
        assert!(iso.worst_legendrian_defect() < 1e-12);
        assert_eq!(iso.velocity_source(), VelocitySource::Supplied);
    }

    #[test]
    fn violating_family_is_rejected_with_diagnostic() {
        let space = ModelSpace::jet1(Base::Circle);
        let tg = TimeGrid::uniform(3).unwrap();
        let pg = ParamGrid::uniform_circle(16).unwrap();
        // p-coordinate deliberately wrong: not the derivative of z
        let points: Vec<Vec<Vec<f64>>> = tg
            .nodes()
            .iter()
            .map(|_| {
                pg.nodes()
                    .iter()
                    .map(|&x| vec![x, 1.0, (TAU * x).cos()])
                    .collect()
            })
            .collect();
        let err = SampledIsotopy::new(space, tg, pg, points, IsotopyOptions::default())
            .unwrap_err();
        match err {
            Error::Legendrian { defect, .. } => assert!(defect > 1e-3),
            other => panic!("expected Legendrian error, got {other:?}"),
        }
    }

    #[test]
    fn fd_velocities_for_linear_motion_are_exact() {
        // Reeb push in the jet space: z increases linearly in t
        let space = ModelSpace::jet1(Base::Circle);
        let tg = TimeGrid::uniform(5).unwrap();
        let pg = ParamGrid::uniform_circle(16).unwrap();
        let points: Vec<Vec<Vec<f64>>> = tg
            .nodes()
            .iter()
            .map(|&t| pg.nodes().iter().map(|&x| vec![x, 0.0, t]).collect())
            .collect();
        let iso = SampledIsotopy::new(
            space,
            tg,
            pg,
            points,
            IsotopyOptions {
                legendrian_tol: Some(1e-10),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(iso.velocity_source(), VelocitySource::FiniteDifference);
        for slice in iso.velocities() {
            for v in slice {
                assert!((v[2] - 1.0).abs() < 1e-12);
                assert!(v[0].abs() < 1e-12 && v[1].abs() < 1e-12);
            }
        }
    }

    #[test]
    fn small_parameter_grid_rejected() {
        assert!(ParamGrid::uniform_circle(4).is_err());
    }
}
