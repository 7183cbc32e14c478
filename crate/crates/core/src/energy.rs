//! Contact Hamiltonians and the length / oscillation energies of isotopies,
//! plus the flux-primitive ("Lagrangian") picture for planar loop families.
//!
//! For an isotopy `i_t` the contact Hamiltonian is `h_t(x) = α(∂_t i_t(x))`.
//! Length integrates `max_x |h_t|`, oscillation integrates
//! `max_x h_t - min_x h_t`; both are parametrization-independent because a
//! reparametrization only relabels `x` (the tangential component of the
//! motion is killed by the contact form on a Legendrian).
//!
//! For an exact family of planar loops `j_t` the same oscillation is carried
//! by the flux primitive `F_t` with `∂_x F_t = ∂_t j × ∂_x j`; `F_t` and the
//! lifted contact Hamiltonian differ by a constant in `x`, so their
//! oscillations agree.

use crate::error::{Error, Result};
use crate::grid::{integrate_1d, TimeGrid};
use crate::isotopy::{ambient_diff, IsotopyOptions, ParamGrid, SampledIsotopy};
use crate::planar::lift::{legendrian_lift, LiftTarget};
use crate::planar::loops::{cross, liouville, LoopFamily};
use crate::space::ModelSpace;
use crate::spline::CubicSpline;
use serde::{Deserialize, Serialize};

/// Sampled contact Hamiltonian of an isotopy with cached per-time extrema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianTrace {
    grid: TimeGrid,
    h: Vec<Vec<f64>>,
    max_x: Vec<f64>,
    min_x: Vec<f64>,
}

impl HamiltonianTrace {
    pub fn new(grid: TimeGrid, h: Vec<Vec<f64>>) -> Result<Self> {
        if h.len() != grid.len() {
            return Err(Error::argument("trace length does not match time grid"));
        }
        if h.iter().any(|s| s.is_empty()) {
            return Err(Error::argument("trace has an empty time slice"));
        }
        let max_x: Vec<f64> = h
            .iter()
            .map(|s| s.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
            .collect();
        let min_x: Vec<f64> = h
            .iter()
            .map(|s| s.iter().cloned().fold(f64::INFINITY, f64::min))
            .collect();
        Ok(HamiltonianTrace {
            grid,
            h,
            max_x,
            min_x,
        })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn values(&self) -> &Vec<Vec<f64>> {
        &self.h
    }

    pub fn max_x(&self) -> &[f64] {
        &self.max_x
    }

    pub fn min_x(&self) -> &[f64] {
        &self.min_x
    }

    /// max_x h_t - min_x h_t at time index `ti`.
    pub fn osc_at(&self, ti: usize) -> f64 {
        self.max_x[ti] - self.min_x[ti]
    }
}

/// Length and oscillation with the per-time integrand traces kept for
/// reporting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub length: f64,
    pub oscillation: f64,
    pub per_time_max_abs: Vec<f64>,
    pub per_time_osc: Vec<f64>,
}

impl EnergyReport {
    fn new(length: f64, oscillation: f64, per_time_max_abs: Vec<f64>, per_time_osc: Vec<f64>) -> Self {
        debug_assert!(length >= 0.0 && oscillation >= 0.0);
        debug_assert!(oscillation <= 2.0 * length + 1e-12);
        EnergyReport {
            length,
            oscillation,
            per_time_max_abs,
            per_time_osc,
        }
    }
}

/// `h_t(x) = α(∂_t i_t(x))` over the isotopy's samples.
pub fn contact_hamiltonian(iso: &SampledIsotopy) -> Result<HamiltonianTrace> {
    let space = iso.space();
    let mut h = Vec::with_capacity(iso.time_grid().len());
    for (slice, vels) in iso.points().iter().zip(iso.velocities()) {
        h.push(
            slice
                .iter()
                .zip(vels)
                .map(|(p, v)| space.one_form(p, v))
                .collect(),
        );
    }
    HamiltonianTrace::new(iso.time_grid().clone(), h)
}

/// Integrate the trace extrema: length `= ∫ max_x |h|`, oscillation
/// `= ∫ (max_x h - min_x h)`.
pub fn energy_of(trace: &HamiltonianTrace) -> Result<EnergyReport> {
    let max_abs: Vec<f64> = trace
        .values()
        .iter()
        .map(|s| s.iter().fold(0.0f64, |acc, v| acc.max(v.abs())))
        .collect();
    let osc: Vec<f64> = (0..trace.grid().len()).map(|i| trace.osc_at(i)).collect();
    let length = integrate_1d(&max_abs, trace.grid())?;
    let oscillation = integrate_1d(&osc, trace.grid())?;
    Ok(EnergyReport::new(length, oscillation, max_abs, osc))
}

/// A family of parameter diffeomorphisms `σ_t`.
pub struct ParamDiffeoFamily<'a> {
    map: Box<dyn Fn(f64, f64) -> f64 + 'a>,
    /// When true, `σ_t` does not depend on `t`, and supplied velocities can
    /// be transported instead of re-differenced.
    pub static_in_time: bool,
}

impl<'a> ParamDiffeoFamily<'a> {
    pub fn new(map: impl Fn(f64, f64) -> f64 + 'a, static_in_time: bool) -> Self {
        ParamDiffeoFamily {
            map: Box::new(map),
            static_in_time,
        }
    }

    pub fn apply(&self, t: f64, x: f64) -> f64 {
        (self.map)(t, x)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ReparamOptions {
    /// Legendrian tolerance for the resampled isotopy. Resampling validates
    /// with difference tangents, an O(h²) check, so this cannot default to
    /// the analytic-tangent 1e-8.
    pub legendrian_tol: f64,
}

impl Default for ReparamOptions {
    fn default() -> Self {
        ReparamOptions {
            legendrian_tol: 1e-3,
        }
    }
}

/// Resample `j_t = i_t ∘ σ_t`.
///
/// For a time-independent σ the supplied velocities are transported
/// (`∂_t(i∘σ) = (∂_t i)∘σ`); otherwise velocities are recomputed by time
/// differences, which picks up the tangential term — harmless for the
/// energies since the contact form kills it.
pub fn reparametrize(
    iso: &SampledIsotopy,
    sigma: &ParamDiffeoFamily,
    opts: ReparamOptions,
) -> Result<SampledIsotopy> {
    let pg = iso.param();
    let tg = iso.time_grid();
    let nx = pg.len();
    let circle = pg.is_circle();

    // validate bijectivity on the sample grid
    let mut sigma_vals: Vec<Vec<f64>> = Vec::with_capacity(tg.len());
    for &t in tg.nodes() {
        let vals: Vec<f64> = pg.nodes().iter().map(|&x| sigma.apply(t, x)).collect();
        for w in vals.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::argument(
                    "σ must be strictly increasing in the parameter",
                ));
            }
        }
        if circle {
            let wrap = sigma.apply(t, pg.nodes()[0] + 1.0) - vals[0];
            if (wrap - 1.0).abs() > 1e-9 {
                return Err(Error::argument(format!(
                    "circle σ must satisfy σ(x+1) = σ(x)+1, got period image {wrap}"
                )));
            }
        } else {
            let a = pg.nodes()[0];
            let b = *pg.nodes().last().unwrap();
            if (sigma.apply(t, a) - a).abs() > 1e-9 || (sigma.apply(t, b) - b).abs() > 1e-9 {
                return Err(Error::argument("interval σ must fix the endpoints"));
            }
        }
        sigma_vals.push(vals);
    }

    let space = *iso.space();
    let dim = space.dim();
    let mut new_points = vec![vec![vec![0.0; dim]; nx]; tg.len()];
    let mut new_velocities = if sigma.static_in_time {
        Some(vec![vec![vec![0.0; dim]; nx]; tg.len()])
    } else {
        None
    };

    for ti in 0..tg.len() {
        let slice = &iso.points()[ti];
        // per-coordinate interpolants; circle-valued coordinates are
        // unwrapped into (periodic part) + winding·x
        for d in 0..dim {
            let samples: Vec<f64> = slice.iter().map(|p| p[d]).collect();
            let (interp, winding) = build_coordinate_interp(&space, pg, slice, d, &samples)?;
            for xi in 0..nx {
                let sx = sigma_vals[ti][xi];
                new_points[ti][xi][d] = interp.eval(sx) + winding * sx;
            }
            if let Some(nv) = new_velocities.as_mut() {
                let vsamples: Vec<f64> = iso.velocities()[ti].iter().map(|v| v[d]).collect();
                let vinterp = if circle {
                    CubicSpline::periodic(pg.nodes(), &vsamples, 1.0)?
                } else {
                    CubicSpline::natural(pg.nodes(), &vsamples)?
                };
                for xi in 0..nx {
                    nv[ti][xi][d] = vinterp.eval(sigma_vals[ti][xi]);
                }
            }
        }
    }

    SampledIsotopy::new(
        space,
        tg.clone(),
        pg.clone(),
        new_points,
        IsotopyOptions {
            velocities: new_velocities,
            x_tangents: None,
            legendrian_tol: Some(opts.legendrian_tol),
        },
    )
}

/// Spline a coordinate over the parameter grid. For circle grids a
/// circle-valued ambient coordinate winds; the winding number is split off
/// so the remainder is periodic.
fn build_coordinate_interp(
    space: &ModelSpace,
    pg: &ParamGrid,
    slice: &[Vec<f64>],
    d: usize,
    samples: &[f64],
) -> Result<(CubicSpline, f64)> {
    if !pg.is_circle() {
        return Ok((CubicSpline::natural(pg.nodes(), samples)?, 0.0));
    }
    let n = samples.len();
    // unwrap via nearest-representative steps, then measure the winding
    let mut unwrapped = Vec::with_capacity(n);
    unwrapped.push(samples[0]);
    for i in 1..n {
        let step = ambient_diff(space, &slice[i], &slice[i - 1])[d];
        let prev = unwrapped[i - 1];
        unwrapped.push(prev + step);
    }
    let seam = ambient_diff(space, &slice[0], &slice[n - 1])[d];
    let total = unwrapped[n - 1] + seam - unwrapped[0];
    let winding = total.round();
    let residual: Vec<f64> = unwrapped
        .iter()
        .zip(pg.nodes())
        .map(|(u, x)| u - winding * x)
        .collect();
    Ok((CubicSpline::periodic(pg.nodes(), &residual, 1.0)?, winding))
}

// ---------------------------------------------------------------------------
// Flux primitives of exact planar loop families
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub struct ExactnessOptions {
    /// Allowed closedness defect of the flux integrand per time step.
    pub area_drift_tol: f64,
}

impl Default for ExactnessOptions {
    fn default() -> Self {
        ExactnessOptions {
            area_drift_tol: 1e-7,
        }
    }
}

/// Flux primitive `F_t(x) = ∫_0^x ∂_t j × ∂_x j dx'`, normalized to vanish
/// at the first parameter sample. The full-loop integral (the closedness
/// defect, equal to d(area)/dt) must vanish within tolerance; the residual
/// is distributed linearly to keep `F_t` periodic.
pub fn lagrangian_primitive(family: &LoopFamily, opts: ExactnessOptions) -> Result<Vec<Vec<f64>>> {
    let nt = family.time_grid().len();
    let nx = family.sample_count();
    let mut out = Vec::with_capacity(nt);
    for ti in 0..nt {
        let lp = &family.loops()[ti];
        let mut integrand = Vec::with_capacity(nx);
        for xi in 0..nx {
            integrand.push(cross(family.velocity(ti, xi), lp.tangent(xi)));
        }
        // cumulative trapezoid around the circle, including the seam step
        let mut f = Vec::with_capacity(nx);
        let mut acc = 0.0;
        f.push(0.0);
        for xi in 1..nx {
            let h = lp.params()[xi] - lp.params()[xi - 1];
            acc += 0.5 * h * (integrand[xi] + integrand[xi - 1]);
            f.push(acc);
        }
        let seam = lp.step_after(nx - 1);
        let defect = acc + 0.5 * seam * (integrand[0] + integrand[nx - 1]);
        if defect.abs() > opts.area_drift_tol {
            return Err(Error::Exactness {
                message: format!("family is not exact at time index {ti}"),
                defect,
            });
        }
        let x0 = lp.params()[0];
        for (xi, v) in f.iter_mut().enumerate() {
            *v -= defect * (lp.params()[xi] - x0);
        }
        out.push(f);
    }
    Ok(out)
}

/// `∫ (max_x F_t - min_x F_t) dt` for an exact family.
pub fn lagrangian_osc_energy(family: &LoopFamily, opts: ExactnessOptions) -> Result<f64> {
    let f = lagrangian_primitive(family, opts)?;
    let osc: Vec<f64> = f
        .iter()
        .map(|slice| {
            let max = slice.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let min = slice.iter().cloned().fold(f64::INFINITY, f64::min);
            max - min
        })
        .collect();
    integrate_1d(&osc, family.time_grid())
}

/// Apply the contracting conjugation `z ↦ √c z` to a family. The flux
/// integrand scales by exactly `c` pointwise, so the oscillation energy of
/// the result is `c` times the original.
pub fn conjugate_by_contraction(family: &LoopFamily, c: f64) -> Result<LoopFamily> {
    family.contracted(c)
}

/// Oscillation energy of the Legendrian lift family of an exact loop family
/// (line-valued lifts, basepoint value 0 at every time). The per-time lift
/// uses analytic tangents, so the lifted isotopy validates at the strict
/// tolerance; velocities are recomputed by time differences.
pub fn legendrian_osc_energy_of_family(family: &LoopFamily) -> Result<EnergyReport> {
    let nt = family.time_grid().len();
    let nx = family.sample_count();
    let space = ModelSpace::contactization(false);
    let mut points = Vec::with_capacity(nt);
    let mut tangents = Vec::with_capacity(nt);
    for ti in 0..nt {
        let lp = &family.loops()[ti];
        let lift = legendrian_lift(lp, LiftTarget::LineValued, 0.0)?;
        let mut ps = Vec::with_capacity(nx);
        let mut ts = Vec::with_capacity(nx);
        for xi in 0..nx {
            let p = lp.point(xi);
            let tan = lp.tangent(xi);
            ps.push(vec![lift.f()[xi], p[0], p[1]]);
            // f' = λ(j') exactly, so α vanishes on this tangent
            ts.push(vec![liouville(p, tan), tan[0], tan[1]]);
        }
        points.push(ps);
        tangents.push(ts);
    }
    let pg = ParamGrid::from_nodes(family.loops()[0].params().to_vec(), true)?;
    let iso = SampledIsotopy::new(
        space,
        family.time_grid().clone(),
        pg,
        points,
        IsotopyOptions {
            velocities: None,
            x_tangents: Some(tangents),
            legendrian_tol: Some(1e-7),
        },
    )?;
    energy_of(&contact_hamiltonian(&iso)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isotopy::ParamGrid;
    use crate::planar::loops::ImmersedLoop;
    use crate::space::Base;
    use std::f64::consts::TAU;

    fn jet_cos_family(nt: usize, nx: usize) -> SampledIsotopy {
        let space = ModelSpace::jet1(Base::Circle);
        let tg = TimeGrid::uniform(nt).unwrap();
        let pg = ParamGrid::uniform_circle(nx).unwrap();
        let mut points = Vec::new();
        let mut vels = Vec::new();
        let mut tans = Vec::new();
        for &t in tg.nodes() {
            let mut ps = Vec::new();
            let mut vs = Vec::new();
            let mut xs = Vec::new();
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

    /// Reeb push of a radial-segment Legendrian in the contactization:
    /// λ vanishes on radial directions, so (t, segment) is Legendrian and
    /// the push has h ≡ α(∂θ) = 1.
    fn reeb_push(space: ModelSpace, nt: usize, nx: usize) -> SampledIsotopy {
        let tg = TimeGrid::uniform(nt).unwrap();
        let pg = ParamGrid::uniform_circle(nx).unwrap();
        let mut points = Vec::new();
        let mut vels = Vec::new();
        let mut tans = Vec::new();
        for &t in tg.nodes() {
            let mut ps = Vec::new();
            let mut vs = Vec::new();
            let mut xs = Vec::new();
            for xi in 0..nx {
                let u = 0.3 + 0.4 * (xi as f64 / nx as f64);
                ps.push(vec![t, u, 0.5 * u]);
                vs.push(vec![1.0, 0.0, 0.0]);
                xs.push(vec![0.0, 1.0, 0.5]);
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
                legendrian_tol: Some(1e-9),
            },
        )
        .unwrap()
    }

    #[test]
    fn reeb_push_has_unit_hamiltonian() {
        let iso = reeb_push(ModelSpace::contactization(false), 9, 16);
        let trace = contact_hamiltonian(&iso).unwrap();
        for slice in trace.values() {
            for &v in slice {
                assert!((v - 1.0).abs() < 1e-12);
            }
        }
        let report = energy_of(&trace).unwrap();
        assert!((report.length - 1.0).abs() < 1e-12);
        assert!(report.oscillation.abs() < 1e-12);
    }

    #[test]
    fn stationary_isotopy_has_zero_hamiltonian() {
        let iso = jet_cos_family(5, 32);
        // freeze: replace velocities with zeros via a stationary family
        let space = ModelSpace::jet1(Base::Circle);
        let tg = TimeGrid::uniform(5).unwrap();
        let pg = ParamGrid::uniform_circle(32).unwrap();
        let slice = iso.points()[2].clone();
        let points: Vec<_> = (0..5).map(|_| slice.clone()).collect();
        // difference tangents on 32 samples carry an O(h^2) defect
        let frozen = SampledIsotopy::new(
            space,
            tg,
            pg,
            points,
            IsotopyOptions {
                legendrian_tol: Some(5e-2),
                ..Default::default()
            },
        )
        .unwrap();
        let trace = contact_hamiltonian(&frozen).unwrap();
        let report = energy_of(&trace).unwrap();
        assert!(report.length < 1e-12);
        assert!(report.oscillation < 1e-12);
    }

    #[test]
    fn jet_family_hamiltonian_is_cos() {
        let iso = jet_cos_family(11, 128);
        let trace = contact_hamiltonian(&iso).unwrap();
        for slice in trace.values() {
            for (xi, &v) in slice.iter().enumerate() {
                let x = iso.param().nodes()[xi];
                assert!((v - (TAU * x).cos()).abs() < 1e-6, "h({x}) = {v}");
            }
        }
        let report = energy_of(&trace).unwrap();
        assert!((report.length - 1.0).abs() < 1e-4, "{}", report.length);
        assert!((report.oscillation - 2.0).abs() < 1e-4, "{}", report.oscillation);
    }

    #[test]
    fn identity_reparametrization_is_identity() {
        let iso = jet_cos_family(7, 256);
        let sigma = ParamDiffeoFamily::new(|_, x| x, true);
        let re = reparametrize(&iso, &sigma, ReparamOptions::default()).unwrap();
        for (a, b) in iso.points().iter().zip(re.points()) {
            for (p, q) in a.iter().zip(b) {
                for (u, v) in p.iter().zip(q) {
                    assert!((u - v).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn static_shift_preserves_energy_closely() {
        // 0.3 * 160 = 48 grid steps: the shift relabels the sample set, so
        // the per-slice extrema are exactly invariant
        let iso = jet_cos_family(9, 160);
        let base = energy_of(&contact_hamiltonian(&iso).unwrap()).unwrap();
        let sigma = ParamDiffeoFamily::new(|_, x| x + 0.3, true);
        let re = reparametrize(
            &iso,
            &sigma,
            ReparamOptions {
                legendrian_tol: 5e-3,
            },
        )
        .unwrap();
        let shifted = energy_of(&contact_hamiltonian(&re).unwrap()).unwrap();
        assert!((base.oscillation - shifted.oscillation).abs() < 1e-6);
        assert!((base.length - shifted.length).abs() < 1e-6);
    }

    #[test]
    fn time_dependent_reparametrization_preserves_energy() {
        let iso = jet_cos_family(201, 256);
        let base = energy_of(&contact_hamiltonian(&iso).unwrap()).unwrap();
        let sigma =
            ParamDiffeoFamily::new(|t, x| x + 0.1 * (TAU * x).sin() * t, false);
        let re = reparametrize(
            &iso,
            &sigma,
            ReparamOptions {
                legendrian_tol: 5e-3,
            },
        )
        .unwrap();
        let rep = energy_of(&contact_hamiltonian(&re).unwrap()).unwrap();
        assert!(
            (base.oscillation - rep.oscillation).abs() < 1e-3,
            "osc {} vs {}",
            base.oscillation,
            rep.oscillation
        );
        assert!(
            (base.length - rep.length).abs() < 1e-3,
            "len {} vs {}",
            base.length,
            rep.length
        );
    }

    #[test]
    fn non_bijective_sigma_rejected() {
        let iso = jet_cos_family(5, 64);
        let sigma = ParamDiffeoFamily::new(|_, x| x - 2.0 * (TAU * x).sin(), false);
        assert!(matches!(
            reparametrize(&iso, &sigma, ReparamOptions::default()),
            Err(Error::Argument(_))
        ));
    }

    // -------------------------------------------------------------------
    // flux primitives
    // -------------------------------------------------------------------

    fn rigid_rotation_family(nt: usize, nx: usize) -> LoopFamily {
        let tg = TimeGrid::uniform(nt).unwrap();
        let omega = 1.3;
        let mut loops = Vec::new();
        let mut vels = Vec::new();
        for &t in tg.nodes() {
            let phase = omega * t;
            let params: Vec<f64> = (0..nx).map(|i| i as f64 / nx as f64).collect();
            let mut pts = Vec::new();
            let mut tans = Vec::new();
            let mut vs = Vec::new();
            for &x in &params {
                let a = TAU * x + phase;
                let r = 0.5;
                pts.push([r * a.cos(), r * a.sin()]);
                tans.push([-r * TAU * a.sin(), r * TAU * a.cos()]);
                vs.push([-r * omega * a.sin(), r * omega * a.cos()]);
            }
            loops.push(ImmersedLoop::with_tangents(params, pts, Some(tans)).unwrap());
            vels.push(vs);
        }
        LoopFamily::new(tg, loops, Some(vels)).unwrap()
    }

    #[test]
    fn stationary_family_has_zero_primitive() {
        let tg = TimeGrid::uniform(5).unwrap();
        let c = ImmersedLoop::circle([0.0, 0.0], 0.4, 64).unwrap();
        let loops = vec![c; 5];
        let fam = LoopFamily::new(tg, loops, None).unwrap();
        let f = lagrangian_primitive(&fam, ExactnessOptions::default()).unwrap();
        for slice in &f {
            for &v in slice {
                assert!(v.abs() < 1e-12);
            }
        }
        assert!(lagrangian_osc_energy(&fam, ExactnessOptions::default()).unwrap() < 1e-12);
    }

    #[test]
    fn rigid_rotation_primitive_constant_in_x() {
        let fam = rigid_rotation_family(9, 128);
        let f = lagrangian_primitive(&fam, ExactnessOptions::default()).unwrap();
        for slice in &f {
            let max = slice.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let min = slice.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(max - min < 1e-10, "osc {}", max - min);
        }
        let e = lagrangian_osc_energy(&fam, ExactnessOptions::default()).unwrap();
        assert!(e < 1e-10);
    }

    #[test]
    fn non_exact_family_rejected_with_defect() {
        // a growing circle is not area preserving
        let tg = TimeGrid::uniform(5).unwrap();
        let loops: Vec<ImmersedLoop> = tg
            .nodes()
            .iter()
            .map(|&t| ImmersedLoop::circle([0.0, 0.0], 0.4 + 0.1 * t, 64).unwrap())
            .collect();
        let fam = LoopFamily::new(tg, loops, None).unwrap();
        match lagrangian_primitive(&fam, ExactnessOptions::default()) {
            Err(Error::Exactness { defect, .. }) => assert!(defect.abs() > 1e-3),
            other => panic!("expected exactness error, got {other:?}"),
        }
    }

    #[test]
    fn contraction_scales_energy_by_c_exactly() {
        // translation family: exact, nonzero oscillation
        let tg = TimeGrid::uniform(21).unwrap();
        let mut loops = Vec::new();
        let mut vels = Vec::new();
        for &t in tg.nodes() {
            let c = ImmersedLoop::circle([0.3 * t, 0.0], 0.4, 96).unwrap();
            vels.push(vec![[0.3, 0.0]; 96]);
            loops.push(c);
        }
        let fam = LoopFamily::new(tg, loops, Some(vels)).unwrap();
        let e = lagrangian_osc_energy(&fam, ExactnessOptions::default()).unwrap();
        assert!(e > 0.1);
        for c in [1.0, 0.25, 0.01] {
            let contracted = conjugate_by_contraction(&fam, c).unwrap();
            let ec = lagrangian_osc_energy(&contracted, ExactnessOptions::default()).unwrap();
            assert!(
                (ec / e - c).abs() < 1e-6 * c,
                "ratio {} for c {}",
                ec / e,
                c
            );
        }
        assert!(conjugate_by_contraction(&fam, -1.0).is_err());
    }

    #[test]
    fn lagrangian_equals_legendrian_oscillation() {
        let fam = rigid_rotation_family(41, 128);
        let lag = lagrangian_osc_energy(&fam, ExactnessOptions::default()).unwrap();
        let leg = legendrian_osc_energy_of_family(&fam).unwrap().oscillation;
        assert!((lag - leg).abs() < 1e-4, "lag {lag} leg {leg}");

        // translation family has genuinely nonzero oscillation
        let tg = TimeGrid::uniform(41).unwrap();
        let mut loops = Vec::new();
        let mut vels = Vec::new();
        for &t in tg.nodes() {
            loops.push(ImmersedLoop::circle([0.25 * t, -0.1 * t], 0.4, 128).unwrap());
            vels.push(vec![[0.25, -0.1]; 128]);
        }
        let fam = LoopFamily::new(tg, loops, Some(vels)).unwrap();
        let lag = lagrangian_osc_energy(&fam, ExactnessOptions::default()).unwrap();
        let leg = legendrian_osc_energy_of_family(&fam).unwrap().oscillation;
        assert!(lag > 0.1);
        assert!((lag - leg).abs() < 1e-4, "lag {lag} leg {leg}");
    }

    #[test]
    fn oscillation_ignores_constant_shift_length_does_not() {
        let grid = TimeGrid::uniform(7).unwrap();
        let h: Vec<Vec<f64>> = (0..7)
            .map(|i| (0..16).map(|j| ((i + j) as f64 * 0.37).sin()).collect())
            .collect();
        let t0 = HamiltonianTrace::new(grid.clone(), h.clone()).unwrap();
        let shifted: Vec<Vec<f64>> = h
            .iter()
            .map(|s| s.iter().map(|v| v + 5.0).collect())
            .collect();
        let t1 = HamiltonianTrace::new(grid, shifted).unwrap();
        let e0 = energy_of(&t0).unwrap();
        let e1 = energy_of(&t1).unwrap();
        assert!((e0.oscillation - e1.oscillation).abs() < 1e-12);
        assert!(e1.length > e0.length + 1.0);
    }
}
