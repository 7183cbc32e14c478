//! Model contact/symplectic spaces with hard-coded closed-form 1-forms.
//!
//! Four explicit models cover every construction in the laboratory:
//!
//! * `Jet1(B)` — the 1-jet space of a circle, interval or line, coordinates
//!   `(q, p, z)`, contact form `dz - p dq`, Reeb field `∂z`.
//! * `Contactization` — `ℝ/ℤ × ℂ` or `ℝ × ℂ`, coordinates `(θ, x, y)`,
//!   contact form `dθ - λ` with `λ = ½(x dy - y dx)`, Reeb field `∂θ`.
//! * `ProductContactization` — `Y₀ × SY₁` with `Y₀ ∈ {ℝ/ℤ, ℝ}`, form
//!   `dθ - λ₁` where `SY₁` is the punctured plane (`λ₁ = ½(u dv - v du)`) or
//!   the `(s, θ₁)` cylinder (`λ₁ = e^s dθ₁`); Reeb field `∂θ`, tangent to the
//!   fibers of the projection to `SY₁`.
//! * `SymplectizationRectangle` — `[0, log k] × [0, T]` with Liouville form
//!   `e^s dt` (a symplectic model; no Reeb field).
//!
//! Circle-valued coordinates are stored as plain reals to keep winding
//! information; reduce mod 1 only when comparing positions.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Base manifold selector for 1-jet spaces and circle factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Base {
    /// ℝ/ℤ with unit period.
    Circle,
    /// The unit interval [0, 1].
    Interval,
    /// The whole real line.
    Line,
}

/// Which symplectization model sits in the second factor of a product
/// contactization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymplectizationModel {
    /// ℂ∖{0} with λ₁ = ½(u dv - v du).
    PuncturedPlane,
    /// (s, θ₁) cylinder with λ₁ = e^s dθ₁.
    Cylinder,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ModelKind {
    Jet1(Base),
    /// θ-factor circle-valued (`true`) or line-valued (`false`).
    Contactization { circle: bool },
    ProductContactization {
        circle: bool,
        model: SymplectizationModel,
    },
    SymplectizationRectangle { log_k: f64, t_max: f64 },
}

/// A model space: the kind plus cached dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpace {
    pub kind: ModelKind,
}

/// A point of a 1-jet space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JetPoint {
    /// Base coordinate (radians-free: unit-period circle or interval coordinate).
    pub q: f64,
    /// Fiber slope.
    pub p: f64,
    /// Jet value.
    pub z: f64,
}

impl JetPoint {
    pub fn new(q: f64, p: f64, z: f64) -> Result<Self> {
        if !(q.is_finite() && p.is_finite() && z.is_finite()) {
            return Err(Error::argument("jet point entries must be finite"));
        }
        Ok(JetPoint { q, p, z })
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.q, self.p, self.z]
    }

    /// Base coordinate reduced mod 1 (comparison sites on circle bases).
    pub fn q_mod1(&self) -> f64 {
        self.q.rem_euclid(1.0)
    }
}

impl ModelSpace {
    pub fn jet1(base: Base) -> Self {
        ModelSpace {
            kind: ModelKind::Jet1(base),
        }
    }

    pub fn contactization(circle: bool) -> Self {
        ModelSpace {
            kind: ModelKind::Contactization { circle },
        }
    }

    pub fn product(circle: bool, model: SymplectizationModel) -> Self {
        ModelSpace {
            kind: ModelKind::ProductContactization { circle, model },
        }
    }

    pub fn rectangle(log_k: f64, t_max: f64) -> Self {
        ModelSpace {
            kind: ModelKind::SymplectizationRectangle { log_k, t_max },
        }
    }

    /// Ambient dimension of the model.
    pub fn dim(&self) -> usize {
        match self.kind {
            ModelKind::SymplectizationRectangle { .. } => 2,
            _ => 3,
        }
    }

    /// Evaluate the model 1-form at `point` on tangent vector `v`.
    ///
    /// Coordinate orders: `Jet1` uses `(q, p, z)`; `Contactization` uses
    /// `(θ, x, y)`; `ProductContactization` uses `(θ, u, v)` resp.
    /// `(θ, s, θ₁)`; the rectangle uses `(s, t)`.
    pub fn one_form(&self, point: &[f64], v: &[f64]) -> f64 {
        match self.kind {
            ModelKind::Jet1(_) => v[2] - point[1] * v[0],
            ModelKind::Contactization { .. } => {
                v[0] - 0.5 * (point[1] * v[2] - point[2] * v[1])
            }
            ModelKind::ProductContactization { model, .. } => match model {
                SymplectizationModel::PuncturedPlane => {
                    v[0] - 0.5 * (point[1] * v[2] - point[2] * v[1])
                }
                SymplectizationModel::Cylinder => v[0] - point[1].exp() * v[2],
            },
            ModelKind::SymplectizationRectangle { .. } => point[0].exp() * v[1],
        }
    }

    /// Evaluate the exterior derivative of the 1-form on a pair of tangent
    /// vectors.
    pub fn two_form(&self, point: &[f64], u: &[f64], w: &[f64]) -> f64 {
        let wedge = |i: usize, j: usize| u[i] * w[j] - u[j] * w[i];
        match self.kind {
            // d(dz - p dq) = dq ∧ dp
            ModelKind::Jet1(_) => wedge(0, 1),
            // d(dθ - λ) = -dx ∧ dy
            ModelKind::Contactization { .. } => -wedge(1, 2),
            ModelKind::ProductContactization { model, .. } => match model {
                SymplectizationModel::PuncturedPlane => -wedge(1, 2),
                // d(dθ - e^s dθ₁) = -e^s ds ∧ dθ₁
                SymplectizationModel::Cylinder => -point[1].exp() * wedge(1, 2),
            },
            // d(e^s dt) = e^s ds ∧ dt
            ModelKind::SymplectizationRectangle { .. } => point[0].exp() * wedge(0, 1),
        }
    }

    /// The Reeb direction at `point`, or `None` for the symplectic rectangle.
    pub fn reeb(&self, _point: &[f64]) -> Option<Vec<f64>> {
        match self.kind {
            ModelKind::Jet1(_) => Some(vec![0.0, 0.0, 1.0]),
            ModelKind::Contactization { .. } | ModelKind::ProductContactization { .. } => {
                Some(vec![1.0, 0.0, 0.0])
            }
            ModelKind::SymplectizationRectangle { .. } => None,
        }
    }

    /// Whether the first coordinate is circle-valued.
    pub fn first_coord_is_circle(&self) -> bool {
        match self.kind {
            ModelKind::Jet1(base) => base == Base::Circle,
            ModelKind::Contactization { circle } => circle,
            ModelKind::ProductContactization { circle, .. } => circle,
            ModelKind::SymplectizationRectangle { .. } => false,
        }
    }

    /// Spot-check α(R) = 1 and R ⌟ dα = 0 at a sample point against a basis
    /// of tangent directions. Returns the worst defect, 0 for the rectangle.
    pub fn reeb_defect(&self, point: &[f64]) -> f64 {
        let Some(r) = self.reeb(point) else {
            return 0.0;
        };
        let mut worst = (self.one_form(point, &r) - 1.0).abs();
        for d in 0..self.dim() {
            let mut e = vec![0.0; self.dim()];
            e[d] = 1.0;
            worst = worst.max(self.two_form(point, &r, &e).abs());
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_point(space: &ModelSpace, seed: u64) -> Vec<f64> {
        // cheap deterministic pseudo-random coordinates in sensible ranges
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = || {
            s ^= s >> 33;
            s = s.wrapping_mul(0xff51afd7ed558ccd);
            s ^= s >> 33;
            (s >> 11) as f64 / (1u64 << 53) as f64
        };
        match space.kind {
            ModelKind::SymplectizationRectangle { log_k, t_max } => {
                vec![next() * log_k, next() * t_max]
            }
            ModelKind::ProductContactization {
                model: SymplectizationModel::PuncturedPlane,
                ..
            } => {
                let r = 0.2 + next();
                let a = next() * std::f64::consts::TAU;
                vec![next() * 2.0 - 1.0, r * a.cos(), r * a.sin()]
            }
            _ => vec![next() * 2.0 - 1.0, next() * 2.0 - 1.0, next() * 2.0 - 1.0],
        }
    }

    fn all_models() -> Vec<ModelSpace> {
        vec![
            ModelSpace::jet1(Base::Circle),
            ModelSpace::jet1(Base::Interval),
            ModelSpace::jet1(Base::Line),
            ModelSpace::contactization(true),
            ModelSpace::contactization(false),
            ModelSpace::product(true, SymplectizationModel::PuncturedPlane),
            ModelSpace::product(false, SymplectizationModel::Cylinder),
            ModelSpace::rectangle((2.0f64).ln(), 1.0),
        ]
    }

    #[test]
    fn reeb_axioms_hold_at_random_points() {
        for space in all_models() {
            for k in 0..1000 {
                let p = sample_point(&space, k + 7);
                let defect = space.reeb_defect(&p);
                assert!(defect < 1e-10, "{:?} defect {defect:.3e}", space.kind);
            }
        }
    }

    #[test]
    fn one_forms_match_closed_forms() {
        // Jet1: dz - p dq
        let jet = ModelSpace::jet1(Base::Circle);
        let pt = [0.3, 2.0, -1.0];
        let v = [0.5, 7.0, 1.25];
        assert!((jet.one_form(&pt, &v) - (1.25 - 2.0 * 0.5)).abs() < 1e-15);
        // Contactization: dθ - ½(x dy - y dx)
        let q = ModelSpace::contactization(true);
        let pt = [0.0, 1.5, -0.5];
        let v = [2.0, 0.25, 4.0];
        let expect = 2.0 - 0.5 * (1.5 * 4.0 - (-0.5) * 0.25);
        assert!((q.one_form(&pt, &v) - expect).abs() < 1e-15);
        // Cylinder product: dθ - e^s dθ₁
        let c = ModelSpace::product(false, SymplectizationModel::Cylinder);
        let pt = [0.1, 0.7, 0.9];
        let v = [1.0, 0.0, 3.0];
        assert!((c.one_form(&pt, &v) - (1.0 - 0.7f64.exp() * 3.0)).abs() < 1e-15);
        // Rectangle: e^s dt
        let r = ModelSpace::rectangle(1.0, 1.0);
        let pt = [0.4, 0.2];
        let v = [5.0, 2.0];
        assert!((r.one_form(&pt, &v) - 0.4f64.exp() * 2.0).abs() < 1e-15);
    }

    #[test]
    fn jet_point_rejects_non_finite() {
        assert!(JetPoint::new(f64::NAN, 0.0, 0.0).is_err());
        let p = JetPoint::new(1.25, 0.0, 0.0).unwrap();
        assert!((p.q_mod1() - 0.25).abs() < 1e-15);
    }
}
