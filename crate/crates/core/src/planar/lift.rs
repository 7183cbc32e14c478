//! Legendrian lifts of planar loops into the contactization ℝ/ℤ × ℂ
//! (or ℝ × ℂ).
//!
//! An area-`d` loop `j` lifts to `(f, j)` with `f' = j*λ`; the lift is
//! circle-valued exactly when `d` is an integer (the degree).

use crate::error::{Error, Result};
use crate::planar::loops::{liouville, ImmersedLoop};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LiftTarget {
    /// f: ℝ/ℤ → ℝ/ℤ; requires integer signed area.
    CircleValued,
    /// f: ℝ/ℤ → ℝ; always exists.
    LineValued,
}

/// A lift `(f, j)` of a planar loop. `f` samples are stored unwrapped (real
/// values); the degree records the winding of a circle-valued lift.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LegendrianLift {
    base: ImmersedLoop,
    f: Vec<f64>,
    /// f' samples, equal to λ(j') pointwise by construction.
    f_prime: Vec<f64>,
    target: LiftTarget,
    degree: Option<i64>,
}

/// Tolerance on `signed_area - round(signed_area)` for circle-valued lifts.
pub const INTEGER_AREA_TOL: f64 = 1e-6;

/// Lift a loop: `f(x) = f0 + ∫_0^x j*λ`, cumulative trapezoid over the
/// parameter circle. The stored `f'` samples are the exact integrand values,
/// so the discrete Legendrian condition `f' = λ(j')` holds by construction
/// and the closure defect equals `signed_area - degree`.
pub fn legendrian_lift(loop_: &ImmersedLoop, target: LiftTarget, f0: f64) -> Result<LegendrianLift> {
    let area = loop_.signed_area();
    let degree = match target {
        LiftTarget::CircleValued => {
            let rounded = area.round();
            if (area - rounded).abs() > INTEGER_AREA_TOL {
                return Err(Error::Lift(format!(
                    "circle-valued lift needs integer area; signed area {area} has defect {:.3e}",
                    (area - rounded).abs()
                )));
            }
            Some(rounded as i64)
        }
        LiftTarget::LineValued => None,
    };
    let n = loop_.len();
    let mut integrand = Vec::with_capacity(n);
    for i in 0..n {
        integrand.push(liouville(loop_.point(i), loop_.tangent(i)));
    }
    let mut f = Vec::with_capacity(n);
    let mut acc = f0;
    f.push(acc);
    for i in 1..n {
        let h = loop_.params()[i] - loop_.params()[i - 1];
        acc += 0.5 * h * (integrand[i] + integrand[i - 1]);
        f.push(acc);
    }
    Ok(LegendrianLift {
        base: loop_.clone(),
        f,
        f_prime: integrand,
        target,
        degree,
    })
}

impl LegendrianLift {
    pub fn base(&self) -> &ImmersedLoop {
        &self.base
    }

    pub fn f(&self) -> &[f64] {
        &self.f
    }

    pub fn f_prime(&self) -> &[f64] {
        &self.f_prime
    }

    pub fn target(&self) -> LiftTarget {
        self.target
    }

    pub fn degree(&self) -> Option<i64> {
        self.degree
    }

    /// Worst discrepancy between a *difference* derivative of the stored `f`
    /// samples and `λ(j')`; quantifies the discrete Legendrian condition
    /// without relying on the by-construction `f'` samples.
    pub fn legendrian_defect(&self) -> f64 {
        let n = self.f.len();
        let params = self.base.params();
        let mut worst = 0.0f64;
        for i in 0..n {
            let (prev, next) = ((i + n - 1) % n, (i + 1) % n);
            let mut gap = params[next] - params[prev];
            if next <= prev {
                gap += 1.0;
            }
            let mut df = self.f[next] - self.f[prev];
            // unwrap across the seam: one period advances f by the area
            if next < prev || next == prev {
                df += self.base.signed_area();
            }
            worst = worst.max((df / gap - self.f_prime[i]).abs());
        }
        worst
    }

    /// Interpolated f value at parameter `x` (piecewise by trapezoid
    /// consistency with the stored integrand).
    pub fn f_at(&self, x: f64) -> f64 {
        let params = self.base.params();
        let n = params.len();
        let area = self.base.signed_area();
        let mut u = (x - params[0]).rem_euclid(1.0) + params[0];
        if u >= params[0] + 1.0 {
            u = params[0];
        }
        let mut wraps = ((x - params[0]) - (u - params[0])) / 1.0;
        wraps = wraps.round();
        let i = match params.binary_search_by(|k| k.partial_cmp(&u).unwrap()) {
            Ok(i) => i,
            Err(i) => i.saturating_sub(1),
        }
        .min(n - 1);
        let (x0, f0, g0) = (params[i], self.f[i], self.f_prime[i]);
        let (x1, f1, g1) = if i + 1 < n {
            (params[i + 1], self.f[i + 1], self.f_prime[i + 1])
        } else {
            (params[0] + 1.0, self.f[0] + area, self.f_prime[0])
        };
        let h = x1 - x0;
        let s = ((u - x0) / h).clamp(0.0, 1.0);
        // cubic Hermite using the known slopes g = f'
        let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
        let h10 = s * (1.0 - s) * (1.0 - s);
        let h01 = s * s * (3.0 - 2.0 * s);
        let h11 = s * s * (s - 1.0);
        h00 * f0 + h10 * h * g0 + h01 * f1 + h11 * h * g1 + wraps * area
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn area_one_circle_lift_has_degree_one_and_linear_f() {
        let r = 1.0 / std::f64::consts::PI.sqrt();
        let c = ImmersedLoop::circle([0.0, 0.0], r, 128).unwrap();
        let lift = legendrian_lift(&c, LiftTarget::CircleValued, 0.0).unwrap();
        assert_eq!(lift.degree(), Some(1));
        // centered circle: j*λ is the constant form, f(x) = x
        for (i, &x) in c.params().iter().enumerate() {
            assert!((lift.f()[i] - x).abs() < 1e-9, "f({x}) = {}", lift.f()[i]);
        }
        assert!(lift.legendrian_defect() < 1e-6);
    }

    #[test]
    fn line_valued_always_succeeds() {
        let c = ImmersedLoop::circle([0.4, 0.0], 0.37, 64).unwrap();
        let lift = legendrian_lift(&c, LiftTarget::LineValued, 0.25).unwrap();
        assert_eq!(lift.degree(), None);
        assert!((lift.f()[0] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn non_integer_area_rejected_for_circle_target() {
        let c = ImmersedLoop::circle([0.0, 0.0], 0.5, 64).unwrap();
        let err = legendrian_lift(&c, LiftTarget::CircleValued, 0.0).unwrap_err();
        match err {
            Error::Lift(msg) => assert!(msg.contains("defect")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn double_traversed_circle_has_degree_two() {
        use std::f64::consts::TAU;
        // traverse a radius-r circle twice: area 2·πr²; pick πr² = 1
        let r = 1.0 / std::f64::consts::PI.sqrt();
        let n = 256;
        let params: Vec<f64> = (0..n).map(|i| i as f64 / n as f64).collect();
        let points = params
            .iter()
            .map(|&x| [r * (2.0 * TAU * x).cos(), r * (2.0 * TAU * x).sin()])
            .collect();
        let tangents = params
            .iter()
            .map(|&x| {
                [
                    -r * 2.0 * TAU * (2.0 * TAU * x).sin(),
                    r * 2.0 * TAU * (2.0 * TAU * x).cos(),
                ]
            })
            .collect();
        let loop2 = ImmersedLoop::with_tangents(params, points, Some(tangents)).unwrap();
        let lift = legendrian_lift(&loop2, LiftTarget::CircleValued, 0.0).unwrap();
        assert_eq!(lift.degree(), Some(2));
    }
}
