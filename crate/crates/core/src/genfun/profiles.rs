//! Reusable fiber profiles for building linear/quadratic-at-infinity
//! families without spurious splice extrema.
//!
//! The trick throughout: splice the *derivative*, not the value. Writing
//! `K'(η) = ℓ' + c(η)(core'(η) - ℓ')` with an even plateau weight `c` keeps
//! `K'` a convex combination of two same-sign slopes in the transition band,
//! so no critical points appear there; integrating recovers `K` with the
//! core shape on the plateau and exactly the declared tail outside, provided
//! the band is balanced so the integral of the correction vanishes.

use crate::error::{Error, Result};

/// Cubic smoothstep clamped to [0, 1].
pub fn smoothstep(u: f64) -> f64 {
    let u = u.clamp(0.0, 1.0);
    u * u * (3.0 - 2.0 * u)
}

/// Even plateau weight: 1 for |u| ≤ a, 0 for |u| ≥ b, smoothstep between.
pub fn plateau(u: f64, a: f64, b: f64) -> f64 {
    1.0 - smoothstep((u.abs() - a) / (b - a))
}

/// 5-point Gauss-Legendre on [a, b] (exact through degree 9, ample for the
/// piecewise-polynomial integrands here).
pub fn gauss5(a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
    const X: [f64; 5] = [
        -0.906179845938664,
        -0.538469310105683,
        0.0,
        0.538469310105683,
        0.906179845938664,
    ];
    const W: [f64; 5] = [
        0.236926885056189,
        0.478628670499366,
        0.568888888888889,
        0.478628670499366,
        0.236926885056189,
    ];
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    X.iter()
        .zip(&W)
        .map(|(&x, &w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Composite Gauss over subintervals (handles the plateau breakpoints).
fn integrate_piecewise(a: f64, b: f64, breaks: &[f64], f: &dyn Fn(f64) -> f64) -> f64 {
    let mut pts = vec![a];
    for &p in breaks {
        if p > a && p < b {
            pts.push(p);
        }
    }
    pts.push(b);
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.windows(2).map(|w| gauss5(w[0], w[1], f)).sum()
}

/// `K(η) = scale · (η³/3 - κ η)` on the plateau, tail `ℓ(η) = scale · η`,
/// built by the derivative splice
/// `K'(η) = scale · (1 + c(η)(η² - κ - 1))`.
///
/// The outer band edge `b` is solved so the correction integrates to zero,
/// which makes the plateau expression exact (no additive drift) and the tail
/// pure. Valid for κ > a² - 3 with κ < a² (critical points ±√κ inside the
/// plateau); κ ≤ 0 gives a profile with no critical points at all (the fold
/// has annihilated).
#[derive(Debug, Clone, Copy)]
pub struct FoldSplice {
    pub kappa: f64,
    pub scale: f64,
    pub a: f64,
    pub b: f64,
}

impl FoldSplice {
    pub const DEFAULT_INNER: f64 = 1.5;

    pub fn new(kappa: f64, scale: f64) -> Result<Self> {
        Self::with_inner(kappa, scale, Self::DEFAULT_INNER)
    }

    pub fn with_inner(kappa: f64, scale: f64, a: f64) -> Result<Self> {
        if scale == 0.0 {
            return Err(Error::argument("fold scale must be nonzero"));
        }
        if !(kappa < a * a) {
            return Err(Error::argument(format!(
                "fold needs κ < a² so critical points stay inside the plateau (κ={kappa}, a={a})"
            )));
        }
        // Solve ∫_0^b c(u)(u² - κ - 1) du = 0 for b.
        // The plateau part contributes a³/3 - (κ+1)a (negative for the κ
        // range of interest); the band contributes positively and grows
        // without bound in b, so bisection brackets cleanly.
        let corr = |b: f64| -> f64 {
            let f = |u: f64| plateau(u, a, b) * (u * u - kappa - 1.0);
            integrate_piecewise(0.0, b, &[a], &f)
        };
        let base = a * a * a / 3.0 - (kappa + 1.0) * a;
        if base >= 0.0 {
            return Err(Error::argument(format!(
                "fold plateau too wide for κ={kappa}: no balancing band exists"
            )));
        }
        let mut lo = a;
        let mut hi = a + 0.5;
        while corr(hi) < 0.0 {
            hi += 0.5;
            if hi > a + 100.0 {
                return Err(Error::Computation("fold band solve diverged".into()));
            }
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if corr(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(FoldSplice {
            kappa,
            scale,
            a,
            b: 0.5 * (lo + hi),
        })
    }

    pub fn deriv(&self, eta: f64) -> f64 {
        self.scale * (1.0 + plateau(eta, self.a, self.b) * (eta * eta - self.kappa - 1.0))
    }

    pub fn eval(&self, eta: f64) -> f64 {
        let (a, b, kappa) = (self.a, self.b, self.kappa);
        if eta.abs() <= a {
            // exact on the plateau thanks to the band balance
            return self.scale * (eta * eta * eta / 3.0 - kappa * eta);
        }
        let f = |u: f64| plateau(u, a, b) * (u * u - kappa - 1.0);
        if eta > 0.0 {
            if eta >= b {
                return self.scale * eta;
            }
            // K(η) = ℓ(η) - scale·∫_η^b c(u)(u²-κ-1) du
            self.scale * (eta - integrate_piecewise(eta, b, &[a], &f))
        } else {
            if eta <= -b {
                return self.scale * eta;
            }
            self.scale * (eta + integrate_piecewise(-b, eta, &[-a], &f))
        }
    }

    /// Fiber coordinate range safely covering tail and window.
    pub fn support_radius(&self) -> f64 {
        self.b + 1.0
    }
}

/// Double-well profile with quadratic tail: `K' = 2η + c(η)(4η³ - 4η + g)`,
/// so the plateau carries `4η³ - 2η + g` (the derivative of
/// `η⁴ - η² + gη`) and the tail is `η²` plus an x-offset — the odd part of
/// the correction integrates to zero, and the even part contributes the
/// allowed base-dependent offset `g·∫c`.
#[derive(Debug, Clone, Copy)]
pub struct DoubleWellSplice {
    pub a: f64,
    pub b: f64,
}

impl Default for DoubleWellSplice {
    fn default() -> Self {
        DoubleWellSplice { a: 1.6, b: 2.6 }
    }
}

impl DoubleWellSplice {
    pub fn deriv(&self, eta: f64, g: f64) -> f64 {
        2.0 * eta + plateau(eta, self.a, self.b) * (4.0 * eta * eta * eta - 4.0 * eta + g)
    }

    pub fn eval(&self, eta: f64, g: f64) -> f64 {
        let (a, b) = (self.a, self.b);
        let f = |u: f64| plateau(u, a, b) * (4.0 * u * u * u - 4.0 * u + g);
        if eta <= -b {
            return eta * eta;
        }
        eta * eta + integrate_piecewise(-b, eta.min(b), &[-a, a], &f)
            + if eta > b { 0.0 } else { 0.0 }
    }

    pub fn support_radius(&self) -> f64 {
        self.b + 1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fold_plateau_is_exact_cubic_and_tail_pure() {
        let p = FoldSplice::new(0.7, 1.0).unwrap();
        for eta in [-1.2f64, -0.3, 0.0, 0.5, 1.4] {
            let expect = eta * eta * eta / 3.0 - 0.7 * eta;
            assert!((p.eval(eta) - expect).abs() < 1e-12, "at {eta}");
        }
        let far = p.b + 0.5;
        assert!((p.eval(far) - far).abs() < 1e-12);
        assert!((p.eval(-far) - (-far)).abs() < 1e-12);
        // continuity across the band
        for eta in [p.a + 0.01, p.b - 0.01, -p.a - 0.37] {
            let h = 1e-6;
            let fd = (p.eval(eta + h) - p.eval(eta - h)) / (2.0 * h);
            assert!((fd - p.deriv(eta)).abs() < 1e-6, "at {eta}");
        }
    }

    #[test]
    fn fold_derivative_positive_off_plateau() {
        for kappa in [-0.2, 0.0, 0.5, 1.0] {
            let p = FoldSplice::new(kappa, 1.0).unwrap();
            let mut eta = p.a;
            while eta < p.b + 1.0 {
                assert!(p.deriv(eta) > 0.0, "κ={kappa}, η={eta}");
                assert!(p.deriv(-eta) > 0.0, "κ={kappa}, η={-eta}");
                eta += 0.01;
            }
        }
    }

    #[test]
    fn negative_kappa_has_no_critical_points() {
        let p = FoldSplice::new(-0.15, 1.0).unwrap();
        let mut eta = -p.b - 0.5;
        while eta < p.b + 0.5 {
            assert!(p.deriv(eta) > 0.0, "η={eta}: {}", p.deriv(eta));
            eta += 0.005;
        }
    }

    #[test]
    fn double_well_plateau_and_tail() {
        let dw = DoubleWellSplice::default();
        let g = 0.3;
        // plateau: derivative must be the double-well derivative
        for eta in [-1.0f64, -0.2, 0.0, 0.8, 1.5] {
            let expect = 4.0 * eta * eta * eta - 2.0 * eta + g;
            assert!((dw.deriv(eta, g) - expect).abs() < 1e-12, "at {eta}");
        }
        // tail: K - η² constant in η past the band
        let far1 = dw.eval(dw.b + 0.3, g) - (dw.b + 0.3) * (dw.b + 0.3);
        let far2 = dw.eval(dw.b + 1.0, g) - (dw.b + 1.0) * (dw.b + 1.0);
        assert!((far1 - far2).abs() < 1e-12);
        let left = dw.eval(-dw.b - 0.5, g) - (dw.b + 0.5) * (dw.b + 0.5);
        assert!(left.abs() < 1e-12);
    }
}
