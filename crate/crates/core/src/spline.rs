//! Cubic spline interpolation (natural and periodic) on possibly
//! non-uniform knots.
//!
//! Splines back three things: loop geometry refinement in the planar module,
//! fiber-profile interpolation in the generating-function module (where the
//! per-segment quadratic derivative gives closed-form critical points), and
//! resampling under reparametrization.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct CubicSpline {
    knots: Vec<f64>,
    values: Vec<f64>,
    second: Vec<f64>,
    periodic: bool,
    period: f64,
}

/// Thomas algorithm for a tridiagonal system.
fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let m = diag[i] - sub[i] * c[i - 1];
        c[i] = if i < n - 1 { sup[i] / m } else { 0.0 };
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / m;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

/// Cyclic tridiagonal solve via Sherman-Morrison on the Thomas kernel.
fn solve_cyclic_tridiagonal(
    sub: &[f64],
    diag: &[f64],
    sup: &[f64],
    corner_lo: f64, // A[0][n-1]
    corner_hi: f64, // A[n-1][0]
    rhs: &[f64],
) -> Vec<f64> {
    let n = diag.len();
    let gamma = -diag[0];
    let mut dmod = diag.to_vec();
    dmod[0] -= gamma;
    dmod[n - 1] -= corner_lo * corner_hi / gamma;
    let x = solve_tridiagonal(sub, &dmod, sup, rhs);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = corner_lo;
    let z = solve_tridiagonal(sub, &dmod, sup, &u);
    let factor = (x[0] + corner_hi * x[n - 1] / gamma) / (1.0 + z[0] + corner_hi * z[n - 1] / gamma);
    x.iter().zip(&z).map(|(xi, zi)| xi - factor * zi).collect()
}

impl CubicSpline {
    /// Natural spline (zero second derivative at the ends).
    pub fn natural(knots: &[f64], values: &[f64]) -> Result<Self> {
        Self::check(knots, values)?;
        let n = knots.len();
        let mut second = vec![0.0; n];
        if n > 2 {
            let m = n - 2;
            let mut sub = vec![0.0; m];
            let mut diag = vec![0.0; m];
            let mut sup = vec![0.0; m];
            let mut rhs = vec![0.0; m];
            for i in 0..m {
                let hl = knots[i + 1] - knots[i];
                let hr = knots[i + 2] - knots[i + 1];
                sub[i] = hl / 6.0;
                diag[i] = (hl + hr) / 3.0;
                sup[i] = hr / 6.0;
                rhs[i] = (values[i + 2] - values[i + 1]) / hr - (values[i + 1] - values[i]) / hl;
            }
            let sol = solve_tridiagonal(&sub, &diag, &sup, &rhs);
            second[1..n - 1].copy_from_slice(&sol);
        }
        Ok(CubicSpline {
            knots: knots.to_vec(),
            values: values.to_vec(),
            second,
            periodic: false,
            period: 0.0,
        })
    }

    /// Periodic spline. `knots` and `values` describe one period; the last
    /// knot must NOT repeat the first, `period` closes the loop
    /// (`f(x + period) = f(x)`).
    pub fn periodic(knots: &[f64], values: &[f64], period: f64) -> Result<Self> {
        Self::check(knots, values)?;
        let n = knots.len();
        if !(period > knots[n - 1] - knots[0]) {
            return Err(Error::argument(format!(
                "periodic spline needs period > knot span, got period {period}"
            )));
        }
        // cyclic system over n unknowns M_0..M_{n-1}
        let h = |i: usize| -> f64 {
            if i + 1 < n {
                knots[i + 1] - knots[i]
            } else {
                period - (knots[n - 1] - knots[0])
            }
        };
        let y = |i: usize| values[i % n];
        let mut sub = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut sup = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        for i in 0..n {
            let hl = h((i + n - 1) % n);
            let hr = h(i);
            sub[i] = hl / 6.0;
            diag[i] = (hl + hr) / 3.0;
            sup[i] = hr / 6.0;
            let yl = y((i + n - 1) % n);
            let yr = y((i + 1) % n);
            rhs[i] = (yr - values[i]) / hr - (values[i] - yl) / hl;
        }
        let second = if n == 2 {
            // degenerate cyclic 2x2 system
            let a = diag[0];
            let b = sup[0] + sub[0];
            let det = a * a - b * b;
            vec![
                (rhs[0] * a - rhs[1] * b) / det,
                (rhs[1] * a - rhs[0] * b) / det,
            ]
        } else {
            solve_cyclic_tridiagonal(&sub, &diag, &sup, sub[0], sup[n - 1], &rhs)
        };
        Ok(CubicSpline {
            knots: knots.to_vec(),
            values: values.to_vec(),
            second,
            periodic: true,
            period,
        })
    }

    fn check(knots: &[f64], values: &[f64]) -> Result<()> {
        if knots.len() != values.len() {
            return Err(Error::argument("spline knots/values length mismatch"));
        }
        if knots.len() < 2 {
            return Err(Error::argument("spline needs >= 2 knots"));
        }
        for w in knots.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::argument("spline knots must be strictly increasing"));
            }
        }
        Ok(())
    }

    /// Locate the segment for `x` and return (index, left knot, step, local x).
    fn segment(&self, x: f64) -> (usize, f64, f64, f64) {
        let n = self.knots.len();
        if self.periodic {
            let x0 = self.knots[0];
            let mut u = (x - x0).rem_euclid(self.period) + x0;
            // guard against rem_euclid landing exactly on the right edge
            if u >= x0 + self.period {
                u = x0;
            }
            let i = match self
                .knots
                .binary_search_by(|k| k.partial_cmp(&u).unwrap())
            {
                Ok(i) => i,
                Err(i) => i.saturating_sub(1),
            };
            let i = i.min(n - 1);
            let h = if i + 1 < n {
                self.knots[i + 1] - self.knots[i]
            } else {
                self.period - (self.knots[n - 1] - self.knots[0])
            };
            (i, self.knots[i], h, u)
        } else {
            let i = match self
                .knots
                .binary_search_by(|k| k.partial_cmp(&x).unwrap())
            {
                Ok(i) => i.min(n - 2),
                Err(i) => i.saturating_sub(1).min(n - 2),
            };
            (i, self.knots[i], self.knots[i + 1] - self.knots[i], x)
        }
    }

    fn seg_data(&self, i: usize) -> (f64, f64, f64, f64) {
        let n = self.knots.len();
        let j = (i + 1) % n;
        (self.values[i], self.values[j], self.second[i], self.second[j])
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (i, xl, h, u) = self.segment(x);
        let (yl, yr, ml, mr) = self.seg_data(i);
        let a = (xl + h - u) / h;
        let b = (u - xl) / h;
        a * yl
            + b * yr
            + ((a * a * a - a) * ml + (b * b * b - b) * mr) * h * h / 6.0
    }

    pub fn deriv(&self, x: f64) -> f64 {
        let (i, xl, h, u) = self.segment(x);
        let (yl, yr, ml, mr) = self.seg_data(i);
        let a = (xl + h - u) / h;
        let b = (u - xl) / h;
        (yr - yl) / h - (3.0 * a * a - 1.0) * h * ml / 6.0 + (3.0 * b * b - 1.0) * h * mr / 6.0
    }

    pub fn second_deriv(&self, x: f64) -> f64 {
        let (i, xl, h, u) = self.segment(x);
        let (_, _, ml, mr) = self.seg_data(i);
        let a = (xl + h - u) / h;
        let b = (u - xl) / h;
        a * ml + b * mr
    }

    /// All roots of the first derivative inside the knot span (critical
    /// points of the interpolant). The derivative is quadratic per segment,
    /// so roots come from the quadratic formula.
    pub fn derivative_roots(&self) -> Vec<f64> {
        let n = self.knots.len();
        let segs = if self.periodic { n } else { n - 1 };
        let mut out = Vec::new();
        for i in 0..segs {
            let xl = self.knots[i];
            let h = if i + 1 < n {
                self.knots[i + 1] - self.knots[i]
            } else {
                self.period - (self.knots[n - 1] - self.knots[0])
            };
            let (yl, yr, ml, mr) = self.seg_data(i);
            // S'(xl + s*h) = A s^2 + B s + C on s ∈ [0,1], from expanding
            // (yr-yl)/h - h*ml/6*(3(1-s)^2 - 1) + h*mr/6*(3s^2 - 1)
            let a = 0.5 * h * (mr - ml);
            let b = h * ml;
            let c = (yr - yl) / h - h * (2.0 * ml + mr) / 6.0;
            let mut push = |s: f64| {
                if (0.0..1.0).contains(&s) {
                    out.push(xl + s * h);
                }
            };
            if a.abs() < 1e-14 * (b.abs() + 1.0) {
                if b.abs() > 0.0 {
                    push(-c / b);
                }
            } else {
                let disc = b * b - 4.0 * a * c;
                if disc >= 0.0 {
                    let sq = disc.sqrt();
                    push((-b - sq) / (2.0 * a));
                    push((-b + sq) / (2.0 * a));
                }
            }
        }
        out.sort_by(|p, q| p.partial_cmp(q).unwrap());
        out.dedup_by(|p, q| (*p - *q).abs() < 1e-12);
        out
    }
}
