//! Compactly supported smooth windows built from the bump
//! `exp(-1/(u(1-u)))` on `[0, 1]`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::quad::gauss::gauss_legendre;

const CELLS: usize = 256;

fn bump(u: f64) -> f64 {
    if u <= 0.0 || u >= 1.0 {
        0.0
    } else {
        (-1.0 / (u * (1.0 - u))).exp()
    }
}

struct StepTable {
    /// `cum[k] = ∫_0^{k/CELLS} bump`
    cum: Vec<f64>,
    total: f64,
}

fn step_table() -> &'static StepTable {
    static TABLE: OnceLock<StepTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let rule = gauss_legendre(16);
        let h = 1.0 / CELLS as f64;
        let mut cum = Vec::with_capacity(CELLS + 1);
        let mut acc = 0.0;
        cum.push(0.0);
        for k in 0..CELLS {
            acc += rule.integrate(k as f64 * h, (k + 1) as f64 * h, bump);
            cum.push(acc);
        }
        StepTable { total: acc, cum }
    })
}

/// Smooth monotone step: 0 at `u <= 0`, 1 at `u >= 1`, the normalized
/// antiderivative of the bump in between.
pub fn smooth_step(u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    if u >= 1.0 {
        return 1.0;
    }
    let t = step_table();
    let scaled = u * CELLS as f64;
    let k = (scaled as usize).min(CELLS - 1);
    let left = k as f64 / CELLS as f64;
    let partial = gauss_legendre(8).integrate(left, u, bump);
    (t.cum[k] + partial) / t.total
}

/// Derivative of [`smooth_step`].
pub fn smooth_step_derivative(u: f64) -> f64 {
    bump(u) / step_table().total
}

/// A window equal to 1 on `[a + 1/Δ, b - 1/Δ]`, vanishing outside `[a, b]`,
/// with smooth monotone transitions of width `1/Δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothWindow {
    a: f64,
    b: f64,
    delta: f64,
}

/// Validating constructor; `delta·(b - a) >= 4` leaves room for both
/// transitions and a plateau.
pub fn make_window(a: f64, b: f64, delta: f64) -> Result<SmoothWindow> {
    if !(a.is_finite() && b.is_finite() && delta.is_finite()) || a >= b || delta < 1.0 {
        return Err(Error::DegenerateSupport { a, b, delta });
    }
    if delta * (b - a) < 4.0 {
        return Err(Error::DegenerateSupport { a, b, delta });
    }
    Ok(SmoothWindow { a, b, delta })
}

impl SmoothWindow {
    pub fn support(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn sharpness(&self) -> f64 {
        self.delta
    }

    /// Interval on which the window equals 1.
    pub fn plateau(&self) -> (f64, f64) {
        (self.a + 1.0 / self.delta, self.b - 1.0 / self.delta)
    }

    /// Points where the window fails to be analytic; quadrature panels are
    /// aligned to these.
    pub fn breakpoints(&self) -> [f64; 4] {
        let (l, r) = self.plateau();
        [self.a, l, r, self.b]
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.a || x >= self.b {
            return 0.0;
        }
        let (l, r) = self.plateau();
        if x < l {
            smooth_step((x - self.a) * self.delta)
        } else if x > r {
            smooth_step((self.b - x) * self.delta)
        } else {
            1.0
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        if x <= self.a || x >= self.b {
            return 0.0;
        }
        let (l, r) = self.plateau();
        if x < l {
            self.delta * smooth_step_derivative((x - self.a) * self.delta)
        } else if x > r {
            -self.delta * smooth_step_derivative((self.b - x) * self.delta)
        } else {
            0.0
        }
    }

    /// Total variation; a rise to 1 and a fall back to 0.
    pub fn total_variation(&self) -> f64 {
        2.0
    }

    /// `∫ W`, exact up to rounding: each transition contributes half its width.
    pub fn integral(&self) -> f64 {
        self.b - self.a - 1.0 / self.delta
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateau_and_support() {
        let w = make_window(1.0, 2.0, 8.0).unwrap();
        assert_eq!(w.eval(1.5), 1.0);
        assert_eq!(w.eval(1.0), 0.0);
        assert_eq!(w.eval(2.0), 0.0);
        assert_eq!(w.eval(0.5), 0.0);
        assert!(matches!(make_window(1.0, 2.0, 3.0), Err(Error::DegenerateSupport { .. })));
        assert!(make_window(2.0, 1.0, 8.0).is_err());
    }

    #[test]
    fn step_is_symmetric_and_monotone() {
        let mut prev = 0.0;
        for k in 0..=1000 {
            let u = k as f64 / 1000.0;
            let s = smooth_step(u);
            assert!(s >= prev - 1e-16);
            assert!((s + smooth_step(1.0 - u) - 1.0).abs() < 1e-14, "u={u}");
            prev = s;
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let w = make_window(1.0, 2.0, 8.0).unwrap();
        let h = 1e-6;
        let mut max_d: f64 = 0.0;
        for k in 1..2000 {
            let x = 1.0 + k as f64 / 2000.0;
            let fd = (w.eval(x + h) - w.eval(x - h)) / (2.0 * h);
            assert!((fd - w.derivative(x)).abs() < 1e-5 * 8.0, "x={x}");
            max_d = max_d.max(fd.abs());
        }
        // the bump step has slope at most ~2.25 per unit of u
        assert!(max_d > 8.0 && max_d < 3.0 * 8.0, "{max_d}");
    }

    #[test]
    fn integral_matches_quadrature() {
        let w = make_window(0.5, 3.0, 5.0).unwrap();
        let rule = gauss_legendre(16);
        let bp = w.breakpoints();
        let mut q = 0.0;
        for i in 0..3 {
            let n = 64;
            let h = (bp[i + 1] - bp[i]) / n as f64;
            for j in 0..n {
                let lo = bp[i] + j as f64 * h;
                q += rule.integrate(lo, lo + h, |x| w.eval(x));
            }
        }
        assert!((q - w.integral()).abs() < 1e-13, "{q} vs {}", w.integral());
    }
}
