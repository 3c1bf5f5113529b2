//! Frequency-adaptive panel quadrature for oscillatory integrands.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::gauss::gauss_legendre;
use crate::reduce::sum_complex;

/// Default target for unit-level checks.
pub const UNIT_TOL: f64 = 1e-10;
/// Default target for harness runs.
pub const HARNESS_TOL: f64 = 1e-8;
/// Panel budget.
pub const MAX_PANELS: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadOptions {
    /// Absolute tolerance for the Richardson pair check.
    pub tol: f64,
    /// Largest panel width; `None` uses `(b - a)/32`.
    pub base_h: Option<f64>,
    /// Points where the amplitude is not analytic; panels end on them.
    pub breakpoints: Vec<f64>,
    pub max_panels: u64,
    /// Number of panel halvings tried before giving up.
    pub max_refinements: u32,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            tol: UNIT_TOL,
            base_h: None,
            breakpoints: Vec::new(),
            max_panels: MAX_PANELS,
            max_refinements: 5,
        }
    }
}

impl QuadOptions {
    pub fn with_tol(tol: f64) -> Self {
        QuadOptions { tol, ..Default::default() }
    }

    pub fn breakpoints(mut self, points: &[f64]) -> Self {
        self.breakpoints.extend_from_slice(points);
        self
    }

    pub fn base_h(mut self, h: f64) -> Self {
        self.base_h = Some(h);
        self
    }
}

/// Splits `[a, b]` into panels no wider than a quarter of the local period
/// `1/freq(y)` (`freq` in cycles per unit) and no wider than `base_h`.
fn panels<Fr: Fn(f64) -> f64>(freq: &Fr, a: f64, b: f64, opts: &QuadOptions) -> Result<Vec<(f64, f64)>> {
    let base_h = opts.base_h.unwrap_or((b - a) / 32.0);
    let mut cuts: Vec<f64> = opts.breakpoints.iter().copied().filter(|&x| x > a && x < b).collect();
    cuts.push(a);
    cuts.push(b);
    cuts.sort_by(|x, y| x.total_cmp(y));
    cuts.dedup();
    let width = |y: f64| {
        let f = freq(y).abs();
        if f > 0.0 {
            base_h.min(0.25 / f)
        } else {
            base_h
        }
    };
    let mut out = Vec::new();
    for seg in cuts.windows(2) {
        let (s, e) = (seg[0], seg[1]);
        let mut y = s;
        while y < e {
            let mut h = width(y);
            h = h.min(width((y + h).min(e)));
            h = h.min(width((y + 0.5 * h).min(e)));
            if !(h > 0.0) || !h.is_finite() {
                return Err(Error::BudgetExceeded { limit: opts.max_panels });
            }
            let next = if y + h >= e - 1e-12 * (e - s) { e } else { y + h };
            out.push((y, next));
            if out.len() as u64 > opts.max_panels {
                return Err(Error::BudgetExceeded { limit: opts.max_panels });
            }
            y = next;
        }
    }
    Ok(out)
}

fn apply_rule<F: Fn(f64) -> Complex64 + Sync>(f: &F, panels: &[(f64, f64)], split: usize) -> Complex64 {
    let rule = gauss_legendre(16);
    sum_complex(0..panels.len() * split, |k| {
        let (lo, hi) = panels[k / split];
        let h = (hi - lo) / split as f64;
        let a = lo + (k % split) as f64 * h;
        let c = a + 0.5 * h;
        let half = 0.5 * h;
        let mut s = Complex64::new(0.0, 0.0);
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            s += *w * f(c + half * x);
        }
        s * half
    })
}

/// `∫_a^b f` for a complex integrand whose local oscillation frequency (in
/// cycles per unit length) is bounded by `freq`.
pub fn integrate_resolved<F, Fr>(f: F, freq: Fr, interval: (f64, f64), opts: &QuadOptions) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64 + Sync,
    Fr: Fn(f64) -> f64,
{
    let (a, b) = interval;
    if !(b > a) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let ps = panels(&freq, a, b, opts)?;
    let mut prev = apply_rule(&f, &ps, 1);
    let mut change = f64::INFINITY;
    for r in 1..=opts.max_refinements {
        let split = 1usize << r;
        if (ps.len() as u64).saturating_mul(split as u64) > opts.max_panels {
            return Err(Error::BudgetExceeded { limit: opts.max_panels });
        }
        let next = apply_rule(&f, &ps, split);
        change = (next - prev).norm();
        if change <= opts.tol {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NotConverged { change, target: opts.tol })
}

/// `∫_a^b amplitude(y) e^{i·phase(y)} dy`; `dphase` is `phase′`.
pub fn oscillatory_integral<A, P, D>(
    amplitude: A,
    phase: P,
    dphase: D,
    interval: (f64, f64),
    opts: &QuadOptions,
) -> Result<Complex64>
where
    A: Fn(f64) -> f64 + Sync,
    P: Fn(f64) -> f64 + Sync,
    D: Fn(f64) -> f64,
{
    oscillatory_integral_complex(|y| Complex64::new(amplitude(y), 0.0), phase, dphase, interval, opts)
}

/// As [`oscillatory_integral`] with a complex amplitude.
pub fn oscillatory_integral_complex<A, P, D>(
    amplitude: A,
    phase: P,
    dphase: D,
    interval: (f64, f64),
    opts: &QuadOptions,
) -> Result<Complex64>
where
    A: Fn(f64) -> Complex64 + Sync,
    P: Fn(f64) -> f64 + Sync,
    D: Fn(f64) -> f64,
{
    let two_pi = 2.0 * std::f64::consts::PI;
    integrate_resolved(
        |y| {
            let a = amplitude(y);
            if a == Complex64::new(0.0, 0.0) {
                return a;
            }
            a * Complex64::from_polar(1.0, phase(y))
        },
        |y| dphase(y) / two_pi,
        interval,
        opts,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::window::make_window;

    #[test]
    fn panels_respect_breakpoints_and_frequency() {
        let opts = QuadOptions::default().breakpoints(&[1.25, 1.75]);
        let ps = panels(&|_| 100.0, 1.0, 2.0, &opts).unwrap();
        assert!(ps.iter().all(|(a, b)| b - a <= 0.0025 + 1e-12));
        assert!(ps.iter().any(|&(_, b)| b == 1.25));
        assert!(ps.iter().any(|&(_, b)| b == 1.75));
        assert_eq!(ps.first().unwrap().0, 1.0);
        assert_eq!(ps.last().unwrap().1, 2.0);
    }

    #[test]
    fn budget_is_enforced() {
        let opts = QuadOptions { max_panels: 1000, ..Default::default() };
        let r = oscillatory_integral(|_| 1.0, |y| 1e6 * y, |_| 1e6, (0.0, 1.0), &opts);
        assert_eq!(r, Err(Error::BudgetExceeded { limit: 1000 }));
    }

    #[test]
    fn zero_phase_integrates_the_window() {
        let w = make_window(1.0, 2.0, 8.0).unwrap();
        let opts = QuadOptions::default().breakpoints(&w.breakpoints());
        let v = oscillatory_integral(|y| w.eval(y), |_| 0.0, |_| 0.0, (1.0, 2.0), &opts).unwrap();
        assert!(v.im.abs() <= 1e-14);
        assert!((v.re - w.integral()).abs() < 1e-12);
    }

    #[test]
    fn polynomial_phase_exact_case() {
        // ∫_0^1 e^{i k y} = (e^{ik} - 1)/(ik)
        let k = 1234.5;
        let v = oscillatory_integral(|_| 1.0, |y| k * y, |_| k, (0.0, 1.0), &QuadOptions::default()).unwrap();
        let i = Complex64::i();
        let exact = ((i * k).exp() - 1.0) / (i * k);
        assert!((v - exact).norm() < 1e-12);
    }
}
