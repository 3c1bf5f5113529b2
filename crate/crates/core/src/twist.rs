//! Twisted coefficient sums `Σ λ_f(n)λ_g(n) e(tφ(n/X)) V(n/X)` and the
//! harnesses built on them: sharp cuts, bound constants over `(t, X)` grids,
//! Dirichlet polynomials, the degree-five gamma factor, `L(1, f×g)` and the
//! partial sums of `1 ⊞ (f×g)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::forms::{convolve_gl5, FourierTable};
use crate::quad::{ln_gamma, make_window, oscillatory_integral, PhaseSpec, QuadOptions, SmoothWindow};
use crate::reduce::{sum_complex, sum_real, Neumaier};

/// `e(x) = e^{2πix}`.
#[inline]
fn e(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

/// Largest admissible window sharpness at frequency `t`, `t^{1/2}/log t`.
pub fn sharpness_limit(t: f64) -> f64 {
    let t = t.abs();
    if t <= std::f64::consts::E {
        return 0.0;
    }
    t.sqrt() / t.ln()
}

/// `true` when `t^{8/5} < X < t^{12/5}`.
pub fn in_theorem_regime(t: f64, x: f64) -> bool {
    let t = t.abs();
    t > 1.0 && x > t.powf(1.6) && x < t.powf(2.4)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistSpec {
    pub phase: PhaseSpec,
    pub t: f64,
    pub x: f64,
    pub window: SmoothWindow,
    /// Window sharpness within `t^{1/2}/log t`.
    pub sharpness_ok: bool,
    /// `t^{8/5} < X < t^{12/5}`.
    pub in_regime: bool,
}

impl TwistSpec {
    /// Any finite `t` is accepted (`t = 0` included); the sharpness and regime
    /// conditions are recorded, not enforced.
    pub fn new(phase: PhaseSpec, t: f64, x: f64, window: SmoothWindow) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::InvalidArgument(format!("t must be finite, got {t}")));
        }
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::InvalidArgument(format!("X must be positive, got {x}")));
        }
        Ok(TwistSpec {
            phase,
            t,
            x,
            window,
            sharpness_ok: window.sharpness() <= sharpness_limit(t),
            in_regime: in_theorem_regime(t, x),
        })
    }

    /// Integers `n` with `n/X` inside the open support of the window.
    fn range(&self) -> std::ops::Range<usize> {
        let (a, b) = self.window.support();
        let lo = ((a * self.x).floor() + 1.0).max(1.0) as usize;
        let hi = (b * self.x).ceil().max(0.0) as usize;
        lo..hi.max(lo)
    }

    #[inline]
    fn term(&self, f: &FourierTable, g: &FourierTable, n: usize) -> Complex64 {
        let u = n as f64 / self.x;
        let v = self.window.eval(u);
        if v == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        f.lambda(n) * g.lambda(n) * v * e(self.t * self.phase.eval(u))
    }
}

fn require_both(f: &FourierTable, g: &FourierTable, n: usize) -> Result<()> {
    f.require(n)?;
    g.require(n)
}

/// `S(X, t) = Σ λ_f(n)λ_g(n) e(tφ(n/X)) V(n/X)`, summed over `supp(V)·X`.
pub fn eval_twist_sum(f: &FourierTable, g: &FourierTable, spec: &TwistSpec) -> Result<Complex64> {
    let r = spec.range();
    if r.is_empty() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    require_both(f, g, r.end - 1)?;
    Ok(sum_complex(r, |n| spec.term(f, g, n)))
}

/// Plain left-to-right loop over the same terms; the reference for
/// [`eval_twist_sum`].
pub fn eval_twist_sum_sequential(f: &FourierTable, g: &FourierTable, spec: &TwistSpec) -> Result<Complex64> {
    let r = spec.range();
    if r.is_empty() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    require_both(f, g, r.end - 1)?;
    let mut s = Complex64::new(0.0, 0.0);
    for n in r {
        s += spec.term(f, g, n);
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SharpReport {
    /// `Σ_{X<n≤2X} λ_f(n)λ_g(n) e(tφ(n/X))`.
    pub sharp: Complex64,
    /// Same sum weighted by a window equal to 1 on `[1+1/Δ, 2−1/Δ]`.
    pub smoothed: Complex64,
    pub delta: f64,
    /// `Δ` was raised to 4 because `t^{1/2}/log t` is too small for a window.
    pub delta_clamped: bool,
    /// `Σ |λ_f(n)λ_g(n)|` over the two edge bands of width `X/Δ`.
    pub edge_bound: f64,
}

/// Sharp-cut sum over `X < n ≤ 2X` together with its smoothed proxy.
pub fn eval_sharp_sum(f: &FourierTable, g: &FourierTable, phase: PhaseSpec, t: f64, x: f64) -> Result<SharpReport> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::InvalidArgument(format!("X must be positive, got {x}")));
    }
    let natural = sharpness_limit(t);
    let delta = natural.max(4.0);
    let window = make_window(1.0, 2.0, delta)?;
    let lo = x.floor() as usize + 1;
    let hi = (2.0 * x).floor() as usize;
    if hi < lo {
        return Ok(SharpReport {
            sharp: Complex64::new(0.0, 0.0),
            smoothed: Complex64::new(0.0, 0.0),
            delta,
            delta_clamped: natural < 4.0,
            edge_bound: 0.0,
        });
    }
    require_both(f, g, hi)?;
    let term = |n: usize| f.lambda(n) * g.lambda(n) * e(t * phase.eval(n as f64 / x));
    let sharp = sum_complex(lo..hi + 1, term);
    let smoothed = sum_complex(lo..hi + 1, |n| {
        let v = window.eval(n as f64 / x);
        if v == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            v * term(n)
        }
    });
    let (left, right) = window.plateau();
    let edge_bound = sum_real(lo..hi + 1, |n| {
        let u = n as f64 / x;
        if u < left || u > right {
            (f.lambda(n) * g.lambda(n)).abs()
        } else {
            0.0
        }
    });
    Ok(SharpReport { sharp, smoothed, delta, delta_clamped: natural < 4.0, edge_bound })
}

/// The `(t, X)` grid `t ∈ {64, 128, 256, 512}`, `X = t^{8/5 + 4k/30}` for
/// `k = 1..=5`, strictly inside `(t^{8/5}, t^{12/5})`.
pub fn default_harness_grid() -> Vec<(f64, f64)> {
    let mut grid = Vec::new();
    for t in [64.0f64, 128.0, 256.0, 512.0] {
        for k in 1..=5 {
            grid.push((t, t.powf(1.6 + 0.8 * k as f64 / 6.0).round()));
        }
    }
    grid
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarnessPoint {
    pub t: f64,
    pub x: f64,
    pub sum: Complex64,
    /// `|S|/(t^{2/5}X^{3/4})`.
    pub c_star: f64,
    /// `C*` with the `X^ε` loss realized as `log² X`.
    pub c_star_log: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarnessReport {
    pub points: Vec<HarnessPoint>,
    /// Grid points outside `t^{8/5} < X < t^{12/5}`, with the reason.
    pub skipped: Vec<((f64, f64), Error)>,
}

impl HarnessReport {
    pub fn max_c_star(&self) -> f64 {
        self.points.iter().map(|p| p.c_star).fold(0.0, f64::max)
    }

    /// `(t, geometric mean of X, 90th percentile of C*)` for each `t`, in
    /// increasing `t`.
    pub fn percentiles(&self) -> Vec<(f64, f64, f64)> {
        let mut ts: Vec<f64> = self.points.iter().map(|p| p.t).collect();
        ts.sort_by(f64::total_cmp);
        ts.dedup();
        ts.into_iter()
            .map(|t| {
                let pts: Vec<&HarnessPoint> = self.points.iter().filter(|p| p.t == t).collect();
                let xg = (pts.iter().map(|p| p.x.ln()).sum::<f64>() / pts.len() as f64).exp();
                let mut c: Vec<f64> = pts.iter().map(|p| p.c_star).collect();
                (t, xg, percentile(&mut c, 0.9))
            })
            .collect()
    }

    /// Growth of the 90th-percentile `C*` per doubling of `X`, between
    /// consecutive `t`: `log(c₂/c₁)/log(X₂/X₁)`, so `0.05` means a factor
    /// `X^{0.05}`.
    pub fn growth_exponents(&self) -> Vec<f64> {
        self.percentiles()
            .windows(2)
            .map(|w| (w[1].2 / w[0].2).ln() / (w[1].1 / w[0].1).ln())
            .collect()
    }
}

/// Linear-interpolated percentile (`q ∈ [0, 1]`) of a non-empty sample.
pub fn percentile(values: &mut [f64], q: f64) -> f64 {
    values.sort_by(f64::total_cmp);
    let pos = q * (values.len() - 1) as f64;
    let i = pos.floor() as usize;
    let j = (i + 1).min(values.len() - 1);
    values[i] + (pos - i as f64) * (values[j] - values[i])
}

/// Direct sums over a `(t, X)` grid; points outside the regime are skipped
/// and listed.
pub fn theorem1_harness(
    f: &FourierTable,
    g: &FourierTable,
    phase: PhaseSpec,
    grid: &[(f64, f64)],
    window: SmoothWindow,
) -> Result<HarnessReport> {
    let mut points = Vec::new();
    let mut skipped = Vec::new();
    for &(t, x) in grid {
        let spec = TwistSpec::new(phase, t, x, window)?;
        if !spec.in_regime {
            let lo = t.abs().powf(1.6);
            let hi = t.abs().powf(2.4);
            skipped.push(((t, x), Error::RegimeViolated(format!("X = {x} outside ({lo:.0}, {hi:.0}) for t = {t}"))));
            continue;
        }
        let sum = eval_twist_sum(f, g, &spec)?;
        let c_star = sum.norm() / (t.powf(0.4) * x.powf(0.75));
        points.push(HarnessPoint { t, x, sum, c_star, c_star_log: c_star / x.ln().powi(2) });
    }
    Ok(HarnessReport { points, skipped })
}

/// `D(N, t) = Σ λ_f(n)λ_g(n) n^{-it} V(n/N)` for `N ≤ t² log² t`.
pub fn dirichlet_polynomial(f: &FourierTable, g: &FourierTable, n_len: f64, t: f64, window: SmoothWindow) -> Result<Complex64> {
    let t_abs = t.abs();
    let limit = t_abs * t_abs * t_abs.ln().max(1.0).powi(2);
    if !(n_len > 0.0) || n_len > limit {
        return Err(Error::RegimeViolated(format!("N = {n_len} not in (0, t² log² t] = (0, {limit:.0}]")));
    }
    let (a, b) = window.support();
    let lo = ((a * n_len).floor() + 1.0).max(1.0) as usize;
    let hi = (b * n_len).ceil() as usize;
    if hi <= lo {
        return Ok(Complex64::new(0.0, 0.0));
    }
    require_both(f, g, hi - 1)?;
    Ok(sum_complex(lo..hi, |n| {
        let v = window.eval(n as f64 / n_len);
        if v == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        f.lambda(n) * g.lambda(n) * v * Complex64::from_polar(1.0, -t * (n as f64).ln())
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DyadicReport {
    pub t: f64,
    /// `(N, |D(N,t)|/√N)` for `N = 1, 2, 4, … ≤ t²`.
    pub points: Vec<(f64, f64)>,
    pub sup: f64,
    /// `sup / (t^{9/10} log² t)`.
    pub normalized: f64,
}

/// Supremum of `|D(N,t)|/√N` over dyadic `N ≤ t²`.
pub fn dyadic_sup(f: &FourierTable, g: &FourierTable, t: f64, window: SmoothWindow) -> Result<DyadicReport> {
    let mut points = Vec::new();
    let mut n_len = 1.0;
    while n_len <= t * t {
        let d = dirichlet_polynomial(f, g, n_len, t, window)?;
        points.push((n_len, d.norm() / n_len.sqrt()));
        n_len *= 2.0;
    }
    let sup = points.iter().map(|p| p.1).fold(0.0, f64::max);
    Ok(DyadicReport { t, points, sup, normalized: sup / (t.powf(0.9) * t.ln().powi(2)) })
}

/// Archimedean data of `L(s, 1 ⊞ (f×g))` for weights `k ≥ κ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaFactor {
    pub k: u32,
    pub kappa: u32,
    /// `0, (k−κ)/2, (k−κ)/2 + 1, (k+κ)/2 − 1, (k+κ)/2`.
    pub shifts: [u32; 5],
    /// Root number of `f×g`: unimodular, not computed.
    pub root_number: Option<Complex64>,
}

impl GammaFactor {
    pub fn new(k: u32, kappa: u32) -> Result<Self> {
        if kappa < 12 || k < kappa || k % 2 != 0 || kappa % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "weights need k >= κ >= 12, both even; got k = {k}, κ = {kappa}"
            )));
        }
        let lo = (k - kappa) / 2;
        let hi = (k + kappa) / 2;
        Ok(GammaFactor { k, kappa, shifts: [0, lo, lo + 1, hi - 1, hi], root_number: None })
    }

    /// `ω_k = e((4k − 5)/8)`.
    pub fn omega(&self) -> Complex64 {
        e((4.0 * self.k as f64 - 5.0) / 8.0)
    }
}

/// `ln γ(s)` on the branch assembled from principal `ln Γ` values.
pub fn ln_gamma_factor(s: Complex64, gf: &GammaFactor) -> Result<Complex64> {
    let mut acc = -5.0 * (s - 0.5) * PI.ln();
    for &kj in &gf.shifts {
        let kj = kj as f64;
        acc += ln_gamma((s + kj) / 2.0)?;
        acc -= ln_gamma((1.0 - s + kj) / 2.0)?;
    }
    Ok(acc)
}

/// `γ(s) = π^{−5(s−1/2)} Π_j Γ((s+κ_j)/2) / Γ((1−s+κ_j)/2)`.
///
/// Fails with `Pole` at poles of a numerator factor; returns 0 at poles of a
/// denominator factor.
pub fn gamma_factor(s: Complex64, gf: &GammaFactor) -> Result<Complex64> {
    for &kj in &gf.shifts {
        let num = (s + kj as f64) / 2.0;
        if num.im == 0.0 && num.re <= 0.0 && num.re == num.re.round() {
            return Err(Error::Pole(s.re));
        }
    }
    for &kj in &gf.shifts {
        let den = (1.0 - s + kj as f64) / 2.0;
        if den.im == 0.0 && den.re <= 0.0 && den.re == den.re.round() {
            return Ok(Complex64::new(0.0, 0.0));
        }
    }
    Ok(ln_gamma_factor(s, gf)?.exp())
}

/// `arg` of `ω̄_k (2πe/t)^{5it}` on the continuous branch matching
/// [`ln_gamma_factor`]: `5t log(2πe/t) − 2π(4k−5)/8`.
fn asymptotic_arg(t: f64, gf: &GammaFactor) -> f64 {
    5.0 * t * (2.0 * PI * std::f64::consts::E / t).ln() - PI * (4.0 * gf.k as f64 - 5.0) / 4.0
}

/// `ω̄_k (t/2π)^{5(σ−1/2)} (2πe/t)^{5it}`, the large-`t` form of `γ(σ − it)`.
pub fn gamma_factor_asymptotic(sigma: f64, t: f64, gf: &GammaFactor) -> Complex64 {
    let modulus = (t / (2.0 * PI)).powf(5.0 * (sigma - 0.5));
    Complex64::from_polar(modulus, asymptotic_arg(t, gf))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StirlingReport {
    pub t: f64,
    /// `|γ(σ−it)| / (t/2π)^{5(σ−1/2)}`.
    pub modulus_ratio: f64,
    /// `arg γ(σ−it) − arg(asymptotic)`, both on continuous branches (not
    /// reduced modulo `2π`).
    pub phase_defect: f64,
}

pub fn stirling_check(sigma: f64, t: f64, gf: &GammaFactor) -> Result<StirlingReport> {
    let ln = ln_gamma_factor(Complex64::new(sigma, -t), gf)?;
    let modulus_ratio = (ln.re - 5.0 * (sigma - 0.5) * (t / (2.0 * PI)).ln()).exp();
    Ok(StirlingReport { t, modulus_ratio, phase_defect: ln.im - asymptotic_arg(t, gf) })
}

/// `ζ(2)`.
const ZETA2: f64 = PI * PI / 6.0;

/// Mollifier scales and table horizon for [`l_value_rankin_with`].
#[derive(Debug, Clone, PartialEq)]
pub struct LSchedule {
    /// Increasing smoothing lengths `T`.
    pub scales: Vec<f64>,
    /// The exponential mollifier is summed to `horizon · T_max`; tables must
    /// reach that far.
    pub horizon: f64,
}

impl Default for LSchedule {
    fn default() -> Self {
        LSchedule { scales: vec![1e4, 4e4, 1.6e5], horizon: 24.0 }
    }
}

impl LSchedule {
    pub fn required_len(&self) -> usize {
        (self.horizon * self.scales.last().copied().unwrap_or(0.0)).ceil() as usize
    }
}

/// The Gaussian mollifier is negligible (`< e^{-42}`) past `6.5 T`.
const GAUSS_CUTOFF: f64 = 6.5;

#[derive(Debug, Clone, PartialEq)]
pub struct LValueReport {
    /// Richardson limit of the exponential estimates.
    pub value: f64,
    /// `(T, ζ(2) Σ λλ(n) n^{-1} e^{-n/T})`.
    pub exponential: Vec<(f64, f64)>,
    /// `(T, ζ(2) Σ λλ(n) n^{-1} e^{-(n/T)²})`.
    pub gaussian: Vec<(f64, f64)>,
    /// `|value(T_max) − value(T_prev)|` for the exponential estimates.
    pub stability: f64,
    /// `|value − gaussian(T_max)|`.
    pub agreement: f64,
}

/// `L(1, f×g) = ζ(2) Σ λ_f(n)λ_g(n)/n`, default schedule.
pub fn l_value_rankin(f: &FourierTable, g: &FourierTable, target: f64) -> Result<LValueReport> {
    l_value_rankin_with(f, g, target, &LSchedule::default())
}

/// Smoothed estimates of `L(1, f×g)` under two mollifiers. The exponential
/// estimates carry a `1/T` bias removed by Richardson extrapolation; the
/// Gaussian ones have bias `O(T^{-3/4})` with a tiny constant. Fails with
/// `NotConverged` when the last two exponential estimates differ by more than
/// `target`.
pub fn l_value_rankin_with(f: &FourierTable, g: &FourierTable, target: f64, schedule: &LSchedule) -> Result<LValueReport> {
    if f.weight() == g.weight() {
        return Err(Error::InvalidArgument(format!(
            "L(s, f×f) has a pole at s = 1 (both forms have weight {})",
            f.weight()
        )));
    }
    if schedule.scales.len() < 2 || schedule.scales.windows(2).any(|w| !(w[1] > w[0])) || schedule.scales[0] <= 0.0 {
        return Err(Error::InvalidArgument("need at least two increasing positive scales".into()));
    }
    let len = schedule.required_len();
    require_both(f, g, len)?;
    let (fv, gv) = (f.values(), g.values());
    let ab = |n: usize| fv[n - 1] * gv[n - 1] / n as f64;
    let mut exponential = Vec::new();
    let mut gaussian = Vec::new();
    for &t in &schedule.scales {
        let top = ((schedule.horizon * t).ceil() as usize).min(len);
        let ve = sum_real(1..top + 1, |n| ab(n) * (-(n as f64) / t).exp());
        let gtop = ((GAUSS_CUTOFF * t).ceil() as usize).min(len);
        let vg = sum_real(1..gtop + 1, |n| {
            let u = n as f64 / t;
            ab(n) * (-u * u).exp()
        });
        exponential.push((t, ZETA2 * ve));
        gaussian.push((t, ZETA2 * vg));
    }
    let m = exponential.len();
    let (t1, v1) = exponential[m - 2];
    let (t2, v2) = exponential[m - 1];
    let stability = (v2 - v1).abs();
    if !(stability <= target) {
        return Err(Error::NotConverged { change: stability, target });
    }
    let r = t2 / t1;
    let value = (r * v2 - v1) / (r - 1.0);
    let agreement = (value - gaussian[m - 1].1).abs();
    Ok(LValueReport { value, exponential, gaussian, stability, agreement })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gl5Row {
    pub x: f64,
    /// `A(X) = Σ_{n≤X} λ_{1⊞(f×g)}(n)`.
    pub partial_sum: f64,
    /// `L(1, f×g)·X`.
    pub main: f64,
    /// `E(X) = |A(X) − L(1,f×g)X|`.
    pub error: f64,
    /// `E(X)/X^{2/3}`.
    pub ratio: f64,
    /// `E*(X) = max_{1 ≤ Y ≤ X} E(Y)` over integers `Y`.
    pub sup_error: f64,
    /// `E*(X)/X^{2/3}`.
    pub sup_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gl5Report {
    pub rows: Vec<Gl5Row>,
    /// Least-squares slope of `log E` against `log X`.
    pub slope: f64,
    /// The same for `E*`; pointwise `E` has sign changes, its running
    /// maximum tracks the order of the error term.
    pub sup_slope: f64,
}

/// Partial sums of `1 ⊞ (f×g)` against the main term `L(1,f×g)·X`.
pub fn gl5_partial_sum_check(f: &FourierTable, g: &FourierTable, xs: &[f64], l1: f64) -> Result<Gl5Report> {
    let top = xs.iter().fold(1.0f64, |a, &b| a.max(b)).floor() as usize;
    let coeffs = convolve_gl5(f, g, top)?;
    // running partial sums and running maximum of the error at every integer
    let mut partial = Vec::with_capacity(top);
    let mut sup = Vec::with_capacity(top);
    let mut acc = Neumaier::default();
    let mut worst = 0.0f64;
    for (i, &c) in coeffs.iter().enumerate() {
        acc.add(c);
        let a = acc.value();
        worst = worst.max((a - l1 * (i + 1) as f64).abs());
        partial.push(a);
        sup.push(worst);
    }
    let mut rows = Vec::with_capacity(xs.len());
    for &x in xs {
        let n = (x.floor() as usize).min(top);
        let (partial_sum, sup_n) = if n == 0 { (0.0, 0.0) } else { (partial[n - 1], sup[n - 1]) };
        let main = l1 * x;
        let error = (partial_sum - main).abs();
        let sup_error = sup_n.max(error);
        let scale = x.powf(2.0 / 3.0);
        rows.push(Gl5Row { x, partial_sum, main, error, ratio: error / scale, sup_error, sup_ratio: sup_error / scale });
    }
    let slope = loglog_slope(rows.iter().map(|r| (r.x, r.error)));
    let sup_slope = loglog_slope(rows.iter().map(|r| (r.x, r.sup_error)));
    Ok(Gl5Report { rows, slope, sup_slope })
}

fn loglog_slope(points: impl Iterator<Item = (f64, f64)>) -> f64 {
    let pts: Vec<(f64, f64)> = points.filter(|p| p.1 > 0.0).map(|(x, y)| (x.ln(), y.ln())).collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// `A(X)` by the hyperbola method: `Σ_r λ_f(r)λ_g(r) · #{(l, m) : l m² ≤ X/r}`.
pub fn gl5_partial_sum_hyperbola(f: &FourierTable, g: &FourierTable, x: f64) -> Result<f64> {
    let top = x.floor() as usize;
    if top == 0 {
        return Ok(0.0);
    }
    require_both(f, g, top)?;
    let mut acc = Neumaier::default();
    for r in 1..=top {
        let bound = top / r;
        let mut count = 0usize;
        let mut m = 1usize;
        while m * m <= bound {
            count += bound / (m * m);
            m += 1;
        }
        acc.add(f.lambda(r) * g.lambda(r) * count as f64);
    }
    Ok(acc.value())
}

/// Test window for the `ξ` integral, supported on `[1/2, 2]`.
pub fn xi_window() -> SmoothWindow {
    make_window(0.5, 2.0, 4.0).expect("valid window")
}

/// `ξ₀ = 2π(nX)^{1/5}/T`.
pub fn xi_stationary_point(n: u64, x: f64, big_t: f64) -> f64 {
    2.0 * PI * (n as f64 * x).powf(0.2) / big_t
}

/// `∫ V(ξ) e^{iTξ log(nX (Tξ/2πe)^{-5})} dξ` by quadrature.
pub fn xi_integral(n: u64, x: f64, big_t: f64, window: SmoothWindow, tol: f64) -> Result<Complex64> {
    let ln_nx = (n as f64 * x).ln();
    let c = (big_t / (2.0 * PI * std::f64::consts::E)).ln();
    let xi0 = xi_stationary_point(n, x, big_t);
    let h = |xi: f64| big_t * xi * (ln_nx - 5.0 * (c + xi.ln()));
    let dh = |xi: f64| 5.0 * big_t * (xi0 / xi).ln();
    let opts = QuadOptions::with_tol(tol).breakpoints(&window.breakpoints());
    oscillatory_integral(|xi| window.eval(xi), h, |xi| dh(xi).abs(), window.support(), &opts)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiReport {
    pub xi0: f64,
    pub quadrature: Complex64,
    /// `e(5(nX)^{1/5}) √(2πξ₀/(5T)) e^{−iπ/4} V(ξ₀)`.
    pub leading: Complex64,
    /// `|quadrature − leading| / |leading|`.
    pub relative_defect: f64,
}

/// Compares the `ξ` integral with its stationary-phase leading term, using
/// `h(ξ₀) = 5Tξ₀` and `h″(ξ₀) = −5T/ξ₀`.
pub fn xi_stationary_check(n: u64, x: f64, big_t: f64) -> Result<XiReport> {
    let window = xi_window();
    let xi0 = xi_stationary_point(n, x, big_t);
    let (a, b) = window.support();
    if !(xi0 > a && xi0 < b) {
        return Err(Error::StationaryOutsideSupport(xi0));
    }
    let quadrature = xi_integral(n, x, big_t, window, 1e-12)?;
    let amp = (2.0 * PI * xi0 / (5.0 * big_t)).sqrt() * window.eval(xi0);
    let leading = e(5.0 * (n as f64 * x).powf(0.2)) * Complex64::from_polar(amp, -PI / 4.0);
    let relative_defect = (quadrature - leading).norm() / leading.norm();
    Ok(XiReport { xi0, quadrature, leading, relative_defect })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_shifts_are_exact() {
        let gf = GammaFactor::new(16, 12).unwrap();
        assert_eq!(gf.shifts, [0, 2, 3, 13, 14]);
        assert!(GammaFactor::new(12, 16).is_err());
        assert!(GammaFactor::new(16, 10).is_err());
    }

    #[test]
    fn percentile_interpolates() {
        let mut v = vec![4.0, 1.0, 3.0, 2.0, 5.0];
        assert_eq!(percentile(&mut v, 0.5), 3.0);
        assert!((percentile(&mut v, 0.9) - 4.6).abs() < 1e-12);
    }

    #[test]
    fn default_grid_lies_in_regime() {
        let grid = default_harness_grid();
        assert_eq!(grid.len(), 20);
        assert!(grid.iter().all(|&(t, x)| in_theorem_regime(t, x)));
        assert!(grid.contains(&(64.0, 4096.0)));
    }
}
