//! Stationary phase: model checks for `I = ∫ w(y) e^{iϱ(y)} dy` and the
//! oscillatory integrals `Φ`, `Ψ`, `𝒦`, `𝔍`, `𝔍*` and `ℋ` of the
//! twist-sum analysis.
//!
//! Model integrals use `e^{iϱ}`; the twist-sum integrals use
//! `e(x) = e^{2πix}` and phases measured in cycles.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{integrate_resolved, oscillatory_integral, PhaseSpec, QuadOptions, SmoothWindow};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real phase `ϱ` with its first two derivatives.
#[derive(Clone)]
pub struct PhaseFn {
    value: RealFn,
    d1: RealFn,
    d2: RealFn,
}

impl std::fmt::Debug for PhaseFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("PhaseFn")
    }
}

impl PhaseFn {
    pub fn new(
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d1: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d2: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        PhaseFn { value: Arc::new(value), d1: Arc::new(d1), d2: Arc::new(d2) }
    }

    /// `Σ_k c_k (y - center)^k`.
    pub fn polynomial(center: f64, coeffs: &[f64]) -> Self {
        let c: Vec<f64> = coeffs.to_vec();
        let d1: Vec<f64> = c.iter().enumerate().skip(1).map(|(k, v)| k as f64 * v).collect();
        let d2: Vec<f64> = d1.iter().enumerate().skip(1).map(|(k, v)| k as f64 * v).collect();
        let horner = |cs: Vec<f64>| move |y: f64| cs.iter().rev().fold(0.0, |acc, v| acc * (y - center) + v);
        PhaseFn::new(horner(c), horner(d1), horner(d2))
    }

    pub fn eval(&self, y: f64) -> f64 {
        (self.value)(y)
    }

    pub fn d1(&self, y: f64) -> f64 {
        (self.d1)(y)
    }

    pub fn d2(&self, y: f64) -> f64 {
        (self.d2)(y)
    }
}

/// The amplitude `height·W`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitude {
    pub window: SmoothWindow,
    pub height: f64,
}

impl From<SmoothWindow> for Amplitude {
    fn from(window: SmoothWindow) -> Self {
        Amplitude { window, height: 1.0 }
    }
}

impl Amplitude {
    pub fn eval(&self, y: f64) -> f64 {
        self.height * self.window.eval(y)
    }

    /// Total variation plus the maximum modulus.
    pub fn variation_bound(&self) -> f64 {
        self.height.abs() * (self.window.total_variation() + 1.0)
    }
}

const SAMPLES: usize = 2048;

fn sample_points(lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    (0..=SAMPLES).map(move |k| lo + (hi - lo) * k as f64 / SAMPLES as f64)
}

/// `∫ w e^{iϱ}` over the support of `w`.
pub fn model_integral(w: &Amplitude, phase: &PhaseFn, tol: f64) -> Result<Complex64> {
    if w.height == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let opts = QuadOptions::with_tol(tol).breakpoints(&w.window.breakpoints());
    oscillatory_integral(|y| w.eval(y), |y| phase.eval(y), |y| phase.d1(y), w.window.support(), &opts)
}

/// Scales of a non-stationary integral: `|ϱ^{(i)}| <= Y/Q^i` for `i >= 2`,
/// `|w^{(j)}| <= Z/U^j` and `|ϱ′| >= R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayParams {
    pub q: f64,
    pub u: f64,
    pub y: f64,
    pub z: f64,
    pub r: f64,
}

impl DecayParams {
    pub fn bracket(&self) -> f64 {
        self.y / (self.r * self.r * self.q * self.q) + 1.0 / (self.r * self.q) + 1.0 / (self.r * self.u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayReport {
    pub integral: Complex64,
    /// `(b - a)·Z·bracket^A`
    pub scale: f64,
    /// `|I| / scale`, the implied constant
    pub constant: f64,
    /// sampled `min |ϱ′|`
    pub min_derivative: f64,
}

impl DecayReport {
    pub fn passes(&self, c_a: f64) -> bool {
        self.constant <= c_a
    }
}

/// Measures `I` against `(b - a)·Z·(Y/(R²Q²) + 1/(RQ) + 1/(RU))^A` after
/// checking the derivative hypotheses on a sample grid.
pub fn nonstationary_decay_check(
    w: &Amplitude,
    phase: &PhaseFn,
    params: DecayParams,
    big_a: u32,
) -> Result<DecayReport> {
    let (a, b) = w.window.support();
    if !(params.r > 0.0) {
        return Err(Error::HypothesisViolated("R must be positive".into()));
    }
    let min_derivative = sample_points(a, b).map(|y| phase.d1(y).abs()).fold(f64::INFINITY, f64::min);
    if min_derivative < params.r * (1.0 - 1e-12) {
        return Err(Error::HypothesisViolated(format!("min |ϱ′| = {min_derivative} below R = {}", params.r)));
    }
    let max_d2 = sample_points(a, b).map(|y| phase.d2(y).abs()).fold(0.0, f64::max);
    if max_d2 > params.y / (params.q * params.q) * (1.0 + 1e-12) {
        return Err(Error::HypothesisViolated(format!("max |ϱ″| = {max_d2} above Y/Q²")));
    }
    if w.height.abs() > params.z {
        return Err(Error::HypothesisViolated(format!("max |w| = {} above Z", w.height.abs())));
    }
    let integral = model_integral(w, phase, 1e-14)?;
    let scale = (b - a) * params.z * params.bracket().powi(big_a as i32);
    Ok(DecayReport { integral, scale, constant: integral.norm() / scale, min_derivative })
}

/// The unique sign change of `f` on `[a, b]`, refined by bisection.
fn unique_root(f: impl Fn(f64) -> f64, a: f64, b: f64) -> Result<f64> {
    let mut bracket = None;
    let mut count = 0;
    let mut prev = (a, f(a));
    for y in sample_points(a, b).skip(1) {
        let v = f(y);
        if prev.1 == 0.0 || prev.1.signum() != v.signum() {
            if !(prev.1 == 0.0 && bracket.is_some()) {
                count += 1;
                bracket = Some((prev.0, y));
            }
        }
        prev = (y, v);
    }
    if count > 1 {
        return Err(Error::MultipleStationaryPoints);
    }
    let (mut lo, mut hi) = bracket.ok_or(Error::NoStationaryPoint)?;
    let f_lo = f(lo);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    while hi - lo > 1e-13 * (1.0 + lo.abs()) {
        let mid = 0.5 * (lo + hi);
        let v = f(mid);
        if v == 0.0 {
            return Ok(mid);
        }
        if v.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryReport {
    pub point: f64,
    pub quadrature: Complex64,
    /// `e^{iϱ(y₀) ± iπ/4} √(2π/|ϱ″(y₀)|) w(y₀)`
    pub leading: Complex64,
    pub ratio_defect: f64,
}

/// Compares `∫ w e^{iϱ}` with the classical one-point stationary-phase
/// value at the unique zero of `ϱ′` in `interval`.
pub fn stationary_leading_term(w: &Amplitude, phase: &PhaseFn, interval: (f64, f64)) -> Result<StationaryReport> {
    let point = unique_root(|y| phase.d1(y), interval.0, interval.1)?;
    let rho2 = phase.d2(point);
    if rho2 == 0.0 {
        return Err(Error::HypothesisViolated("degenerate stationary point".into()));
    }
    let quadrature = model_integral(w, phase, 1e-14)?;
    let arg = phase.eval(point) + rho2.signum() * PI / 4.0;
    let leading = Complex64::from_polar((2.0 * PI / rho2.abs()).sqrt() * w.eval(point), arg);
    Ok(StationaryReport { point, quadrature, leading, ratio_defect: (quadrature - leading).norm() / leading.norm() })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondDerivativeReport {
    pub integral: Complex64,
    pub v0: f64,
    /// `8·V₀/√λ₀`
    pub bound: f64,
    /// `|I|·√λ₀/V₀`
    pub constant: f64,
}

impl SecondDerivativeReport {
    pub fn holds(&self) -> bool {
        self.integral.norm() <= self.bound
    }
}

/// Constant of the second-derivative bound `|I| <= 8·V₀/√λ₀`.
pub const SECOND_DERIVATIVE_CONSTANT: f64 = 8.0;

/// Checks `|∫ w e^{iϱ}| <= 8·V₀/√λ₀` given `ϱ″ >= λ₀` on the support.
pub fn second_derivative_bound_check(w: &Amplitude, phase: &PhaseFn, lambda0: f64) -> Result<SecondDerivativeReport> {
    if !(lambda0 > 0.0) {
        return Err(Error::HypothesisViolated("λ₀ must be positive".into()));
    }
    let (a, b) = w.window.support();
    let min_d2 = sample_points(a, b).map(|y| phase.d2(y)).fold(f64::INFINITY, f64::min);
    if min_d2 < lambda0 * (1.0 - 1e-12) {
        return Err(Error::HypothesisViolated(format!("min ϱ″ = {min_d2} below λ₀ = {lambda0}")));
    }
    let integral = model_integral(w, phase, 1e-13)?;
    let v0 = w.variation_bound();
    let bound = SECOND_DERIVATIVE_CONSTANT * v0 / lambda0.sqrt();
    let constant = if v0 > 0.0 { integral.norm() * lambda0.sqrt() / v0 } else { 0.0 };
    Ok(SecondDerivativeReport { integral, v0, bound, constant })
}

/// Parameters of the twist-sum integrals. `m` and `n` are real so that
/// `𝔍*(Mξ, n, q)` can be taken along `ξ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseContext {
    pub q: u64,
    pub big_q: f64,
    pub zeta: f64,
    pub t: f64,
    pub x: f64,
    pub m: f64,
    pub n: f64,
    pub n1: f64,
    pub n2: f64,
    pub phase: PhaseSpec,
    /// `V` on `[1, 2]`
    pub v: SmoothWindow,
    /// `U` on `[1, 2]`
    pub u: SmoothWindow,
    /// weight in `ζ` for `𝒦`
    pub w: SmoothWindow,
    /// `ω` for `ℋ`, equal to 1 on `[1, 2]`
    pub omega: SmoothWindow,
}

/// Regime accepted by [`eval_i_star`]: `D/t ∈ [1/4, 4]`.
pub const D_OVER_T: (f64, f64) = (0.25, 4.0);

impl PhaseContext {
    /// A context at `X = 10⁶`, `q = 100`, with `m` chosen so that the
    /// stationary point `y*` of `𝔍` sits at `y_star` and `n` so that
    /// `B = b_over_t·t`; `n₁ = n₂ = n`.
    pub fn around_stationary_point(phase: PhaseSpec, t: f64, b_over_t: f64, y_star: f64) -> Result<Self> {
        let (c, beta) = phase.normalized();
        let x = 1e6;
        let q = 100u64;
        let b = b_over_t * t;
        let d = c * t * y_star.powf(-beta) + b;
        let m = (d * q as f64 / 2.0).powi(2) / x;
        let n = (b * q as f64 / 2.0).powi(2) / x;
        Ok(PhaseContext {
            q,
            big_q: x.sqrt(),
            zeta: 1.0,
            t,
            x,
            m,
            n,
            n1: n,
            n2: n,
            phase,
            v: crate::quad::make_window(1.0, 2.0, 4.0)?,
            u: crate::quad::make_window(1.0, 2.0, 4.0)?,
            w: crate::quad::make_window(0.5, 2.0, 4.0)?,
            omega: crate::quad::make_window(2.0 / 3.0, 3.0, 3.0)?,
        })
    }

    /// `2√(nX)/q`.
    pub fn b_of(&self, n: f64) -> f64 {
        2.0 * (n * self.x).sqrt() / self.q as f64
    }

    /// `B = 2√(nX)/q`.
    pub fn b(&self) -> f64 {
        self.b_of(self.n)
    }

    /// `D = 2√(mX)/q`.
    pub fn d(&self) -> f64 {
        self.b_of(self.m)
    }

    /// `(c, β)` with `(φ(y²))′ = c·y^{-β}`.
    pub fn c_beta(&self) -> (f64, f64) {
        self.phase.normalized()
    }

    /// `y₀ = (ct/D)^{1/β}`.
    pub fn y0(&self) -> f64 {
        let (c, beta) = self.c_beta();
        (c * self.t / self.d()).powf(1.0 / beta)
    }

    /// `y* = (ct/(D - B))^{1/β}`.
    pub fn y_star(&self) -> f64 {
        let (c, beta) = self.c_beta();
        (c * self.t / (self.d() - self.b())).powf(1.0 / beta)
    }

    fn qq(&self) -> f64 {
        self.q as f64 * self.big_q
    }
}

/// The integrals available to [`eval_twist_integrals`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TwistIntegral {
    /// `∫ V(y) y^{-1/4} e(tφ(y) + ζXy/(qQ) - 2√(mXy)/q) dy`
    Phi,
    /// `Φ` with `+2√(mXy)/q`
    PhiPlus,
    /// `∫ U(y) y^{-1/4} e(-ζXy/(qQ) + 2√(nXy)/q) dy`
    Psi,
    /// `∫ w(ζ) e(ζXy/(qQ) + nQ/(qζ)) dζ`; the product of `g`, the dyadic
    /// weights and the inert factor is replaced by the window `w`
    K { y: f64 },
    /// `∫ V(y) y^{-1/4} e(tφ(y) + 2√(nXy)/q - 2√(mXy)/q) dy`
    Ifrak,
}

/// Direct quadrature of one of the integrals at absolute tolerance `tol`.
pub fn eval_twist_integrals(ctx: &PhaseContext, which: TwistIntegral, tol: f64) -> Result<Complex64> {
    let two_pi = 2.0 * PI;
    let phi = ctx.phase;
    let t = ctx.t;
    let lin = ctx.zeta * ctx.x / ctx.qq();
    let sm = (ctx.m * ctx.x).sqrt() / ctx.q as f64;
    let sn = (ctx.n * ctx.x).sqrt() / ctx.q as f64;
    let damped = |win: SmoothWindow| move |y: f64| win.eval(y) * y.powf(-0.25);
    match which {
        TwistIntegral::Phi | TwistIntegral::PhiPlus | TwistIntegral::Ifrak => {
            let (lin, s, sign) = match which {
                TwistIntegral::Phi => (lin, sm, -1.0),
                TwistIntegral::PhiPlus => (lin, sm, 1.0),
                _ => (0.0, sm - sn, -1.0),
            };
            let opts = QuadOptions::with_tol(tol).breakpoints(&ctx.v.breakpoints());
            oscillatory_integral(
                damped(ctx.v),
                |y| two_pi * (t * phi.eval(y) + lin * y + sign * 2.0 * s * y.sqrt()),
                |y| two_pi * (t * phi.d1(y) + lin + sign * s / y.sqrt()),
                ctx.v.support(),
                &opts,
            )
        }
        TwistIntegral::Psi => {
            let opts = QuadOptions::with_tol(tol).breakpoints(&ctx.u.breakpoints());
            oscillatory_integral(
                damped(ctx.u),
                |y| two_pi * (-lin * y + 2.0 * sn * y.sqrt()),
                |y| two_pi * (-lin + sn / y.sqrt()),
                ctx.u.support(),
                &opts,
            )
        }
        TwistIntegral::K { y } => {
            let a = ctx.x * y / ctx.qq();
            let b = ctx.n * ctx.big_q / ctx.q as f64;
            let opts = QuadOptions::with_tol(tol).breakpoints(&ctx.w.breakpoints());
            oscillatory_integral(
                |z| ctx.w.eval(z),
                |z| two_pi * (a * z + b / z),
                |z| two_pi * (a - b / (z * z)),
                ctx.w.support(),
                &opts,
            )
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesReport {
    pub y_star_exact: f64,
    pub y_star_series: f64,
    pub defect: f64,
}

/// `C_α^j = α(α-1)…(α-j+1)/j!`.
pub fn binomial(alpha: f64, j: u32) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (alpha - i as f64) / (i + 1) as f64)
}

/// The root of `ρ′(y) = cty^{-β} + B - D` by bisection against
/// `y₀(1 + Σ_{j<=K₁} C_{-1/β}^j (-B/D)^j)`.
pub fn stationary_point_series(ctx: &PhaseContext, k1: u32) -> Result<SeriesReport> {
    let (c, beta) = ctx.c_beta();
    let (b, d) = (ctx.b(), ctx.d());
    if !(b < d) {
        return Err(Error::RegimeViolated(format!("B = {b} must be below D = {d}")));
    }
    let y0 = ctx.y0();
    let root = unique_root(|s: f64| c * ctx.t * s.exp().powf(-beta) + b - d, (y0 / 64.0).ln(), (y0 * 64.0).ln())?;
    let y_star_exact = root.exp();
    let r = -b / d;
    let sum: f64 = (1..=k1).map(|j| binomial(-1.0 / beta, j) * r.powi(j as i32)).sum();
    let y_star_series = y0 * (1.0 + sum);
    Ok(SeriesReport { y_star_exact, y_star_series, defect: (y_star_exact - y_star_series).abs() })
}

fn check_regime(ctx: &PhaseContext, d: f64) -> Result<()> {
    let r = d / ctx.t;
    if !(r >= D_OVER_T.0 && r <= D_OVER_T.1) {
        return Err(Error::RegimeViolated(format!("D/t = {r} outside [1/4, 4]")));
    }
    Ok(())
}

/// `𝔍*(m, n, q)` at real `m`, `n`; see [`eval_i_star`].
pub fn i_star_at(ctx: &PhaseContext, m: f64, n: f64) -> Result<Complex64> {
    let (c, beta) = ctx.c_beta();
    let (b, d) = (ctx.b_of(n), ctx.b_of(m));
    check_regime(ctx, d)?;
    if !(b < d) {
        return Err(Error::RegimeViolated(format!("B = {b} must be below D = {d}")));
    }
    let t = ctx.t;
    let y0 = (c * t / d).powf(1.0 / beta);
    let ys = (c * t / (d - b)).powf(1.0 / beta);
    let amp = 2.0 * ys * ctx.v.eval(ys * ys) * (ys * ys).powf(-0.25);
    if amp == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let rho2 = -c * beta * t * ys.powf(-beta - 1.0);
    let phase_cycles = t * (ctx.phase.eval(ys * ys) - ctx.phase.eval(y0 * y0)) + (b - d) * ys + d * y0;
    let arg = 2.0 * PI * (phase_cycles - phase_cycles.round()) + rho2.signum() * PI / 4.0;
    Ok(Complex64::from_polar(amp / rho2.abs().sqrt(), arg))
}

/// `𝔍*(m, n, q)`: the stationary-phase value of `𝔍` at the exact `y*`
/// with the phase `e(tφ(y₀²) - Dy₀)` removed.
pub fn eval_i_star(ctx: &PhaseContext) -> Result<Complex64> {
    i_star_at(ctx, ctx.m, ctx.n)
}

/// `e(tφ(y₀²) - Dy₀)`.
pub fn removed_phase(ctx: &PhaseContext) -> Complex64 {
    let y0 = ctx.y0();
    let cycles = ctx.t * ctx.phase.eval(y0 * y0) - ctx.d() * y0;
    Complex64::from_polar(1.0, 2.0 * PI * (cycles - cycles.round()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IStarReport {
    pub i_star: Complex64,
    /// `e(tφ(y₀²) - Dy₀)·𝔍*`
    pub predicted: Complex64,
    pub quadrature: Complex64,
    pub defect: f64,
    /// `|𝔍*|·√t`
    pub modulus_scaled: f64,
}

/// `𝔍*` against direct quadrature of `𝔍`.
pub fn i_star_check(ctx: &PhaseContext, tol: f64) -> Result<IStarReport> {
    let i_star = eval_i_star(ctx)?;
    let predicted = removed_phase(ctx) * i_star;
    let quadrature = eval_twist_integrals(ctx, TwistIntegral::Ifrak, tol)?;
    Ok(IStarReport {
        i_star,
        predicted,
        quadrature,
        defect: (predicted - quadrature).norm(),
        modulus_scaled: i_star.norm() * ctx.t.sqrt(),
    })
}

/// Coefficients `k₂` of `B²/t` in the phase `By₀ + k₂B²/t + …` of `𝔍*`:
/// `(from Taylor expansion at y₀, as quoted)` =
/// `(y₀^{1+β}/(2cβ), y₀²/(2cβ²))`. They agree when `β = 1`.
pub fn quadratic_coefficients(ctx: &PhaseContext) -> (f64, f64) {
    let (c, beta) = ctx.c_beta();
    let y0 = ctx.y0();
    (y0.powf(1.0 + beta) / (2.0 * c * beta), y0 * y0 / (2.0 * c * beta * beta))
}

/// `arg 𝔍* + (π/4)·sgn ρ″ - 2π(By₀ + k₂B²/t)` reduced to `(-π, π]`, for the
/// given `k₂`.
pub fn quadratic_phase_residual(ctx: &PhaseContext, k2: f64) -> Result<f64> {
    let (c, beta) = ctx.c_beta();
    let z = eval_i_star(ctx)?;
    let sign = (-c * beta).signum();
    let b = ctx.b();
    let predicted = b * ctx.y0() + k2 * b * b / ctx.t;
    let r = z.arg() - sign * PI / 4.0 - 2.0 * PI * (predicted - predicted.round());
    Ok(r - 2.0 * PI * (r / (2.0 * PI)).round())
}

/// `ℋ(x) = ∫ ω(ξ) 𝔍*(Mξ, n₁, q) conj(𝔍*(Mξ, n₂, q)) e(-xξ) dξ` with `M = m`.
pub fn eval_h(x: f64, ctx: &PhaseContext, tol: f64) -> Result<Complex64> {
    let (lo, hi) = ctx.omega.support();
    for xi in [lo, hi] {
        check_regime(ctx, ctx.b_of(ctx.m * xi))?;
    }
    let (b1, b2) = (ctx.b_of(ctx.n1), ctx.b_of(ctx.n2));
    let (_, beta) = ctx.c_beta();
    // the ξ-phase of the product moves at most like (B₁ + B₂)·y₀/(2|β|ξ)
    let y_max = ctx.v.support().1.sqrt();
    let slope = (b1 + b2) * y_max / (2.0 * beta.abs() * lo);
    let opts = QuadOptions::with_tol(tol).breakpoints(&ctx.omega.breakpoints());
    integrate_resolved(
        |xi| {
            let w = ctx.omega.eval(xi);
            if w == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let m = ctx.m * xi;
            let a = i_star_at(ctx, m, ctx.n1).unwrap_or_default();
            let b = i_star_at(ctx, m, ctx.n2).unwrap_or_default();
            let cycles = x * xi;
            w * a * b.conj() * Complex64::from_polar(1.0, -2.0 * PI * (cycles - cycles.round()))
        },
        // one panel per cycle; the integrand is a slowly varying amplitude
        // times e(-xξ), and the halving check confirms convergence
        |_| (x.abs() + slope) / 4.0,
        (lo, hi),
        &opts,
    )
}

/// `∫ω · sup_ξ |𝔍*(Mξ,n₁)||𝔍*(Mξ,n₂)|`, the trivial bound on `|ℋ|`.
pub fn h_trivial_bound(ctx: &PhaseContext) -> Result<f64> {
    let (lo, hi) = ctx.omega.support();
    let mut sup: f64 = 0.0;
    for xi in sample_points(lo, hi) {
        let m = ctx.m * xi;
        sup = sup.max(i_star_at(ctx, m, ctx.n1)?.norm() * i_star_at(ctx, m, ctx.n2)?.norm());
    }
    Ok(ctx.omega.integral() * sup)
}

/// `max(B₁, B₂)·log²X`, the scale past which `ℋ` is negligible.
pub fn h_critical_scale(ctx: &PhaseContext) -> f64 {
    ctx.b_of(ctx.n1).max(ctx.b_of(ctx.n2)) * ctx.x.ln().powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_phase_derivatives() {
        let p = PhaseFn::polynomial(1.5, &[0.0, 2.0, 3.0, 4.0]);
        let y = 1.7;
        let u = y - 1.5;
        assert!((p.eval(y) - (2.0 * u + 3.0 * u * u + 4.0 * u * u * u)).abs() < 1e-14);
        assert!((p.d1(y) - (2.0 + 6.0 * u + 12.0 * u * u)).abs() < 1e-14);
        assert!((p.d2(y) - (6.0 + 24.0 * u)).abs() < 1e-14);
    }

    #[test]
    fn root_finder_classifies() {
        assert!((unique_root(|y| y - 1.3, 1.0, 2.0).unwrap() - 1.3).abs() < 1e-12);
        assert_eq!(unique_root(|y| y + 1.0, 1.0, 2.0), Err(Error::NoStationaryPoint));
        assert_eq!(unique_root(|y| (y - 1.2) * (y - 1.7), 1.0, 2.0), Err(Error::MultipleStationaryPoints));
    }

    #[test]
    fn binomial_matches_series() {
        let s: f64 = (0..40).map(|j| binomial(-3.0, j) * (-0.1f64).powi(j as i32)).sum();
        assert!((s - 0.9f64.powi(-3)).abs() < 1e-14);
    }

    #[test]
    fn y_star_closed_form_agrees_with_root() {
        let ctx = PhaseContext::around_stationary_point(PhaseSpec::power(2.25, 1.0 / 3.0).unwrap(), 1e4, 0.05, 1.2).unwrap();
        let r = stationary_point_series(&ctx, 3).unwrap();
        assert!((r.y_star_exact - ctx.y_star()).abs() < 1e-11);
        assert!((ctx.y_star() - 1.2).abs() < 1e-12);
    }
}
