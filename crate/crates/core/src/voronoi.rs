//! Holomorphic Voronoi summation, the Bessel transform `Φ_h`, its
//! large-argument expansion and the resonance sum.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::arith::{gcd, mod_inverse};
use crate::error::{Error, Result};
use crate::forms::FourierTable;
use crate::quad::gauss::gauss_legendre;
use crate::quad::{bessel_j, integrate_resolved, oscillatory_integral_complex, QuadOptions, SmoothWindow};
use crate::reduce::{sum_complex, sum_real};
use rayon::prelude::*;

fn i_pow(k: u32) -> Complex64 {
    [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ][(k % 4) as usize]
}

/// `e(x) = exp(2πix)` with the argument reduced first.
fn e(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (x - x.round()))
}

/// `Φ_h(x) = 2π i^κ ∫ h(y) J_{κ-1}(4π√(xy)) dy` by adaptive quadrature.
pub fn phi_h_exact(x: f64, h: &SmoothWindow, kappa: u32, tol: f64) -> Result<Complex64> {
    check_kappa(kappa)?;
    if !(x > 0.0) {
        return Err(Error::InvalidArgument(format!("Φ_h needs x > 0, got {x}")));
    }
    let (a, b) = h.support();
    let opts = QuadOptions::with_tol(tol).breakpoints(&h.breakpoints());
    let nu = kappa - 1;
    let v = integrate_resolved(
        |y| Complex64::new(h.eval(y) * bessel_j(nu, 4.0 * PI * (x * y).sqrt()), 0.0),
        |y| (x / y).sqrt(),
        (a, b),
        &opts,
    )?;
    Ok(2.0 * PI * i_pow(kappa) * v)
}

fn check_kappa(kappa: u32) -> Result<()> {
    if kappa < 12 || kappa % 2 == 1 || kappa > 64 {
        return Err(Error::InvalidArgument(format!("weight {kappa} must be even in [12, 64]")));
    }
    Ok(())
}

/// One coefficient of the expansion, `(1/√2)·a_j(κ-1)·(4π)^{-j}·e(k/8)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionCoefficient {
    /// Hankel coefficient `a_j(ν) = ∏_{i<=j}(4ν² - (2i-1)²) / (j! 8^j)`
    pub hankel: BigRational,
    pub j: u32,
    /// phase in eighths of a turn
    pub eighths: i32,
}

impl ExpansionCoefficient {
    pub fn value(&self) -> Complex64 {
        let mag = self.hankel.to_f64().expect("finite rational")
            / std::f64::consts::SQRT_2
            / (4.0 * PI).powi(self.j as i32);
        Complex64::from_polar(mag, 2.0 * PI * self.eighths.rem_euclid(8) as f64 / 8.0)
    }
}

/// `(c_j, d_j)` of `Φ_h(x) ~ x^{-1/4} ∫ h y^{-1/4} Σ_j (c_j e(2√(xy)) + d_j e(-2√(xy))) (xy)^{-j/2}`.
///
/// From `J_ν(z) = ½√(2/(πz)) Σ_j a_j z^{-j} (i^j e^{iχ} + (-i)^j e^{-iχ})`,
/// `χ = z - νπ/2 - π/4`, with `z = 4π√(xy)` and `ν = κ - 1`. The phase of
/// `c_j` is `i^κ i^j e^{-i(νπ/2+π/4)}`, i.e. `(2j + 1)/8` of a turn for every
/// even κ, and `d_j = conj(c_j)`.
pub fn expansion_coefficients(kappa: u32, j: u32) -> (ExpansionCoefficient, ExpansionCoefficient) {
    let nu = BigRational::from_integer((kappa as i64 - 1).into());
    let four_nu2 = BigRational::from_integer(4.into()) * &nu * &nu;
    let mut a = BigRational::one();
    for i in 1..=j {
        let odd = BigRational::from_integer((2 * i as i64 - 1).into());
        a = a * (&four_nu2 - &odd * &odd) / BigRational::from_integer((8 * i as i64).into());
    }
    // eighths: 2κ (i^κ) + 2j (i^j) - 2ν (e^{-iνπ/2}) - 1 (e^{-iπ/4})
    let ec = 2 * kappa as i32 + 2 * j as i32 - 2 * (kappa as i32 - 1) - 1;
    let ed = 2 * kappa as i32 - 2 * j as i32 + 2 * (kappa as i32 - 1) + 1;
    (
        ExpansionCoefficient { hankel: a.clone(), j, eighths: ec.rem_euclid(8) },
        ExpansionCoefficient { hankel: a, j, eighths: ed.rem_euclid(8) },
    )
}

/// The expansion truncated after `j = big_j`.
pub fn phi_h_asymptotic(x: f64, h: &SmoothWindow, kappa: u32, big_j: u32, tol: f64) -> Result<Complex64> {
    check_kappa(kappa)?;
    if x < 1.0 {
        return Err(Error::InvalidArgument(format!("expansion needs x >= 1, got {x}")));
    }
    let (a, b) = h.support();
    let coeffs: Vec<(Complex64, Complex64)> =
        (0..=big_j).map(|j| expansion_coefficients(kappa, j)).map(|(c, d)| (c.value(), d.value())).collect();
    let opts = QuadOptions::with_tol(tol).breakpoints(&h.breakpoints());
    let mut total = Complex64::new(0.0, 0.0);
    for sign in [1.0, -1.0] {
        let amp = |y: f64| {
            let hv = h.eval(y);
            if hv == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let xy = x * y;
            let mut s = Complex64::new(0.0, 0.0);
            for (j, (c, d)) in coeffs.iter().enumerate() {
                let coef = if sign > 0.0 { c } else { d };
                s += coef * xy.powf(-(j as f64) / 2.0);
            }
            s * hv * y.powf(-0.25)
        };
        let k = sign * 4.0 * PI * x.sqrt();
        total += oscillatory_integral_complex(amp, |y| k * y.sqrt(), |y| k * 0.5 / y.sqrt(), (a, b), &opts)?;
    }
    Ok(total * x.powf(-0.25))
}

/// `Φ_h` at many arguments up to `x_max`: the integral is taken in
/// `u = √y`, where `J_{κ-1}(4π√x u)` has constant frequency `2√x`, on a
/// fixed Gauss grid with one panel per cycle at `x_max`.
pub struct PhiEvaluator {
    kappa: u32,
    x_max: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl PhiEvaluator {
    pub fn new(h: &SmoothWindow, kappa: u32, x_max: f64) -> Result<Self> {
        check_kappa(kappa)?;
        let (a, _) = h.support();
        if a <= 0.0 {
            return Err(Error::InvalidArgument("window must be supported in (0, ∞)".into()));
        }
        let cuts: Vec<f64> = h.breakpoints().iter().map(|y| y.sqrt()).collect();
        let span = cuts[3] - cuts[0];
        let h_max = (0.5 / x_max.sqrt()).min(span / 64.0);
        let rule = gauss_legendre(16);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for seg in cuts.windows(2) {
            let count = ((seg[1] - seg[0]) / h_max).ceil().max(1.0) as usize;
            let hp = (seg[1] - seg[0]) / count as f64;
            for k in 0..count {
                let c = seg[0] + (k as f64 + 0.5) * hp;
                for (t, w) in rule.nodes.iter().zip(&rule.weights) {
                    let u = c + 0.5 * hp * t;
                    let hv = h.eval(u * u);
                    if hv != 0.0 {
                        nodes.push(u);
                        weights.push(0.5 * hp * w * 2.0 * u * hv);
                    }
                }
            }
        }
        Ok(PhiEvaluator { kappa, x_max, nodes, weights })
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        debug_assert!(x <= self.x_max * (1.0 + 1e-12));
        let s = 4.0 * PI * x.sqrt();
        let nu = self.kappa - 1;
        let v: f64 = self.nodes.iter().zip(&self.weights).map(|(u, w)| w * bessel_j(nu, s * u)).sum();
        2.0 * PI * i_pow(self.kappa) * v
    }
}

/// Argument beyond which `|Φ_h|` is at the `1e-14` level.
///
/// In `u = √y` the transform is a Fourier-type integral at frequency `2√x`
/// of a function whose narrowest transition has width `w_u`; the bump-step
/// transform decays like `exp(-2√(2π f w_u))`, and the constant is fitted
/// so that `window(1, 5, 1)` is cut near `x ≈ 5800`.
pub fn dual_cutoff(h: &SmoothWindow) -> f64 {
    let bp = h.breakpoints();
    let w_u = ((bp[1].sqrt() - bp[0].sqrt()).min(bp[3].sqrt() - bp[2].sqrt())).max(1e-9);
    // 2√(2π·2√x·w_u) = 38  ⇒  √x = 38²/(16π w_u)
    let root = 38.0 * 38.0 / (16.0 * PI * w_u);
    root * root
}

/// A Voronoi test case.
#[derive(Debug, Clone)]
pub struct VoronoiInstance<'a> {
    pub form: &'a FourierTable,
    pub q: u64,
    pub a: i64,
    pub x: f64,
    pub h: SmoothWindow,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoronoiReport {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub defect: f64,
    pub a_inverse: u64,
    pub dual_terms: u64,
}

/// `Σ λ(n) e(an/q) h(n/X)` directly.
pub fn voronoi_lhs(inst: &VoronoiInstance) -> Result<Complex64> {
    let (lo, hi) = inst.h.support();
    let n_lo = (lo * inst.x).ceil().max(1.0) as usize;
    let n_hi = (hi * inst.x).floor() as usize;
    inst.form.require(n_hi)?;
    let q = inst.q as i64;
    Ok(sum_complex(n_lo..n_hi + 1, |n| {
        let r = (inst.a * n as i64).rem_euclid(q);
        inst.form.lambda(n) * inst.h.eval(n as f64 / inst.x) * e(r as f64 / q as f64)
    }))
}

/// `(X/q) Σ_{n<=N} λ(n) e(-ān/q) Φ_h(nX/q²)` with `Φ_h` from `phi`.
pub fn voronoi_rhs(inst: &VoronoiInstance, phi: &PhiEvaluator, n_dual: usize) -> Result<Complex64> {
    inst.form.require(n_dual)?;
    let q = inst.q as i64;
    let abar = mod_inverse(inst.a, inst.q)? as i64;
    let scale = inst.x / (inst.q as f64).powi(2);
    let s = sum_complex(1..n_dual + 1, |n| {
        let r = (-abar * n as i64).rem_euclid(q);
        inst.form.lambda(n) * e(r as f64 / q as f64) * phi.eval(n as f64 * scale)
    });
    Ok(s * (inst.x / inst.q as f64))
}

/// Compares both sides of the Voronoi formula. The dual sum runs to
/// `dual_truncation` terms, or to [`dual_cutoff`] when `None`; the tail is
/// then sampled and reported as `TruncationWarning` above `1e-9`.
pub fn voronoi_check(inst: &VoronoiInstance, dual_truncation: Option<usize>) -> Result<VoronoiReport> {
    if inst.q == 0 || gcd(inst.a, inst.q as i64) != 1 {
        return Err(Error::NonInvertible { a: inst.a, q: inst.q });
    }
    let dual = DualValues::new(inst.form, inst.q, inst.x, &inst.h, dual_truncation)?;
    dual.report(inst)
}

/// Runs [`voronoi_check`] for every residue class `a mod q` coprime to `q`
/// (the single class `a = 0` when `q = 1`), sharing the `Φ_h` values.
pub fn voronoi_check_all_residues(
    form: &FourierTable,
    q: u64,
    x: f64,
    h: &SmoothWindow,
) -> Result<Vec<(i64, VoronoiReport)>> {
    if q == 0 {
        return Err(Error::NonInvertible { a: 0, q });
    }
    let dual = DualValues::new(form, q, x, h, None)?;
    (0..q as i64)
        .filter(|&a| gcd(a, q as i64) == 1)
        .map(|a| {
            let inst = VoronoiInstance { form, q, a, x, h: *h };
            dual.report(&inst).map(|r| (a, r))
        })
        .collect()
}

/// `Φ_h(nX/q²)` for `n` up to the dual cutoff.
struct DualValues {
    values: Vec<Complex64>,
}

impl DualValues {
    fn new(form: &FourierTable, q: u64, x: f64, h: &SmoothWindow, truncation: Option<usize>) -> Result<Self> {
        let scale = x / (q as f64).powi(2);
        let n_dual = truncation.unwrap_or_else(|| (dual_cutoff(h) / scale).ceil() as usize);
        form.require(n_dual)?;
        let x_cut = n_dual as f64 * scale;
        // tail ≈ (X/q)·(q²/X)·∫_{x_cut}^∞ |Φ_h|, from samples on [x_cut, 2x_cut]
        // with the remainder past 2x_cut bounded by the same amount
        let far = PhiEvaluator::new(h, form.weight(), 2.0 * x_cut)?;
        let mean = (1..=8).map(|k| far.eval(x_cut * (1.0 + k as f64 / 8.0)).norm()).sum::<f64>() / 8.0;
        let tail = q as f64 * 2.0 * mean * x_cut;
        if tail > 1e-9 {
            return Err(Error::TruncationWarning { tail, limit: 1e-9 });
        }
        let phi = PhiEvaluator::new(h, form.weight(), x_cut)?;
        let values = (1..=n_dual).into_par_iter().map(|n| phi.eval(n as f64 * scale)).collect();
        Ok(DualValues { values })
    }

    fn report(&self, inst: &VoronoiInstance) -> Result<VoronoiReport> {
        let lhs = voronoi_lhs(inst)?;
        let q = inst.q as i64;
        let abar = mod_inverse(inst.a, inst.q)?;
        let s = sum_complex(0..self.values.len(), |k| {
            let n = k + 1;
            let r = (-(abar as i64) * n as i64).rem_euclid(q);
            inst.form.lambda(n) * e(r as f64 / q as f64) * self.values[k]
        });
        let rhs = s * (inst.x / inst.q as f64);
        Ok(VoronoiReport {
            lhs,
            rhs,
            defect: (lhs - rhs).norm(),
            a_inverse: abar,
            dual_terms: self.values.len() as u64,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceReport {
    pub sum: Complex64,
    /// `λ(q) q^{-1/4} V̂(0) X^{3/4}` with `V̂(0) = c_0 ∫ V x^{-1/4}` from the
    /// Bessel expansion, `c_0 = (1+i)/2`
    pub main_term: Complex64,
    /// the same with the normalization `V̂(0) = ½ i^κ (1-i) ∫ V x^{-1/4}`
    pub main_term_quoted: Complex64,
    pub residual: f64,
    pub residual_quoted: f64,
}

/// `Σ λ(n) e(-2√(qn)) V(n/X)` and its main term.
pub fn resonance_sum(form: &FourierTable, q: u64, x: f64, v: &SmoothWindow) -> Result<ResonanceReport> {
    let (lo, hi) = v.support();
    let n_lo = (lo * x).ceil().max(1.0) as usize;
    let n_hi = (hi * x).floor() as usize;
    form.require((3.0 * x).ceil() as usize)?;
    form.require(q as usize)?;
    let qf = q as f64;
    let sum = sum_complex(n_lo..n_hi + 1, |n| {
        form.lambda(n) * v.eval(n as f64 / x) * e(-2.0 * (qf * n as f64).sqrt())
    });
    let opts = QuadOptions::with_tol(1e-13).breakpoints(&v.breakpoints());
    let integral = integrate_resolved(|y| Complex64::new(v.eval(y) * y.powf(-0.25), 0.0), |_| 0.0, (lo, hi), &opts)?;
    let (c0, _) = expansion_coefficients(form.weight(), 0);
    let common = form.lambda(q as usize) * qf.powf(-0.25) * x.powf(0.75) * integral;
    let main_term = common * c0.value();
    let quoted = 0.5 * i_pow(form.weight()) * Complex64::new(1.0, -1.0);
    let main_term_quoted = common * quoted;
    Ok(ResonanceReport {
        sum,
        main_term,
        main_term_quoted,
        residual: (sum - main_term).norm(),
        residual_quoted: (sum - main_term_quoted).norm(),
    })
}

/// `Σ_n |λ(n)|` over `[lo, hi]`; used to size tolerances.
pub fn abs_mass(form: &FourierTable, lo: usize, hi: usize) -> f64 {
    sum_real(lo..hi + 1, |n| form.lambda(n).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::make_window;

    #[test]
    fn leading_coefficients() {
        for kappa in [12u32, 14, 16, 26] {
            let (c0, d0) = expansion_coefficients(kappa, 0);
            assert!((c0.value() - Complex64::new(0.5, 0.5)).norm() < 1e-15);
            assert!((d0.value() - Complex64::new(0.5, -0.5)).norm() < 1e-15);
            let (c1, d1) = expansion_coefficients(kappa, 1);
            assert!((c1.value() - d1.value().conj()).norm() < 1e-15 * c1.value().norm());
        }
        let (c1, _) = expansion_coefficients(12, 1);
        assert_eq!(c1.hankel, BigRational::new(483.into(), 8.into()));
    }

    #[test]
    fn evaluator_agrees_with_adaptive_quadrature() {
        let h = make_window(1.0, 2.0, 8.0).unwrap();
        let ev = PhiEvaluator::new(&h, 12, 2000.0).unwrap();
        for x in [0.3, 5.0, 25.0, 400.0, 2000.0] {
            let a = ev.eval(x);
            let b = phi_h_exact(x, &h, 12, 1e-13).unwrap();
            assert!((a - b).norm() < 1e-12, "x={x}: {a} vs {b}");
        }
    }
}
