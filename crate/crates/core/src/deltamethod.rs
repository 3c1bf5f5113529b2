//! The Duke–Friedlander–Iwaniec expansion of the Kronecker delta and a
//! checker for Poisson summation over congruence classes.
//!
//! The identity is used in the form
//! `δ(n) = Σ_q Σ*_{a mod q} e(an/q) Δ_q(n)`,
//! `Δ_q(u) = Σ_{r>=1} (qr)^{-1} (w(qr) - w(|u|/(qr)))`,
//! which holds exactly whenever `Σ_{m>=1} w(m) = 1`. The weight here is a
//! unit box smoothed by the bump step, `w(x) = S((x-a)/ℓ) - S((x-1-a)/ℓ)`,
//! so both `Σ w(m)` and `∫ w` equal 1 exactly.

use std::f64::consts::PI;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::quad::{smooth_step, FourierSampler, SmoothWindow};
use crate::reduce::{sum_real, Neumaier};

/// Tail level above which truncation is reported.
pub const TAIL_LIMIT: f64 = 1e-8;

/// Modulus scale `Q` and the weight `w` supported in `[lo·Q, hi·Q] ⊆ [Q/2, Q]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaScheme {
    q_scale: f64,
    lo: f64,
    hi: f64,
}

impl DeltaScheme {
    /// Weight supported on `[Q/2, Q]`.
    pub fn new(q_scale: f64) -> Result<Self> {
        Self::with_support(q_scale, 0.5, 1.0)
    }

    /// Weight supported on `[lo·Q, hi·Q]`; needs `1/2 <= lo < hi <= 1` and
    /// room for the unit box inside the support.
    pub fn with_support(q_scale: f64, lo: f64, hi: f64) -> Result<Self> {
        if !(q_scale.is_finite() && lo >= 0.5 && hi <= 1.0 && lo < hi) {
            return Err(Error::InvalidArgument(format!(
                "delta scheme support [{lo}, {hi}]·Q must lie in [1/2, 1]·Q"
            )));
        }
        if (hi - lo) * q_scale <= 2.0 {
            return Err(Error::DegenerateSupport { a: lo * q_scale, b: hi * q_scale, delta: 1.0 });
        }
        Ok(DeltaScheme { q_scale, lo, hi })
    }

    pub fn q_scale(&self) -> f64 {
        self.q_scale
    }

    /// `(a, ℓ)` with the rise on `[a, a+ℓ]` and the fall on `[a+1, a+1+ℓ]`.
    fn profile(&self) -> (f64, f64) {
        let a = self.lo * self.q_scale;
        (a, (self.hi - self.lo) * self.q_scale - 1.0)
    }

    pub fn support(&self) -> (f64, f64) {
        (self.lo * self.q_scale, self.hi * self.q_scale)
    }

    /// `w(x)`.
    pub fn weight(&self, x: f64) -> f64 {
        let (a, l) = self.profile();
        smooth_step((x - a) / l) - smooth_step((x - 1.0 - a) / l)
    }

    /// Non-analytic points of `w`.
    pub fn breakpoints(&self) -> Vec<f64> {
        let (a, l) = self.profile();
        let mut v = vec![a, a + 1.0, a + l, a + l + 1.0];
        v.sort_by(|x, y| x.total_cmp(y));
        v
    }

    /// `w0(y) = Q·w(Qy)`, supported in `[lo, hi]` with `∫ w0 = 1`.
    pub fn unit_weight(&self, y: f64) -> f64 {
        self.q_scale * self.weight(self.q_scale * y)
    }

    fn unit_breakpoints(&self) -> Vec<f64> {
        self.breakpoints().iter().map(|x| x / self.q_scale).collect()
    }
}

/// `Σ*_{a mod q} e(an/q)` by explicit summation over reduced residues.
fn reduced_exponential_sum(n: i64, q: u64) -> f64 {
    if q == 1 {
        return 1.0;
    }
    let m = n.rem_euclid(q as i64) as u64;
    let mut acc = Neumaier::default();
    for a in 1..q {
        if gcd(a as i64, q as i64) == 1 {
            let k = (a * m) % q;
            acc.add((2.0 * PI * k as f64 / q as f64).cos());
        }
    }
    acc.value()
}

/// `Δ_q(n)` with `r <= Q/q + 8`, and the omitted tail.
fn delta_q(scheme: &DeltaScheme, q: u64, n: i64) -> (f64, f64) {
    let r_max = (scheme.q_scale / q as f64).floor() as u64 + 8;
    let un = n.unsigned_abs() as f64;
    let mut acc = Neumaier::default();
    for r in 1..=r_max {
        let d = (q * r) as f64;
        acc.add((scheme.weight(d) - scheme.weight(un / d)) / d);
    }
    // beyond r_max only w(|n|/(qr)) can survive, nonzero while qr <= |n|/(lo·Q)
    let (lo, _) = scheme.support();
    let mut tail = 0.0;
    let mut r = r_max + 1;
    while ((q * r) as f64) <= un / lo {
        let d = (q * r) as f64;
        tail += scheme.weight(un / d).abs() / d;
        r += 1;
    }
    (acc.value(), tail)
}

fn q_range(scheme: &DeltaScheme, n: i64) -> u64 {
    let (lo, hi) = scheme.support();
    hi.max(n.unsigned_abs() as f64 / lo).floor() as u64
}

/// `δ(n)` through the expansion; 1 at `n = 0`, 0 otherwise, up to rounding.
pub fn dfi_delta(n: i64, scheme: &DeltaScheme) -> Result<f64> {
    let q_max = q_range(scheme, n);
    let tail = sum_real(1..q_max as usize + 1, |q| delta_q(scheme, q as u64, n).1);
    if tail > TAIL_LIMIT {
        return Err(Error::TruncationWarning { tail, limit: TAIL_LIMIT });
    }
    Ok(sum_real(1..q_max as usize + 1, |q| {
        let q = q as u64;
        reduced_exponential_sum(n, q) * delta_q(scheme, q, n).0
    }))
}

/// One point of the `g(q, ζ)` reconstruction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GPoint {
    pub zeta: f64,
    /// `-2 Σ_{r>=1} Re ŵ0(rζ)` with `ŵ0` by quadrature
    pub g: f64,
    /// `1 - |ζ|^{-1} Σ_k w0(k/|ζ|)`, the Poisson-dual form
    pub g_dual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GReport {
    pub q: u64,
    pub points: Vec<GPoint>,
    /// `max |g - g_dual|`
    pub reconstruction_error: f64,
    /// `max |g - 1|` over `|ζ| <= 1/2`
    pub near_one_defect: f64,
    /// `max |g|` over `|ζ| >= 1`
    pub max_beyond_one: f64,
}

/// Frequency beyond which `|ŵ0|` is below `1e-15` for the box-smoothed
/// weight: the transitions have width `ℓ/Q`, and the bump transform decays
/// like `exp(-2√(πξ·ℓ/Q))`.
fn transform_cutoff(scheme: &DeltaScheme) -> f64 {
    let (_, l) = scheme.profile();
    let width = l / scheme.q_scale;
    let s = 36.0 / 2.0; // √(π ξ width) ≈ 18 gives e^{-36}
    s * s / (PI * width)
}

/// Reconstructs `g(q, ζ)` from `Δ_q` by Fourier inversion on a grid of `ζ`.
///
/// `Δ_q(u) = (qQ)^{-1} ∫ g(q, ζ) e(uζ/(qQ)) dζ` forces
/// `g(q, ζ) = -2 Σ_{r>=1} Re ŵ0(rζ)` for `ζ ≠ 0`; Poisson summation turns
/// this into `1 - |ζ|^{-1} Σ_k w0(k/|ζ|)`, used as the independent check.
pub fn g_properties_check(scheme: &DeltaScheme, q: u64, zetas: &[f64]) -> Result<GReport> {
    if q == 0 || q as f64 > 2.0 * scheme.q_scale {
        return Err(Error::InvalidArgument(format!("q = {q} must lie in [1, 2Q]")));
    }
    if zetas.iter().any(|z| *z == 0.0 || !z.is_finite()) {
        return Err(Error::InvalidArgument("ζ must be finite and nonzero".into()));
    }
    let cutoff = transform_cutoff(scheme);
    let bps = scheme.unit_breakpoints();
    let sampler = FourierSampler::new(|y| scheme.unit_weight(y), &bps, cutoff);
    let (lo, hi) = (bps[0], *bps.last().unwrap());
    let mut points = Vec::with_capacity(zetas.len());
    for &zeta in zetas {
        let z = zeta.abs();
        let r_max = (cutoff / z).floor().max(1.0) as usize;
        let g = -2.0 * sum_real(1..r_max + 1, |r| sampler.transform(r as f64 * z).re);
        let k_lo = (lo * z).ceil() as i64;
        let k_hi = (hi * z).floor() as i64;
        let mut acc = Neumaier::default();
        for k in k_lo.max(1)..=k_hi {
            acc.add(scheme.unit_weight(k as f64 / z));
        }
        let g_dual = 1.0 - acc.value() / z;
        points.push(GPoint { zeta, g, g_dual });
    }
    let reconstruction_error = points.iter().map(|p| (p.g - p.g_dual).abs()).fold(0.0, f64::max);
    let near_one_defect = points
        .iter()
        .filter(|p| p.zeta.abs() <= 0.5)
        .map(|p| (p.g - 1.0).abs())
        .fold(0.0, f64::max);
    let max_beyond_one = points.iter().filter(|p| p.zeta.abs() >= 1.0).map(|p| p.g.abs()).fold(0.0, f64::max);
    Ok(GReport { q, points, reconstruction_error, near_one_defect, max_beyond_one })
}

/// Both sides of `Σ_{m ≡ r (d)} h(m/M) = (M/d) Σ_j e(jr/d) ĥ(jM/d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonCheck {
    pub lattice: f64,
    pub dual: f64,
    pub dual_terms: u64,
    pub defect: f64,
}

/// Checks Poisson summation over the class `r mod d` for `h` a window.
///
/// `ĥ(ξ) = ∫ h(x) e(-xξ) dx`; the dual sum runs until `|ĥ|` stays below
/// `1e-15`.
pub fn poisson_congruence_check(h: &SmoothWindow, d: u64, m_scale: f64, r: i64) -> Result<PoissonCheck> {
    if d == 0 || d > 10_000 {
        return Err(Error::InvalidArgument(format!("modulus d = {d} must lie in [1, 10^4]")));
    }
    let (a, b) = h.support();
    // direct lattice sum over m ≡ r (d) with a·M < m < b·M
    let first = {
        let lo = (a * m_scale).ceil() as i64;
        lo + (r - lo).rem_euclid(d as i64)
    };
    let mut lattice = Neumaier::default();
    let mut m = first;
    while (m as f64) < b * m_scale {
        lattice.add(h.eval(m as f64 / m_scale));
        m += d as i64;
    }

    // transition width 1/Δ; transform below 1e-15 past ξ ≈ (18²/π)·Δ
    let cutoff = 18.0 * 18.0 / PI * h.sharpness();
    let sampler = FourierSampler::new(|x| h.eval(x), &h.breakpoints(), cutoff);
    let step = m_scale / d as f64;
    let j_max = (cutoff / step).floor() as i64;
    let rd = r.rem_euclid(d as i64) as f64 / d as f64;
    let mut dual = Neumaier::default();
    dual.add(sampler.transform(0.0).re);
    for j in 1..=j_max {
        // j and -j pair to 2 Re(e(jr/d) ĥ(jM/d)) for real h
        let hat = sampler.transform(j as f64 * step);
        let (s, c) = (2.0 * PI * (j as f64 * rd).fract()).sin_cos();
        dual.add(2.0 * (c * hat.re - s * hat.im));
    }
    let dual = step * dual.value();
    let lattice = lattice.value();
    Ok(PoissonCheck {
        lattice,
        dual,
        dual_terms: 2 * j_max as u64 + 1,
        defect: (lattice - dual).abs(),
    })
}
