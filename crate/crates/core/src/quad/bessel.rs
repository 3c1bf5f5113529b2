//! Bessel functions `J_n` of integer order.

use std::f64::consts::PI;

/// Largest supported order.
pub const MAX_ORDER: u32 = 64;

/// Crossover to the large-argument expansion.
fn asymptotic_threshold(order: u32) -> f64 {
    let nu = order as f64;
    25.0 + nu * nu / 2.0
}

/// `J_order(x)` for `x >= 0`.
pub fn bessel_j(order: u32, x: f64) -> f64 {
    assert!(order <= MAX_ORDER, "Bessel order {order} exceeds {MAX_ORDER}");
    assert!(x >= 0.0 && x.is_finite(), "Bessel argument must be finite and nonnegative");
    if x == 0.0 {
        return if order == 0 { 1.0 } else { 0.0 };
    }
    if x >= asymptotic_threshold(order) {
        hankel(order, x)
    } else {
        miller(order, x)
    }
}

/// Large-argument expansion `J_ν(x) = √(2/(πx)) (P cos χ - Q sin χ)`,
/// `χ = x - νπ/2 - π/4`, summed until terms stop decreasing.
fn hankel(order: u32, x: f64) -> f64 {
    let (p, q) = hankel_pq(order, x);
    let chi = x - (order as f64 / 2.0 + 0.25) * PI;
    // reduce χ modulo 2π with the integer multiple of π/4 split off exactly
    let (s, c) = chi_sin_cos(x, order);
    debug_assert!((c - chi.cos()).abs() < 1e-6);
    (2.0 / (PI * x)).sqrt() * (p * c - q * s)
}

/// `(sin χ, cos χ)` for `χ = x - (2ν + 1)π/4`, avoiding the rounding of the
/// large multiple of `π/4`.
fn chi_sin_cos(x: f64, order: u32) -> (f64, f64) {
    let (sx, cx) = x.sin_cos();
    // rotate by -(2ν + 1)·45°
    let k = (2 * order as usize + 1) % 8;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (sr, cr) = [
        (0.0, 1.0),
        (h, h),
        (1.0, 0.0),
        (h, -h),
        (0.0, -1.0),
        (-h, -h),
        (-1.0, 0.0),
        (-h, h),
    ][k];
    // sin(x - θ) = sx cθ - cx sθ; cos(x - θ) = cx cθ + sx sθ
    (sx * cr - cx * sr, cx * cr + sx * sr)
}

/// The `P, Q` series with `a_k(ν) = ∏_{j<=k}(4ν² - (2j-1)²) / (k! 8^k)`.
fn hankel_pq(order: u32, x: f64) -> (f64, f64) {
    let mu = 4.0 * (order as f64).powi(2);
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        if term == 0.0 {
            break;
        }
        if term.abs() > last && k > 2 {
            break;
        }
        last = term.abs();
        // k odd feeds Q with sign (-1)^{(k-1)/2}; k even feeds P with (-1)^{k/2}
        if k % 2 == 1 {
            q += if (k / 2) % 2 == 0 { term } else { -term };
        } else {
            p += if (k / 2) % 2 == 0 { term } else { -term };
        }
        if term.abs() < 1e-17 * p.abs().max(q.abs()) {
            break;
        }
    }
    (p, q)
}

/// Miller backward recurrence, normalized by `J_0 + 2 Σ J_{2k} = 1`.
fn miller(order: u32, x: f64) -> f64 {
    let n = order as usize;
    let top = (x.max(n as f64) + 20.0 + (40.0 * x.max(n as f64)).sqrt()) as usize;
    let start = top + (top % 2); // even
    let mut jp1 = 0.0f64; // J_{k+1}
    let mut jk = 1e-300f64; // J_k
    let mut norm = 0.0f64;
    let mut result = 0.0f64;
    let mut k = start;
    loop {
        if k == n {
            result = jk;
        }
        if k % 2 == 0 {
            norm += if k == 0 { jk } else { 2.0 * jk };
        }
        if k == 0 {
            break;
        }
        let jm1 = 2.0 * k as f64 / x * jk - jp1;
        jp1 = jk;
        jk = jm1;
        k -= 1;
        if jk.abs() > 1e250 {
            jk *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            result *= 1e-250;
        }
    }
    result / norm
}
