//! Number-theoretic transforms over word-sized primes and CRT reconstruction.
//!
//! Used to expand q-series products exactly: every coefficient is computed
//! modulo several NTT-friendly primes and lifted back with Garner's algorithm.

use std::sync::OnceLock;

use num_bigint::BigInt;

/// A prime `p < 2^31` with `2^24 | p - 1`, in Montgomery form (`R = 2^32`).
#[derive(Debug, Clone, Copy)]
pub(crate) struct Prime {
    pub p: u32,
    /// `-p^{-1} mod 2^32`
    pinv_neg: u32,
    /// `R^2 mod p`
    r2: u32,
    /// primitive root
    pub g: u32,
    /// 2-adic valuation of `p - 1`
    pub two_adicity: u32,
}

impl Prime {
    fn new(p: u32, g: u32) -> Self {
        let mut inv: u32 = 1;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u32.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u64 << 32) % p as u64) as u64;
        let r2 = (r * r % p as u64) as u32;
        Prime {
            p,
            pinv_neg: inv.wrapping_neg(),
            r2,
            g,
            two_adicity: (p - 1).trailing_zeros(),
        }
    }

    #[inline(always)]
    fn redc(&self, t: u64) -> u32 {
        let m = (t as u32).wrapping_mul(self.pinv_neg);
        let u = ((t + m as u64 * self.p as u64) >> 32) as u32;
        u.min(u.wrapping_sub(self.p))
    }

    #[inline(always)]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.redc(a as u64 * b as u64)
    }

    #[inline(always)]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        s.min(s.wrapping_sub(self.p))
    }

    #[inline(always)]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        let d = a.wrapping_sub(b);
        d.min(d.wrapping_add(self.p))
    }

    /// Plain residue to Montgomery form.
    #[inline(always)]
    pub fn to_mont(&self, a: u32) -> u32 {
        self.mul(a % self.p, self.r2)
    }

    #[inline(always)]
    pub fn from_mont(&self, a: u32) -> u32 {
        self.redc(a as u64)
    }

    /// Signed integer to Montgomery form.
    pub fn from_i64(&self, v: i64) -> u32 {
        self.to_mont(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn pow(&self, base_mont: u32, mut e: u64) -> u32 {
        let mut acc = self.to_mont(1);
        let mut b = base_mont;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a_mont: u32) -> u32 {
        self.pow(a_mont, (self.p - 2) as u64)
    }
}

fn is_prime_u32(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn primitive_root(p: u32) -> u32 {
    let n = p - 1;
    let mut factors = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&f| pow_mod(g as u64, (n / f) as u64, p as u64) != 1))
        .expect("prime has a primitive root")
}

static PRIMES: OnceLock<Vec<Prime>> = OnceLock::new();

/// NTT primes `k * 2^24 + 1 < 2^31`, largest first.
pub(crate) fn ntt_primes() -> &'static [Prime] {
    PRIMES.get_or_init(|| {
        (1u32..128)
            .rev()
            .map(|k| (k << 24) + 1)
            .filter(|&p| is_prime_u32(p))
            .map(|p| Prime::new(p, primitive_root(p)))
            .collect()
    })
}

/// Forward transform, natural order in, bit-reversed order out (DIF).
fn forward(pr: &Prime, a: &mut [u32]) {
    let n = a.len();
    let log = n.trailing_zeros();
    assert!(log <= pr.two_adicity, "transform length exceeds prime's 2-adicity");
    let mut len = n / 2;
    while len >= 1 {
        let w = pr.pow(pr.to_mont(pr.g), ((pr.p - 1) as u64) / (2 * len as u64));
        let tw = twiddles(pr, w, len);
        for block in a.chunks_exact_mut(2 * len) {
            let (lo, hi) = block.split_at_mut(len);
            for ((x, y), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(&tw) {
                let (u, v) = (*x, *y);
                *x = pr.add(u, v);
                *y = pr.mul(pr.sub(u, v), w);
            }
        }
        len /= 2;
    }
}

/// Inverse transform, bit-reversed order in, natural order out (DIT), scaled.
fn inverse(pr: &Prime, a: &mut [u32]) {
    let n = a.len();
    let mut len = 1;
    while len < n {
        let w = pr.pow(pr.to_mont(pr.g), ((pr.p - 1) as u64) / (2 * len as u64));
        let tw = twiddles(pr, pr.inv(w), len);
        for block in a.chunks_exact_mut(2 * len) {
            let (lo, hi) = block.split_at_mut(len);
            for ((x, y), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(&tw) {
                let u = *x;
                let v = pr.mul(*y, w);
                *x = pr.add(u, v);
                *y = pr.sub(u, v);
            }
        }
        len *= 2;
    }
    let ninv = pr.inv(pr.to_mont(n as u32));
    for x in a.iter_mut() {
        *x = pr.mul(*x, ninv);
    }
}

fn twiddles(pr: &Prime, w: u32, len: usize) -> Vec<u32> {
    let mut tw = Vec::with_capacity(len);
    let mut cur = pr.to_mont(1);
    for _ in 0..len {
        tw.push(cur);
        cur = pr.mul(cur, w);
    }
    tw
}

/// A series held in transformed form, ready for repeated products.
pub(crate) struct Transformed {
    data: Vec<u32>,
    len: usize,
}

impl Transformed {
    /// Transforms the first `len` terms of `a` at the size needed for a product
    /// truncated to `len` terms.
    pub fn new(pr: &Prime, a: &[u32], len: usize) -> Self {
        let size = (2 * len - 1).next_power_of_two();
        let mut data = vec![0u32; size];
        let a = &a[..a.len().min(len)];
        data[..a.len()].copy_from_slice(a);
        forward(pr, &mut data);
        Transformed { data, len }
    }

    /// `self · b`, truncated to `len` terms.
    pub fn mul(&self, pr: &Prime, b: &[u32]) -> Vec<u32> {
        let mut fb = vec![0u32; self.data.len()];
        let b = &b[..b.len().min(self.len)];
        fb[..b.len()].copy_from_slice(b);
        forward(pr, &mut fb);
        for (x, y) in fb.iter_mut().zip(&self.data) {
            *x = pr.mul(*x, *y);
        }
        inverse(pr, &mut fb);
        fb.truncate(self.len);
        fb
    }
}

/// Product of two series (Montgomery residues), truncated to `len` terms.
pub(crate) fn mul_truncated(pr: &Prime, a: &[u32], b: &[u32], len: usize) -> Vec<u32> {
    let a = &a[..a.len().min(len)];
    let b = &b[..b.len().min(len)];
    if a.is_empty() || b.is_empty() {
        return vec![0; len];
    }
    let size = (a.len() + b.len() - 1).next_power_of_two();
    let mut fa = vec![0u32; size];
    fa[..a.len()].copy_from_slice(a);
    forward(pr, &mut fa);
    if std::ptr::eq(a, b) {
        for x in fa.iter_mut() {
            *x = pr.mul(*x, *x);
        }
    } else {
        let mut fb = vec![0u32; size];
        fb[..b.len()].copy_from_slice(b);
        forward(pr, &mut fb);
        for (x, y) in fa.iter_mut().zip(&fb) {
            *x = pr.mul(*x, *y);
        }
    }
    inverse(pr, &mut fa);
    fa.truncate(len);
    fa.resize(len, 0);
    fa
}

/// Garner mixed-radix lift of residues `res[i] mod primes[i]` to a signed value
/// known to satisfy `|x| < prod(p) / 4`.
pub(crate) struct Crt<'a> {
    primes: &'a [Prime],
    /// `inv[i] = (p_0 ... p_{i-1})^{-1} mod p_i`, plain residues
    inv: Vec<u64>,
}

impl<'a> Crt<'a> {
    pub fn new(primes: &'a [Prime]) -> Self {
        let inv = (0..primes.len())
            .map(|i| {
                let pi = primes[i].p as u64;
                let prod = primes[..i].iter().fold(1u64, |acc, q| acc * q.p as u64 % pi);
                pow_mod(prod, pi - 2, pi)
            })
            .collect();
        Crt { primes, inv }
    }

    /// Mixed-radix digits of the residue vector (plain residues).
    fn digits(&self, res: &[u32]) -> Vec<u64> {
        let k = self.primes.len();
        let mut v = vec![0u64; k];
        for i in 0..k {
            let pi = self.primes[i].p as u64;
            let mut t = 0u64;
            for j in (0..i).rev() {
                t = (t * self.primes[j].p as u64 + v[j]) % pi;
            }
            v[i] = (res[i] as u64 + pi - t) % pi * self.inv[i] % pi;
        }
        v
    }

    /// Returns the digits of `|x|` and the sign.
    fn signed_digits(&self, res: &[u32]) -> (Vec<u64>, bool) {
        let mut v = self.digits(res);
        let k = v.len();
        let top = self.primes[k - 1].p as u64;
        let negative = v[k - 1] > top / 2;
        if negative {
            // M - x = (M - 1 - x) + 1, digitwise complement then carry
            let mut carry = 1u64;
            for i in 0..k {
                let pi = self.primes[i].p as u64;
                let d = pi - 1 - v[i] + carry;
                if d == pi {
                    v[i] = 0;
                    carry = 1;
                } else {
                    v[i] = d;
                    carry = 0;
                }
            }
        }
        (v, negative)
    }

    pub fn to_f64(&self, res: &[u32]) -> f64 {
        let (v, negative) = self.signed_digits(res);
        let mut acc = 0.0f64;
        for i in (0..v.len()).rev() {
            acc = acc * self.primes[i].p as f64 + v[i] as f64;
        }
        if negative {
            -acc
        } else {
            acc
        }
    }

    pub fn to_bigint(&self, res: &[u32]) -> BigInt {
        let (v, negative) = self.signed_digits(res);
        let mut acc = BigInt::from(0);
        for i in (0..v.len()).rev() {
            acc = acc * BigInt::from(self.primes[i].p) + BigInt::from(v[i]);
        }
        if negative {
            -acc
        } else {
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_mul(pr: &Prime, a: &[u32], b: &[u32], len: usize) -> Vec<u32> {
        let mut out = vec![0u32; len];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                if i + j < len {
                    out[i + j] = pr.add(out[i + j], pr.mul(x, y));
                }
            }
        }
        out
    }

    #[test]
    fn enough_primes_available() {
        let ps = ntt_primes();
        assert!(ps.len() >= 10, "{}", ps.len());
        for p in ps {
            assert!(p.two_adicity >= 24);
            assert!(p.p < (1 << 31));
        }
    }

    #[test]
    fn transform_product_matches_schoolbook() {
        let pr = &ntt_primes()[0];
        let a: Vec<u32> = (0..300).map(|i| pr.from_i64((i * i) as i64 - 7 * i as i64)).collect();
        let b: Vec<u32> = (0..257).map(|i| pr.from_i64(3 - (i as i64 % 11))).collect();
        assert_eq!(mul_truncated(pr, &a, &b, 400), naive_mul(pr, &a, &b, 400));
        assert_eq!(mul_truncated(pr, &a, &a, 500), naive_mul(pr, &a, &a, 500));
    }

    #[test]
    fn crt_recovers_signed_values() {
        let ps = &ntt_primes()[..5];
        let crt = Crt::new(ps);
        let x: i128 = -123_456_789_012_345_678_901_234_567;
        let res: Vec<u32> = ps
            .iter()
            .map(|p| x.rem_euclid(p.p as i128) as u32)
            .collect();
        assert_eq!(crt.to_bigint(&res), BigInt::from(x));
        assert!((crt.to_f64(&res) - x as f64).abs() <= 1e-15 * (x as f64).abs());
        let res: Vec<u32> = ps.iter().map(|p| (-x).rem_euclid(p.p as i128) as u32).collect();
        assert_eq!(crt.to_bigint(&res), BigInt::from(-x));
    }
}
