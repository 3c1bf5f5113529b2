//! Exact integer and rational primitives.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Upper end of the cached prime table used for trial division.
pub const SIEVE_LIMIT: u32 = 10_000_000;

static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();

/// Primes up to [`SIEVE_LIMIT`], computed on first use.
pub fn primes() -> &'static [u32] {
    PRIMES.get_or_init(|| primes_up_to(SIEVE_LIMIT as usize))
}

/// Sieve of Eratosthenes over odd numbers.
pub fn primes_up_to(n: usize) -> Vec<u32> {
    if n < 2 {
        return Vec::new();
    }
    let half = (n - 1) / 2; // odd numbers 3, 5, ..., index i <-> 2i + 3
    let mut composite = vec![false; half];
    let mut i = 0;
    while (2 * i + 3) * (2 * i + 3) <= n {
        if !composite[i] {
            let p = 2 * i + 3;
            let mut j = (p * p - 3) / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut out = vec![2u32];
    out.extend(
        composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(i, _)| (2 * i + 3) as u32),
    );
    out
}

/// Smallest-prime-factor table for `0..=n` (`spf[0] = spf[1] = 0`).
pub fn smallest_prime_factors(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Prime factorization as `(p, e)` pairs in increasing `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize needs n >= 1");
    let mut out = Vec::new();
    for &p in primes() {
        let p = p as u64;
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 {
        // Beyond (SIEVE_LIMIT)^2 the cofactor may be composite; desk-scale
        // inputs never get there.
        debug_assert!(n < (SIEVE_LIMIT as u64).pow(2));
        out.push((n, 1));
    }
    out
}

pub fn mobius(n: u64) -> i64 {
    let mut sign = 1;
    for (_, e) in factorize(n) {
        if e > 1 {
            return 0;
        }
        sign = -sign;
    }
    sign
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

pub fn gcd(a: i64, b: i64) -> u64 {
    a.unsigned_abs().gcd(&b.unsigned_abs())
}

/// Ramanujan sum `c_q(m) = sum_{d | gcd(m, q)} d * mu(q / d)`, with
/// `gcd(0, q) = q`.
pub fn ramanujan_sum(m: i64, q: u64) -> i64 {
    assert!(q >= 1);
    let g = gcd(m, q as i64).max(1);
    let g = if m == 0 { q } else { g };
    divisors(g)
        .into_iter()
        .map(|d| d as i64 * mobius(q / d))
        .sum()
}

/// Inverse of `a` modulo `q`, in `[0, q)`. For `q = 1` the answer is 0.
pub fn mod_inverse(a: i64, q: u64) -> Result<u64> {
    assert!(q >= 1);
    if q == 1 {
        return Ok(0);
    }
    let qi = q as i128;
    let (mut r0, mut r1) = ((a as i128).rem_euclid(qi), qi);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
    }
    if r0 != 1 {
        return Err(Error::NonInvertible { a, q });
    }
    Ok(s0.rem_euclid(qi) as u64)
}

/// Shorthand for the exact rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `num/den` rendering, also for integers (`"3/1"`).
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"a/b"`, `"a"`, or a signed version of either.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// True when `r` lies in the closed interval `[lo, hi]`.
pub fn in_closed(r: &Rational, lo: &Rational, hi: &Rational) -> bool {
    r >= lo && r <= hi
}

pub fn is_unit_fraction(r: &Rational) -> bool {
    r.numer().is_one() && r.denom().is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(7), -1);
        assert_eq!(mobius(6), 1);
    }

    #[test]
    fn ramanujan_examples() {
        assert_eq!(ramanujan_sum(5, 1), 1);
        assert_eq!(ramanujan_sum(0, 6), 2);
        assert_eq!(ramanujan_sum(2, 4), -2);
    }

    /// Complete additive-character sum, computed with complex exponentials.
    fn ramanujan_by_exponentials(m: i64, q: u64) -> f64 {
        (0..q)
            .filter(|&a| gcd(a as i64, q as i64) == 1)
            .map(|a| {
                let x = 2.0 * std::f64::consts::PI * ((a as i64 * m).rem_euclid(q as i64) as f64)
                    / q as f64;
                x.cos()
            })
            .sum()
    }

    #[test]
    fn ramanujan_matches_character_sum() {
        for q in 1..=40u64 {
            for m in -45i64..45 {
                let exact = ramanujan_sum(m, q) as f64;
                assert!((exact - ramanujan_by_exponentials(m, q)).abs() < 1e-9, "q={q} m={m}");
            }
        }
    }

    #[test]
    fn ramanujan_periodic_and_balanced() {
        for q in 1..=200u64 {
            let qi = q as i64;
            let mut total = 0;
            for m in 0..qi {
                let c = ramanujan_sum(m, q);
                assert_eq!(c, ramanujan_sum(m + qi, q));
                assert_eq!(c, ramanujan_sum(m - 3 * qi, q));
                total += c;
            }
            if q >= 2 {
                assert_eq!(total, 0, "q={q}");
            }
        }
        for q in 1..=500u64 {
            assert_eq!(ramanujan_sum(0, q), euler_phi(q) as i64);
        }
    }

    #[test]
    fn ramanujan_multiplicative() {
        for q1 in 1..=50u64 {
            for q2 in 1..=50u64 {
                if gcd(q1 as i64, q2 as i64) != 1 {
                    continue;
                }
                for m in 0..(q1 * q2) as i64 {
                    assert_eq!(
                        ramanujan_sum(m, q1 * q2),
                        ramanujan_sum(m, q1) * ramanujan_sum(m, q2)
                    );
                }
            }
        }
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(3, 7), Ok(5));
        for q in 2..30 {
            assert_eq!(mod_inverse(1, q), Ok(1));
        }
        assert_eq!(mod_inverse(2, 4), Err(Error::NonInvertible { a: 2, q: 4 }));
        assert_eq!(mod_inverse(5, 1), Ok(0));
        assert_eq!(mod_inverse(-2, 5), Ok(2));
    }

    #[test]
    fn sieve_and_factorization() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        let spf = smallest_prime_factors(100);
        assert_eq!(spf[91], 7);
        assert_eq!(spf[97], 97);
        assert_eq!(primes().len(), 664_579);
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rational_to_string(&rat(6, -4)), "-3/2");
        assert_eq!(parse_rational(" 13/84 ").unwrap(), rat(13, 84));
        assert_eq!(parse_rational("5").unwrap(), rat(5, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(is_unit_fraction(&rat(2, 712)));
    }

    proptest! {
        #[test]
        fn rational_add_sub_roundtrip(a in -10_000i64..10_000, b in 1i64..10_000,
                                      c in -10_000i64..10_000, d in 1i64..10_000) {
            let x = rat(a, b);
            let y = rat(c, d);
            prop_assert_eq!((&x + &y) - &y, x.clone());
            prop_assert!(x.denom() > &BigInt::zero());
        }
    }
}
