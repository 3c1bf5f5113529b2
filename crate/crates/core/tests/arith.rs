use oscsum_core::arith::*;
use oscsum_core::Error;
use proptest::prelude::*;

#[test]
fn mobius_ramanujan_inverse_examples() {
    assert_eq!((mobius(1), mobius(12), mobius(30)), (1, 0, -1));
    assert_eq!(ramanujan_sum(5, 1), 1);
    assert_eq!(ramanujan_sum(0, 6), 2);
    // d ∈ {1, 2}: 1·μ(4) + 2·μ(2)
    assert_eq!(ramanujan_sum(2, 4), -2);
    assert_eq!(mod_inverse(3, 7), Ok(5));
    assert!((2..50).all(|q| mod_inverse(1, q) == Ok(1)));
    assert_eq!(mod_inverse(2, 4), Err(Error::NonInvertible { a: 2, q: 4 }));
}

#[test]
fn ramanujan_sums_exhaustively() {
    for q in 1..=200u64 {
        let qi = q as i64;
        for m in 0..qi {
            assert_eq!(ramanujan_sum(m, q), ramanujan_sum(m + 7 * qi, q));
        }
        if q >= 2 {
            assert_eq!((0..qi).map(|m| ramanujan_sum(m, q)).sum::<i64>(), 0, "q={q}");
        }
    }
    for q in 1..=500u64 {
        assert_eq!(ramanujan_sum(0, q), euler_phi(q) as i64);
    }
    for q1 in 1..=50u64 {
        for q2 in 1..=50u64 {
            if gcd(q1 as i64, q2 as i64) != 1 {
                continue;
            }
            for m in [0i64, 1, 6, 35, 210] {
                assert_eq!(ramanujan_sum(m, q1 * q2), ramanujan_sum(m, q1) * ramanujan_sum(m, q2));
            }
        }
    }
}

proptest! {
    #[test]
    fn rational_add_then_subtract(a in -10_000i64..10_000, b in 1i64..10_000, c in -10_000i64..10_000, d in 1i64..10_000) {
        let x = rat(a, b);
        let y = rat(c, d);
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(parse_rational(&rational_to_string(&x)).unwrap(), x);
    }

    #[test]
    fn inverse_times_unit_is_one(a in -100_000i64..100_000, q in 2u64..5_000) {
        match mod_inverse(a, q) {
            Ok(inv) => prop_assert_eq!((a.rem_euclid(q as i64) as u64 * inv) % q, 1),
            Err(_) => prop_assert!(gcd(a, q as i64) > 1),
        }
    }

    #[test]
    fn factorization_multiplies_back(n in 1u64..10_000_000) {
        let f = factorize(n);
        prop_assert_eq!(f.iter().map(|&(p, e)| p.pow(e)).product::<u64>(), n);
        prop_assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
    }
}
