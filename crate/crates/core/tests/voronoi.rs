use num_complex::Complex64;
use oscsum_core::forms::build_eigenform;
use oscsum_core::quad::bessel_j;
use oscsum_core::voronoi::*;
use oscsum_core::{make_window, Error};
use std::f64::consts::PI;

fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn identity_on_listed_cases() {
    let f = build_eigenform(12, 20_000).unwrap();
    let h = make_window(1.0, 5.0, 1.0).unwrap();
    for (q, a, x) in [(1u64, 1i64, 50.0), (2, 1, 50.0), (5, 2, 100.0)] {
        let r = voronoi_check(&VoronoiInstance { form: &f, q, a, x, h }, None).unwrap();
        assert!(r.defect <= 1e-6, "q={q} a={a}: defect {}", r.defect);
        assert!(r.lhs.norm() > 1e-3, "nontrivial left side");
        if q == 5 {
            assert_eq!(r.a_inverse, 3);
        }
        if q == 1 {
            assert_eq!(r.a_inverse, 0);
        }
    }
}

#[test]
fn all_residues_for_small_moduli() {
    let f = build_eigenform(16, 20_000).unwrap();
    let h = make_window(1.0, 5.0, 1.0).unwrap();
    for q in 1..=3u64 {
        let reports = voronoi_check_all_residues(&f, q, 50.0, &h).unwrap();
        let expected: Vec<i64> = (0..q as i64).filter(|&a| oscsum_core::arith::gcd(a, q as i64) == 1).collect();
        assert_eq!(reports.iter().map(|r| r.0).collect::<Vec<_>>(), expected);
        for (a, r) in reports {
            assert!(r.defect <= 1e-6, "q={q} a={a}: {}", r.defect);
        }
    }
}

#[test]
fn rejects_noninvertible_and_short_dual_sums() {
    let f = build_eigenform(12, 1000).unwrap();
    let h = make_window(1.0, 5.0, 1.0).unwrap();
    let bad = VoronoiInstance { form: &f, q: 4, a: 2, x: 50.0, h };
    assert_eq!(voronoi_check(&bad, None), Err(Error::NonInvertible { a: 2, q: 4 }));
    let short = VoronoiInstance { form: &f, q: 2, a: 1, x: 50.0, h };
    assert!(matches!(voronoi_check(&short, Some(10)), Err(Error::TruncationWarning { .. })));
}

#[test]
fn transform_matches_dense_simpson() {
    let h = make_window(1.0, 2.0, 8.0).unwrap();
    let x: f64 = 25.0;
    let n = 200_000;
    let step = 1.0 / n as f64;
    let mut s = 0.0;
    for k in 0..=n {
        let y = 1.0 + k as f64 * step;
        let w = if k == 0 || k == n { 1.0 } else if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * h.eval(y) * bessel_j(11, 4.0 * PI * (x * y).sqrt());
    }
    let simpson = 2.0 * PI * s * step / 3.0;
    let v = phi_h_exact(x, &h, 12, 1e-11).unwrap();
    assert!((v - Complex64::new(simpson, 0.0)).norm() <= 1e-8, "{v} vs {simpson}");
}

#[test]
fn transform_small_and_large_argument() {
    let h = make_window(1.0, 2.0, 8.0).unwrap();
    let a = phi_h_exact(1e-4, &h, 12, 1e-12).unwrap().norm();
    let b = phi_h_exact(2e-4, &h, 12, 1e-12).unwrap().norm();
    // J_11(z) ~ z^11, z ∝ √x
    assert!(((b / a).log2() - 5.5).abs() < 1e-3);
    let big = phi_h_exact(1e4, &h, 12, 1e-12).unwrap().norm();
    assert!(big <= 10.0 * 1e4f64.powf(-0.25));
}

#[test]
fn expansion_error_orders() {
    let h = make_window(1.0, 2.0, 8.0).unwrap();
    let x = 100.0f64;
    let exact = phi_h_exact(x, &h, 12, 1e-13).unwrap();
    let e0 = (exact - phi_h_asymptotic(x, &h, 12, 0, 1e-13).unwrap()).norm();
    let e2 = (exact - phi_h_asymptotic(x, &h, 12, 2, 1e-13).unwrap()).norm();
    assert!(e0 <= x.powf(-0.75));
    assert!(e2 <= x.powf(-1.75));
    for kappa in [12, 16] {
        for j in 0..=2u32 {
            let pts: Vec<(f64, f64)> = (0..=8)
                .map(|k| {
                    let x = 100.0 * 10f64.powf(k as f64 / 4.0);
                    let ex = phi_h_exact(x, &h, kappa, 1e-13).unwrap();
                    let asy = phi_h_asymptotic(x, &h, kappa, j, 1e-13).unwrap();
                    (x.ln(), (ex - asy).norm().ln())
                })
                .collect();
            let s = slope(&pts);
            assert!(s <= -(j as f64 / 2.0 + 0.75) + 0.1, "kappa={kappa} J={j}: slope {s}");
        }
    }
}

#[test]
fn resonance_main_term() {
    let f = build_eigenform(12, 300_000).unwrap();
    let v = make_window(1.0, 2.0, 4.0).unwrap();
    let x = 1e5;
    let r1 = resonance_sum(&f, 1, x, &v).unwrap();
    assert!(r1.residual <= 50.0 * x.powf(0.25), "residual {}", r1.residual);
    let r2 = resonance_sum(&f, 2, x, &v).unwrap();
    let ratio = r2.main_term / r1.main_term;
    let expected = f.lambda(2) / 2f64.powf(0.25);
    assert!((ratio - Complex64::new(expected, 0.0)).norm() < 1e-12);
    let f_small = build_eigenform(12, 6000).unwrap();
    let a = resonance_sum(&f_small, 1, 1000.0, &v).unwrap();
    let b = resonance_sum(&f_small, 1, 2000.0, &v).unwrap();
    assert!((b.main_term / a.main_term - Complex64::new(2f64.powf(0.75), 0.0)).norm() < 1e-10);
}

#[test]
fn quoted_normalization_differs_by_unit() {
    let f = build_eigenform(12, 3000).unwrap();
    let g = build_eigenform(18, 3000).unwrap();
    let v = make_window(1.0, 2.0, 4.0).unwrap();
    let a = resonance_sum(&f, 1, 1000.0, &v).unwrap();
    assert!((a.main_term_quoted / a.main_term - Complex64::new(0.0, -1.0)).norm() < 1e-12);
    let b = resonance_sum(&g, 1, 1000.0, &v).unwrap();
    assert!((b.main_term_quoted / b.main_term - Complex64::new(0.0, 1.0)).norm() < 1e-12);
}
