use oscsum_core::arith::ramanujan_sum;
use oscsum_core::deltamethod::*;
use oscsum_core::make_window;

#[test]
fn delta_detects_zero_against_ramanujan_oracle() {
    let s = DeltaScheme::new(20.0).unwrap();
    assert!((dfi_delta(0, &s).unwrap() - 1.0).abs() <= 1e-8);
    for n in [1i64, 7, -7, 19] {
        assert!(dfi_delta(n, &s).unwrap().abs() <= 1e-8, "n={n}");
    }
    // the a-sum over reduced residues is c_q(n), exactly
    assert_eq!(ramanujan_sum(7, 7), 6);
}

#[test]
fn two_windows_agree() {
    let a = DeltaScheme::new(30.0).unwrap();
    let b = DeltaScheme::with_support(30.0, 0.55, 0.95).unwrap();
    for n in -20i64..=20 {
        let (va, vb) = (dfi_delta(n, &a).unwrap(), dfi_delta(n, &b).unwrap());
        let target = if n == 0 { 1.0 } else { 0.0 };
        assert!((va - target).abs() <= 1e-7 && (vb - target).abs() <= 1e-7, "n={n}");
        assert!((va - vb).abs() <= 2e-7);
    }
    assert!(DeltaScheme::with_support(30.0, 0.4, 0.9).is_err());
}

#[test]
fn g_reconstruction() {
    let s = DeltaScheme::new(50.0).unwrap();
    let r = g_properties_check(&s, 1, &[0.1, 1.0, 10.0]).unwrap();
    let g = |z: f64| r.points.iter().find(|p| p.zeta == z).unwrap().g;
    assert!((g(0.1) - 1.0).abs() <= 0.2);
    assert!(g(10.0).abs() <= g(1.0).abs() / 5.0);
    assert!(r.reconstruction_error < 1e-9);
    assert!(g_properties_check(&s, 50, &[0.5]).unwrap().points[0].g.is_finite());
}

#[test]
fn poisson_in_residue_classes() {
    let h = make_window(1.0, 2.0, 4.0).unwrap();
    assert!(poisson_congruence_check(&h, 1, 50.0, 0).unwrap().defect <= 1e-9);
    let plateau = make_window(0.5, 2.5, 4.0).unwrap();
    assert!(poisson_congruence_check(&plateau, 4, 100.0, 1).unwrap().defect <= 1e-8);
    for d in [3u64, 17, 100] {
        for r in [0i64, 1, -5] {
            for m in [200.0, 1000.0] {
                let c = poisson_congruence_check(&h, d, m, r).unwrap();
                assert!(c.defect <= 1e-8, "d={d} r={r} M={m}: {c:?}");
            }
        }
    }
}
