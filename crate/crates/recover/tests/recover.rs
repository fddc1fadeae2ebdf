use msf_bauer::{spectral_factor, sweep, SpectralFactor};
use msf_filters::{sa4_family, FilterBank, SA4_T};
use msf_lpoly::{max_abs, product_filter, CausalMatrixFilter, ProductFilter};
use msf_recover::{
    complete_qr, error_report, exact_angle, qr_factor, recover_approximate, recover_exact, RecoverError, RecoveryMethod,
};
use nalgebra::DMatrix;
use proptest::prelude::*;

const APPROX_F21_REFERENCE: [f64; 4] = [
    0.011165766264837,
    0.088552225597447,
    0.691600252880066,
    0.088718768987217,
];

fn sa4() -> FilterBank {
    sa4_family(SA4_T).unwrap()
}

fn sa4_product() -> ProductFilter {
    product_filter(sa4().lowpass())
}

fn factor_of(taps: &CausalMatrixFilter) -> SpectralFactor {
    SpectralFactor {
        f: 0,
        taps: taps.clone(),
        residual: 0.0,
    }
}

fn orthogonality_sums(c: &CausalMatrixFilter, d: &CausalMatrixFilter) -> f64 {
    let mut worst: f64 = 0.0;
    for l in -1i64..=1 {
        let mut cc = DMatrix::zeros(2, 2);
        let mut dd = DMatrix::zeros(2, 2);
        let mut cd = DMatrix::zeros(2, 2);
        for k in 0..4i64 {
            cc += c.tap(k) * c.tap(k + 2 * l).transpose();
            dd += d.tap(k) * d.tap(k + 2 * l).transpose();
            cd += c.tap(k) * d.tap(k + 2 * l).transpose();
        }
        let target = if l == 0 {
            DMatrix::identity(2, 2)
        } else {
            DMatrix::zeros(2, 2)
        };
        worst = worst
            .max(max_abs(&(cc - &target)))
            .max(max_abs(&(dd - target)))
            .max(max_abs(&cd));
    }
    worst
}

#[test]
fn approximate_f21_magnitudes_match_reference() {
    let s = spectral_factor(&sa4_product(), 21).unwrap();
    let r = recover_approximate(&s).unwrap();
    assert_eq!(r.method, RecoveryMethod::Approximate);
    assert_eq!(r.f, 21);
    let c = r.bank.lowpass().taps();
    let got = [c[0][(0, 0)], c[0][(0, 1)], c[1][(0, 0)], c[1][(0, 1)]];
    for (g, t) in got.iter().zip(APPROX_F21_REFERENCE) {
        assert!((g - t).abs() < 1e-12, "{g} vs {t}");
    }
}

#[test]
fn approximate_f21_sign_pattern_matches_sa4() {
    let s = spectral_factor(&sa4_product(), 21).unwrap();
    let r = recover_approximate(&s).unwrap();
    for (x, y) in r.bank.lowpass().taps().iter().zip(sa4().lowpass().taps()) {
        for (a, b) in x.iter().zip(y.iter()) {
            assert_eq!(a.signum(), b.signum());
        }
    }
}

#[test]
fn approximate_f21_error_ledger() {
    let s = spectral_factor(&sa4_product(), 21).unwrap();
    let r = recover_approximate(&s).unwrap();
    let e = error_report(&r.bank, &sa4()).unwrap();
    assert!((e.mae_mf - 4.2797e-3).abs() < 1e-6, "{}", e.mae_mf);
    assert!((e.mse_mf - 4.6139e-6).abs() < 1e-9, "{}", e.mse_mf);
    assert_eq!(e.mae_mc[3], e.mae_mc[0]);
    assert_eq!(e.mae_mc[2], e.mae_mc[1]);
}

#[test]
fn approximate_completion_is_nearly_orthogonal() {
    let s = spectral_factor(&sa4_product(), 21).unwrap();
    let r = recover_approximate(&s).unwrap();
    let own = FilterBank::new("low", r.bank.lowpass().clone(), None)
        .unwrap()
        .orthogonality_defect();
    assert!((own - 0.0117).abs() < 1e-3, "{own}");
    assert!(
        r.bank.orthogonality_defect() <= own + 1e-12,
        "{}",
        r.bank.orthogonality_defect()
    );
}

#[test]
fn approximate_fixed_point_on_exact_sa4() {
    let h = sa4();
    let u = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
    let r = recover_approximate(&factor_of(&h.lowpass().right_mul(&u))).unwrap();
    assert!(r.bank.lowpass().max_abs_diff(h.lowpass()).unwrap() < 1e-15);
}

#[test]
fn structure_errors() {
    let three = CausalMatrixFilter::new(2, vec![DMatrix::identity(2, 2); 3]).unwrap();
    assert!(matches!(
        recover_approximate(&factor_of(&three)),
        Err(RecoverError::Structure { r: 2, taps: 3 })
    ));
    let scalar = CausalMatrixFilter::new(1, vec![DMatrix::identity(1, 1); 4]).unwrap();
    assert!(matches!(
        recover_exact(&factor_of(&scalar)),
        Err(RecoverError::Structure { .. })
    ));
    assert!(complete_qr(&three).is_err());
}

#[test]
fn domain_error_reports_value() {
    let big = CausalMatrixFilter::new(2, vec![DMatrix::from_element(2, 2, 1.0); 4]).unwrap();
    match exact_angle(&big).unwrap_err() {
        RecoverError::Domain { name, value } => {
            assert_eq!(name, "even");
            assert!((value - 8.0 / 2f64.sqrt()).abs() < 1e-12);
        }
        e => panic!("unexpected {e:?}"),
    }
}

#[test]
fn exact_recovery_at_large_sizes() {
    let p = sa4_product();
    let recs = sweep(&p, &[12042, 15400]);
    let at = |i: usize| recs[i].result.as_ref().unwrap();
    let e12 = recover_exact(at(0)).unwrap();
    let e15 = recover_exact(at(1)).unwrap();
    assert_eq!(e12.averaged.method, RecoveryMethod::ExactAveraged);
    assert_eq!(e12.rotated.theta, Some(e12.theta));
    assert!((e12.theta - 1.444630025395427).abs() < 1e-5);
    assert!((e15.theta - 1.444628609880879).abs() < 1e-5);
    let r3 = error_report(&e12.averaged.bank, &sa4()).unwrap();
    let r2 = error_report(&e15.rotated.bank, &sa4()).unwrap();
    assert!(r3.mae_mf > 8.285e-9 && r3.mae_mf < 8.285e-7, "{}", r3.mae_mf);
    assert!(r3.mse_mf > 3.835e-16 && r3.mse_mf < 3.835e-14, "{}", r3.mse_mf);
    assert!(r3.mae_mf * 100.0 <= r2.mae_mf, "{} vs {}", r3.mae_mf, r2.mae_mf);
    assert!(e12.averaged.bank.is_orthogonal(1e-6));
}

#[test]
fn rotated_bank_preserves_product() {
    let p = sa4_product();
    let s = spectral_factor(&p, 400).unwrap();
    let e = recover_exact(&s).unwrap();
    let a = product_filter(&s.taps);
    let b = product_filter(e.rotated.bank.lowpass());
    for k in 0..=3 {
        assert!(max_abs(&(a.coeff(k) - b.coeff(k))) < 1e-12);
    }
}

#[test]
fn qr_completion_of_exact_sa4_matches_reference_highpass() {
    let h = sa4();
    let d = complete_qr(h.lowpass()).unwrap();
    let want = h.highpass().unwrap().flatten();
    let got = d.flatten();
    for j in 0..8 {
        let same = (0..2).map(|i| (got[(i, j)] - want[(i, j)]).abs()).fold(0.0, f64::max);
        let flip = (0..2).map(|i| (got[(i, j)] + want[(i, j)]).abs()).fold(0.0, f64::max);
        assert!(same.min(flip) < 1e-7, "column {j}");
    }
    assert!(orthogonality_sums(h.lowpass(), &d) < 1e-10);
}

#[test]
fn qr_of_orthonormal_stack_is_identity_r() {
    let h = sa4();
    let scaled = h.lowpass().clone();
    let (q, r) = qr_factor(&scaled).unwrap();
    assert!(max_abs(&(q.transpose() * &q - DMatrix::identity(8, 8))) < 1e-13);
    let mut eye = DMatrix::zeros(8, 2);
    eye.view_mut((0, 0), (2, 2)).fill_with_identity();
    assert!(max_abs(&(r.columns(0, 2) - eye)) < 1e-13);
    let flat = scaled.flatten();
    for g in 0..2 {
        for k in 0..8 {
            assert!((q[(k, g)] - flat[(g, k)]).abs() < 1e-13);
        }
    }
}

#[test]
fn rank_deficient_lowpass_is_rejected() {
    let zero = CausalMatrixFilter::new(2, vec![DMatrix::zeros(2, 2); 4]).unwrap();
    assert!(matches!(
        complete_qr(&zero),
        Err(RecoverError::RankDeficient { index: 0, .. })
    ));
}

#[test]
fn error_report_self_is_zero_and_shapes_checked() {
    let h = sa4();
    let e = error_report(&h, &h).unwrap();
    assert_eq!(e.mae_mf, 0.0);
    assert_eq!(e.mse_mf, 0.0);
    assert_eq!(e.mae_mwf, Some(0.0));
    assert!(e.mae_mc.iter().chain(&e.mse_mc).all(|&v| v == 0.0));
    let other = FilterBank::new(
        "x",
        CausalMatrixFilter::new(2, vec![DMatrix::zeros(2, 2); 2]).unwrap(),
        None,
    )
    .unwrap();
    assert_eq!(error_report(&other, &h), Err(RecoverError::ShapeMismatch));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn prop_completion_orthogonal_for_family(t in 0.2f64..12.0) {
        let h = sa4_family(t).unwrap();
        let d = complete_qr(h.lowpass()).unwrap();
        prop_assert!(orthogonality_sums(h.lowpass(), &d) < 1e-10);
        let (q, _) = qr_factor(h.lowpass()).unwrap();
        prop_assert!(max_abs(&(q.transpose() * &q - DMatrix::identity(8, 8))) < 1e-13);
    }

    #[test]
    fn prop_error_report_bounds(t in 0.2f64..12.0, s in 0.2f64..12.0) {
        let e = error_report(&sa4_family(t).unwrap(), &sa4_family(s).unwrap()).unwrap();
        prop_assert!(e.mae_mf >= 0.0 && e.mse_mf >= 0.0);
        prop_assert!(e.mse_mf <= e.mae_mf * e.mae_mf);
        prop_assert!(e.mae_mwf.unwrap() >= 0.0 && e.mse_mwf.unwrap() <= e.mae_mwf.unwrap().powi(2));
    }

    #[test]
    fn prop_approximate_structural_equalities(f in 4usize..60) {
        let s = spectral_factor(&sa4_product(), f).unwrap();
        let r = recover_approximate(&s).unwrap();
        let e = error_report(&r.bank, &sa4()).unwrap();
        prop_assert_eq!(e.mae_mc[3], e.mae_mc[0]);
        prop_assert_eq!(e.mae_mc[2], e.mae_mc[1]);
    }
}
