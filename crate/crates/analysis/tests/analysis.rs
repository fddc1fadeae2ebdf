use msf_analysis::{
    approximation_order, balance_order, coding_gain, detect_symmetry, frequency_response, gmp_order_111,
    gmp_order_111_with, mask, metrics, sobolev, symmetry_class, transition_matrix, AnalysisError, DEFAULT_RHO,
};
use msf_filters::{builtin, sa4_family, FilterBank, PrefilterPair, SA4_T};
use msf_lpoly::{max_abs, product_filter, CausalMatrixFilter};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;

fn bank(name: &str) -> FilterBank {
    builtin(name).unwrap()
}

fn balanced(b: &FilterBank) -> FilterBank {
    b.conjugated(PrefilterPair::haar().q())
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Time-domain oracle: largest p such that sequences `c_{k,j} = Σ_ℓ binom(k,ℓ) j^ℓ u_{k−ℓ}`
/// with `u_0 ≠ 0` satisfy `√2 Σ_j C_{i−2j}ᵀ c_{k,j} = 2^{−k} c_{k,i}` on a window of fine
/// indices, i.e. degree-`k` polynomials survive one cascade level.
fn cascade_order(c: &CausalMatrixFilter, p_max: usize) -> usize {
    let r = c.r();
    let n = c.n() as i64;
    let mut best = 0;
    for p in 1..=p_max {
        let span = 2 * p as i64 + n + 4;
        let fine: Vec<i64> = (-span..=span).collect();
        let mut a = DMatrix::zeros(fine.len() * r * p, r * p);
        for k in 0..p {
            let coef = |j: i64| {
                let mut m = DMatrix::zeros(r, r * p);
                for l in 0..=k {
                    let mut v = m.view_mut((0, (k - l) * r), (r, r));
                    v += DMatrix::<f64>::identity(r, r) * binom(k, l) * (j as f64).powi(l as i32);
                }
                m
            };
            for (row, &i) in fine.iter().enumerate() {
                let mut block = coef(i) * -(0.5f64.powi(k as i32));
                for j in -64i64..64 {
                    let m = i - 2 * j;
                    if (0..=n).contains(&m) {
                        block += c.tap(m).transpose() * coef(j) * std::f64::consts::SQRT_2;
                    }
                }
                let scale = (i.abs().max(1) as f64).powi(k as i32);
                a.view_mut(((k * fine.len() + row) * r, 0), (r, r * p))
                    .copy_from(&(block / scale));
            }
        }
        let svd = a.svd(false, true);
        let vt = svd.v_t.unwrap();
        let ok = svd
            .singular_values
            .iter()
            .enumerate()
            .filter(|(_, &s)| s < 1e-9)
            .any(|(i, _)| vt.row(i).columns(0, r).iter().any(|v| v.abs() > 1e-6));
        if !ok {
            break;
        }
        best = p;
    }
    best
}

#[test]
fn coding_gain_matches_reference_values() {
    for (name, db) in [("sa4", 3.73), ("ghm", 4.41), ("cl", 2.06)] {
        let cg = coding_gain(&bank(name), DEFAULT_RHO).unwrap();
        assert!((cg.db - db).abs() <= 0.1, "{name}: {}", cg.db);
        assert!((cg.db - 10.0 * cg.ratio.log10()).abs() < 1e-12);
        assert_eq!(cg.variances.len(), 4);
    }
    assert!((coding_gain(&bank("sa4"), DEFAULT_RHO).unwrap().db - 3.7322).abs() < 1e-4);
}

#[test]
fn coding_gain_white_input_is_one() {
    for name in ["sa4", "ghm", "cl", "haar-scalar"] {
        let cg = coding_gain(&bank(name), 0.0).unwrap();
        assert!((cg.ratio - 1.0).abs() < 1e-12, "{name}");
    }
}

#[test]
fn coding_gain_errors() {
    let b = bank("sa4");
    assert_eq!(coding_gain(&b, 1.0), Err(AnalysisError::RhoOutOfRange(1.0)));
    assert_eq!(coding_gain(&b, -0.1), Err(AnalysisError::RhoOutOfRange(-0.1)));
    let low = FilterBank::new("low", b.lowpass().clone(), None).unwrap();
    assert!(matches!(coding_gain(&low, 0.5), Err(AnalysisError::MissingHighpass(_))));
}

#[test]
fn coding_gain_reports_non_orthogonal_bank() {
    let b = bank("sa4");
    let skewed = FilterBank::new("skew", b.lowpass().scale(1.1), b.highpass().cloned()).unwrap();
    let cg = coding_gain(&skewed, DEFAULT_RHO).unwrap();
    assert!(cg.orthogonality_defect > 0.1);
    assert!(cg.ratio.is_finite());
}

#[test]
fn sobolev_matches_reference_values() {
    for (name, s) in [("sa4", 0.99), ("ghm", 1.5), ("cl", 1.06)] {
        let est = sobolev(&bank(name)).unwrap();
        assert!((est.value - s).abs() <= 0.05, "{name}: {}", est.value);
    }
    let h = sobolev(&bank("haar-scalar")).unwrap();
    assert!((h.value - 0.5).abs() < 1e-9);
}

#[test]
fn sobolev_needs_two_taps() {
    let one = FilterBank::new(
        "id",
        CausalMatrixFilter::new(2, vec![DMatrix::identity(2, 2)]).unwrap(),
        None,
    )
    .unwrap();
    assert_eq!(sobolev(&one).unwrap_err(), AnalysisError::TooFewTaps(1));
}

#[test]
fn transition_matrix_has_unit_eigenvalue() {
    for name in ["sa4", "ghm", "cl"] {
        let t = transition_matrix(bank(name).lowpass());
        let ev = t.complex_eigenvalues();
        assert!(
            ev.iter().any(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-9),
            "{name}"
        );
        assert!(ev.iter().all(|z| z.norm() <= 1.0 + 1e-9), "{name}");
    }
}

#[test]
fn detected_symmetries() {
    let s = detect_symmetry(bank("sa4").lowpass()).unwrap();
    assert_eq!(s.doubled_centers, vec![3, 3]);
    assert_eq!(s.signs, vec![1, -1]);
    let g = detect_symmetry(bank("ghm").lowpass()).unwrap();
    assert_eq!((g.doubled_centers, g.signs), (vec![1, 2], vec![1, 1]));
    let c = detect_symmetry(bank("cl").lowpass()).unwrap();
    assert_eq!((c.doubled_centers, c.signs), (vec![2, 2], vec![1, -1]));
}

#[test]
fn gmp_verdicts() {
    assert!(gmp_order_111(&bank("sa4")));
    assert!(!gmp_order_111(&bank("ghm")));
    assert!(!gmp_order_111(&bank("cl")));
    assert!(!gmp_order_111_with(&bank("sa4"), &PrefilterPair::identity(2)).unwrap());
    assert!(gmp_order_111_with(&bank("sa4"), &PrefilterPair::identity(3)).is_err());
}

#[test]
fn approximation_orders() {
    assert_eq!(approximation_order(&bank("ghm"), 6).unwrap(), 2);
    assert_eq!(approximation_order(&bank("sa4"), 6).unwrap(), 1);
    assert_eq!(approximation_order(&bank("haar-scalar"), 6).unwrap(), 1);
    assert_eq!(approximation_order(&bank("cl"), 6).unwrap(), 2);
    assert_eq!(
        approximation_order(&bank("sa4"), 0),
        Err(AnalysisError::InvalidOrder(0))
    );
}

#[test]
fn approximation_order_agrees_with_cascade_oracle() {
    for name in ["sa4", "ghm", "cl", "haar-scalar"] {
        let b = bank(name);
        let low = FilterBank::new(name, b.lowpass().clone(), None).unwrap();
        assert_eq!(
            approximation_order(&low, 5).unwrap(),
            cascade_order(b.lowpass(), 5),
            "{name}"
        );
        assert_eq!(
            approximation_order(&b, 5).unwrap(),
            approximation_order(&low, 5).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn balance_orders() {
    assert_eq!(balance_order(&bank("sa4"), 3).unwrap(), 0);
    assert!(balance_order(&balanced(&bank("sa4")), 3).unwrap() >= 1);
    assert_eq!(balance_order(&bank("haar-scalar"), 1).unwrap(), 1);
    assert_eq!(balance_order(&bank("haar-scalar"), 3).unwrap(), 1);
    assert_eq!(balance_order(&bank("sa4"), 0), Err(AnalysisError::InvalidOrder(0)));
}

#[test]
fn frequency_response_grid_and_dc() {
    let b = balanced(&bank("sa4"));
    let fr = frequency_response(&b, 2).unwrap();
    assert_eq!(fr.omega, vec![0.0, std::f64::consts::PI]);
    let h0 = &fr.lowpass[0];
    for i in 0..2 {
        assert!((h0.row(i).sum() - 1.0).abs() < 1e-10);
    }
    let e0 = DVector::from_element(2, Complex64::new(1.0, 0.0));
    let g0 = mask(b.highpass().unwrap(), 0.0) * &e0;
    assert!(g0.iter().all(|z| z.norm() < 1e-10));
    assert_eq!(frequency_response(&b, 1).unwrap_err(), AnalysisError::GridTooSmall(1));
    let fr = frequency_response(&b, 33).unwrap();
    assert_eq!(fr.lowpass.len(), 33);
    assert_eq!(fr.highpass.unwrap().len(), 33);
}

#[test]
fn power_complementarity_on_grid() {
    for name in ["sa4", "ghm", "cl"] {
        let b = bank(name);
        let p = product_filter(b.lowpass());
        let fr = frequency_response(&b, 65).unwrap();
        for &w in &fr.omega {
            let s = p.evaluate(w) + p.evaluate(w + std::f64::consts::PI);
            let err = (s - DMatrix::<Complex64>::identity(2, 2) * Complex64::new(2.0, 0.0))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-10, "{name} at {w}");
        }
    }
}

#[test]
fn symmetry_class_examples() {
    assert!(symmetry_class(&bank("sa4")));
    let one = FilterBank::new(
        "id",
        CausalMatrixFilter::new(2, vec![DMatrix::identity(2, 2)]).unwrap(),
        None,
    )
    .unwrap();
    assert!(symmetry_class(&one));
    let p = product_filter(bank("sa4").lowpass());
    let raw = msf_bauer::spectral_factor(&p, 81).unwrap();
    let raw = FilterBank::new("raw", raw.taps, None).unwrap();
    assert!(!symmetry_class(&raw));
    assert!(detect_symmetry(raw.lowpass()).is_none());
}

#[test]
fn metrics_report_is_consistent() {
    let m = metrics(&bank("sa4")).unwrap();
    assert!(m.coding_gain >= 1.0);
    assert!(m.gmp_111 && m.symmetric);
    assert_eq!((m.approx_order, m.balance_order), (1, 0));
    assert!(m.orthogonality_defect < 1e-14);
}

fn swapped(b: &FilterBank) -> FilterBank {
    FilterBank::new("swapped", b.highpass().unwrap().clone(), Some(b.lowpass().clone())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn prop_coding_gain_at_least_one(t in 0.2f64..12.0, rho in 0.0f64..0.99) {
        let cg = coding_gain(&sa4_family(t).unwrap(), rho).unwrap();
        prop_assert!(cg.ratio >= 1.0 - 1e-12);
    }

    #[test]
    fn prop_coding_gain_channel_permutation(t in 0.2f64..12.0, rho in 0.0f64..0.99) {
        let b = sa4_family(t).unwrap();
        let a = coding_gain(&b, rho).unwrap().ratio;
        let s = coding_gain(&swapped(&b), rho).unwrap().ratio;
        prop_assert!((a - s).abs() < 1e-12 * a);
    }

    #[test]
    fn prop_sa4_family_gmp(t in 0.2f64..12.0) {
        prop_assert!(gmp_order_111(&sa4_family(t).unwrap()));
    }

    #[test]
    fn prop_highpass_sign_invariance(t in 0.2f64..12.0) {
        let b = sa4_family(t).unwrap();
        let f = b.with_negated_highpass();
        prop_assert_eq!(gmp_order_111(&b), gmp_order_111(&f));
        prop_assert_eq!(approximation_order(&b, 4).unwrap(), approximation_order(&f, 4).unwrap());
        prop_assert_eq!(balance_order(&b, 3).unwrap(), balance_order(&f, 3).unwrap());
    }

    #[test]
    fn prop_power_complementary(t in 0.2f64..12.0, w in 0.0f64..std::f64::consts::PI) {
        let p = product_filter(sa4_family(t).unwrap().lowpass());
        let s = p.evaluate(w) + p.evaluate(w + std::f64::consts::PI);
        let d = (s - DMatrix::<Complex64>::identity(2, 2) * Complex64::new(2.0, 0.0)).map(|z| z.norm());
        prop_assert!(max_abs(&d) < 1e-10);
    }
}

#[test]
fn sa4_default_parameter_matches_constant() {
    let b = sa4_family(SA4_T).unwrap();
    assert_eq!(metrics(&b).unwrap().coding_gain, coding_gain(&b, 0.95).unwrap().ratio);
}
