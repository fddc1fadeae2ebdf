use msf_lpoly::{max_abs, product_filter, CausalMatrixFilter, MatrixLaurent, ProductFilter};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

const A: f64 = 0.011226792152545;
const B: f64 = 0.088388347648318;
const C: f64 = 0.695879989034003;

fn sa4_reference_lowpass() -> CausalMatrixFilter {
    CausalMatrixFilter::from_rows(
        2,
        &[
            vec![A, B, A, -B],
            vec![C, B, -C, B],
            vec![C, -B, C, B],
            vec![A, -B, -A, -B],
        ],
    )
    .unwrap()
}

fn scalar(v: f64) -> DMatrix<f64> {
    DMatrix::from_element(1, 1, v)
}

fn random_laurent(seed: u64, r: usize, kmin: i64, len: usize) -> MatrixLaurent {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let coeffs = (0..len)
        .map(|_| DMatrix::from_fn(r, r, |_, _| rng.gen_range(-1.0..1.0)))
        .collect();
    MatrixLaurent::new(r, kmin, coeffs).unwrap()
}

fn cmax(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0_f64, |a, v| a.max(v.norm()))
}

#[test]
fn adjoint_of_identity_is_identity() {
    let i = MatrixLaurent::identity(2);
    assert_eq!(i.adjoint(), i);
}

#[test]
fn adjoint_of_causal_pair_transposes_and_flips() {
    let h = sa4_reference_lowpass();
    let two = CausalMatrixFilter::new(2, h.taps()[..2].to_vec()).unwrap();
    let adj = two.to_laurent().adjoint();
    assert_eq!(adj.kmin(), 0);
    assert_eq!(adj.kmax(), 1);
    assert_eq!(adj.coeff(0), h.taps()[0].transpose());
    assert_eq!(adj.coeff(1), h.taps()[1].transpose());
}

#[test]
fn adjoint_is_involution_on_random_inputs() {
    for seed in 0..50 {
        let a = random_laurent(seed, 2, seed as i64 % 5 - 2, 1 + seed as usize % 6);
        assert_eq!(a.adjoint().adjoint(), a);
    }
}

#[test]
fn multiply_identity() {
    let i = MatrixLaurent::identity(3);
    assert_eq!(i.multiply(&i).unwrap(), i);
}

#[test]
fn multiply_scalar_binomial() {
    let a = MatrixLaurent::new(1, -1, vec![scalar(1.0), scalar(1.0)]).unwrap();
    let b = MatrixLaurent::new(1, 0, vec![scalar(1.0), scalar(1.0)]).unwrap();
    let p = a.multiply(&b).unwrap();
    assert_eq!(p.kmin(), -1);
    assert_eq!(p.kmax(), 1);
    assert_eq!(p.coeff(-1)[(0, 0)], 1.0);
    assert_eq!(p.coeff(0)[(0, 0)], 2.0);
    assert_eq!(p.coeff(1)[(0, 0)], 1.0);
}

#[test]
fn multiply_rejects_mismatched_multiplicity() {
    let a = MatrixLaurent::identity(1);
    let b = MatrixLaurent::identity(2);
    assert!(a.multiply(&b).is_err());
}

#[test]
fn multiply_matches_pointwise_evaluation() {
    let a = random_laurent(7, 2, -2, 4);
    let b = random_laurent(8, 2, 1, 3);
    let ab = a.multiply(&b).unwrap();
    for i in 0..16 {
        let w = 2.0 * PI * i as f64 / 16.0;
        let lhs = ab.evaluate(w);
        let rhs = a.evaluate(w) * b.evaluate(w);
        assert!(cmax(&(lhs - rhs)) < 1e-12);
    }
}

#[test]
fn product_filter_reproduces_closed_forms() {
    let s = 15f64.sqrt();
    let p1 = DMatrix::from_row_slice(
        2,
        2,
        &[4.0 * s + 17.0, 4.0 * s + 16.0, -4.0 * s - 16.0, -4.0 * s - 17.0],
    ) / 64.0;
    let p3 = DMatrix::from_row_slice(2, 2, &[15.0 - 4.0 * s, 4.0 * s - 16.0, 16.0 - 4.0 * s, 4.0 * s - 15.0]) / 64.0;
    let p = product_filter(&sa4_reference_lowpass());
    assert!(max_abs(&(p.coeff(0) - DMatrix::identity(2, 2))) < 1e-12);
    assert!(max_abs(&(p.coeff(1) - p1)) < 1e-12);
    assert!(max_abs(&p.coeff(2)) < 1e-12);
    assert!(max_abs(&(p.coeff(3) - &p3)) < 1e-12);
    assert!(max_abs(&(p.coeff(-3) - p3.transpose())) < 1e-12);
}

#[test]
fn product_of_single_orthogonal_tap_is_identity() {
    let (c, s) = (0.3f64.cos(), 0.3f64.sin());
    let h = CausalMatrixFilter::from_rows(2, &[vec![c, s, -s, c]]).unwrap();
    let p = product_filter(&h);
    assert_eq!(p.n(), 0);
    assert!(max_abs(&(p.coeff(0) - DMatrix::identity(2, 2))) < 1e-15);
}

#[test]
fn product_of_scalar_haar() {
    let h = CausalMatrixFilter::from_rows(1, &[vec![FRAC_1_SQRT_2], vec![FRAC_1_SQRT_2]]).unwrap();
    let p = product_filter(&h);
    assert!((p.coeff(0)[(0, 0)] - 1.0).abs() < 1e-15);
    assert!((p.coeff(1)[(0, 0)] - 0.5).abs() < 1e-15);
    assert!((p.coeff(-1)[(0, 0)] - 0.5).abs() < 1e-15);
}

#[test]
fn product_filter_equals_cauchy_product_with_adjoint() {
    let h = sa4_reference_lowpass();
    let hl = h.to_laurent();
    let direct = hl.multiply(&hl.adjoint()).unwrap();
    let p = product_filter(&h).to_laurent();
    assert!(p.approx_eq(&direct, 1e-14));
}

#[test]
fn halfband_predicate() {
    assert!(product_filter(&sa4_reference_lowpass()).is_halfband(1e-12));
    let twice = ProductFilter::new(2, vec![DMatrix::identity(2, 2) * 2.0]).unwrap();
    assert!(!twice.is_halfband(1e-12));
    let non_orth = CausalMatrixFilter::from_rows(
        2,
        &[
            vec![0.5, 0.1, 0.0, 0.3],
            vec![0.2, 0.4, 0.1, 0.0],
            vec![0.3, 0.0, 0.2, 0.1],
            vec![0.1, 0.2, 0.0, 0.4],
        ],
    )
    .unwrap();
    let p = product_filter(&non_orth);
    let direct = max_abs(&(p.coeff(0) - DMatrix::identity(2, 2))).max(max_abs(&p.coeff(2)));
    assert!(direct > 1e-3);
    assert!(!p.is_halfband(1e-12));
}

#[test]
fn evaluate_identity_and_scalar_symbol() {
    let i = MatrixLaurent::identity(2);
    let v = i.evaluate(1.234);
    assert!(cmax(&(v - DMatrix::identity(2, 2).map(|x| Complex64::new(x, 0.0)))) < 1e-15);
    let p = MatrixLaurent::new(1, -1, vec![scalar(1.0), scalar(2.0), scalar(1.0)]).unwrap();
    assert!((p.evaluate(0.0)[(0, 0)] - Complex64::new(4.0, 0.0)).norm() < 1e-15);
    assert!(p.evaluate(PI)[(0, 0)].norm() < 1e-15);
}

#[test]
fn sa4_product_symbol_is_hermitian_psd() {
    let p = product_filter(&sa4_reference_lowpass());
    for i in 0..256 {
        let w = 2.0 * PI * i as f64 / 256.0;
        let m = p.evaluate(w);
        assert!(cmax(&(&m - m.adjoint())) < 1e-14);
        let ev = m.clone().symmetric_eigenvalues();
        assert!(ev.iter().all(|&e| e >= -1e-10), "negative eigenvalue at {w}");
    }
}

#[test]
fn trim_normal_form() {
    let z = DMatrix::zeros(2, 2);
    let i = DMatrix::identity(2, 2);
    let a = MatrixLaurent::new(2, -3, vec![z.clone(), i.clone(), z.clone()]).unwrap();
    let t = a.trim(0.0);
    assert_eq!(t.kmin(), -2);
    assert_eq!(t.kmax(), -2);
    let zero = MatrixLaurent::new(2, 4, vec![z.clone(), z]).unwrap().trim(0.0);
    assert_eq!(zero, MatrixLaurent::zero(2));
}

#[test]
fn shape_errors() {
    assert!(MatrixLaurent::new(2, 0, vec![DMatrix::zeros(3, 2)]).is_err());
    assert!(MatrixLaurent::new(2, 0, vec![]).is_err());
    assert!(CausalMatrixFilter::from_rows(2, &[vec![1.0, 2.0, 3.0]]).is_err());
}

#[test]
fn flatten_round_trip() {
    let h = sa4_reference_lowpass();
    let flat = h.flatten();
    assert_eq!(flat.ncols(), 8);
    assert_eq!(flat[(1, 7)], -B);
    assert_eq!(CausalMatrixFilter::from_flat(2, &flat).unwrap(), h);
}

fn mat2() -> impl Strategy<Value = DMatrix<f64>> {
    prop::collection::vec(-1.0f64..1.0, 4).prop_map(|v| DMatrix::from_row_slice(2, 2, &v))
}

fn laurent2() -> impl Strategy<Value = MatrixLaurent> {
    (-3i64..3, prop::collection::vec(mat2(), 1..5)).prop_map(|(k, c)| MatrixLaurent::new(2, k, c).unwrap())
}

proptest! {
    #[test]
    fn prop_adjoint_involution(a in laurent2()) {
        prop_assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn prop_multiply_associative(a in laurent2(), b in laurent2(), c in laurent2()) {
        let l = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let r = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert!(l.max_abs_diff(&r).unwrap() < 1e-12);
    }

    #[test]
    fn prop_multiply_distributes(a in laurent2(), b in laurent2(), c in laurent2()) {
        let l = a.multiply(&b.add(&c).unwrap()).unwrap();
        let r = a.multiply(&b).unwrap().add(&a.multiply(&c).unwrap()).unwrap();
        prop_assert!(l.max_abs_diff(&r).unwrap() < 1e-12);
    }

    #[test]
    fn prop_product_symbol_psd(taps in prop::collection::vec(mat2(), 1..6)) {
        let p = product_filter(&CausalMatrixFilter::new(2, taps).unwrap());
        for i in 0..256 {
            let m = p.evaluate(2.0 * PI * i as f64 / 256.0);
            prop_assert!(cmax(&(&m - m.adjoint())) < 1e-12);
            prop_assert!(m.symmetric_eigenvalues().iter().all(|&e| e >= -1e-10));
        }
    }

    #[test]
    fn prop_product_invariant_under_right_orthogonal(taps in prop::collection::vec(mat2(), 1..6), th in 0.0f64..6.3, flip in any::<bool>()) {
        let h = CausalMatrixFilter::new(2, taps).unwrap();
        let s = if flip { -1.0 } else { 1.0 };
        let u = DMatrix::from_row_slice(2, 2, &[th.cos(), th.sin(), -s * th.sin(), s * th.cos()]);
        let a = product_filter(&h).to_laurent();
        let b = product_filter(&h.right_mul(&u)).to_laurent();
        prop_assert!(a.max_abs_diff(&b).unwrap() < 1e-12);
    }
}
