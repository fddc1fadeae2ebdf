use msf_bauer::{
    cholesky_banded, residual, spectral_factor, sweep, toeplitz_singular_values, BandedBlockToeplitz, BauerError,
    CholeskyStream,
};
use msf_filters::{sa4_family, SA4_T};
use msf_lpoly::{max_abs, product_filter, CausalMatrixFilter, ProductFilter};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn sa4_product() -> ProductFilter {
    product_filter(sa4_family(SA4_T).unwrap().lowpass())
}

fn scalar_product(c0: f64, c1: f64) -> ProductFilter {
    ProductFilter::new(
        1,
        vec![DMatrix::from_element(1, 1, c0), DMatrix::from_element(1, 1, c1)],
    )
    .unwrap()
}

fn textbook_cholesky(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let mut l = DMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= l[(j, k)] * l[(j, k)];
        }
        l[(j, j)] = d.sqrt();
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / l[(j, j)];
        }
    }
    l
}

const F81_REFERENCE: [[f64; 4]; 4] = [
    [0.094428373297668, 0.0, -0.091754813647953, 0.022310801334572],
    [
        0.175943193428843,
        0.679731045265413,
        0.010360133828403,
        -0.702056243347588,
    ],
    [
        0.000129414745433,
        0.700756678587017,
        0.165030422671601,
        0.681046913905671,
    ],
    [
        -0.081190837390599,
        0.021002135513698,
        -0.083853536287580,
        -0.001275235049147,
    ],
];

fn f81_reference() -> CausalMatrixFilter {
    CausalMatrixFilter::from_rows(2, &F81_REFERENCE.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

#[test]
fn scalar_f1_is_sqrt2() {
    let l = cholesky_banded(&BandedBlockToeplitz::new(scalar_product(2.0, 1.0), 1)).unwrap();
    assert_eq!(l.block(0, 0)[(0, 0)], 2f64.sqrt());
}

#[test]
fn scalar_diagonal_law() {
    let p = scalar_product(2.0, 1.0);
    let mut s = CholeskyStream::new(&p);
    for f in 1..=10_000usize {
        let taps = s.next_block_row().unwrap();
        let expect = (1.0 + 1.0 / f as f64).sqrt();
        assert!((taps.taps()[0][(0, 0)] - expect).abs() < 1e-12, "f = {f}");
    }
}

#[test]
fn scalar_f100_last_diagonal() {
    let l = cholesky_banded(&BandedBlockToeplitz::new(scalar_product(2.0, 1.0), 100)).unwrap();
    assert!((l.block(99, 99)[(0, 0)] - 1.01f64.sqrt()).abs() < 1e-12);
}

#[test]
fn sa4_f8_matches_dense_oracle() {
    let t = BandedBlockToeplitz::new(sa4_product(), 8);
    let dense = t.dense().unwrap();
    let l = cholesky_banded(&t).unwrap().to_dense();
    assert!(max_abs(&(&l * l.transpose() - &dense)) < 1e-10);
    assert!(max_abs(&(l - textbook_cholesky(&dense))) < 1e-10);
}

#[test]
fn banded_matches_dense_for_small_sizes() {
    let p = sa4_product();
    for f in 2..=12 {
        let t = BandedBlockToeplitz::new(p.clone(), f);
        let l = cholesky_banded(&t).unwrap();
        let oracle = textbook_cholesky(&t.dense().unwrap());
        assert!(max_abs(&(l.to_dense() - oracle)) < 1e-10, "f = {f}");
        for i in 0..f {
            for j in 0..i.saturating_sub(3) {
                assert!(l.block(i, j).iter().all(|&v| v == 0.0));
            }
        }
    }
}

#[test]
fn f81_matches_reference_taps() {
    let s = spectral_factor(&sa4_product(), 81).unwrap();
    let err = s.taps.max_abs_diff(&f81_reference()).unwrap();
    assert!(err < 1e-6, "max tap error {err:e}");
    assert_eq!(s.taps.taps()[0][(0, 1)], 0.0);
    assert!(s.taps.taps()[0][(0, 0)] > 0.0 && s.taps.taps()[0][(1, 1)] > 0.0);
}

#[test]
fn residual_of_reference_taps_agrees_with_computed_residual() {
    let p = sa4_product();
    let s = spectral_factor(&p, 81).unwrap();
    let printed = residual(&p, &f81_reference()).unwrap();
    assert!((s.residual - printed).abs() < 1e-8);
}

#[test]
fn residual_of_exact_factor_is_zero() {
    let h = sa4_family(SA4_T).unwrap();
    let p = product_filter(h.lowpass());
    assert!(residual(&p, h.lowpass()).unwrap() < 1e-15);
}

#[test]
fn residual_decreases_with_size() {
    let p = sa4_product();
    let r = sweep(&p, &[21, 81, 12042]);
    let v: Vec<f64> = r.iter().map(|x| x.result.as_ref().unwrap().residual).collect();
    assert!(v[0] > v[1] && v[1] > v[2], "{v:?}");
}

#[test]
fn haar_f50_close_to_haar() {
    let s = spectral_factor(&scalar_product(1.0, 0.5), 50).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for k in 0..2 {
        assert!((s.taps.taps()[k][(0, 0)] - h).abs() <= 1.0 / (2.0 * 50.0));
    }
}

#[test]
fn sweep_matches_independent_runs_in_order() {
    let p = sa4_product();
    let sizes = [81, 21, 40, 21];
    let r = sweep(&p, &sizes);
    assert_eq!(r.iter().map(|x| x.f).collect::<Vec<_>>(), sizes);
    for rec in &r {
        let solo = spectral_factor(&p, rec.f).unwrap();
        assert_eq!(rec.result.as_ref().unwrap(), &solo);
    }
    assert!(sweep(&p, &[]).is_empty());
}

#[test]
fn sweep_records_small_size_error_and_continues() {
    let p = sa4_product();
    let r = sweep(&p, &[2, 21]);
    assert!(matches!(r[0].result, Err(BauerError::SizeTooSmall { .. })));
    assert!(r[1].result.is_ok());
}

#[test]
fn indefinite_symbol_reports_block_row() {
    let p = ProductFilter::new(2, vec![DMatrix::identity(2, 2), DMatrix::identity(2, 2) * 0.9]).unwrap();
    assert!(spectral_factor(&p, 2).is_ok());
    let p = ProductFilter::new(2, vec![DMatrix::identity(2, 2), DMatrix::identity(2, 2) * 1.5]).unwrap();
    match spectral_factor(&p, 2).unwrap_err() {
        BauerError::NotPositiveDefinite {
            block_row,
            min_eigenvalue,
        } => {
            assert_eq!(block_row, 1);
            assert!((min_eigenvalue - (1.0 - 2.25)).abs() < 1e-12);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn singular_value_pattern_f20() {
    let s = toeplitz_singular_values(&sa4_product(), 20).unwrap();
    assert_eq!(s.len(), 40);
    assert!((s[19] - 1.0).abs() < 1e-8 && (s[20] - 1.0).abs() < 1e-8);
    assert!(s[..19].iter().all(|&v| v > 1.0 && v <= 2.0));
    assert!(s[21..].iter().all(|&v| (0.0..1.0).contains(&v)));
}

#[test]
fn identity_product_singular_values() {
    let p = ProductFilter::new(2, vec![DMatrix::identity(2, 2)]).unwrap();
    let s = toeplitz_singular_values(&p, 5).unwrap();
    assert!(s.iter().all(|&v| (v - 1.0).abs() < 1e-15));
    assert!(toeplitz_singular_values(&p, 3000).is_err());
}

fn random_halfband(seed: u64) -> ProductFilter {
    let th = (seed as f64) * 0.37 + 0.1;
    let t = 0.2 + (seed as f64 * 1.7) % 9.0;
    let u = DMatrix::from_row_slice(2, 2, &[th.cos(), th.sin(), -th.sin(), th.cos()]);
    let h = sa4_family(t).unwrap();
    product_filter(&h.lowpass().right_mul(&u).conjugate(&u))
}

#[test]
fn banded_matches_dense_on_random_halfband_products() {
    for seed in 0..20 {
        let p = random_halfband(seed);
        assert!(p.is_halfband(1e-12));
        for f in [4, 9] {
            let t = BandedBlockToeplitz::new(p.clone(), f);
            let l = cholesky_banded(&t).unwrap().to_dense();
            let oracle = textbook_cholesky(&t.dense().unwrap());
            assert!(max_abs(&(l - oracle)) < 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn prop_leading_block_is_prefix(f in 4usize..30) {
        let p = sa4_product();
        let big = cholesky_banded(&BandedBlockToeplitz::new(p.clone(), f + 1)).unwrap();
        let small = cholesky_banded(&BandedBlockToeplitz::new(p, f)).unwrap();
        let b = big.to_dense();
        let n = small.to_dense();
        prop_assert_eq!(b.view((0, 0), (2 * f, 2 * f)).into_owned(), n);
    }

    #[test]
    fn prop_llt_reproduces_t(f in 1usize..16, t in 0.2f64..10.0) {
        let p = product_filter(sa4_family(t).unwrap().lowpass());
        let tt = BandedBlockToeplitz::new(p, f);
        let l = cholesky_banded(&tt).unwrap().to_dense();
        prop_assert!(max_abs(&(&l * l.transpose() - tt.dense().unwrap())) < 1e-10);
    }
}
