//! Toeplitz assembly, factor extraction, residuals and sweeps.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;

use msf_lpoly::{max_abs, product_filter, CausalMatrixFilter, ProductFilter};

use crate::stream::{BandRow, CholeskyStream};
use crate::{BauerError, Result};

/// Largest dense order accepted by [`BandedBlockToeplitz::dense`] and
/// [`toeplitz_singular_values`].
pub const DENSE_LIMIT: usize = 4096;

/// The `f×f` block Toeplitz matrix with blocks `T_ij = P_{j−i}`, held implicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedBlockToeplitz {
    p: ProductFilter,
    f: usize,
}

impl BandedBlockToeplitz {
    /// Wraps `p` at block size `f`.
    pub fn new(p: ProductFilter, f: usize) -> Self {
        Self { p, f }
    }

    /// Generator product filter.
    pub fn product(&self) -> &ProductFilter {
        &self.p
    }

    /// Block size `f`.
    pub fn f(&self) -> usize {
        self.f
    }

    /// Block `T_ij = P_{j−i}`.
    pub fn block(&self, i: usize, j: usize) -> DMatrix<f64> {
        self.p.coeff(j as i64 - i as i64)
    }

    /// The dense `rf×rf` matrix, guarded by [`DENSE_LIMIT`].
    pub fn dense(&self) -> Result<DMatrix<f64>> {
        let r = self.p.r();
        let order = r * self.f;
        if order > DENSE_LIMIT {
            return Err(BauerError::TooLarge {
                order,
                limit: DENSE_LIMIT,
            });
        }
        let mut t = DMatrix::zeros(order, order);
        for i in 0..self.f {
            for j in 0..self.f {
                if (j as i64 - i as i64).unsigned_abs() as usize <= self.p.n() {
                    t.view_mut((i * r, j * r), (r, r)).copy_from(&self.block(i, j));
                }
            }
        }
        Ok(t)
    }
}

/// Lower Cholesky factor of `T^{(f)}` stored by scalar band rows.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedFactor {
    r: usize,
    n: usize,
    f: usize,
    rows: Vec<BandRow>,
}

impl BandedFactor {
    /// Block size `f`.
    pub fn f(&self) -> usize {
        self.f
    }

    /// Block `L_ij`; zero outside the band.
    pub fn block(&self, i: usize, j: usize) -> DMatrix<f64> {
        let r = self.r;
        DMatrix::from_fn(r, r, |p, q| {
            let (row, col) = (i * r + p, j * r + q);
            if col > row {
                0.0
            } else {
                self.rows[row].get(col)
            }
        })
    }

    /// Block row `i` as the blocks `L_{i,i−n}..L_{i,i}` (clipped at column 0).
    pub fn block_row(&self, i: usize) -> Vec<DMatrix<f64>> {
        (i.saturating_sub(self.n)..=i).map(|j| self.block(i, j)).collect()
    }

    /// Dense `rf×rf` lower-triangular matrix.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let order = self.r * self.f;
        DMatrix::from_fn(order, order, |i, j| if j > i { 0.0 } else { self.rows[i].get(j) })
    }
}

/// Cholesky factor of `t` computed inside the band, never forming the dense matrix.
pub fn cholesky_banded(t: &BandedBlockToeplitz) -> Result<BandedFactor> {
    let mut stream = CholeskyStream::new(t.product());
    let (r, n) = stream.shape();
    let mut rows = Vec::with_capacity(r * t.f());
    for _ in 0..t.f() {
        rows.extend(stream.advance_rows()?);
    }
    Ok(BandedFactor { r, n, f: t.f(), rows })
}

/// Approximate spectral factor read from the last block row of `L^{(f)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFactor {
    /// Block size used.
    pub f: usize,
    /// Taps `C_k^{(f)} = L_{f−1, f−1−k}`.
    pub taps: CausalMatrixFilter,
    /// Max-abs residual of `P(z) − L^{SF}(z) L^{SF*}(z)`.
    pub residual: f64,
}

impl SpectralFactor {
    /// The `r×r(n+1)` block row `[C_0 | … | C_n]`.
    pub fn flat(&self) -> DMatrix<f64> {
        self.taps.flatten()
    }
}

/// `max_k max_ij |(P_k − Σ_j C_j C_{j+k}ᵀ)_{ij}|` over all `k`.
pub fn residual(p: &ProductFilter, taps: &CausalMatrixFilter) -> Result<f64> {
    if p.r() != taps.r() {
        return Err(msf_lpoly::LpolyError::MultiplicityMismatch {
            left: p.r(),
            right: taps.r(),
        }
        .into());
    }
    let q = product_filter(taps);
    let n = p.n().max(q.n()) as i64;
    Ok((0..=n).map(|k| max_abs(&(p.coeff(k) - q.coeff(k)))).fold(0.0, f64::max))
}

fn min_size(p: &ProductFilter, f: usize) -> Result<()> {
    if f < p.n() + 1 {
        return Err(BauerError::SizeTooSmall { f, min: p.n() + 1 });
    }
    Ok(())
}

/// Spectral factor of `p` at block size `f ≥ n+1`.
pub fn spectral_factor(p: &ProductFilter, f: usize) -> Result<SpectralFactor> {
    min_size(p, f)?;
    let mut stream = CholeskyStream::new(p);
    let mut taps = None;
    for _ in 0..f {
        taps = Some(stream.next_block_row()?);
    }
    let taps = taps.expect("f ≥ 1");
    let residual = residual(p, &taps)?;
    Ok(SpectralFactor { f, taps, residual })
}

/// One entry of a [`sweep`].
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    /// Requested block size.
    pub f: usize,
    /// Factor, or the error raised for this size.
    pub result: Result<SpectralFactor>,
}

/// Spectral factors for every size in `f_values`, in input order.
///
/// All sizes share one forward pass; each record is bitwise identical to an
/// independent [`spectral_factor`] call.
pub fn sweep(p: &ProductFilter, f_values: &[usize]) -> Vec<SweepRecord> {
    let fmax = f_values.iter().copied().max().unwrap_or(0);
    let wanted: BTreeSet<usize> = f_values.iter().copied().collect();
    let mut found: BTreeMap<usize, Result<SpectralFactor>> = BTreeMap::new();
    let mut stream = CholeskyStream::new(p);
    for f in 1..=fmax {
        let step = stream.next_block_row();
        if wanted.contains(&f) {
            let entry = min_size(p, f).and(step).and_then(|taps| {
                let residual = residual(p, &taps)?;
                Ok(SpectralFactor { f, taps, residual })
            });
            found.insert(f, entry);
        }
    }
    f_values
        .iter()
        .map(|&f| SweepRecord {
            f,
            result: found
                .get(&f)
                .cloned()
                .unwrap_or_else(|| min_size(p, f).map(|_| unreachable!())),
        })
        .collect()
}

/// Singular values of the dense `T^{(f)}` in descending order.
pub fn toeplitz_singular_values(p: &ProductFilter, f: usize) -> Result<Vec<f64>> {
    let t = BandedBlockToeplitz::new(p.clone(), f).dense()?;
    let mut s: Vec<f64> = t.symmetric_eigenvalues().iter().map(|v| v.abs()).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}
