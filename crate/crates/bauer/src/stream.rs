//! Forward banded Cholesky recursion over growing Toeplitz sizes.

use std::collections::VecDeque;

use nalgebra::DMatrix;
use twofloat::TwoFloat;

use msf_lpoly::{CausalMatrixFilter, ProductFilter};

use crate::{BauerError, Result};

/// Relative pivot tolerance: a pivot `s` is rejected unless `s > PIVOT_REL_TOL·‖P_0‖`.
pub const PIVOT_REL_TOL: f64 = 1e-13;

/// One scalar row of `L` restricted to the band: entries for columns
/// `start..=start+values.len()-1`, held in double-double precision.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct BandRow {
    pub(crate) start: usize,
    pub(crate) values: Vec<TwoFloat>,
}

impl BandRow {
    fn get_dd(&self, col: usize) -> TwoFloat {
        if col < self.start {
            TwoFloat::from(0.0)
        } else {
            self.values
                .get(col - self.start)
                .copied()
                .unwrap_or(TwoFloat::from(0.0))
        }
    }

    pub(crate) fn get(&self, col: usize) -> f64 {
        f64::from(self.get_dd(col))
    }
}

/// Row-oriented banded Cholesky of `T^{(∞)}`, advanced one block row at a time.
///
/// The recursion runs in double-double arithmetic; taps are rounded to `f64`
/// on output.
///
/// After `k` calls to [`next_block_row`](Self::next_block_row) the retained
/// rows are exactly the last block row of the Cholesky factor of `T^{(k)}`.
#[derive(Debug, Clone)]
pub struct CholeskyStream {
    r: usize,
    n: usize,
    w: usize,
    blocks: Vec<DMatrix<f64>>,
    pivot_tol: f64,
    ring: VecDeque<BandRow>,
    next_row: usize,
    failed: Option<BauerError>,
}

impl CholeskyStream {
    /// Starts the recursion for the Toeplitz matrix generated by `p`.
    pub fn new(p: &ProductFilter) -> Self {
        let r = p.r();
        let n = p.n();
        let blocks = (-(n as i64)..=n as i64).map(|k| p.coeff(k)).collect();
        let norm = p.coeff(0).abs().row_sum().max();
        Self {
            r,
            n,
            w: r * (n + 1) - 1,
            blocks,
            pivot_tol: PIVOT_REL_TOL * norm.max(f64::MIN_POSITIVE),
            ring: VecDeque::new(),
            next_row: 0,
            failed: None,
        }
    }

    /// Number of block rows factored so far.
    pub fn size(&self) -> usize {
        self.next_row / self.r
    }

    /// Scalar bandwidth `r(n+1) − 1` of the factor.
    pub fn bandwidth(&self) -> usize {
        self.w
    }

    fn t(&self, i: usize, j: usize) -> f64 {
        let d = (j / self.r) as i64 - (i / self.r) as i64;
        if d.unsigned_abs() as usize > self.n {
            0.0
        } else {
            self.blocks[(d + self.n as i64) as usize][(i % self.r, j % self.r)]
        }
    }

    fn t_dd(&self, i: usize, j: usize) -> TwoFloat {
        TwoFloat::from(self.t(i, j))
    }

    fn row(&self, i: usize) -> &BandRow {
        let first = self.next_row - self.ring.len();
        &self.ring[i - first]
    }

    /// Entries of scalar row `i` for columns `lo..limit`, given the rows already in the ring.
    fn off_diagonal(&self, i: usize, limit: usize, partial: &mut Vec<TwoFloat>) {
        let lo = i.saturating_sub(self.w);
        partial.clear();
        for j in lo..limit {
            let mut s = self.t_dd(i, j);
            let lj = self.row(j);
            for k in lo..j {
                s -= partial[k - lo] * lj.get_dd(k);
            }
            partial.push(s / lj.get_dd(j));
        }
    }

    /// Schur complement of the pivot block at block row `b`, formed when a pivot fails.
    fn pivot_block(&self, b: usize, current: usize, partial: &[TwoFloat]) -> DMatrix<f64> {
        let r = self.r;
        let start = b * r;
        let mut rows: Vec<(usize, Vec<TwoFloat>)> = Vec::with_capacity(r);
        for p in 0..r {
            let i = start + p;
            let lo = i.saturating_sub(self.w);
            let vals: Vec<TwoFloat> = if i < current {
                (lo..start).map(|c| self.row(i).get_dd(c)).collect()
            } else if i == current {
                partial[..start - lo].to_vec()
            } else {
                let mut v = Vec::new();
                self.off_diagonal(i, start, &mut v);
                v
            };
            rows.push((lo, vals));
        }
        DMatrix::from_fn(r, r, |p, q| {
            let (lo_p, vp) = &rows[p];
            let (lo_q, vq) = &rows[q];
            let mut s = self.t_dd(start + p, start + q);
            for c in (*lo_p).max(*lo_q)..start {
                s -= vp[c - lo_p] * vq[c - lo_q];
            }
            f64::from(s)
        })
    }

    fn push_row(&mut self) -> Result<()> {
        let i = self.next_row;
        let lo = i.saturating_sub(self.w);
        let mut vals: Vec<TwoFloat> = Vec::with_capacity(i - lo + 1);
        for j in lo..=i {
            let mut s = self.t_dd(i, j);
            if j == i {
                for v in &vals {
                    s -= v * v;
                }
                if f64::from(s).partial_cmp(&self.pivot_tol) != Some(std::cmp::Ordering::Greater) {
                    let b = i / self.r;
                    let block = self.pivot_block(b, i, &vals);
                    let sym = (&block + block.transpose()) * 0.5;
                    let min_eigenvalue = sym
                        .symmetric_eigenvalues()
                        .iter()
                        .copied()
                        .fold(f64::INFINITY, f64::min);
                    return Err(BauerError::NotPositiveDefinite {
                        block_row: b,
                        min_eigenvalue,
                    });
                }
                vals.push(s.sqrt());
            } else {
                let lj = self.row(j);
                for k in lo..j {
                    s -= vals[k - lo] * lj.get_dd(k);
                }
                vals.push(s / lj.get_dd(j));
            }
        }
        self.ring.push_back(BandRow {
            start: lo,
            values: vals,
        });
        while self.ring.len() > self.w.max(self.r) {
            self.ring.pop_front();
        }
        self.next_row += 1;
        Ok(())
    }

    /// Factors the next block row and returns the taps `C_k^{(f)} = L_{f−1, f−1−k}`,
    /// `k = 0..n`, where `f` is the new size. Taps with `f−1−k < 0` are zero.
    ///
    /// After a failure every later call returns the same error.
    pub fn next_block_row(&mut self) -> Result<CausalMatrixFilter> {
        if let Some(e) = &self.failed {
            return Err(e.clone());
        }
        for _ in 0..self.r {
            if let Err(e) = self.push_row() {
                self.failed = Some(e.clone());
                return Err(e);
            }
        }
        Ok(self.last_taps())
    }

    fn last_taps(&self) -> CausalMatrixFilter {
        let r = self.r;
        let b = self.size() - 1;
        let taps = (0..=self.n)
            .map(|k| {
                if k > b {
                    DMatrix::zeros(r, r)
                } else {
                    let c = b - k;
                    DMatrix::from_fn(r, r, |p, q| self.row(b * r + p).get(c * r + q))
                }
            })
            .collect();
        CausalMatrixFilter::new(r, taps).expect("taps are r×r by construction")
    }

    pub(crate) fn last_rows(&self) -> Vec<BandRow> {
        let first = self.next_row - self.r;
        (first..self.next_row).map(|i| self.row(i).clone()).collect()
    }

    /// Lowest-level access for [`BandedFactor`](crate::BandedFactor) assembly.
    pub(crate) fn advance_rows(&mut self) -> Result<Vec<BandRow>> {
        self.next_block_row()?;
        Ok(self.last_rows())
    }

    pub(crate) fn shape(&self) -> (usize, usize) {
        (self.r, self.n)
    }
}
