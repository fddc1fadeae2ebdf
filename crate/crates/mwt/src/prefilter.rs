//! Vectorization of scalar signals.

use msf_filters::PrefilterPair;

use crate::{MwtError, Result};

/// A sequence of `r`-vectors stored contiguously: vector `i` is `data[i·r..(i+1)·r]`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSignal {
    r: usize,
    data: Vec<f64>,
}

impl VectorSignal {
    /// Wraps `data`, whose length must be a multiple of `r`.
    pub fn new(r: usize, data: Vec<f64>) -> Result<Self> {
        if r == 0 || !data.len().is_multiple_of(r) {
            return Err(MwtError::Length { len: data.len(), r });
        }
        Ok(Self { r, data })
    }

    /// `blocks` zero vectors.
    pub fn zeros(r: usize, blocks: usize) -> Self {
        Self {
            r,
            data: vec![0.0; r * blocks],
        }
    }

    /// Multiplicity.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of vectors.
    pub fn len(&self) -> usize {
        self.data.len() / self.r
    }

    /// `true` when there are no vectors.
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Vector `i`.
    pub fn block(&self, i: usize) -> &[f64] {
        &self.data[i * self.r..(i + 1) * self.r]
    }

    /// Mutable vector `i`.
    pub fn block_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.r..(i + 1) * self.r]
    }

    /// Flat storage.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Mutable flat storage.
    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Consumes the signal and returns the flat storage.
    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    /// Sum of squares of all entries.
    pub fn energy(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }
}

fn apply(q: &nalgebra::DMatrix<f64>, transpose: bool, input: &[f64], output: &mut [f64]) {
    let r = q.nrows();
    for (x, y) in input.chunks(r).zip(output.chunks_mut(r)) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = (0..r)
                .map(|j| if transpose { q[(j, i)] } else { q[(i, j)] } * x[j])
                .sum();
        }
    }
}

/// Maps consecutive groups `(x_{ri}, …, x_{ri+r−1})` through `Q`.
pub fn prefilter(x: &[f64], q: &PrefilterPair) -> Result<VectorSignal> {
    let r = q.r();
    if !x.len().is_multiple_of(r) {
        return Err(MwtError::Length { len: x.len(), r });
    }
    let mut out = vec![0.0; x.len()];
    apply(q.q(), false, x, &mut out);
    VectorSignal::new(r, out)
}

/// Inverse of [`prefilter`]: maps every vector through `Qᵀ` and concatenates.
pub fn postfilter(v: &VectorSignal, q: &PrefilterPair) -> Result<Vec<f64>> {
    if v.r() != q.r() {
        return Err(MwtError::Dimension(format!(
            "signal multiplicity {} vs prefilter {}",
            v.r(),
            q.r()
        )));
    }
    let mut out = vec![0.0; v.data().len()];
    apply(q.q(), true, v.data(), &mut out);
    Ok(out)
}
