//! Vector hard thresholding of detail coefficients.

use crate::{MwtError, Result, TransformTree, Tree2d};

const MAD_SCALE: f64 = 0.6745;

/// Universal threshold `σ·√(2 ln N)` for a band of `n` scalar coefficients.
pub fn level_threshold(sigma: f64, n: usize) -> f64 {
    sigma * (2.0 * (n.max(1) as f64).ln()).sqrt()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn median(mut v: Vec<f64>) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma < 0.0 || sigma.is_nan() {
        return Err(MwtError::NegativeSigma(sigma));
    }
    Ok(())
}

/// `median(‖w‖₂) / 0.6745` over the finest detail vectors.
pub fn estimate_sigma(t: &TransformTree) -> f64 {
    t.details.first().map_or(0.0, |d| {
        median((0..d.len()).map(|i| norm(d.block(i))).collect()) / MAD_SCALE
    })
}

/// Zeros every detail vector `w` at level `j` with `‖w‖₂ < σ·√(2 ln N_j)`,
/// where `N_j` is the number of scalar detail coefficients at that level.
/// `sigma = 0` leaves the tree unchanged.
pub fn hard_threshold(t: &TransformTree, sigma: f64) -> Result<TransformTree> {
    check_sigma(sigma)?;
    let mut out = t.clone();
    for d in &mut out.details {
        let lambda = level_threshold(sigma, d.data().len());
        for i in 0..d.len() {
            let block = d.block_mut(i);
            if norm(block) < lambda {
                block.fill(0.0);
            }
        }
    }
    Ok(out)
}

/// Visits the detail vectors of level `j`: horizontally adjacent groups of
/// `r` samples inside the three detail blocks of the level-`j` quadrant.
fn for_each_vector(t: &Tree2d, j: usize, mut f: impl FnMut(usize)) {
    let (h, w) = t.quadrant(j);
    for y in 0..h {
        let mut x = if y < h / 2 { w / 2 } else { 0 };
        while x < w {
            f(y * t.width + x);
            x += t.r;
        }
    }
}

fn band_size(t: &Tree2d, j: usize) -> usize {
    let (h, w) = t.quadrant(j);
    3 * (h / 2) * (w / 2)
}

/// [`estimate_sigma`] over the finest level of a 2D tree.
pub fn estimate_sigma2d(t: &Tree2d) -> f64 {
    if t.levels == 0 {
        return 0.0;
    }
    let mut norms = Vec::new();
    for_each_vector(t, 1, |start| norms.push(norm(&t.coefficients[start..start + t.r])));
    median(norms) / MAD_SCALE
}

/// 2D counterpart of [`hard_threshold`]; `N_j` counts the scalar
/// coefficients of the three detail blocks of level `j`.
pub fn hard_threshold2d(t: &Tree2d, sigma: f64) -> Result<Tree2d> {
    check_sigma(sigma)?;
    let mut out = t.clone();
    for j in 1..=t.levels {
        let lambda = level_threshold(sigma, band_size(t, j));
        let mut starts = Vec::new();
        for_each_vector(t, j, |s| starts.push(s));
        for s in starts {
            let block = &mut out.coefficients[s..s + t.r];
            if norm(block) < lambda {
                block.fill(0.0);
            }
        }
    }
    Ok(out)
}
