//! Reconstruction quality measures.

use crate::{GrayImage, MwtError, Result};

/// Peak signal-to-noise ratio `10·log₁₀(255²/MSE)` in dB.
pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    if a.width != b.width || a.height != b.height {
        return Err(MwtError::Dimension(format!(
            "{}x{} vs {}x{}",
            a.width, a.height, b.width, b.height
        )));
    }
    let n = a.samples.len().max(1) as f64;
    let mse = a
        .samples
        .iter()
        .zip(&b.samples)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        / n;
    if mse == 0.0 {
        return Err(MwtError::InfinitePsnr);
    }
    Ok(10.0 * (255.0f64 * 255.0 / mse).log10())
}

/// Maximum absolute difference between two equally long sample sequences.
pub fn mae(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(MwtError::Dimension(format!("lengths {} vs {}", a.len(), b.len())));
    }
    Ok(a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}
