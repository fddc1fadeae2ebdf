//! Seeded experiment helpers: synthetic inputs, round trips and denoising.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use msf_filters::{FilterBank, PrefilterPair};

use crate::{
    analyze2d, analyze_signal, estimate_sigma2d, hard_threshold2d, mae, psnr, synthesize2d, synthesize_signal,
    GrayImage, MwtError, Result,
};

/// Default seed for every randomized helper.
pub const DEFAULT_SEED: u64 = 20_260_101;

/// `n` standard normal samples.
pub fn random_signal(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()
}

/// `width×height` image with uniform samples in `[0, 255)`.
pub fn random_image(width: usize, height: usize, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = (0..width * height).map(|_| rng.gen_range(0.0..255.0)).collect();
    GrayImage { width, height, samples }
}

/// Deterministic piecewise-smooth test image with values in `[0, 255]`: a
/// diagonal gradient, a bright disc, a dark rectangle and a low-frequency
/// texture.
pub fn synthetic_image(size: usize) -> GrayImage {
    let s = size as f64;
    let mut samples = Vec::with_capacity(size * size);
    for y in 0..size {
        for x in 0..size {
            let (u, v) = (x as f64 / s, y as f64 / s);
            let mut p = 60.0 + 80.0 * (u + v) / 2.0;
            p += 15.0 * (2.0 * std::f64::consts::PI * 3.0 * u).sin() * (2.0 * std::f64::consts::PI * 2.0 * v).cos();
            if (u - 0.35).powi(2) + (v - 0.4).powi(2) < 0.04 {
                p = 210.0;
            }
            if (0.6..0.85).contains(&u) && (0.55..0.9).contains(&v) {
                p = 30.0;
            }
            samples.push(p.clamp(0.0, 255.0));
        }
    }
    GrayImage {
        width: size,
        height: size,
        samples,
    }
}

/// Adds i.i.d. Gaussian noise of standard deviation `sigma`; values are not clipped.
pub fn add_noise(img: &GrayImage, sigma: f64, seed: u64) -> Result<GrayImage> {
    let normal = Normal::new(0.0, sigma).map_err(|_| MwtError::NegativeSigma(sigma))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = img.samples.iter().map(|v| v + normal.sample(&mut rng)).collect();
    GrayImage::new(img.width, img.height, samples)
}

/// `I − Q·(Σ_k C_k C_kᵀ)·Qᵀ` for the lowpass of `b`.
pub fn balanced_orthogonality_defect(b: &FilterBank, q: &PrefilterPair) -> DMatrix<f64> {
    let r = b.r();
    let sum = b
        .lowpass()
        .taps()
        .iter()
        .fold(DMatrix::zeros(r, r), |acc, c| acc + c * c.transpose());
    DMatrix::identity(r, r) - q.q() * sum * q.q().transpose()
}

/// Max-abs error of the `levels`-level 1D round trip with prefiltering.
pub fn roundtrip_mae_1d(x: &[f64], b: &FilterBank, q: &PrefilterPair, levels: usize) -> Result<f64> {
    let t = analyze_signal(x, b, q, levels)?;
    mae(x, &synthesize_signal(&t, b, q)?)
}

/// PSNR of the `levels`-level 2D round trip; `f64::INFINITY` when exact.
pub fn roundtrip_psnr_2d(img: &GrayImage, b: &FilterBank, q: &PrefilterPair, levels: usize) -> Result<f64> {
    let rec = synthesize2d(&analyze2d(img, b, q, levels)?, b, q)?;
    match psnr(img, &rec) {
        Err(MwtError::InfinitePsnr) => Ok(f64::INFINITY),
        other => other,
    }
}

/// Decomposes, hard-thresholds and reconstructs `noisy`. When `sigma` is
/// `None` the noise level comes from [`estimate_sigma2d`]. Returns the
/// estimate together with the image.
pub fn denoise(
    noisy: &GrayImage,
    b: &FilterBank,
    q: &PrefilterPair,
    levels: usize,
    sigma: Option<f64>,
) -> Result<(GrayImage, f64)> {
    let tree = analyze2d(noisy, b, q, levels)?;
    let s = sigma.unwrap_or_else(|| estimate_sigma2d(&tree));
    let cleaned = hard_threshold2d(&tree, s)?;
    Ok((synthesize2d(&cleaned, b, q)?, s))
}

/// Outcome of one [`denoise_experiment`] level.
#[derive(Debug, Clone, PartialEq)]
pub struct DenoiseReport {
    /// Decomposition depth.
    pub levels: usize,
    /// Seed of the noise generator.
    pub seed: u64,
    /// Standard deviation of the added noise.
    pub noise_sigma: f64,
    /// Threshold scale used.
    pub sigma_used: f64,
    /// PSNR of the noisy image against the clean one.
    pub noisy_psnr: f64,
    /// PSNR of the denoised image against the clean one.
    pub denoised_psnr: f64,
}

/// Adds seeded noise to `clean` and denoises it at every depth in `levels`.
pub fn denoise_experiment(
    clean: &GrayImage,
    b: &FilterBank,
    q: &PrefilterPair,
    noise_sigma: f64,
    seed: u64,
    levels: &[usize],
) -> Result<Vec<DenoiseReport>> {
    let noisy = add_noise(clean, noise_sigma, seed)?;
    let noisy_psnr = psnr(clean, &noisy)?;
    levels
        .iter()
        .map(|&j| {
            let (rec, sigma_used) = denoise(&noisy, b, q, j, None)?;
            Ok(DenoiseReport {
                levels: j,
                seed,
                noise_sigma,
                sigma_used,
                noisy_psnr,
                denoised_psnr: psnr(clean, &rec)?,
            })
        })
        .collect()
}
