//! Separable periodic 2D transform on grayscale images.

use msf_filters::{FilterBank, PrefilterPair};

use crate::transform::{analyze_level, synthesize_level};
use crate::{postfilter, prefilter, MwtError, Result};

/// Row-major grayscale image with real samples.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    /// Number of columns.
    pub width: usize,
    /// Number of rows.
    pub height: usize,
    /// `samples[y·width + x]`.
    pub samples: Vec<f64>,
}

impl GrayImage {
    /// Wraps `samples`, which must hold `width·height` values.
    pub fn new(width: usize, height: usize, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != width * height {
            return Err(MwtError::Dimension(format!(
                "{} samples for a {width}x{height} image",
                samples.len()
            )));
        }
        Ok(Self { width, height, samples })
    }

    /// Sample at column `x`, row `y`.
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.samples[y * self.width + x]
    }
}

/// Coefficients of a 2D decomposition in the nested quadrant layout: after
/// level `j` the top-left `(H/2^j)×(W/2^j)` block holds the approximation and
/// the three neighbouring blocks of the enclosing quadrant hold the details.
#[derive(Debug, Clone, PartialEq)]
pub struct Tree2d {
    /// Image width.
    pub width: usize,
    /// Image height.
    pub height: usize,
    /// Number of levels.
    pub levels: usize,
    /// Multiplicity of the bank.
    pub r: usize,
    /// Row-major coefficients.
    pub coefficients: Vec<f64>,
    /// Label of the analysing bank.
    pub bank: String,
}

impl Tree2d {
    /// Size `(height, width)` of the quadrant analysed at level `j ≥ 1`.
    pub fn quadrant(&self, j: usize) -> (usize, usize) {
        (self.height >> (j - 1), self.width >> (j - 1))
    }

    /// Sum of squares of every coefficient.
    pub fn energy(&self) -> f64 {
        self.coefficients.iter().map(|v| v * v).sum()
    }
}

fn forward_line(x: &[f64], b: &FilterBank, q: &PrefilterPair) -> Result<Vec<f64>> {
    let (a, d) = analyze_level(&prefilter(x, q)?, b)?;
    let mut out = postfilter(&a, q)?;
    out.extend(postfilter(&d, q)?);
    Ok(out)
}

fn inverse_line(y: &[f64], b: &FilterBank, q: &PrefilterPair) -> Result<Vec<f64>> {
    let half = y.len() / 2;
    let a = prefilter(&y[..half], q)?;
    let d = prefilter(&y[half..], q)?;
    postfilter(&synthesize_level(&a, &d, b)?, q)
}

fn map_rows(
    data: &mut [f64],
    stride: usize,
    (h, w): (usize, usize),
    f: impl Fn(&[f64]) -> Result<Vec<f64>>,
) -> Result<()> {
    for y in 0..h {
        let row = &mut data[y * stride..y * stride + w];
        let out = f(row)?;
        row.copy_from_slice(&out);
    }
    Ok(())
}

fn map_cols(
    data: &mut [f64],
    stride: usize,
    (h, w): (usize, usize),
    f: impl Fn(&[f64]) -> Result<Vec<f64>>,
) -> Result<()> {
    let mut col = vec![0.0; h];
    for x in 0..w {
        for (y, c) in col.iter_mut().enumerate() {
            *c = data[y * stride + x];
        }
        for (y, v) in f(&col)?.into_iter().enumerate() {
            data[y * stride + x] = v;
        }
    }
    Ok(())
}

fn check_levels(width: usize, height: usize, r: usize, levels: usize) -> Result<()> {
    let unit = r << levels;
    if width == 0 || height == 0 || !width.is_multiple_of(unit) || !height.is_multiple_of(unit) {
        return Err(MwtError::Dimension(format!(
            "{width}x{height} image is not divisible by {unit} for {levels} levels"
        )));
    }
    Ok(())
}

fn check_pair(b: &FilterBank, q: &PrefilterPair) -> Result<()> {
    if b.r() != q.r() {
        return Err(MwtError::Dimension(format!(
            "bank multiplicity {} vs prefilter {}",
            b.r(),
            q.r()
        )));
    }
    Ok(())
}

/// `levels`-level separable decomposition. Each level transforms every row and
/// then every column of the current approximation quadrant by prefiltering,
/// one periodic analysis step and postfiltering of both halves. `levels = 0`
/// returns the samples unchanged.
pub fn analyze2d(img: &GrayImage, b: &FilterBank, q: &PrefilterPair, levels: usize) -> Result<Tree2d> {
    check_pair(b, q)?;
    if levels > 0 {
        check_levels(img.width, img.height, b.r(), levels)?;
        let defect = b.orthogonality_defect();
        if defect > crate::ORTHO_WARN {
            log::warn!("bank `{}` has orthogonality defect {defect:e}", b.name());
        }
    }
    let mut data = img.samples.clone();
    let (mut h, mut w) = (img.height, img.width);
    for _ in 0..levels {
        map_rows(&mut data, img.width, (h, w), |x| forward_line(x, b, q))?;
        map_cols(&mut data, img.width, (h, w), |x| forward_line(x, b, q))?;
        h /= 2;
        w /= 2;
    }
    Ok(Tree2d {
        width: img.width,
        height: img.height,
        levels,
        r: b.r(),
        coefficients: data,
        bank: b.name().to_string(),
    })
}

/// Inverse of [`analyze2d`] built from the adjoint bank.
pub fn synthesize2d(t: &Tree2d, b: &FilterBank, q: &PrefilterPair) -> Result<GrayImage> {
    check_pair(b, q)?;
    if t.coefficients.len() != t.width * t.height {
        return Err(MwtError::Dimension("coefficient count does not match the size".into()));
    }
    if t.levels > 0 {
        check_levels(t.width, t.height, b.r(), t.levels)?;
    }
    let mut data = t.coefficients.clone();
    for j in (1..=t.levels).rev() {
        let quad = t.quadrant(j);
        map_cols(&mut data, t.width, quad, |x| inverse_line(x, b, q))?;
        map_rows(&mut data, t.width, quad, |x| inverse_line(x, b, q))?;
    }
    GrayImage::new(t.width, t.height, data)
}
