//! Documents, digests and formatting shared by the commands.

use std::io::Write;
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use msf_filters::{builtin, BankDocument, FilterBank, BUILTIN_NAMES};
use msf_lpoly::ProductFilter;

use crate::error::{CliError, Result};

/// Serialized product filter: `half[k]` is `P_k` row-major, `k = 0..=n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductDocument {
    /// Multiplicity `r`.
    pub multiplicity: usize,
    /// Coefficients `P_0, …, P_n`, each with `r·r` entries.
    pub half: Vec<Vec<f64>>,
}

fn row_major(m: &DMatrix<f64>) -> Vec<f64> {
    m.transpose().iter().copied().collect()
}

impl ProductDocument {
    /// Document for `p`.
    pub fn from_product(p: &ProductFilter) -> Self {
        Self {
            multiplicity: p.r(),
            half: p.half().iter().map(row_major).collect(),
        }
    }

    /// Validates shapes and builds the product filter.
    pub fn to_product(&self) -> Result<ProductFilter> {
        let r = self.multiplicity;
        let mats = self
            .half
            .iter()
            .enumerate()
            .map(|(k, v)| {
                if v.len() != r * r {
                    return Err(CliError::Io(format!(
                        "product coefficient {k} has {} entries, expected {}",
                        v.len(),
                        r * r
                    )));
                }
                Ok(DMatrix::from_row_slice(r, r, v))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ProductFilter::new(r, mats)?)
    }
}

/// Reads a whole file, mapping failures to exit code 3.
pub fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Hex SHA-256 of `bytes`.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// An input file together with its digest.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InputDigest {
    /// Path or builtin label as given on the command line.
    pub source: String,
    /// Hex SHA-256 of the file content, or of the serialized builtin.
    pub sha256: String,
}

/// Loads a bank from a document path or a builtin name.
pub fn load_bank(source: &str) -> Result<(FilterBank, InputDigest)> {
    let path = PathBuf::from(source);
    if path.exists() {
        let bytes = read_file(&path)?;
        let text = String::from_utf8(bytes.clone()).map_err(|e| CliError::Io(e.to_string()))?;
        let bank = msf_filters::deserialize(&text)?;
        return Ok((
            bank,
            InputDigest {
                source: source.to_string(),
                sha256: digest(&bytes),
            },
        ));
    }
    if BUILTIN_NAMES.contains(&source) {
        let bank = builtin(source)?;
        let sha256 = digest(msf_filters::serialize(&bank).as_bytes());
        return Ok((
            bank,
            InputDigest {
                source: source.to_string(),
                sha256,
            },
        ));
    }
    Err(CliError::Io(format!(
        "{source}: no such file and not a builtin bank ({})",
        BUILTIN_NAMES.join(", ")
    )))
}

/// Loads a product document.
pub fn load_product(path: &Path) -> Result<(ProductFilter, InputDigest)> {
    let bytes = read_file(path)?;
    let doc: ProductDocument = serde_json::from_slice(&bytes)?;
    Ok((
        doc.to_product()?,
        InputDigest {
            source: path.display().to_string(),
            sha256: digest(&bytes),
        },
    ))
}

/// Writes `bytes` to `path`, or to stdout when `path` is `None`.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Bank document text with a trailing newline.
pub fn bank_text(b: &FilterBank) -> String {
    let mut s = msf_filters::serialize(b);
    s.push('\n');
    s
}

/// Product document text with a trailing newline.
pub fn product_text(p: &ProductFilter) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&ProductDocument::from_product(p))?;
    s.push('\n');
    Ok(s)
}

/// Real number with 17 significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Parses `a..b` (inclusive), single values and comma-separated mixtures.
pub fn parse_sizes(spec: &str) -> Result<Vec<usize>> {
    let bad = || CliError::Usage(format!("invalid size list `{spec}`"));
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    Ok(out)
}

/// Entrywise comparison of a bank against a golden bank document.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    /// Golden document path.
    pub golden: String,
    /// Per-cell tolerance.
    pub tolerance: f64,
    /// Number of compared cells.
    pub cells: usize,
    /// Number of cells outside the tolerance.
    pub failures: usize,
    /// Largest absolute difference.
    pub max_abs_diff: f64,
}

fn compare_cells(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64, out: &mut Comparison) -> Result<()> {
    if a.len() != b.len() || a.iter().zip(b).any(|(x, y)| x.len() != y.len()) {
        return Err(CliError::Usage(format!(
            "golden document {} has a different shape",
            out.golden
        )));
    }
    for (x, y) in a.iter().flatten().zip(b.iter().flatten()) {
        let d = (x - y).abs();
        out.cells += 1;
        out.max_abs_diff = out.max_abs_diff.max(d);
        if d > tol || d.is_nan() {
            out.failures += 1;
        }
    }
    Ok(())
}

/// Compares lowpass taps, and highpass taps when both documents carry them.
pub fn compare_bank(b: &FilterBank, golden: &Path, tol: f64) -> Result<Comparison> {
    let bytes = read_file(golden)?;
    let doc: BankDocument = serde_json::from_slice(&bytes)?;
    let mine = BankDocument::from_bank(b);
    let mut c = Comparison {
        golden: golden.display().to_string(),
        tolerance: tol,
        cells: 0,
        failures: 0,
        max_abs_diff: 0.0,
    };
    compare_cells(&mine.lowpass, &doc.lowpass, tol, &mut c)?;
    if let (Some(x), Some(y)) = (&mine.highpass, &doc.highpass) {
        compare_cells(x, y, tol, &mut c)?;
    }
    Ok(c)
}

/// Compares product coefficients against a golden product document.
pub fn compare_product(p: &ProductFilter, golden: &Path, tol: f64) -> Result<Comparison> {
    let bytes = read_file(golden)?;
    let doc: ProductDocument = serde_json::from_slice(&bytes)?;
    let mut c = Comparison {
        golden: golden.display().to_string(),
        tolerance: tol,
        cells: 0,
        failures: 0,
        max_abs_diff: 0.0,
    };
    compare_cells(&ProductDocument::from_product(p).half, &doc.half, tol, &mut c)?;
    Ok(c)
}
