//! JSON bank documents.
//!
//! ```json
//! { "name": "sa4", "multiplicity": 2,
//!   "lowpass": [[c00, c01, c10, c11], ...],
//!   "highpass": [[...], ...] }
//! ```
//!
//! Each tap is a row-major array of `r·r` numbers. `highpass` may be omitted.
//! Numbers are written in the shortest decimal form that parses back to the
//! same `f64`, so documents round-trip bit for bit.

use serde::{Deserialize, Serialize};

use msf_lpoly::CausalMatrixFilter;

use crate::{FilterBank, Result};

/// Serialized form of a [`FilterBank`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BankDocument {
    /// Bank label.
    pub name: String,
    /// Multiplicity `r`.
    pub multiplicity: usize,
    /// Lowpass taps, each row-major with `r·r` entries.
    pub lowpass: Vec<Vec<f64>>,
    /// Optional highpass taps with the same shape.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub highpass: Option<Vec<Vec<f64>>>,
}

fn rows(f: &CausalMatrixFilter) -> Vec<Vec<f64>> {
    f.taps()
        .iter()
        .map(|m| m.transpose().iter().copied().collect())
        .collect()
}

impl BankDocument {
    /// Document for `b`.
    pub fn from_bank(b: &FilterBank) -> Self {
        Self {
            name: b.name().to_string(),
            multiplicity: b.r(),
            lowpass: rows(b.lowpass()),
            highpass: b.highpass().map(rows),
        }
    }

    /// Validates shapes and builds the bank.
    pub fn to_bank(&self) -> Result<FilterBank> {
        let low = CausalMatrixFilter::from_rows(self.multiplicity, &self.lowpass)?;
        let high = match &self.highpass {
            Some(h) => Some(CausalMatrixFilter::from_rows(self.multiplicity, h)?),
            None => None,
        };
        FilterBank::new(self.name.clone(), low, high)
    }
}

/// Pretty-printed JSON document for `b`.
pub fn serialize(b: &FilterBank) -> String {
    serde_json::to_string_pretty(&BankDocument::from_bank(b)).expect("bank documents always serialize")
}

/// Parses a JSON bank document.
pub fn deserialize(text: &str) -> Result<FilterBank> {
    let doc: BankDocument = serde_json::from_str(text)?;
    doc.to_bank()
}
