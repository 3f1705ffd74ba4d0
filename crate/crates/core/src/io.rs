//! JSON tensor files.
//!
//! ```json
//! { "order": 3, "dim": 2,
//!   "entries": [ { "index": [1, 1, 1], "value": -16.0 } ] }
//! ```
//!
//! Indices in `entries` are one-based and unspecified entries are zero. A
//! `dense` array holding all `dim^order` coefficients row-major may be given
//! instead of `entries`.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::Tensor;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub order: usize,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dense: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub index: Vec<usize>,
    pub value: f64,
}

impl TensorFile {
    pub fn into_tensor(self) -> Result<Tensor> {
        match (self.entries, self.dense) {
            (Some(_), Some(_)) => Err(Error::Parse("give either \"entries\" or \"dense\", not both".into())),
            (None, Some(dense)) => Tensor::new(self.order, self.dim, dense),
            (entries, None) => {
                let mut t = Tensor::zeros(self.order, self.dim)?;
                let mut seen = HashSet::new();
                for e in entries.unwrap_or_default() {
                    if e.index.contains(&0) {
                        return Err(Error::Parse(format!("index {:?} is not one-based", e.index)));
                    }
                    let zero_based: Vec<usize> = e.index.iter().map(|i| i - 1).collect();
                    let flat = t.flat_index(&zero_based)?;
                    if !seen.insert(flat) {
                        return Err(Error::Parse(format!("duplicate entry for index {:?}", e.index)));
                    }
                    t.set(&zero_based, e.value)?;
                }
                Ok(t)
            }
        }
    }

    /// Sparse listing of the nonzero coefficients.
    pub fn from_tensor(t: &Tensor) -> Self {
        let mut entries = Vec::new();
        let mut idx = vec![0usize; t.order()];
        for &c in t.coeffs() {
            if c != 0.0 {
                entries.push(Entry { index: idx.iter().map(|i| i + 1).collect(), value: c });
            }
            crate::tensor::odometer(&mut idx, t.dim());
        }
        Self { order: t.order(), dim: t.dim(), entries: Some(entries), dense: None }
    }
}

pub fn parse_tensor(text: &str) -> Result<Tensor> {
    let file: TensorFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_tensor()
}

pub fn read_tensor(path: &Path) -> Result<Tensor> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_tensor(&text)
}

pub fn tensor_to_json(t: &Tensor) -> String {
    serde_json::to_string_pretty(&TensorFile::from_tensor(t)).expect("tensor file serializes")
}
