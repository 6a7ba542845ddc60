use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::refine::SecantStatus;
use crate::error::Result;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordStatus {
    Confirmed,
    Spurious,
    Unconverged,
}

/// A refined eigenvalue together with its provenance in the search tree.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueRecord {
    pub value: Complex64,
    pub error_estimate: f64,
    /// Residue of the AAA approximant at the unrefined pole.
    pub residue: Complex64,
    pub status: RecordStatus,
    /// Child indices from the root region down to the originating leaf.
    pub region_path: Vec<u32>,
    pub nullvectors: Option<Vec<Vec<Complex64>>>,
    /// Whether `value` lies in the root region proper (not only its slack).
    pub in_region: bool,
    pub secant_status: SecantStatus,
    pub secant_history: Vec<f64>,
    /// Set when the originating leaf never reached count agreement.
    pub unresolved_region: bool,
}

impl EigenvalueRecord {
    pub fn is_confirmed(&self) -> bool {
        self.status == RecordStatus::Confirmed
    }

    pub fn nullspace_dim(&self) -> Option<usize> {
        self.nullvectors.as_ref().map(Vec::len)
    }

    pub fn to_json_record(&self, seed: u64) -> RecordJson {
        RecordJson {
            value_re: self.value.re,
            value_im: self.value.im,
            error_estimate: self.error_estimate,
            status: self.status,
            residue_re: self.residue.re,
            residue_im: self.residue.im,
            region_path: self.region_path.clone(),
            seed,
            in_region: self.in_region,
            nullspace_dim: self.nullspace_dim(),
        }
    }
}

/// Flat JSON form of one record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecordJson {
    pub value_re: f64,
    pub value_im: f64,
    pub error_estimate: f64,
    pub status: RecordStatus,
    pub residue_re: f64,
    pub residue_im: f64,
    pub region_path: Vec<u32>,
    pub seed: u64,
    pub in_region: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nullspace_dim: Option<usize>,
}

impl RecordJson {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.value_re, self.value_im)
    }
}

/// Versioned results file written by the command-line tool.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultsDocument {
    pub schema: u32,
    pub seed: u64,
    pub problem: String,
    pub region: String,
    pub records: Vec<RecordJson>,
}

impl ResultsDocument {
    pub fn new(
        seed: u64,
        problem: impl Into<String>,
        region: impl Into<String>,
        records: &[EigenvalueRecord],
    ) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            seed,
            problem: problem.into(),
            region: region.into(),
            records: records.iter().map(|r| r.to_json_record(seed)).collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
