//! Machine-readable reports.
//!
//! Field order of every struct is the key order of the emitted JSON.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::CharPolyCertificate;
use crate::chart::Chart;
use crate::symexpr::{ParseError, Polynomial};
use crate::tensor::{Slot, TensorError, TensorField};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("component {index:?}: {source}")]
    Value { index: Vec<usize>, source: ParseError },
    #[error("component index {0:?} out of range")]
    Index(Vec<usize>),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("certificate coefficient {0}: {1}")]
    Coefficient(usize, ParseError),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub certificates: Vec<CertificateEntry>,
    pub checks: Vec<CheckEntry>,
    /// Properties that are reported but are not expected to hold.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub facts: Vec<FactEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tensors: Vec<TensorEntry>,
}

impl Report {
    pub fn new(command: &str, input: &str) -> Self {
        Report {
            command: command.to_string(),
            input: input.to_string(),
            ..Default::default()
        }
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub name: String,
    pub nilpotent: bool,
    /// `coeffs[i]` multiplies λ^i.
    pub coeffs: Vec<String>,
}

impl CertificateEntry {
    pub fn new(name: &str, cert: &CharPolyCertificate, chart: &Chart) -> Self {
        CertificateEntry {
            name: name.to_string(),
            nilpotent: cert.is_nilpotent(),
            coeffs: cert.coeffs().iter().map(|c| chart.fmt(c)).collect(),
        }
    }

    pub fn to_certificate(&self, chart: &Chart) -> Result<CharPolyCertificate, ReportError> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| chart.parse(c).map_err(|e| ReportError::Coefficient(i, e)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CharPolyCertificate::new(coeffs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactEntry {
    pub name: String,
    pub holds: bool,
    pub witness: Option<String>,
}

/// Nonzero components of a tensor; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorEntry {
    pub name: String,
    pub dim: usize,
    pub variance: Vec<Slot>,
    pub components: Vec<Component>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub index: Vec<usize>,
    pub value: String,
}

impl TensorEntry {
    pub fn new(name: &str, t: &TensorField, chart: &Chart) -> Self {
        TensorEntry {
            name: name.to_string(),
            dim: t.dim(),
            variance: t.variance().to_vec(),
            components: t
                .nonzero()
                .into_iter()
                .map(|(idx, p)| Component {
                    index: idx.iter().map(|i| i + 1).collect(),
                    value: chart.fmt(p),
                })
                .collect(),
        }
    }

    pub fn to_tensor(&self, chart: &Chart) -> Result<TensorField, ReportError> {
        let mut t = TensorField::zeros(self.dim, self.variance.clone(), chart.nvars());
        for c in &self.components {
            if c.index.len() != self.variance.len() || c.index.iter().any(|&i| i == 0 || i > self.dim) {
                return Err(ReportError::Index(c.index.clone()));
            }
            let p: Polynomial = chart.parse(&c.value).map_err(|source| ReportError::Value {
                index: c.index.clone(),
                source,
            })?;
            let idx: Vec<usize> = c.index.iter().map(|i| i - 1).collect();
            t.set(&idx, p);
        }
        Ok(t)
    }
}
