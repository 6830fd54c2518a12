use std::sync::Arc;

use thiserror::Error;

use crate::chart::Chart;
use crate::symexpr::{Polynomial, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConnectionError {
    #[error("expected {expected} Christoffel symbols, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("connection has torsion: Γ^{k}_{{{i}{j}}} != Γ^{k}_{{{j}{i}}}", k = .k + 1, i = .i + 1, j = .j + 1)]
    Torsion { k: usize, i: usize, j: usize },
    #[error("index ({i}, {j}, {k}) out of range for dimension {dim}")]
    IndexOutOfRange {
        i: usize,
        j: usize,
        k: usize,
        dim: usize,
    },
    #[error("conflicting entries for Γ^{k}_{{{i}{j}}}", k = .k + 1, i = .i + 1, j = .j + 1)]
    Conflict { k: usize, i: usize, j: usize },
    #[error("Christoffel symbol depends on `{0}`, which is neither a coordinate nor a parameter")]
    ForeignVariable(String),
}

/// Torsion-free affine connection given by its Christoffel symbols
/// Γ^k_{ij} in the coordinates `coords`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineConnection {
    chart: Arc<Chart>,
    coords: Vec<Var>,
    gamma: Vec<Polynomial>,
}

impl AffineConnection {
    /// `gamma[(k * n + i) * n + j]` holds Γ^k_{ij}.
    pub fn new(
        chart: Arc<Chart>,
        coords: Vec<Var>,
        gamma: Vec<Polynomial>,
    ) -> Result<Self, ConnectionError> {
        let n = coords.len();
        if gamma.len() != n * n * n {
            return Err(ConnectionError::WrongLength {
                expected: n * n * n,
                got: gamma.len(),
            });
        }
        for k in 0..n {
            for i in 0..n {
                for j in i + 1..n {
                    if gamma[(k * n + i) * n + j] != gamma[(k * n + j) * n + i] {
                        return Err(ConnectionError::Torsion { k, i, j });
                    }
                }
            }
        }
        for p in &gamma {
            for v in p.vars_used() {
                if !coords.contains(&v) && !chart.params().contains(&v) {
                    return Err(ConnectionError::ForeignVariable(
                        chart.vars().name(v).to_string(),
                    ));
                }
            }
        }
        Ok(AffineConnection {
            chart,
            coords,
            gamma,
        })
    }

    /// Builds from sparse `(i, j, k, Γ^k_{ij})` entries (0-based); the
    /// symmetric partner is filled in and unlisted symbols are zero.
    pub fn from_entries<I>(chart: Arc<Chart>, coords: Vec<Var>, entries: I) -> Result<Self, ConnectionError>
    where
        I: IntoIterator<Item = (usize, usize, usize, Polynomial)>,
    {
        let n = coords.len();
        let mut gamma: Vec<Option<Polynomial>> = vec![None; n * n * n];
        for (i, j, k, p) in entries {
            if i >= n || j >= n || k >= n {
                return Err(ConnectionError::IndexOutOfRange { i, j, k, dim: n });
            }
            for (a, b) in [(i, j), (j, i)] {
                let slot = &mut gamma[(k * n + a) * n + b];
                match slot {
                    Some(existing) if *existing != p => {
                        return Err(ConnectionError::Conflict { k, i, j });
                    }
                    _ => *slot = Some(p.clone()),
                }
            }
        }
        let zero = chart.zero();
        let gamma = gamma.into_iter().map(|p| p.unwrap_or_else(|| zero.clone())).collect();
        Self::new(chart, coords, gamma)
    }

    pub fn zero(chart: Arc<Chart>, coords: Vec<Var>) -> Self {
        let n = coords.len();
        let gamma = vec![chart.zero(); n * n * n];
        AffineConnection {
            chart,
            coords,
            gamma,
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn coords(&self) -> &[Var] {
        &self.coords
    }

    pub fn nvars(&self) -> usize {
        self.chart.nvars()
    }

    /// Γ^k_{ij}.
    pub fn christoffel(&self, k: usize, i: usize, j: usize) -> &Polynomial {
        let n = self.dim();
        &self.gamma[(k * n + i) * n + j]
    }

    pub fn symbols(&self) -> &[Polynomial] {
        &self.gamma
    }

    /// Nonzero Γ^k_{ij} with i ≤ j, as `(i, j, k, value)`.
    pub fn nonzero_symbols(&self) -> Vec<(usize, usize, usize, &Polynomial)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let p = self.christoffel(k, i, j);
                    if !p.is_zero() {
                        out.push((i, j, k, p));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.iter().all(Polynomial::is_zero)
    }

    /// Applies `f` to every symbol; the result must stay torsion-free.
    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Result<Self, ConnectionError> {
        Self::new(
            self.chart.clone(),
            self.coords.clone(),
            self.gamma.iter().map(f).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_entries_symmetrises_and_detects_conflicts() {
        let chart = Chart::standard(2);
        let u1 = chart.parse("u1").unwrap();
        let c = AffineConnection::from_entries(
            chart.clone(),
            chart.base().to_vec(),
            [(0, 1, 0, u1.clone())],
        )
        .unwrap();
        assert_eq!(c.christoffel(0, 1, 0), &u1);
        let err = AffineConnection::from_entries(
            chart.clone(),
            chart.base().to_vec(),
            [(0, 1, 0, u1.clone()), (1, 0, 0, chart.one())],
        )
        .unwrap_err();
        assert_eq!(err, ConnectionError::Conflict { k: 0, i: 1, j: 0 });
    }

    #[test]
    fn rejects_torsion_and_foreign_variables() {
        let chart = Chart::standard(2);
        let mut gamma = vec![chart.zero(); 8];
        gamma[1] = chart.one();
        assert!(matches!(
            AffineConnection::new(chart.clone(), chart.base().to_vec(), gamma),
            Err(ConnectionError::Torsion { .. })
        ));
        let a1 = chart.parse("a1").unwrap();
        assert!(matches!(
            AffineConnection::from_entries(chart.clone(), chart.base().to_vec(), [(0, 0, 0, a1)]),
            Err(ConnectionError::ForeignVariable(_))
        ));
    }
}
