//! Dense, variance-typed tensor fields with polynomial components.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::AffineConnection;
use crate::matrix::PolyMatrix;
use crate::symexpr::{EvalError, Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Slot {
    Upper,
    Lower,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("dimension mismatch: tensor has {tensor}, other has {other}")]
    DimensionMismatch { tensor: usize, other: usize },
    #[error("slot {0} does not exist")]
    BadSlot(usize),
    #[error("slots {0} and {1} have the same variance")]
    SameVariance(usize, usize),
    #[error("slot {slot} is {found:?}, expected {expected:?}")]
    WrongVariance {
        slot: usize,
        found: Slot,
        expected: Slot,
    },
    #[error("shape mismatch")]
    ShapeMismatch,
}

/// Components are stored row-major, first slot outermost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorField {
    dim: usize,
    nvars: usize,
    variance: Vec<Slot>,
    comps: Vec<Polynomial>,
}

/// Iterates all multi-indices of `rank` slots over `0..dim` in storage order.
pub fn multi_indices(dim: usize, rank: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = dim.pow(rank as u32);
    (0..total).map(move |mut flat| {
        let mut idx = vec![0; rank];
        for s in (0..rank).rev() {
            idx[s] = flat % dim;
            flat /= dim;
        }
        idx
    })
}

impl TensorField {
    pub fn zeros(dim: usize, variance: Vec<Slot>, nvars: usize) -> Self {
        let len = dim.pow(variance.len() as u32);
        TensorField {
            dim,
            nvars,
            variance,
            comps: vec![Polynomial::zero(nvars); len],
        }
    }

    pub fn from_fn(
        dim: usize,
        variance: Vec<Slot>,
        nvars: usize,
        mut f: impl FnMut(&[usize]) -> Polynomial,
    ) -> Self {
        let comps = multi_indices(dim, variance.len())
            .map(|idx| f(&idx))
            .collect();
        TensorField {
            dim,
            nvars,
            variance,
            comps,
        }
    }

    pub fn from_components(
        dim: usize,
        variance: Vec<Slot>,
        comps: Vec<Polynomial>,
    ) -> Result<Self, TensorError> {
        if comps.len() != dim.pow(variance.len() as u32) {
            return Err(TensorError::ShapeMismatch);
        }
        let nvars = comps.first().map(Polynomial::nvars).unwrap_or(0);
        Ok(TensorField {
            dim,
            nvars,
            variance,
            comps,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.variance.len()
    }

    pub fn variance(&self) -> &[Slot] {
        &self.variance
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &Polynomial {
        &self.comps[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Polynomial) {
        let o = self.offset(idx);
        self.comps[o] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Polynomial::is_zero)
    }

    /// Nonzero components in storage order.
    pub fn nonzero(&self) -> Vec<(Vec<usize>, &Polynomial)> {
        multi_indices(self.dim, self.rank())
            .zip(&self.comps)
            .filter(|(_, p)| !p.is_zero())
            .collect()
    }

    fn same_shape(&self, other: &TensorField) -> Result<(), TensorError> {
        if self.dim != other.dim || self.variance != other.variance {
            return Err(TensorError::ShapeMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorField) -> Result<TensorField, TensorError> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &TensorField) -> Result<TensorField, TensorError> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(
        &self,
        other: &TensorField,
        f: impl Fn(&Polynomial, &Polynomial) -> Polynomial,
    ) -> TensorField {
        TensorField {
            dim: self.dim,
            nvars: self.nvars,
            variance: self.variance.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> TensorField {
        TensorField {
            dim: self.dim,
            nvars: self.nvars,
            variance: self.variance.clone(),
            comps: self.comps.iter().map(f).collect(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Rational>, EvalError> {
        self.comps.iter().map(|p| p.eval(point)).collect()
    }

    /// Outer product; slots of `self` come first.
    pub fn tensor_product(&self, other: &TensorField) -> Result<TensorField, TensorError> {
        if self.dim != other.dim {
            return Err(TensorError::DimensionMismatch {
                tensor: self.dim,
                other: other.dim,
            });
        }
        let mut variance = self.variance.clone();
        variance.extend_from_slice(&other.variance);
        let mut comps = Vec::with_capacity(self.comps.len() * other.comps.len());
        for a in &self.comps {
            for b in &other.comps {
                comps.push(a * b);
            }
        }
        Ok(TensorField {
            dim: self.dim,
            nvars: self.nvars,
            variance,
            comps,
        })
    }

    /// Trace over an upper and a lower slot.
    pub fn contract(&self, upper: usize, lower: usize) -> Result<TensorField, TensorError> {
        let rank = self.rank();
        for s in [upper, lower] {
            if s >= rank {
                return Err(TensorError::BadSlot(s));
            }
        }
        if self.variance[upper] == self.variance[lower] {
            return Err(TensorError::SameVariance(upper, lower));
        }
        if self.variance[upper] != Slot::Upper {
            return Err(TensorError::WrongVariance {
                slot: upper,
                found: self.variance[upper],
                expected: Slot::Upper,
            });
        }
        let variance: Vec<Slot> = self
            .variance
            .iter()
            .enumerate()
            .filter(|(s, _)| *s != upper && *s != lower)
            .map(|(_, v)| *v)
            .collect();
        let mut full = vec![0; rank];
        Ok(TensorField::from_fn(self.dim, variance, self.nvars, |idx| {
            let mut rest = idx.iter();
            for (s, slot) in full.iter_mut().enumerate() {
                if s != upper && s != lower {
                    *slot = *rest.next().expect("index length");
                }
            }
            let mut acc = Polynomial::zero(self.nvars);
            for m in 0..self.dim {
                full[upper] = m;
                full[lower] = m;
                acc += self.get(&full);
            }
            acc
        }))
    }

    /// Covariant derivative; the new lower slot is prepended.
    pub fn covariant_derivative(&self, conn: &AffineConnection) -> Result<TensorField, TensorError> {
        let n = self.dim;
        if conn.dim() != n {
            return Err(TensorError::DimensionMismatch {
                tensor: n,
                other: conn.dim(),
            });
        }
        let rank = self.rank();
        let per_direction: Vec<Vec<Polynomial>> = (0..n)
            .into_par_iter()
            .map(|a| {
                let coord = conn.coords()[a];
                multi_indices(n, rank)
                    .map(|idx| {
                        let mut acc = self.get(&idx).diff(coord);
                        let mut probe = idx.clone();
                        for (s, kind) in self.variance.iter().enumerate() {
                            let orig = idx[s];
                            for l in 0..n {
                                probe[s] = l;
                                let t = self.get(&probe);
                                if t.is_zero() {
                                    continue;
                                }
                                match kind {
                                    // + Γ^{orig}_{a l} T^{..l..}
                                    Slot::Upper => {
                                        let g = conn.christoffel(orig, a, l);
                                        if !g.is_zero() {
                                            acc += &(g * t);
                                        }
                                    }
                                    // − Γ^{l}_{a orig} T_{..l..}
                                    Slot::Lower => {
                                        let g = conn.christoffel(l, a, orig);
                                        if !g.is_zero() {
                                            acc -= &(g * t);
                                        }
                                    }
                                }
                            }
                            probe[s] = orig;
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let mut variance = Vec::with_capacity(rank + 1);
        variance.push(Slot::Lower);
        variance.extend_from_slice(&self.variance);
        Ok(TensorField {
            dim: n,
            nvars: self.nvars,
            variance,
            comps: per_direction.into_iter().flatten().collect(),
        })
    }

    fn reindex_with(
        &self,
        matrix: &PolyMatrix,
        slot: usize,
        from: Slot,
        to: Slot,
    ) -> Result<TensorField, TensorError> {
        if slot >= self.rank() {
            return Err(TensorError::BadSlot(slot));
        }
        if self.variance[slot] != from {
            return Err(TensorError::WrongVariance {
                slot,
                found: self.variance[slot],
                expected: from,
            });
        }
        if matrix.dim() != self.dim {
            return Err(TensorError::DimensionMismatch {
                tensor: self.dim,
                other: matrix.dim(),
            });
        }
        let mut variance = self.variance.clone();
        variance[slot] = to;
        let mut probe = vec![0; self.rank()];
        Ok(TensorField::from_fn(self.dim, variance, self.nvars, |idx| {
            probe.copy_from_slice(idx);
            let mut acc = Polynomial::zero(self.nvars);
            for m in 0..self.dim {
                let g = &matrix[(idx[slot], m)];
                if g.is_zero() {
                    continue;
                }
                probe[slot] = m;
                let t = self.get(&probe);
                if !t.is_zero() {
                    acc += &(g * t);
                }
            }
            acc
        }))
    }

    /// Contracts an upper slot with the metric `g`; the slot keeps its position.
    pub fn lower_index(&self, g: &PolyMatrix, slot: usize) -> Result<TensorField, TensorError> {
        self.reindex_with(g, slot, Slot::Upper, Slot::Lower)
    }

    /// Contracts a lower slot with the inverse metric.
    pub fn raise_index(&self, g_inv: &PolyMatrix, slot: usize) -> Result<TensorField, TensorError> {
        self.reindex_with(g_inv, slot, Slot::Lower, Slot::Upper)
    }
}
