use thiserror::Error;

use crate::chart::Chart;
use crate::matrix::PolyMatrix;
use crate::symexpr::{Polynomial, Rational};
use crate::tensor::TensorField;

use super::charpoly::{charpoly, CharPolyCertificate};
use super::curvature::curvature;
use super::AffineConnection;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SzaboError {
    #[error("vector has {vector} components, connection has dimension {dim}")]
    DimensionMismatch { vector: usize, dim: usize },
}

/// Tangent vector X = Σ α_i ∂_i with polynomial components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicVector {
    components: Vec<Polynomial>,
}

impl SymbolicVector {
    pub fn new(components: Vec<Polynomial>) -> Self {
        SymbolicVector { components }
    }

    /// Components `a1..a{dim}` of the chart.
    pub fn symbolic(chart: &Chart, dim: usize) -> Self {
        assert!(dim <= chart.alpha().len(), "not enough vector variables");
        SymbolicVector {
            components: chart.alpha()[..dim].iter().map(|&v| chart.poly(v)).collect(),
        }
    }

    pub fn constant(chart: &Chart, values: &[Rational]) -> Self {
        SymbolicVector {
            components: values
                .iter()
                .map(|x| Polynomial::constant(chart.nvars(), x.clone()))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }
}

/// Contracts the last slot of `t` with `x`.
fn contract_last(t: &[Polynomial], x: &[Polynomial]) -> Vec<Polynomial> {
    let n = x.len();
    t.chunks(n)
        .map(|chunk| {
            let mut acc = Polynomial::zero(x[0].nvars());
            for (c, xi) in chunk.iter().zip(x) {
                if !c.is_zero() && !xi.is_zero() {
                    acc += &(c * xi);
                }
            }
            acc
        })
        .collect()
}

/// Szabó matrix from a precomputed ∇R laid out as `[a, h, k, j, i]`:
/// S[h][k] = Σ X^a X^j X^i (∇_a R)^h_{kji}, so S(X)Y = (∇_X R)(Y, X)X.
pub fn szabo_from_nabla_r(nabla_r: &TensorField, x: &SymbolicVector) -> PolyMatrix {
    let n = nabla_r.dim();
    let comps = nabla_r.components();
    let xs = x.components();
    // Contract i, then j.
    let t1 = contract_last(comps, xs);
    let t2 = contract_last(&t1, xs);
    // t2 is laid out [a, h, k]; contract a.
    let nvars = nabla_r.nvars();
    PolyMatrix::from_fn(n, nvars, |h, k| {
        let mut acc = Polynomial::zero(nvars);
        for (a, xa) in xs.iter().enumerate() {
            let c = &t2[(a * n + h) * n + k];
            if !c.is_zero() && !xa.is_zero() {
                acc += &(c * xa);
            }
        }
        acc
    })
}

pub fn nabla_curvature(conn: &AffineConnection) -> TensorField {
    curvature(conn)
        .covariant_derivative(conn)
        .expect("dimensions agree")
}

/// Matrix of the affine Szabó operator Y ↦ (∇_X R)(Y, X)X.
pub fn szabo_operator(conn: &AffineConnection, x: &SymbolicVector) -> Result<PolyMatrix, SzaboError> {
    if x.dim() != conn.dim() {
        return Err(SzaboError::DimensionMismatch {
            vector: x.dim(),
            dim: conn.dim(),
        });
    }
    Ok(szabo_from_nabla_r(&nabla_curvature(conn), x))
}

/// Characteristic polynomial of S(X) for fully symbolic X at a symbolic
/// point; nilpotent certifies affine Szabó on the whole chart.
pub fn is_affine_szabo(conn: &AffineConnection) -> CharPolyCertificate {
    let x = SymbolicVector::symbolic(conn.chart(), conn.dim());
    let s = szabo_operator(conn, &x).expect("symbolic vector has the right dimension");
    charpoly(&s)
}
