//! Classical and twisted Riemannian extensions on the cotangent bundle.
//!
//! In coordinates (u_1..u_n, u_{1'}..u_{n'}) the metric is the Walker block
//!
//! ```text
//! g = [[B, I], [I, 0]],   B_ij = φ_ij − 2 Σ_k u_{k'} Γ^k_ij,
//! ```
//!
//! with the exact inverse `[[0, I], [I, −B]]`. The classical extension is
//! the case φ = 0.

use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::affine::{
    charpoly, curvature, is_affine_szabo, nabla_curvature, ricci_from_curvature,
    szabo_from_nabla_r, AffineConnection, CharPolyCertificate, ConnectionError, SymbolicVector,
    SzaboError,
};
use crate::chart::Chart;
use crate::matrix::PolyMatrix;
use crate::symexpr::{Polynomial, Rational};
use crate::tensor::TensorField;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("twist is not symmetric at ({i}, {j})", i = .0 + 1, j = .1 + 1)]
    AsymmetricTwist(usize, usize),
    #[error("twist entry depends on `{0}`; only base coordinates and parameters are allowed")]
    TwistVariable(String),
    #[error("twist has {got} entries, expected {expected}")]
    TwistShape { expected: usize, got: usize },
    #[error("twist index ({}, {}) out of range", .0 + 1, .1 + 1)]
    TwistIndex(usize, usize),
    #[error("conflicting twist entries at ({}, {})", .0 + 1, .1 + 1)]
    TwistConflict(usize, usize),
    #[error("the connection must be written in the base coordinates of its chart")]
    NotBaseConnection,
    #[error("twist and connection live on different charts or dimensions")]
    ChartMismatch,
    #[error(transparent)]
    Connection(#[from] ConnectionError),
}

/// Symmetric (0,2)-tensor φ on the base, depending on base coordinates only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricBilinear {
    chart: Arc<Chart>,
    phi: Vec<Polynomial>,
}

impl SymmetricBilinear {
    pub fn new(chart: Arc<Chart>, phi: Vec<Polynomial>) -> Result<Self, ExtensionError> {
        let n = chart.dim();
        if phi.len() != n * n {
            return Err(ExtensionError::TwistShape {
                expected: n * n,
                got: phi.len(),
            });
        }
        for i in 0..n {
            for j in i + 1..n {
                if phi[i * n + j] != phi[j * n + i] {
                    return Err(ExtensionError::AsymmetricTwist(i, j));
                }
            }
        }
        for p in &phi {
            for v in p.vars_used() {
                if !chart.base().contains(&v) && !chart.params().contains(&v) {
                    return Err(ExtensionError::TwistVariable(chart.vars().name(v).to_string()));
                }
            }
        }
        Ok(SymmetricBilinear { chart, phi })
    }

    /// From sparse `(i, j, φ_ij)` entries (0-based); the symmetric partner
    /// is filled in.
    pub fn from_entries<I>(chart: Arc<Chart>, entries: I) -> Result<Self, ExtensionError>
    where
        I: IntoIterator<Item = (usize, usize, Polynomial)>,
    {
        let n = chart.dim();
        let mut phi: Vec<Option<Polynomial>> = vec![None; n * n];
        for (i, j, p) in entries {
            if i >= n || j >= n {
                return Err(ExtensionError::TwistIndex(i, j));
            }
            for (a, b) in [(i, j), (j, i)] {
                match &phi[a * n + b] {
                    Some(existing) if *existing != p => {
                        return Err(ExtensionError::TwistConflict(i, j));
                    }
                    _ => phi[a * n + b] = Some(p.clone()),
                }
            }
        }
        let zero = chart.zero();
        let phi = phi.into_iter().map(|p| p.unwrap_or_else(|| zero.clone())).collect();
        Self::new(chart, phi)
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.phi[i * self.dim() + j]
    }

    pub fn is_zero(&self) -> bool {
        self.phi.iter().all(Polynomial::is_zero)
    }
}

/// Riemannian extension g_(∇,φ) of an affine connection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionMetric {
    base: AffineConnection,
    twist: Option<SymmetricBilinear>,
    walker: PolyMatrix,
    g: PolyMatrix,
    g_inv: PolyMatrix,
}

impl ExtensionMetric {
    pub fn base(&self) -> &AffineConnection {
        &self.base
    }

    pub fn twist(&self) -> Option<&SymmetricBilinear> {
        self.twist.as_ref()
    }

    pub fn chart(&self) -> &Arc<Chart> {
        self.base.chart()
    }

    /// 2n.
    pub fn dim(&self) -> usize {
        2 * self.base.dim()
    }

    /// The n×n block B.
    pub fn walker_block(&self) -> &PolyMatrix {
        &self.walker
    }

    pub fn metric(&self) -> &PolyMatrix {
        &self.g
    }

    pub fn inverse(&self) -> &PolyMatrix {
        &self.g_inv
    }
}

pub fn build_extension(
    conn: &AffineConnection,
    twist: Option<&SymmetricBilinear>,
) -> Result<ExtensionMetric, ExtensionError> {
    let chart = conn.chart().clone();
    if conn.coords() != chart.base() {
        return Err(ExtensionError::NotBaseConnection);
    }
    if let Some(t) = twist {
        if t.chart != chart {
            return Err(ExtensionError::ChartMismatch);
        }
    }
    let n = conn.dim();
    let nvars = chart.nvars();
    let fiber: Vec<Polynomial> = chart.fiber().iter().map(|&v| chart.poly(v)).collect();
    let minus_two = Rational::from_integer(BigInt::from(-2));
    let walker = PolyMatrix::from_fn(n, nvars, |i, j| {
        let mut b = match twist {
            Some(t) => t.get(i, j).clone(),
            None => Polynomial::zero(nvars),
        };
        for (k, u) in fiber.iter().enumerate() {
            let gamma = conn.christoffel(k, i, j);
            if !gamma.is_zero() {
                b += &(u * gamma).scale(&minus_two);
            }
        }
        b
    });
    let g = PolyMatrix::from_fn(2 * n, nvars, |r, c| match (r < n, c < n) {
        (true, true) => walker[(r, c)].clone(),
        (true, false) | (false, true) if r.abs_diff(c) == n => Polynomial::one(nvars),
        _ => Polynomial::zero(nvars),
    });
    let g_inv = PolyMatrix::from_fn(2 * n, nvars, |r, c| match (r < n, c < n) {
        (false, false) => -&walker[(r - n, c - n)],
        (true, false) | (false, true) if r.abs_diff(c) == n => Polynomial::one(nvars),
        _ => Polynomial::zero(nvars),
    });
    Ok(ExtensionMetric {
        base: conn.clone(),
        twist: twist.cloned(),
        walker,
        g,
        g_inv,
    })
}

/// Γ̃^h_{ab} = ½ g^{hl}(∂_a g_{lb} + ∂_b g_{la} − ∂_l g_{ab}).
pub fn levi_civita_general(metric: &ExtensionMetric) -> AffineConnection {
    let chart = metric.chart().clone();
    let coords = chart.cotangent();
    let m = coords.len();
    let g = metric.metric();
    let g_inv = metric.inverse();
    let nvars = chart.nvars();
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    // dg[c][a][b] = ∂_c g_ab
    let dg: Vec<PolyMatrix> = coords.iter().map(|&v| g.map(|p| p.diff(v))).collect();
    let mut gamma = vec![Polynomial::zero(nvars); m * m * m];
    for a in 0..m {
        for b in a..m {
            // first-kind symbols [ab, l]
            let first: Vec<Polynomial> = (0..m)
                .map(|l| {
                    let mut s = dg[a][(l, b)].clone();
                    s += &dg[b][(l, a)];
                    s -= &dg[l][(a, b)];
                    s
                })
                .collect();
            for h in 0..m {
                let mut acc = Polynomial::zero(nvars);
                for (l, f) in first.iter().enumerate() {
                    let gi = &g_inv[(h, l)];
                    if !gi.is_zero() && !f.is_zero() {
                        acc += &(gi * f);
                    }
                }
                let acc = acc.scale(&half);
                gamma[(h * m + b) * m + a] = acc.clone();
                gamma[(h * m + a) * m + b] = acc;
            }
        }
    }
    AffineConnection::new(chart, coords, gamma).expect("Levi-Civita connection is torsion-free")
}

/// Levi-Civita connection of g_(∇,φ) from the closed-form expressions in
/// terms of Γ and φ:
///
/// ```text
/// Γ̃^k_ij    = Γ^k_ij
/// Γ̃^k'_i'j  = −Γ^i_jk        Γ̃^k'_ij' = −Γ^j_ik
/// Γ̃^k'_ij   = Σ_r u_r' (∂_k Γ^r_ij − ∂_i Γ^r_jk − ∂_j Γ^r_ik + 2 Σ_l Γ^r_kl Γ^l_ij)
///             + ½ (∂_i φ_jk + ∂_j φ_ik − ∂_k φ_ij) − Σ_l φ_kl Γ^l_ij
/// ```
///
/// Every other symbol vanishes.
pub fn levi_civita_closed_form(
    conn: &AffineConnection,
    twist: Option<&SymmetricBilinear>,
) -> Result<AffineConnection, ExtensionError> {
    let chart = conn.chart().clone();
    if conn.coords() != chart.base() {
        return Err(ExtensionError::NotBaseConnection);
    }
    let n = conn.dim();
    let m = 2 * n;
    let nvars = chart.nvars();
    let base = chart.base();
    let fiber: Vec<Polynomial> = chart.fiber().iter().map(|&v| chart.poly(v)).collect();
    let gam = |k: usize, i: usize, j: usize| conn.christoffel(k, i, j);
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let two = Rational::from_integer(BigInt::from(2));
    let mut out = vec![Polynomial::zero(nvars); m * m * m];
    let idx = |h: usize, a: usize, b: usize| (h * m + a) * m + b;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[idx(k, i, j)] = gam(k, i, j).clone();
                // Γ̃^{k'}_{i j'} = −Γ^j_{ik} and its torsion-free partner.
                let mixed = -gam(j, i, k);
                out[idx(k + n, i, j + n)] = mixed.clone();
                out[idx(k + n, j + n, i)] = mixed;

                let mut acc = Polynomial::zero(nvars);
                for (r, u) in fiber.iter().enumerate() {
                    let mut s = gam(r, i, j).diff(base[k]);
                    s -= &gam(r, j, k).diff(base[i]);
                    s -= &gam(r, i, k).diff(base[j]);
                    let mut quad = Polynomial::zero(nvars);
                    for l in 0..n {
                        let a = gam(r, k, l);
                        let b = gam(l, i, j);
                        if !a.is_zero() && !b.is_zero() {
                            quad += &(a * b);
                        }
                    }
                    s += &quad.scale(&two);
                    if !s.is_zero() {
                        acc += &(u * &s);
                    }
                }
                if let Some(phi) = twist {
                    let mut d = phi.get(j, k).diff(base[i]);
                    d += &phi.get(i, k).diff(base[j]);
                    d -= &phi.get(i, j).diff(base[k]);
                    acc += &d.scale(&half);
                    for l in 0..n {
                        let a = phi.get(k, l);
                        let b = gam(l, i, j);
                        if !a.is_zero() && !b.is_zero() {
                            acc -= &(a * b);
                        }
                    }
                }
                out[idx(k + n, i, j)] = acc;
            }
        }
    }
    Ok(AffineConnection::new(chart.clone(), chart.cotangent(), out)?)
}

/// Components `[h, k, j, i]` of the extension curvature that break the
/// block relations
///
/// ```text
/// R̃^h_kji = R^h_kji,   R̃^h'_kji' = −R^i_kjh,   R̃^h'_k'ji = R^k_hij
/// ```
///
/// (with the antisymmetric partner R̃^h'_kj'i = −R^j_hik), or that should
/// vanish but do not. The block R̃^h'_kji is left unconstrained.
pub fn curvature_relation_mismatches(
    conn: &AffineConnection,
    twist: Option<&SymmetricBilinear>,
) -> Result<Vec<[usize; 4]>, ExtensionError> {
    let metric = build_extension(conn, twist)?;
    let r = curvature(conn);
    let rt = curvature(&levi_civita_general(&metric));
    let n = conn.dim();
    let zero = metric.chart().zero();
    let mut bad = Vec::new();
    for (idx, value) in crate::tensor::multi_indices(2 * n, 4).zip(rt.components()) {
        let [h, k, j, i] = [idx[0], idx[1], idx[2], idx[3]];
        let primed = [h >= n, k >= n, j >= n, i >= n];
        let expected = match primed {
            [false, false, false, false] => r.get(&[h, k, j, i]).clone(),
            [true, false, false, true] => -r.get(&[i - n, k, j, h - n]),
            [true, true, false, false] => r.get(&[k - n, h - n, i, j]).clone(),
            [true, false, true, false] => -r.get(&[j - n, h - n, i, k]),
            [true, false, false, false] => continue,
            _ => zero.clone(),
        };
        if *value != expected {
            bad.push([h, k, j, i]);
        }
    }
    Ok(bad)
}

pub fn curvature_relations_check(
    conn: &AffineConnection,
    twist: Option<&SymmetricBilinear>,
) -> Result<bool, ExtensionError> {
    Ok(curvature_relation_mismatches(conn, twist)?.is_empty())
}

/// Shape of the extension Szabó matrix against the base operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    pub top_left_is_base: bool,
    pub top_right_zero: bool,
    pub bottom_right_is_transpose: bool,
}

impl BlockStructure {
    pub fn holds(&self) -> bool {
        self.top_left_is_base && self.top_right_zero && self.bottom_right_is_transpose
    }
}

/// Result of the local-symmetry test.
#[derive(Clone, Debug)]
pub struct LocalSymmetry {
    /// (∇_a R)(X, Y, Z, W) = g((∇_a R)(X, Y)Z, W), indexed `[a, x, y, z, w]`.
    pub nabla_r: TensorField,
    /// A nonzero component, if any; the first with x < y and z > w when
    /// one exists.
    pub witness: Option<(Vec<usize>, Polynomial)>,
}

impl LocalSymmetry {
    pub fn is_symmetric(&self) -> bool {
        self.witness.is_none()
    }

    pub fn component(&self, idx: [usize; 5]) -> &Polynomial {
        self.nabla_r.get(&idx)
    }
}

/// Levi-Civita connection, curvature and its covariant derivative of an
/// extension metric, computed once.
#[derive(Clone, Debug)]
pub struct ExtensionGeometry {
    metric: ExtensionMetric,
    connection: AffineConnection,
    curvature: TensorField,
    nabla_r: TensorField,
}

impl ExtensionGeometry {
    pub fn new(metric: &ExtensionMetric) -> Self {
        let connection = levi_civita_general(metric);
        let curvature = curvature(&connection);
        let nabla_r = curvature
            .covariant_derivative(&connection)
            .expect("dimensions agree");
        ExtensionGeometry {
            metric: metric.clone(),
            connection,
            curvature,
            nabla_r,
        }
    }

    pub fn metric(&self) -> &ExtensionMetric {
        &self.metric
    }

    pub fn connection(&self) -> &AffineConnection {
        &self.connection
    }

    pub fn curvature(&self) -> &TensorField {
        &self.curvature
    }

    pub fn nabla_curvature(&self) -> &TensorField {
        &self.nabla_r
    }

    pub fn szabo_operator(&self, x: &SymbolicVector) -> Result<PolyMatrix, SzaboError> {
        if x.dim() != self.metric.dim() {
            return Err(SzaboError::DimensionMismatch {
                vector: x.dim(),
                dim: self.metric.dim(),
            });
        }
        Ok(szabo_from_nabla_r(&self.nabla_r, x))
    }

    pub fn symbolic_szabo(&self) -> PolyMatrix {
        let x = SymbolicVector::symbolic(self.metric.chart(), self.metric.dim());
        szabo_from_nabla_r(&self.nabla_r, &x)
    }

    pub fn szabo_certificate(&self) -> CharPolyCertificate {
        charpoly(&self.symbolic_szabo())
    }

    pub fn block_structure(&self) -> BlockStructure {
        let n = self.metric.base().dim();
        let s = self.symbolic_szabo();
        let base_x = SymbolicVector::symbolic(self.metric.chart(), n);
        let base = szabo_from_nabla_r(&nabla_curvature(self.metric.base()), &base_x);
        BlockStructure {
            top_left_is_base: s.block(0, 0, n) == base,
            top_right_zero: s.block(0, n, n).is_zero(),
            bottom_right_is_transpose: s.block(n, n, n) == base.transpose(),
        }
    }

    pub fn local_symmetry(&self) -> LocalSymmetry {
        let lowered = self
            .nabla_r
            .lower_index(self.metric.metric(), 1)
            .expect("slot 1 of ∇R is upper");
        // [a, w, x, y, z] -> [a, x, y, z, w]
        let nabla_r = TensorField::from_fn(
            lowered.dim(),
            lowered.variance().to_vec(),
            lowered.nvars(),
            |i| lowered.get(&[i[0], i[4], i[1], i[2], i[3]]).clone(),
        );
        let nonzero = nabla_r.nonzero();
        let witness = nonzero
            .iter()
            .find(|(i, _)| i[1] < i[2] && i[3] > i[4])
            .or_else(|| nonzero.first())
            .map(|(i, p)| (i.clone(), (*p).clone()));
        LocalSymmetry { nabla_r, witness }
    }

    /// Characteristic polynomial of the Ricci operator g^{-1}·Ric.
    pub fn ricci_operator_certificate(&self) -> CharPolyCertificate {
        let ric = ricci_from_curvature(&self.curvature);
        let op = ric
            .raise_index(self.metric.inverse(), 0)
            .expect("Ricci has lower slots");
        let m = self.metric.dim();
        let nvars = op.nvars();
        charpoly(&PolyMatrix::from_fn(m, nvars, |a, b| op.get(&[a, b]).clone()))
    }
}

pub fn szabo_operator_metric(
    metric: &ExtensionMetric,
    x: &SymbolicVector,
) -> Result<PolyMatrix, SzaboError> {
    ExtensionGeometry::new(metric).szabo_operator(x)
}

/// Characteristic polynomial of the Szabó operator of g with every
/// component of X̃ symbolic; nilpotent iff it is λ^{2n} identically.
pub fn is_pseudo_szabo_nilpotent(metric: &ExtensionMetric) -> CharPolyCertificate {
    ExtensionGeometry::new(metric).szabo_certificate()
}

pub fn is_locally_symmetric(metric: &ExtensionMetric) -> LocalSymmetry {
    ExtensionGeometry::new(metric).local_symmetry()
}

/// Whether the extension certificate equals the square of the base one.
pub fn factorization_holds(geometry: &ExtensionGeometry) -> bool {
    let base = is_affine_szabo(geometry.metric().base());
    geometry.szabo_certificate() == base.squared()
}
