use crate::tensor::{Slot, TensorField};
use crate::symexpr::Polynomial;

use super::AffineConnection;

/// Curvature tensor with components `R[h, k, j, i]` = R^h_{kji}, where
/// R(∂_k, ∂_j)∂_i = R^h_{kji} ∂_h and
///
/// R^h_{kji} = ∂_k Γ^h_{ji} − ∂_j Γ^h_{ki} + Γ^h_{kl} Γ^l_{ji} − Γ^h_{jl} Γ^l_{ki}.
pub fn curvature(conn: &AffineConnection) -> TensorField {
    let n = conn.dim();
    let nvars = conn.nvars();
    let coords = conn.coords();
    let variance = vec![Slot::Upper, Slot::Lower, Slot::Lower, Slot::Lower];
    let mut r = TensorField::zeros(n, variance, nvars);
    for h in 0..n {
        for k in 0..n {
            for j in (k + 1)..n {
                for i in 0..n {
                    let mut acc = conn.christoffel(h, j, i).diff(coords[k]);
                    acc -= &conn.christoffel(h, k, i).diff(coords[j]);
                    for l in 0..n {
                        let a = conn.christoffel(h, k, l);
                        let b = conn.christoffel(l, j, i);
                        if !a.is_zero() && !b.is_zero() {
                            acc += &(a * b);
                        }
                        let c = conn.christoffel(h, j, l);
                        let d = conn.christoffel(l, k, i);
                        if !c.is_zero() && !d.is_zero() {
                            acc -= &(c * d);
                        }
                    }
                    r.set(&[h, j, k, i], -&acc);
                    r.set(&[h, k, j, i], acc);
                }
            }
        }
    }
    r
}

/// Ric(Y, Z) = tr(X ↦ R(X, Y)Z), i.e. Ric_{ji} = R^h_{hji}.
pub fn ricci(conn: &AffineConnection) -> TensorField {
    ricci_from_curvature(&curvature(conn))
}

pub fn ricci_from_curvature(r: &TensorField) -> TensorField {
    r.contract(0, 1).expect("curvature has an upper first slot")
}

/// Components of (∇_X Ric)(Y,Z) + (∇_Y Ric)(Z,X) + (∇_Z Ric)(X,Y) over
/// all coordinate triples, in index order `[x][y][z]`. All zero exactly
/// when the Ricci tensor is cyclic parallel.
pub fn cyclic_parallel_ricci(conn: &AffineConnection) -> Vec<Polynomial> {
    let ric = ricci(conn);
    let dric = ric
        .covariant_derivative(conn)
        .expect("dimensions agree");
    let n = conn.dim();
    let mut out = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut s = dric.get(&[x, y, z]).clone();
                s += dric.get(&[y, z, x]);
                s += dric.get(&[z, x, y]);
                out.push(s);
            }
        }
    }
    out
}

/// Whether the Ricci tensor is cyclic parallel.
pub fn is_l3_space(conn: &AffineConnection) -> bool {
    cyclic_parallel_ricci(conn).iter().all(Polynomial::is_zero)
}

pub fn is_flat(conn: &AffineConnection) -> bool {
    curvature(conn).is_zero()
}
