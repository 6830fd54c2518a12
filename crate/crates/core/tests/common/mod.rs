#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use szabo::numcheck::{random_connection, random_twist};
use szabo::problem::Problem;
use szabo::symexpr::{Exponents, Polynomial, Rational};
use szabo::{AffineConnection, Chart, SymmetricBilinear, TensorField};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn load(name: &str) -> Problem {
    Problem::load(fixture(name)).expect("fixture parses")
}

pub struct Case {
    pub seed: u64,
    pub conn: AffineConnection,
    pub twist: SymmetricBilinear,
}

/// Random (connection, twist) pairs in dimensions 2 and 3, alternating.
pub fn corpus(count: u64) -> Vec<Case> {
    (0..count)
        .map(|seed| {
            let n = 2 + (seed % 2) as usize;
            let chart: Arc<Chart> = Chart::standard(n);
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
            let conn = random_connection(&mut rng, &chart, 2, 2, 0.4);
            let twist = random_twist(&mut rng, &chart, 2, 2);
            Case { seed, conn, twist }
        })
        .collect()
}

/// Whether `target` is a Q-linear combination of `basis`, by Gaussian
/// elimination on coefficient vectors indexed by monomials.
pub fn in_span(target: &Polynomial, basis: &[Polynomial]) -> bool {
    type Row = BTreeMap<Exponents, Rational>;
    let to_row = |p: &Polynomial| -> Row { p.terms().iter().cloned().collect() };
    let mut pivots: Vec<(Exponents, Row)> = Vec::new();
    let reduce = |mut row: Row, pivots: &[(Exponents, Row)]| -> Row {
        for (m, prow) in pivots {
            if let Some(c) = row.get(m).cloned() {
                for (k, v) in prow {
                    let e = row.entry(k.clone()).or_default();
                    *e -= &c * v;
                }
                row.retain(|_, v| *v != Rational::default());
            }
        }
        row
    };
    for b in basis {
        let row = reduce(to_row(b), &pivots);
        if let Some((m, lead)) = row.iter().next().map(|(m, c)| (m.clone(), c.clone())) {
            let row: Row = row.into_iter().map(|(k, v)| (k, v / &lead)).collect();
            // Keep earlier pivot rows reduced against the new pivot.
            for (_, prow) in pivots.iter_mut() {
                if let Some(c) = prow.get(&m).cloned() {
                    for (k, v) in &row {
                        let e = prow.entry(k.clone()).or_default();
                        *e -= &c * v;
                    }
                    prow.retain(|_, v| *v != Rational::default());
                }
            }
            pivots.push((m, row));
        }
    }
    reduce(to_row(target), &pivots).is_empty()
}

/// R^h_{kji} + R^h_{jik} + R^h_{ikj} = 0 for `r` laid out `[h, k, j, i]`.
pub fn first_bianchi(r: &TensorField) -> bool {
    let n = r.dim();
    for h in 0..n {
        for k in 0..n {
            for j in 0..n {
                for i in 0..n {
                    let mut s = r.get(&[h, k, j, i]).clone();
                    s += r.get(&[h, j, i, k]);
                    s += r.get(&[h, i, k, j]);
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// (∇_a R)^h_{kji} + (∇_k R)^h_{jai} + (∇_j R)^h_{aki} = 0 for `d` laid
/// out `[a, h, k, j, i]`.
pub fn second_bianchi(d: &TensorField) -> bool {
    let n = d.dim();
    for a in 0..n {
        for h in 0..n {
            for k in 0..n {
                for j in 0..n {
                    for i in 0..n {
                        let mut s = d.get(&[a, h, k, j, i]).clone();
                        s += d.get(&[k, h, j, a, i]);
                        s += d.get(&[j, h, a, k, i]);
                        if !s.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}
