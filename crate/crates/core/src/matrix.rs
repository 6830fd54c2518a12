//! Square matrices of polynomials.

use std::ops::{Index, IndexMut};

use thiserror::Error;

use crate::symexpr::{Polynomial, Rational, RationalFunction, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    nvars: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(n: usize, nvars: usize) -> Self {
        PolyMatrix {
            n,
            nvars,
            entries: vec![Polynomial::zero(nvars); n * n],
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(n, nvars);
        for i in 0..n {
            m[(i, i)] = Polynomial::one(nvars);
        }
        m
    }

    pub fn from_fn(n: usize, nvars: usize, mut f: impl FnMut(usize, usize) -> Polynomial) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let p = f(r, c);
                assert_eq!(p.nvars(), nvars);
                entries.push(p);
            }
        }
        PolyMatrix { n, nvars, entries }
    }

    /// Builds a matrix of constants from integer rows.
    pub fn from_ints(rows: &[Vec<i64>], nvars: usize) -> Self {
        let n = rows.len();
        Self::from_fn(n, nvars, |r, c| Polynomial::from_int(nvars, rows[r][c]))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, self.nvars, |r, c| self[(c, r)].clone())
    }

    pub fn trace(&self) -> Polynomial {
        let mut t = Polynomial::zero(self.nvars);
        for i in 0..self.n {
            t += &self[(i, i)];
        }
        t
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        Self::from_fn(n, self.nvars, |r, c| {
            let mut acc = Polynomial::zero(self.nvars);
            for k in 0..n {
                let a = &self[(r, k)];
                let b = &other[(k, c)];
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        })
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        Self::from_fn(self.n, self.nvars, |r, c| &self[(r, c)] + &other[(r, c)])
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        Self::from_fn(self.n, self.nvars, |r, c| &self[(r, c)] - &other[(r, c)])
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        Self::from_fn(self.n, self.nvars, |r, col| self[(r, col)].scale(c))
    }

    pub fn pow(&self, k: u32) -> PolyMatrix {
        let mut out = Self::identity(self.n, self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn mul_vec(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|r| {
                let mut acc = Polynomial::zero(self.nvars);
                for (c, x) in v.iter().enumerate() {
                    acc += &(&self[(r, c)] * x);
                }
                acc
            })
            .collect()
    }

    /// The `size`×`size` block starting at (`row`, `col`).
    pub fn block(&self, row: usize, col: usize, size: usize) -> PolyMatrix {
        Self::from_fn(size, self.nvars, |r, c| self[(row + r, col + c)].clone())
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        Self::from_fn(self.n, self.nvars, |r, c| f(&self[(r, c)]))
    }

    pub fn substitute(&self, subs: &[(Var, Polynomial)]) -> PolyMatrix {
        self.map(|p| p.substitute(subs))
    }

    /// Exact evaluation of every entry at `point`.
    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>, crate::symexpr::EvalError> {
        (0..self.n)
            .map(|r| (0..self.n).map(|c| self[(r, c)].eval(point)).collect())
            .collect()
    }

    /// Inverse over the field of rational functions by Gauss–Jordan
    /// elimination. Independent of any closed form the caller may know.
    pub fn inverse_rational(&self) -> Result<Vec<Vec<RationalFunction>>, MatrixError> {
        let n = self.n;
        let mut a: Vec<Vec<RationalFunction>> = (0..n)
            .map(|r| {
                (0..2 * n)
                    .map(|c| {
                        if c < n {
                            RationalFunction::from_poly(self[(r, c)].clone())
                        } else if c - n == r {
                            RationalFunction::from_poly(Polynomial::one(self.nvars))
                        } else {
                            RationalFunction::from_poly(Polynomial::zero(self.nvars))
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            // Pick the simplest nonzero pivot to keep intermediate sizes down.
            let pivot = (col..n)
                .filter(|&r| !a[r][col].is_zero())
                .min_by_key(|&r| a[r][col].numer().len() + a[r][col].denom().len())
                .ok_or(MatrixError::Singular)?;
            a.swap(col, pivot);
            let p = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x = &*x / &p;
            }
            let pivot_row = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
    }
}

impl Index<(usize, usize)> for PolyMatrix {
    type Output = Polynomial;
    fn index(&self, (r, c): (usize, usize)) -> &Polynomial {
        &self.entries[r * self.n + c]
    }
}

impl IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Polynomial {
        &mut self.entries[r * self.n + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::{parse_expr, VarTable};

    #[test]
    fn rational_inverse_of_walker_block() {
        let t = VarTable::new(["x", "y"]).unwrap();
        let b = parse_expr("x*y + 1", &t).unwrap();
        let mut m = PolyMatrix::zeros(2, 2);
        m[(0, 0)] = b.clone();
        m[(0, 1)] = Polynomial::one(2);
        m[(1, 0)] = Polynomial::one(2);
        let inv = m.inverse_rational().unwrap();
        assert_eq!(inv[0][0], Polynomial::zero(2));
        assert_eq!(inv[0][1], Polynomial::one(2));
        assert_eq!(inv[1][1], -&b);
    }

    #[test]
    fn rational_inverse_with_denominators() {
        let t = VarTable::new(["x", "y"]).unwrap();
        let p = |s: &str| parse_expr(s, &t).unwrap();
        let m = PolyMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 0) => p("x"),
            (0, 1) => p("y"),
            (1, 0) => p("1"),
            _ => p("x"),
        });
        let inv = m.inverse_rational().unwrap();
        // det = x^2 - y
        let det = p("x^2 - y");
        assert_eq!(inv[0][0], RationalFunction::new(p("x"), det.clone()).unwrap());
        assert_eq!(inv[0][1], RationalFunction::new(p("-y"), det.clone()).unwrap());
        assert!(PolyMatrix::zeros(2, 2).inverse_rational().is_err());
    }
}
