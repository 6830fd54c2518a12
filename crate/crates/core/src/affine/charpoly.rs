use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::chart::Chart;
use crate::matrix::PolyMatrix;
use crate::symexpr::{Polynomial, Rational, Var, VarTable};

/// Coefficients of det(λI − S) = λⁿ + c_{n−1}λⁿ⁻¹ + … + c_0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPolyCertificate {
    degree: usize,
    coeffs: Vec<Polynomial>,
    nilpotent: bool,
}

impl CharPolyCertificate {
    pub fn new(coeffs: Vec<Polynomial>) -> Self {
        let nilpotent = coeffs.iter().all(Polynomial::is_zero);
        CharPolyCertificate {
            degree: coeffs.len(),
            coeffs,
            nilpotent,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `coeffs()[i]` multiplies λ^i.
    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotent
    }

    /// The characteristic polynomial with `spectral` standing for λ.
    pub fn to_polynomial(&self, spectral: Var, nvars: usize) -> Polynomial {
        let lam = Polynomial::var(nvars, spectral);
        let mut acc = lam.pow(self.degree as u32);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += &(c * &lam.pow(i as u32));
            }
        }
        acc
    }

    /// Certificate of P(λ)², the characteristic polynomial of a block
    /// triangular matrix whose diagonal blocks share P.
    pub fn squared(&self) -> CharPolyCertificate {
        let n = self.degree;
        let nvars = self
            .coeffs
            .first()
            .map(Polynomial::nvars)
            .unwrap_or(0);
        let mut full: Vec<Polynomial> = self.coeffs.clone();
        full.push(Polynomial::one(nvars));
        let mut out = vec![Polynomial::zero(nvars); 2 * n + 1];
        for (i, a) in full.iter().enumerate() {
            for (j, b) in full.iter().enumerate() {
                if !a.is_zero() && !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        out.pop();
        CharPolyCertificate::new(out)
    }

    /// Human-readable form, e.g. `λ^3 + (-u1*a1*a2^2)*λ^2`.
    pub fn render(&self, vars: &VarTable) -> String {
        let mut s = match self.degree {
            0 => "1".to_string(),
            1 => "λ".to_string(),
            d => format!("λ^{d}"),
        };
        for i in (0..self.degree).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let body = c.to_string_with(vars);
            let _ = write!(s, " + ({body})");
            match i {
                0 => {}
                1 => s.push_str("*λ"),
                _ => {
                    let _ = write!(s, "*λ^{i}");
                }
            }
        }
        s
    }

    pub fn render_in(&self, chart: &Chart) -> String {
        self.render(chart.vars())
    }
}

/// Characteristic polynomial by the Faddeev–LeVerrier recursion.
///
/// M_0 = 0, M_k = A·M_{k−1} + c_{n−k+1}·I, c_{n−k} = −tr(A·M_k)/k.
/// Division by k is exact over Q.
pub fn charpoly(a: &PolyMatrix) -> CharPolyCertificate {
    let n = a.dim();
    let nvars = a.nvars();
    let mut coeffs = vec![Polynomial::zero(nvars); n];
    if n == 0 {
        return CharPolyCertificate::new(coeffs);
    }
    let mut am = a.clone();
    for k in 1..=n {
        let trace = am.trace();
        let c = trace.scale(&Rational::new(BigInt::from(-1), BigInt::from(k)));
        coeffs[n - k] = c.clone();
        if k == n {
            break;
        }
        let mut m = am;
        for i in 0..n {
            m[(i, i)] += &c;
        }
        am = a.mul(&m);
    }
    CharPolyCertificate::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_gives_binomial() {
        let c = charpoly(&PolyMatrix::identity(3, 1));
        let want: Vec<Polynomial> = [-1, 3, -3].iter().map(|&x| Polynomial::from_int(1, x)).collect();
        assert_eq!(c.coeffs(), want.as_slice());
        assert!(!c.is_nilpotent());
    }

    #[test]
    fn strictly_triangular_is_nilpotent() {
        let m = PolyMatrix::from_ints(
            &[
                vec![0, 4, -7, 2],
                vec![0, 0, 5, 9],
                vec![0, 0, 0, -3],
                vec![0, 0, 0, 0],
            ],
            1,
        );
        assert!(charpoly(&m).is_nilpotent());
    }

    #[test]
    fn render_forms() {
        let t = VarTable::new(["x", "L"]).unwrap();
        let c = charpoly(&PolyMatrix::zeros(3, 2));
        assert_eq!(c.render(&t), "λ^3");
        let m = PolyMatrix::from_ints(&[vec![2]], 2);
        assert_eq!(charpoly(&m).render(&t), "λ + (-2)");
    }
}
