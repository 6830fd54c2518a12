//! Multivariate gcd and canonical rational functions.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use thiserror::Error;

use num_bigint::BigInt;

use super::poly::Polynomial;
use super::Rational;
use super::vars::{Var, VarTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("division by the zero rational function")]
pub struct DivisionByZero;

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in(p: &Polynomial, v: Var) -> Polynomial {
    let mut g = Polynomial::zero(p.nvars());
    for c in p.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(p: &Polynomial, v: Var) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` as univariate polynomials in `v`.
fn pseudo_rem(a: &Polynomial, b: &Polynomial, v: Var) -> Polynomial {
    let db = b.degree_in(v);
    let bc = b.coefficients_in(v);
    let lb = &bc[db as usize];
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coefficients_in(v).swap_remove(dr as usize);
        let mut shift = vec![0u16; r.nvars()];
        shift[v.index()] = dr - db;
        let shifted = b.mul_monomial(&shift, &num_traits::One::one());
        r = &(lb * &r) - &(&lr * &shifted);
    }
    r
}

/// Gcd when one side is a single term: the monomial of smallest
/// exponents shared by every term.
fn monomial_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut exps: Vec<u16> = a.terms()[0].0.to_vec();
    for (e, _) in a.terms().iter().chain(b.terms()) {
        for (x, &y) in exps.iter_mut().zip(e.iter()) {
            *x = (*x).min(y);
        }
    }
    Polynomial::monomial(exps.into_boxed_slice(), num_traits::One::one())
}

/// Largest monomial dividing `p`, with coefficient 1.
fn monomial_content(p: &Polynomial) -> Polynomial {
    let mut exps: Vec<u16> = p.terms()[0].0.to_vec();
    for (e, _) in p.terms() {
        for (x, &y) in exps.iter_mut().zip(e.iter()) {
            *x = (*x).min(y);
        }
    }
    Polynomial::monomial(exps.into_boxed_slice(), num_traits::One::one())
}

fn leading_coefficient_in(p: &Polynomial, v: Var) -> Polynomial {
    p.coefficients_in(v).pop().expect("nonzero polynomial")
}

/// Sufficient test that gcd(a, b) does not involve `v`: specialise every
/// other variable to an integer keeping both leading coefficients in `v`
/// nonzero. The gcd's degree in `v` can then only grow, so a constant
/// univariate gcd settles it. `false` means "unknown".
fn coprime_in(a: &Polynomial, b: &Polynomial, v: Var) -> bool {
    let others: Vec<Var> = (0..a.nvars())
        .map(Var)
        .filter(|&w| w != v && (a.uses_var(w) || b.uses_var(w)))
        .collect();
    if others.is_empty() {
        return false;
    }
    let (la, lb) = (leading_coefficient_in(a, v), leading_coefficient_in(b, v));
    for attempt in 0..4i64 {
        let subs: Vec<(Var, Rational)> = others
            .iter()
            .enumerate()
            .map(|(k, &w)| (w, Rational::from_integer(BigInt::from(2 + attempt * 5 + 3 * k as i64))))
            .collect();
        if la.eval_partial(&subs).is_zero() || lb.eval_partial(&subs).is_zero() {
            continue;
        }
        let g = gcd(&a.eval_partial(&subs), &b.eval_partial(&subs));
        return g.degree_in(v) == 0;
    }
    false
}

/// Greatest common divisor over Q, normalised to leading coefficient 1
/// (zero only when both inputs are zero).
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.nvars());
    }
    if a.len() == 1 || b.len() == 1 {
        return monomial_gcd(a, b);
    }
    let (ma, mb) = (monomial_content(a), monomial_content(b));
    if !ma.is_one() || !mb.is_one() {
        let m = monomial_gcd(&ma, &mb);
        let ra = a.div_exact(&ma).expect("monomial content divides");
        let rb = b.div_exact(&mb).expect("monomial content divides");
        return (&m * &gcd(&ra, &rb)).monic();
    }
    for v in (0..a.nvars()).map(Var) {
        match (a.uses_var(v), b.uses_var(v)) {
            (true, false) => return gcd(&content_in(a, v), b),
            (false, true) => return gcd(a, &content_in(b, v)),
            _ => {}
        }
    }
    let shared: Vec<Var> = a.vars_used();
    for &v in &shared {
        if coprime_in(a, b, v) {
            return gcd(&content_in(a, v), &content_in(b, v));
        }
    }
    let v = *shared
        .iter()
        .min_by_key(|&&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("non-constant input");
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = pseudo_rem(&p, &q, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            q = Polynomial::one(a.nvars());
            break;
        }
        p = q;
        // Dividing out the numeric content keeps coefficients small.
        q = primitive_part(&r, v).monic();
    }
    (&c * &primitive_part(&q, v)).monic()
}

/// Quotient of polynomials in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, DivisionByZero> {
        if den.is_zero() {
            return Err(DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let n = p.nvars();
        RationalFunction {
            num: p,
            den: Polynomial::one(n),
        }
    }

    fn normalize(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            let n = num.nvars();
            return RationalFunction {
                num,
                den: Polynomial::one(n),
            };
        }
        let g = gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let lc = den.leading_coefficient().cloned().expect("nonzero denominator");
        if !num_traits::One::is_one(&lc) {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this function equals, if its denominator is 1.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, DivisionByZero> {
        if other.is_zero() {
            return Err(DivisionByZero);
        }
        Ok(Self::normalize(&self.num * &other.den, &self.den * &other.num))
    }

    pub fn display<'a>(&'a self, vars: &'a VarTable) -> impl fmt::Display + 'a {
        struct D<'a>(&'a RationalFunction, &'a VarTable);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.den.is_one() {
                    write!(f, "{}", self.0.num.display(self.1))
                } else {
                    write!(
                        f,
                        "({})/({})",
                        self.0.num.display(self.1),
                        self.0.den.display(self.1)
                    )
                }
            }
        }
        D(self, vars)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl PartialEq<Polynomial> for RationalFunction {
    fn eq(&self, other: &Polynomial) -> bool {
        self.den.is_one() && &self.num == other
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalize(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; see [`RationalFunction::checked_div`].
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::{parse_expr, Rational};

    fn t() -> VarTable {
        VarTable::new(["u1", "u2", "u3"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_expr(s, &t()).unwrap()
    }

    #[test]
    fn gcd_by_hand() {
        assert_eq!(gcd(&p("u1^2 - u3^2"), &p("u1 - u3")), p("u1 - u3"));
        assert_eq!(gcd(&p("2*u1*u2 + 2*u1"), &p("4*u2^2 - 4")), p("u2 + 1"));
        assert_eq!(gcd(&p("u1*u3 + u2"), &p("u1 + u2")), p("1"));
        assert_eq!(
            gcd(&p("(u1+u2)^2*(u3-1)"), &p("(u1+u2)*(u3-1)^3*u2")),
            p("u1*u3 - u1 + u2*u3 - u2")
        );
    }

    #[test]
    fn ratfunc_examples() {
        let u1 = RationalFunction::from_poly(p("u1"));
        assert_eq!(&u1 / &u1, p("1"));
        let r = RationalFunction::new(p("u1^2 - u3^2"), p("u1 - u3")).unwrap();
        assert_eq!(r, p("u1 + u3"));
        let zero = RationalFunction::from_poly(p("0"));
        assert_eq!(&u1 + &zero, u1);
        assert_eq!(u1.checked_div(&zero), Err(DivisionByZero));
        assert!(RationalFunction::new(p("1"), p("0")).is_err());
    }

    #[test]
    fn canonical_denominator() {
        let a = RationalFunction::new(p("2*u1"), p("-4*u2 + 2")).unwrap();
        let b = RationalFunction::new(p("-u1"), p("2*u2 - 1")).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.denom().leading_coefficient().unwrap(), &Rational::from_integer(1.into()));
        let sum = &a + &RationalFunction::new(p("u1"), p("2*u2 - 1")).unwrap();
        assert!(sum.is_zero());
    }
}
