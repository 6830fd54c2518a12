use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::vars::{Var, VarTable};
use super::Rational;

pub type Exponents = Box<[u16]>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("point has {got} coordinates, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept strictly descending in lexicographic order of their
/// exponent vectors and never carry a zero coefficient, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Exponents, Rational)>,
}

fn zero_exps(nvars: usize) -> Exponents {
    vec![0u16; nvars].into_boxed_slice()
}

fn add_exps(a: &[u16], b: &[u16]) -> Exponents {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).expect("exponent overflow"))
        .collect()
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial {
            nvars,
            terms: vec![(zero_exps(nvars), c)],
        }
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(nvars: usize, v: Var) -> Self {
        assert!(v.0 < nvars, "variable index out of range");
        let mut e = zero_exps(nvars);
        e[v.0] = 1;
        Polynomial {
            nvars,
            terms: vec![(e, Rational::one())],
        }
    }

    pub fn monomial(exps: Exponents, c: Rational) -> Self {
        let nvars = exps.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Polynomial {
            nvars,
            terms: vec![(exps, c)],
        }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated or
    /// zero) terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut acc: HashMap<Exponents, Rational> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            *acc.entry(e).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Exponents, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exponents, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`Polynomial::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.iter().map(|(e, _)| e[v.0]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(e, _)| e[v.0] > 0)
    }

    pub fn vars_used(&self) -> Vec<Var> {
        (0..self.nvars)
            .filter(|&i| self.terms.iter().any(|(e, _)| e[i] > 0))
            .map(Var)
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x * c))
                .collect(),
        }
    }

    /// Multiplies by `c * x^exps`. Lex order is a monomial order, so the
    /// term order is preserved.
    pub fn mul_monomial(&self, exps: &[u16], c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (add_exps(e, exps), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact partial derivative with respect to `v`.
    pub fn diff(&self, v: Var) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[v.0] > 0)
            .map(|(e, c)| {
                let k = e[v.0];
                let mut e2 = e.clone();
                e2[v.0] = k - 1;
                (e2, c * Rational::from_integer(BigInt::from(k)))
            });
        // Decrementing the same slot of every surviving term keeps lex order.
        Polynomial {
            nvars: self.nvars,
            terms: terms.collect(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, EvalError> {
        if point.len() != self.nvars {
            return Err(EvalError::LengthMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.iter()) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<f64, EvalError> {
        if point.len() != self.nvars {
            return Err(EvalError::LengthMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for (x, &k) in point.iter().zip(e.iter()) {
                    if k > 0 {
                        t *= x.powi(k as i32);
                    }
                }
                t
            })
            .fold(0.0, |acc, t| acc + t))
    }

    /// Substitutes polynomials for the listed variables simultaneously.
    pub fn substitute(&self, subs: &[(Var, Polynomial)]) -> Self {
        if subs.is_empty() {
            return self.clone();
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![Vec::new(); subs.len()];
        let mut acc = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let mut factor = Polynomial::one(self.nvars);
            for (s, (v, value)) in subs.iter().enumerate() {
                let k = e[v.0] as usize;
                if k == 0 {
                    continue;
                }
                rest[v.0] = 0;
                let cache = &mut powers[s];
                if cache.is_empty() {
                    cache.push(Polynomial::one(self.nvars));
                }
                while cache.len() <= k {
                    let next = &cache[cache.len() - 1] * value;
                    cache.push(next);
                }
                factor = &factor * &cache[k];
            }
            acc += &factor.mul_monomial(&rest, c);
        }
        acc
    }

    /// Substitutes rational values for the listed variables.
    pub fn eval_partial(&self, values: &[(Var, Rational)]) -> Self {
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e2 = e.clone();
            let mut c2 = c.clone();
            for (v, x) in values {
                let k = e[v.0];
                if k > 0 {
                    e2[v.0] = 0;
                    c2 *= num_traits::pow(x.clone(), k as usize);
                }
            }
            (e2, c2)
        });
        Polynomial::from_terms(self.nvars, terms)
    }

    /// Re-expresses the polynomial over another variable table: variable
    /// `i` of `self` becomes `map[i]` in a table of `nvars` variables.
    pub fn remap(&self, map: &[Var], nvars: usize) -> Self {
        assert_eq!(map.len(), self.nvars);
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e2 = zero_exps(nvars);
            for (i, &k) in e.iter().enumerate() {
                e2[map[i].0] += k;
            }
            (e2, c.clone())
        });
        Polynomial::from_terms(nvars, terms)
    }

    /// Coefficients with respect to `v`: entry `k` multiplies `v^k`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Polynomial> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Exponents, Rational)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let k = e[v.0] as usize;
            let mut e2 = e.clone();
            e2[v.0] = 0;
            buckets[k].push((e2, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut terms| {
                terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                Polynomial {
                    nvars: self.nvars,
                    terms,
                }
            })
            .collect()
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lead_e, lead_c) = &divisor.terms[0];
        let mut rem = self.clone();
        let mut quot: Vec<(Exponents, Rational)> = Vec::new();
        while let Some((e, c)) = rem.terms.first() {
            if !e.iter().zip(lead_e.iter()).all(|(a, b)| a >= b) {
                return None;
            }
            let qe: Exponents = e.iter().zip(lead_e.iter()).map(|(a, b)| a - b).collect();
            let qc = c / lead_c;
            rem -= &divisor.mul_monomial(&qe, &qc);
            quot.push((qe, qc));
        }
        Some(Polynomial::from_terms(self.nvars, quot))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    pub fn display<'a>(&'a self, vars: &'a VarTable) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, vars }
    }

    pub fn to_string_with(&self, vars: &VarTable) -> String {
        self.display(vars).to_string()
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "polynomials over different tables");
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial {
            nvars: self.nvars,
            terms: out,
        }
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "polynomials over different tables");
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return other.mul_monomial(e, c);
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.mul_monomial(e, c);
        }
        let mut acc: HashMap<Exponents, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = add_exps(ea, eb);
                let c = ca * cb;
                match acc.get_mut(&e) {
                    Some(x) => *x += c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        Polynomial::from_map(self.nvars, acc)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", c)?;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    write!(f, "*x{}^{}", i, k)?;
                }
            }
        }
        Ok(())
    }
}

/// Canonical printer; output parses back to the same polynomial.
pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    vars: &'a VarTable,
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in terms.iter().enumerate() {
            let negative = c.is_negative();
            if n == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            let is_const = e.iter().all(|&k| k == 0);
            let mut first = true;
            if is_const || !a.is_one() {
                write_rational(f, &a)?;
                first = false;
            }
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.vars.name(Var(i)))?;
                if k > 1 {
                    write!(f, "^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_impl(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        *self = self.merge(rhs, false);
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        if rhs.is_zero() {
            return;
        }
        *self = self.merge(rhs, true);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn diff_examples() {
        // table u1, u2, u3, u4, u5
        let u = |i: usize| Polynomial::var(5, Var(i - 1));
        let u1u3 = &u(1) * &u(3);
        assert_eq!(u1u3.diff(Var(0)), u(3));
        assert!(u1u3.diff(Var(1)).is_zero());
        let p = &(&u(1) + &u(3)) * &u(5);
        assert_eq!(p.diff(Var(4)), &u(1) + &u(3));
    }

    #[test]
    fn eval_examples() {
        let u = |i: usize| Polynomial::var(6, Var(i - 1));
        let u1u3 = &u(1) * &u(3);
        let pt: Vec<Rational> = [2, 0, 5, 0, 0, 0].iter().map(|&x| q(x, 1)).collect();
        assert_eq!(u1u3.eval(&pt).unwrap(), q(10, 1));
        assert_eq!(Polynomial::zero(6).eval(&pt).unwrap(), q(0, 1));
        assert!(u1u3.eval(&pt[..3]).is_err());
    }

    #[test]
    fn exact_division() {
        let u1 = Polynomial::var(2, Var(0));
        let u3 = Polynomial::var(2, Var(1));
        let num = &(&u1 * &u1) - &(&u3 * &u3);
        let den = &u1 - &u3;
        assert_eq!(num.div_exact(&den).unwrap(), &u1 + &u3);
        assert!(u1.div_exact(&(&u1 + &u3)).is_none());
    }

    #[test]
    fn substitute_scales_homogeneous() {
        let x = Polynomial::var(3, Var(0));
        let y = Polynomial::var(3, Var(1));
        let t = Polynomial::var(3, Var(2));
        let p = &(&x * &x) * &y;
        let s = p.substitute(&[(Var(0), &t * &x), (Var(1), &t * &y)]);
        assert_eq!(s, &p * &t.pow(3));
    }
}
