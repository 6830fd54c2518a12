//! Independent numeric oracle for the symbolic pipeline.
//!
//! Floating point is used only for finite-difference checks of
//! derivatives. Nilpotency probes and cross-validation evaluate exactly at
//! random rational points.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::affine::AffineConnection;
use crate::chart::Chart;
use crate::extension::SymmetricBilinear;
use crate::matrix::PolyMatrix;
use crate::symexpr::{Polynomial, Rational, Var, VarTable};
use crate::tensor::{multi_indices, TensorField};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumcheckError {
    #[error("sample count must be at least 1")]
    EmptyPlan,
    #[error("finite-difference step must be positive, got {0}")]
    BadStep(f64),
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("empty or inverted sampling box")]
    BadBox,
    #[error("point has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("tensors have different shapes")]
    ShapeMismatch,
}

/// How and where to sample.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplePlan {
    pub seed: u64,
    pub count: usize,
    /// Every variable is drawn from `[lo, hi]`.
    pub lo: i64,
    pub hi: i64,
    /// Denominators of sampled rationals lie in `1..=max_den`.
    pub max_den: u32,
    pub fd_step: f64,
    pub tol_rel: f64,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan {
            seed: 0,
            count: 10,
            lo: -2,
            hi: 2,
            max_den: 16,
            fd_step: 1e-5,
            tol_rel: 1e-6,
        }
    }
}

impl SamplePlan {
    pub fn new(seed: u64, count: usize) -> Result<Self, NumcheckError> {
        let plan = SamplePlan {
            seed,
            count,
            ..Default::default()
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<(), NumcheckError> {
        if self.count == 0 {
            return Err(NumcheckError::EmptyPlan);
        }
        if !self.fd_step.is_finite() || self.fd_step <= 0.0 {
            return Err(NumcheckError::BadStep(self.fd_step));
        }
        if !self.tol_rel.is_finite() || self.tol_rel <= 0.0 {
            return Err(NumcheckError::BadTolerance(self.tol_rel));
        }
        if self.lo > self.hi || self.max_den == 0 {
            return Err(NumcheckError::BadBox);
        }
        Ok(())
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// `count` deterministic points with `nvars` coordinates each.
    pub fn points(&self, nvars: usize) -> Vec<Vec<Rational>> {
        let mut rng = self.rng();
        (0..self.count)
            .map(|_| (0..nvars).map(|_| self.draw(&mut rng)).collect())
            .collect()
    }

    pub fn draw(&self, rng: &mut impl Rng) -> Rational {
        let den = rng.gen_range(1..=self.max_den as i64);
        let num = rng.gen_range(self.lo * den..=self.hi * den);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// Random polynomial in `vars` with up to `terms` terms of total degree at
/// most `max_degree` and small rational coefficients.
pub fn random_polynomial(
    rng: &mut impl Rng,
    vars: &[Var],
    nvars: usize,
    max_degree: u32,
    terms: usize,
) -> Polynomial {
    let mut out = Polynomial::zero(nvars);
    for _ in 0..terms {
        let mut exps = vec![0u16; nvars];
        let deg = rng.gen_range(0..=max_degree);
        for _ in 0..deg {
            let v = vars[rng.gen_range(0..vars.len())];
            exps[v.index()] += 1;
        }
        let mut c = 0i64;
        while c == 0 {
            c = rng.gen_range(-4..=4);
        }
        let d = rng.gen_range(1..=3i64);
        out += &Polynomial::monomial(
            exps.into_boxed_slice(),
            Rational::new(BigInt::from(c), BigInt::from(d)),
        );
    }
    out
}

/// Random torsion-free connection on the base of `chart`: each symbol
/// Γ^k_{ij}, i ≤ j, is nonzero with probability `fill`.
pub fn random_connection(
    rng: &mut impl Rng,
    chart: &Arc<Chart>,
    max_degree: u32,
    terms: usize,
    fill: f64,
) -> AffineConnection {
    let n = chart.dim();
    let mut entries = Vec::new();
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                if rng.gen_bool(fill) {
                    let p = random_polynomial(rng, chart.base(), chart.nvars(), max_degree, terms);
                    entries.push((i, j, k, p));
                }
            }
        }
    }
    AffineConnection::from_entries(chart.clone(), chart.base().to_vec(), entries)
        .expect("entries are in range and listed once")
}

/// Random symmetric twist with every entry a random polynomial in the
/// base coordinates.
pub fn random_twist(
    rng: &mut impl Rng,
    chart: &Arc<Chart>,
    max_degree: u32,
    terms: usize,
) -> SymmetricBilinear {
    let n = chart.dim();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i..n {
            let p = random_polynomial(rng, chart.base(), chart.nvars(), max_degree, terms);
            entries.push((i, j, p));
        }
    }
    SymmetricBilinear::from_entries(chart.clone(), entries).expect("entries are in range and listed once")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckLine {
    pub status: Status,
    pub check: String,
    pub location: String,
    pub values: String,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(f, "{s} {} {} {}", self.check, self.location, self.values)
    }
}

/// One line per check, in deterministic order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| l.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

fn fmt_point(point: &[Rational], vars: &VarTable, used: &[Var]) -> String {
    let parts: Vec<String> = used
        .iter()
        .map(|&v| format!("{}={}", vars.name(v), point[v.index()]))
        .collect();
    format!("[{}]", parts.join(","))
}

fn to_f64(point: &[Rational]) -> Vec<f64> {
    point.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
}

/// |central difference − exact derivative| of `p` along `v` at `point`.
pub fn fd_error(p: &Polynomial, v: Var, point: &[f64], step: f64) -> f64 {
    let (fd, exact) = fd_pair(p, v, point, step);
    (fd - exact).abs()
}

fn fd_pair(p: &Polynomial, v: Var, point: &[f64], step: f64) -> (f64, f64) {
    let mut plus = point.to_vec();
    let mut minus = point.to_vec();
    plus[v.index()] += step;
    minus[v.index()] -= step;
    let fp = p.eval_f64(&plus).expect("point length");
    let fm = p.eval_f64(&minus).expect("point length");
    let fd = (fp - fm) / (2.0 * step);
    let exact = p.diff(v).eval_f64(point).expect("point length");
    (fd, exact)
}

/// Central-difference check of `diff(p, v)` at every sampled point, with
/// tolerance `tol_rel · max(1, |exact|)`.
pub fn fd_check_derivative(
    p: &Polynomial,
    v: Var,
    plan: &SamplePlan,
    vars: &VarTable,
) -> Result<Report, NumcheckError> {
    plan.validate()?;
    let points = plan.points(p.nvars());
    let mut used = p.vars_used();
    if !used.contains(&v) {
        used.push(v);
        used.sort();
    }
    let check = format!("fd d/d{} {}", vars.name(v), p.to_string_with(vars));
    let lines = points
        .par_iter()
        .map(|pt| {
            let (fd, exact) = fd_pair(p, v, &to_f64(pt), plan.fd_step);
            let scale = exact.abs().max(1.0);
            let status = if (fd - exact).abs() <= plan.tol_rel * scale {
                Status::Pass
            } else {
                Status::Fail
            };
            CheckLine {
                status,
                check: check.clone(),
                location: fmt_point(pt, vars, &used),
                values: format!("fd={fd:.12e} exact={exact:.12e}"),
            }
        })
        .collect();
    Ok(Report { lines })
}

/// Outcome of evaluating a matrix exactly and raising it to its size.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotencyProbe {
    pub matrix: Vec<Vec<Rational>>,
    pub power: Vec<Vec<Rational>>,
    pub nilpotent: bool,
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let mut acc = Rational::zero();
                    for k in 0..n {
                        if !a[r][k].is_zero() && !b[k][c].is_zero() {
                            acc += &a[r][k] * &b[k][c];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Evaluates `m` at `point` and checks Mⁿ = 0 exactly.
pub fn numeric_nilpotency_probe(
    m: &PolyMatrix,
    point: &[Rational],
) -> Result<NilpotencyProbe, NumcheckError> {
    if point.len() != m.nvars() {
        return Err(NumcheckError::DimensionMismatch {
            expected: m.nvars(),
            got: point.len(),
        });
    }
    let matrix = m.eval(point).expect("length checked");
    let n = matrix.len();
    let mut power = matrix.clone();
    for _ in 1..n {
        power = mat_mul(&power, &matrix);
    }
    let nilpotent = power.iter().flatten().all(Zero::is_zero);
    Ok(NilpotencyProbe {
        matrix,
        power,
        nilpotent,
    })
}

/// Probes `m` at every point of `plan`.
pub fn nilpotency_report(
    name: &str,
    m: &PolyMatrix,
    plan: &SamplePlan,
    vars: &VarTable,
) -> Result<Report, NumcheckError> {
    plan.validate()?;
    let points = plan.points(m.nvars());
    let mut used: Vec<Var> = m.entries().iter().flat_map(|p| p.vars_used()).collect();
    used.sort();
    used.dedup();
    let n = m.dim();
    let lines: Result<Vec<CheckLine>, NumcheckError> = points
        .par_iter()
        .map(|pt| {
            let probe = numeric_nilpotency_probe(m, pt)?;
            Ok(CheckLine {
                status: if probe.nilpotent { Status::Pass } else { Status::Fail },
                check: format!("{name} M^{n}=0"),
                location: fmt_point(pt, vars, &used),
                values: if probe.nilpotent {
                    "max|M^n|=0".to_string()
                } else {
                    let worst = probe
                        .power
                        .iter()
                        .flatten()
                        .find(|x| !x.is_zero())
                        .cloned()
                        .unwrap_or_default();
                    format!("first nonzero entry of M^n = {worst}")
                },
            })
        })
        .collect();
    Ok(Report { lines: lines? })
}

/// Exact comparison of two tensors at the sampled points; one failing
/// line per mismatching component and point.
pub fn cross_validate(
    name: &str,
    a: &TensorField,
    b: &TensorField,
    plan: &SamplePlan,
    vars: &VarTable,
) -> Result<Report, NumcheckError> {
    plan.validate()?;
    if a.dim() != b.dim() || a.variance() != b.variance() {
        return Err(NumcheckError::ShapeMismatch);
    }
    let points = plan.points(a.nvars());
    let all_vars: Vec<Var> = {
        let mut v: Vec<Var> = a
            .components()
            .iter()
            .chain(b.components())
            .flat_map(|p| p.vars_used())
            .collect();
        v.sort();
        v.dedup();
        v
    };
    let per_point: Vec<Vec<CheckLine>> = points
        .par_iter()
        .map(|pt| {
            let va = a.eval(pt).expect("point length");
            let vb = b.eval(pt).expect("point length");
            let location = fmt_point(pt, vars, &all_vars);
            let mut lines: Vec<CheckLine> = multi_indices(a.dim(), a.rank())
                .zip(va.iter().zip(&vb))
                .filter(|(_, (x, y))| x != y)
                .map(|(idx, (x, y))| CheckLine {
                    status: Status::Fail,
                    check: format!(
                        "{name}{:?}",
                        idx.iter().map(|i| i + 1).collect::<Vec<_>>()
                    ),
                    location: location.clone(),
                    values: format!("a={x} b={y}"),
                })
                .collect();
            if lines.is_empty() {
                lines.push(CheckLine {
                    status: Status::Pass,
                    check: name.to_string(),
                    location,
                    values: format!("{} components agree", va.len()),
                });
            }
            lines
        })
        .collect();
    Ok(Report {
        lines: per_point.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::rational;

    #[test]
    fn plan_validation() {
        assert_eq!(SamplePlan::new(1, 0), Err(NumcheckError::EmptyPlan));
        let p = SamplePlan {
            fd_step: 0.0,
            ..SamplePlan::default()
        };
        assert!(p.validate().is_err());
    }

    #[test]
    fn points_are_deterministic_and_in_box() {
        let plan = SamplePlan::new(7, 20).unwrap();
        let a = plan.points(4);
        assert_eq!(a, plan.points(4));
        for x in a.iter().flatten() {
            assert!(*x >= rational(-2, 1) && *x <= rational(2, 1));
            assert!(x.denom() <= &BigInt::from(16));
        }
    }

    #[test]
    fn fd_examples() {
        let chart = Chart::standard(3);
        let plan = SamplePlan::new(3, 25).unwrap();
        let u1u3 = chart.parse("u1*u3").unwrap();
        assert!(fd_check_derivative(&u1u3, chart.base()[0], &plan, chart.vars())
            .unwrap()
            .passed());
        let c = chart.parse("7/3").unwrap();
        let r = fd_check_derivative(&c, chart.base()[1], &plan, chart.vars()).unwrap();
        assert!(r.passed());
        for l in &r.lines { assert!(l.values.ends_with("exact=0.000000000000e0"), "{l}"); }
        let cube = chart.parse("(u1+u3)^3").unwrap();
        assert!(fd_check_derivative(&cube, chart.base()[2], &plan, chart.vars())
            .unwrap()
            .passed());
    }

    #[test]
    fn zero_matrix_probe() {
        let m = PolyMatrix::zeros(3, 2);
        let probe = numeric_nilpotency_probe(&m, &[rational(1, 2), rational(3, 1)]).unwrap();
        assert!(probe.nilpotent);
        assert!(numeric_nilpotency_probe(&m, &[rational(1, 2)]).is_err());
    }

    #[test]
    fn cross_validate_reports_injected_fault() {
        let chart = Chart::standard(2);
        let plan = SamplePlan::new(1, 3).unwrap();
        let t = TensorField::from_fn(2, vec![crate::tensor::Slot::Lower; 2], chart.nvars(), |i| {
            chart.parse(&format!("u1^{}*u2 + {}", i[0] + 1, i[1])).unwrap()
        });
        assert!(cross_validate("T", &t, &t, &plan, chart.vars()).unwrap().passed());
        let mut flipped = t.clone();
        flipped.set(&[1, 0], -t.get(&[1, 0]));
        let r = cross_validate("T", &t, &flipped, &plan, chart.vars()).unwrap();
        let fails: Vec<_> = r.failures().collect();
        assert_eq!(fails.len(), 3);
        assert!(fails.iter().all(|l| l.check == "T[2, 1]"));
    }
}
