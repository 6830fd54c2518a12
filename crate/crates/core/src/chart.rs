//! The variable layout shared by every polynomial of one problem.
//!
//! Order: base coordinates, fiber coordinates, parameters, vector
//! components `a1..a{2n}`, the scaling variable `t`, and finally the
//! spectral variable `L`.

use std::sync::Arc;

use thiserror::Error;

use crate::symexpr::{parse_expr, ParseError, Polynomial, Var, VarError, VarTable, SPECTRAL};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChartError {
    #[error("dimension must be at least 1")]
    EmptyDimension,
    #[error("variable names clash: {0}")]
    Names(#[from] VarError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    vars: VarTable,
    base: Vec<Var>,
    fiber: Vec<Var>,
    params: Vec<Var>,
    alpha: Vec<Var>,
    scale: Var,
    spectral: Var,
    /// Base coordinates and parameters, the only names problem inputs may use.
    input_vars: VarTable,
}

impl Chart {
    /// Chart with base coordinates `u1..un` and fiber coordinates `u{n+1}..u{2n}`.
    pub fn standard(n: usize) -> Arc<Chart> {
        Self::with_params(n, &[]).expect("standard names never clash")
    }

    pub fn with_params(n: usize, params: &[String]) -> Result<Arc<Chart>, ChartError> {
        let base: Vec<String> = (1..=n).map(|i| format!("u{i}")).collect();
        Self::new(&base, params)
    }

    pub fn new(base_names: &[String], params: &[String]) -> Result<Arc<Chart>, ChartError> {
        let n = base_names.len();
        if n == 0 {
            return Err(ChartError::EmptyDimension);
        }
        let mut fiber_names: Vec<String> = (n + 1..=2 * n).map(|i| format!("u{i}")).collect();
        if fiber_names
            .iter()
            .any(|f| base_names.contains(f) || params.contains(f))
        {
            fiber_names = (1..=n).map(|i| format!("w{i}")).collect();
        }
        let mut names: Vec<String> = Vec::new();
        names.extend(base_names.iter().cloned());
        names.extend(fiber_names);
        names.extend(params.iter().cloned());
        names.extend((1..=2 * n).map(|i| format!("a{i}")));
        names.push("t".to_string());
        names.push(SPECTRAL.to_string());
        let vars = VarTable::new(names)?;
        let input_vars = VarTable::new(base_names.iter().chain(params.iter()).cloned())?;
        let p = params.len();
        let idx = |range: std::ops::Range<usize>| range.map(Var).collect::<Vec<_>>();
        Ok(Arc::new(Chart {
            base: idx(0..n),
            fiber: idx(n..2 * n),
            params: idx(2 * n..2 * n + p),
            alpha: idx(2 * n + p..4 * n + p),
            scale: Var(4 * n + p),
            spectral: Var(4 * n + p + 1),
            vars,
            input_vars,
        }))
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Dimension of the base manifold.
    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &[Var] {
        &self.base
    }

    pub fn fiber(&self) -> &[Var] {
        &self.fiber
    }

    /// Base followed by fiber coordinates.
    pub fn cotangent(&self) -> Vec<Var> {
        self.base.iter().chain(&self.fiber).copied().collect()
    }

    pub fn params(&self) -> &[Var] {
        &self.params
    }

    pub fn alpha(&self) -> &[Var] {
        &self.alpha
    }

    pub fn scale(&self) -> Var {
        self.scale
    }

    pub fn spectral(&self) -> Var {
        self.spectral
    }

    pub fn poly(&self, v: Var) -> Polynomial {
        Polynomial::var(self.nvars(), v)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.nvars())
    }

    /// Parses over every variable of the chart.
    pub fn parse(&self, text: &str) -> Result<Polynomial, ParseError> {
        parse_expr(text, &self.vars)
    }

    /// Parses an input expression; only base coordinates and parameters
    /// are in scope.
    pub fn parse_input(&self, text: &str) -> Result<Polynomial, ParseError> {
        let p = parse_expr(text, &self.input_vars)?;
        let map: Vec<Var> = self.base.iter().chain(&self.params).copied().collect();
        Ok(p.remap(&map, self.nvars()))
    }

    pub fn fmt(&self, p: &Polynomial) -> String {
        p.to_string_with(&self.vars)
    }
}
