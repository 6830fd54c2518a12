//! Line-oriented problem files describing an affine connection and an
//! optional twist.
//!
//! ```text
//! # comments run to the end of the line
//! name = example
//! dimension = 3
//! coordinates = u1, u2, u3
//! parameters = c
//!
//! [connection]
//! G[1,1,2] = u1*u3      # Γ^2_{11}; the upper index comes last
//!
//! [twist]
//! phi[1,1] = u2
//! ```
//!
//! Unlisted entries are zero. Indices are 1-based. Expressions may use the
//! declared coordinates and parameters only.

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use thiserror::Error;

use crate::affine::{AffineConnection, ConnectionError};
use crate::chart::{Chart, ChartError};
use crate::extension::{ExtensionError, SymmetricBilinear};
use crate::symexpr::{ParseError, Polynomial};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProblemErrorKind {
    #[error("expected `key = value`")]
    MissingEquals,
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("key `{0}` given twice")]
    DuplicateKey(String),
    #[error("unknown section `[{0}]`")]
    UnknownSection(String),
    #[error("section `[{0}]` given twice")]
    DuplicateSection(String),
    #[error("entry outside of a section")]
    EntryOutsideSection,
    #[error("`dimension` must be a positive integer, got `{0}`")]
    BadDimension(String),
    #[error("missing `dimension`")]
    MissingDimension,
    #[error("{got} coordinates declared for dimension {expected}")]
    CoordinateCount { expected: usize, got: usize },
    #[error(transparent)]
    Names(#[from] ChartError),
    #[error("expected `{0}`")]
    BadEntry(&'static str),
    #[error("index {index} out of range 1..{dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("{}", .0.kind)]
    Expression(ParseError),
    #[error("conflicts with the entry on line {0}")]
    Conflict(usize),
    #[error(transparent)]
    Connection(#[from] ConnectionError),
    #[error(transparent)]
    Twist(#[from] ExtensionError),
}

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("line {line}, column {column}: {kind}")]
    Syntax {
        line: usize,
        column: usize,
        kind: ProblemErrorKind,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl ProblemError {
    fn at(line: usize, column: usize, kind: ProblemErrorKind) -> Self {
        ProblemError::Syntax { line, column, kind }
    }

    pub fn kind(&self) -> Option<&ProblemErrorKind> {
        match self {
            ProblemError::Syntax { kind, .. } => Some(kind),
            ProblemError::Io { .. } => None,
        }
    }
}

/// A parsed and validated problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub name: Option<String>,
    pub description: Option<String>,
    chart: Arc<Chart>,
    connection: AffineConnection,
    twist: Option<SymmetricBilinear>,
}

impl Problem {
    pub fn load(path: impl AsRef<Path>) -> Result<Problem, ProblemError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ProblemError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Problem::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Problem, ProblemError> {
        Parser::default().run(text)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn connection(&self) -> &AffineConnection {
        &self.connection
    }

    /// The `[twist]` section, if the file has one.
    pub fn twist(&self) -> Option<&SymmetricBilinear> {
        self.twist.as_ref()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    Connection,
    Twist,
}

struct Entry {
    line: usize,
    column: usize,
    indices: Vec<usize>,
    expr: String,
    expr_column: usize,
}

#[derive(Default)]
struct Parser {
    keys: HashMap<String, (usize, usize, String)>,
    gamma: Vec<Entry>,
    phi: Vec<Entry>,
    seen_twist: bool,
}

/// Splits `key = value`, returning trimmed parts and the 0-based byte
/// offset of the value.
fn split_assignment(line: &str) -> Option<(&str, &str, usize)> {
    let eq = line.find('=')?;
    let value = &line[eq + 1..];
    let lead = value.len() - value.trim_start().len();
    Some((line[..eq].trim(), value.trim(), eq + 1 + lead))
}

fn leading_ws(s: &str) -> usize {
    s.len() - s.trim_start().len()
}

fn list(value: &str) -> Vec<String> {
    value
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

impl Parser {
    fn run(mut self, text: &str) -> Result<Problem, ProblemError> {
        let mut section = Section::Header;
        let mut seen_connection = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let indent = leading_ws(line);
            let body = line.trim();
            if let Some(rest) = body.strip_prefix('[') {
                let Some(name) = rest.strip_suffix(']') else {
                    return Err(ProblemError::at(
                        line_no,
                        indent + body.len(),
                        ProblemErrorKind::BadEntry("]"),
                    ));
                };
                let name = name.trim();
                let seen = match name {
                    "connection" => {
                        section = Section::Connection;
                        std::mem::replace(&mut seen_connection, true)
                    }
                    "twist" => {
                        section = Section::Twist;
                        std::mem::replace(&mut self.seen_twist, true)
                    }
                    other => {
                        return Err(ProblemError::at(
                            line_no,
                            indent + 1,
                            ProblemErrorKind::UnknownSection(other.to_string()),
                        ))
                    }
                };
                if seen {
                    return Err(ProblemError::at(
                        line_no,
                        indent + 1,
                        ProblemErrorKind::DuplicateSection(name.to_string()),
                    ));
                }
                continue;
            }
            let Some((key, value, value_at)) = split_assignment(line) else {
                return Err(ProblemError::at(line_no, indent + 1, ProblemErrorKind::MissingEquals));
            };
            match section {
                Section::Header => {
                    if !matches!(key, "name" | "description" | "dimension" | "coordinates" | "parameters") {
                        let kind = if key.starts_with("G[") || key.starts_with("phi[") {
                            ProblemErrorKind::EntryOutsideSection
                        } else {
                            ProblemErrorKind::UnknownKey(key.to_string())
                        };
                        return Err(ProblemError::at(line_no, indent + 1, kind));
                    }
                    let prev = self.keys.insert(
                        key.to_string(),
                        (line_no, value_at + 1, value.to_string()),
                    );
                    if prev.is_some() {
                        return Err(ProblemError::at(
                            line_no,
                            indent + 1,
                            ProblemErrorKind::DuplicateKey(key.to_string()),
                        ));
                    }
                }
                Section::Connection => {
                    let indices = parse_lhs(key, "G", 3)
                        .ok_or_else(|| ProblemError::at(line_no, indent + 1, ProblemErrorKind::BadEntry("G[i,j,k] = expr")))?;
                    self.gamma.push(Entry {
                        line: line_no,
                        column: indent + 1,
                        indices,
                        expr: value.to_string(),
                        expr_column: value_at,
                    });
                }
                Section::Twist => {
                    let indices = parse_lhs(key, "phi", 2)
                        .ok_or_else(|| ProblemError::at(line_no, indent + 1, ProblemErrorKind::BadEntry("phi[i,j] = expr")))?;
                    self.phi.push(Entry {
                        line: line_no,
                        column: indent + 1,
                        indices,
                        expr: value.to_string(),
                        expr_column: value_at,
                    });
                }
            }
        }
        self.finish()
    }

    fn finish(self) -> Result<Problem, ProblemError> {
        let (dim_line, dim_col, dim_text) = self
            .keys
            .get("dimension")
            .cloned()
            .ok_or_else(|| ProblemError::at(1, 1, ProblemErrorKind::MissingDimension))?;
        let n: usize = match dim_text.parse() {
            Ok(n) if n > 0 => n,
            _ => {
                return Err(ProblemError::at(
                    dim_line,
                    dim_col,
                    ProblemErrorKind::BadDimension(dim_text),
                ))
            }
        };
        let (coord_line, coord_col) = self
            .keys
            .get("coordinates")
            .map(|(l, c, _)| (*l, *c))
            .unwrap_or((dim_line, dim_col));
        let coords = match self.keys.get("coordinates") {
            Some((_, _, v)) => list(v),
            None => (1..=n).map(|i| format!("u{i}")).collect(),
        };
        if coords.len() != n {
            return Err(ProblemError::at(
                coord_line,
                coord_col,
                ProblemErrorKind::CoordinateCount {
                    expected: n,
                    got: coords.len(),
                },
            ));
        }
        let params = self
            .keys
            .get("parameters")
            .map(|(_, _, v)| list(v))
            .unwrap_or_default();
        let chart = Chart::new(&coords, &params)
            .map_err(|e| ProblemError::at(coord_line, coord_col, e.into()))?;

        let gamma = resolve(&chart, &self.gamma, n, |ix| (ix[0].min(ix[1]), ix[0].max(ix[1]), ix[2]))?;
        let connection = AffineConnection::from_entries(
            chart.clone(),
            chart.base().to_vec(),
            gamma.into_iter().map(|(ix, p)| (ix[0], ix[1], ix[2], p)),
        )
        .map_err(|e| ProblemError::at(1, 1, e.into()))?;

        let twist = if self.seen_twist {
            let phi = resolve(&chart, &self.phi, n, |ix| (ix[0].min(ix[1]), ix[0].max(ix[1]), 0))?;
            Some(
                SymmetricBilinear::from_entries(
                    chart.clone(),
                    phi.into_iter().map(|(ix, p)| (ix[0], ix[1], p)),
                )
                .map_err(|e| ProblemError::at(1, 1, e.into()))?,
            )
        } else {
            None
        };

        let get = |k: &str| self.keys.get(k).map(|(_, _, v)| v.clone());
        Ok(Problem {
            name: get("name"),
            description: get("description"),
            chart,
            connection,
            twist,
        })
    }
}

/// Parses `prefix[i,j,...]` into 0-based indices.
fn parse_lhs(key: &str, prefix: &str, arity: usize) -> Option<Vec<usize>> {
    let inner = key.strip_prefix(prefix)?.trim_start().strip_prefix('[')?.strip_suffix(']')?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() != arity {
        return None;
    }
    parts.iter().map(|p| p.parse::<usize>().ok()).collect()
}

/// Parses expressions, checks index ranges and detects conflicting
/// duplicates under the symmetry `key`.
fn resolve(
    chart: &Chart,
    entries: &[Entry],
    n: usize,
    key: impl Fn(&[usize]) -> (usize, usize, usize),
) -> Result<Vec<(Vec<usize>, Polynomial)>, ProblemError> {
    let mut seen: HashMap<(usize, usize, usize), (usize, Polynomial)> = HashMap::new();
    let mut out = Vec::with_capacity(entries.len());
    for e in entries {
        if let Some(&bad) = e.indices.iter().find(|&&i| i == 0 || i > n) {
            return Err(ProblemError::at(
                e.line,
                e.column,
                ProblemErrorKind::IndexOutOfRange { index: bad, dim: n },
            ));
        }
        let ix: Vec<usize> = e.indices.iter().map(|i| i - 1).collect();
        let p = chart.parse_input(&e.expr).map_err(|err| {
            ProblemError::at(e.line, e.expr_column + err.pos + 1, ProblemErrorKind::Expression(err))
        })?;
        match seen.get(&key(&ix)) {
            Some((line, prev)) if *prev != p => {
                return Err(ProblemError::at(e.line, e.column, ProblemErrorKind::Conflict(*line)));
            }
            _ => {
                seen.insert(key(&ix), (e.line, p.clone()));
            }
        }
        out.push((ix, p));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "\
name = sample
dimension = 3
coordinates = u1, u2, u3

[connection]
G[1,1,2] = u1*u3   # Γ^2_11
G[3,3,2] = u1 + u3
";

    #[test]
    fn parses_connection() {
        let p = Problem::parse(EXAMPLE).unwrap();
        assert_eq!(p.name.as_deref(), Some("sample"));
        let c = p.connection();
        assert_eq!(c.christoffel(1, 0, 0), &p.chart().parse("u1*u3").unwrap());
        assert_eq!(c.christoffel(1, 2, 2), &p.chart().parse("u1+u3").unwrap());
        assert_eq!(c.nonzero_symbols().len(), 2);
        assert!(p.twist().is_none());
    }

    #[test]
    fn symmetric_partner_and_twist() {
        let text = "dimension = 2\n[connection]\nG[1,2,1] = u2\nG[2,1,1] = u2\n[twist]\nphi[2,1] = u1^2\n";
        let p = Problem::parse(text).unwrap();
        assert_eq!(p.connection().christoffel(0, 1, 0), &p.chart().parse("u2").unwrap());
        let phi = p.twist().unwrap();
        assert_eq!(phi.get(0, 1), phi.get(1, 0));
        assert!(phi.get(0, 0).is_zero());
    }

    fn err_at(text: &str) -> (usize, usize, ProblemErrorKind) {
        match Problem::parse(text).unwrap_err() {
            ProblemError::Syntax { line, column, kind } => (line, column, kind),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn conflicting_entries() {
        let (line, _, kind) = err_at("dimension = 2\n[connection]\nG[1,2,1] = u2\nG[2,1,1] = u1\n");
        assert_eq!(line, 4);
        assert_eq!(kind, ProblemErrorKind::Conflict(3));
    }

    #[test]
    fn expression_errors_are_positioned() {
        let (line, col, kind) = err_at("dimension = 2\n[connection]\nG[1,1,1] = u1 * w\n");
        assert_eq!((line, col), (3, 17));
        assert!(matches!(kind, ProblemErrorKind::Expression(_)));
        // Fiber coordinates are not part of the input scope.
        assert!(matches!(
            err_at("dimension = 2\n[connection]\nG[1,1,1] = u3\n").2,
            ProblemErrorKind::Expression(_)
        ));
    }

    #[test]
    fn structural_errors() {
        assert_eq!(err_at("[connection]\n").2, ProblemErrorKind::MissingDimension);
        assert_eq!(
            err_at("dimension = 2\n[connection]\nG[1,3,1] = 1\n").2,
            ProblemErrorKind::IndexOutOfRange { index: 3, dim: 2 }
        );
        assert_eq!(
            err_at("dimension = 2\ncoordinates = x\n").2,
            ProblemErrorKind::CoordinateCount { expected: 2, got: 1 }
        );
        assert_eq!(err_at("dimension = 2\nfoo = 1\n").2, ProblemErrorKind::UnknownKey("foo".into()));
        assert_eq!(
            err_at("dimension = 2\n[connection]\nG[1,1] = 1\n").2,
            ProblemErrorKind::BadEntry("G[i,j,k] = expr")
        );
        assert_eq!(err_at("dimension = two\n").2, ProblemErrorKind::BadDimension("two".into()));
    }

    #[test]
    fn parameters_are_in_scope() {
        let p = Problem::parse("dimension = 2\nparameters = c\n[connection]\nG[1,1,2] = c*u2\n").unwrap();
        assert_eq!(p.chart().params().len(), 1);
        assert!(!p.connection().is_zero());
    }
}
