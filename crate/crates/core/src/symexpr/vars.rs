use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Name of the spectral variable used for characteristic polynomials.
pub const SPECTRAL: &str = "L";

/// Index of a variable inside a [`VarTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub usize);

impl Var {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VarError {
    #[error("duplicate variable `{0}`")]
    Duplicate(String),
    #[error("`{0}` is not a valid identifier")]
    InvalidName(String),
    #[error("the spectral variable `L` must be the last variable")]
    SpectralNotLast,
}

/// Ordered, immutable list of variable names. The order fixes the
/// monomial ordering of every polynomial built over the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarTable {
    pub fn new<I, S>(names: I) -> Result<Self, VarError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(VarError::InvalidName(name.clone()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(VarError::Duplicate(name.clone()));
            }
        }
        if let Some(&pos) = index.get(SPECTRAL) {
            if pos + 1 != names.len() {
                return Err(VarError::SpectralNotLast);
            }
        }
        Ok(VarTable { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<Var> {
        self.index.get(name).copied().map(Var)
    }

    pub fn name(&self, v: Var) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (0..self.names.len()).map(Var)
    }

    pub fn spectral(&self) -> Option<Var> {
        self.get(SPECTRAL)
    }
}

impl fmt::Display for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_misplaced_spectral() {
        assert_eq!(
            VarTable::new(["u1", "u1"]).unwrap_err(),
            VarError::Duplicate("u1".into())
        );
        assert_eq!(
            VarTable::new(["L", "u1"]).unwrap_err(),
            VarError::SpectralNotLast
        );
        assert!(VarTable::new(["u1", "2x"]).is_err());
        let t = VarTable::new(["u1", "u2", "L"]).unwrap();
        assert_eq!(t.spectral(), Some(Var(2)));
        assert_eq!(t.get("u2"), Some(Var(1)));
    }
}
