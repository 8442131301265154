use std::collections::HashSet;

use crate::error::{Error, Result};

/// How a variable behaves under the acting monoid.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum VarRole {
    /// Moved by the monoid.
    Acted,
    /// Coordinate fixed by the monoid.
    Fixed,
    /// Symbolic parameter (`q`, `s`, ...); fixed by every action.
    Parameter,
}

/// Ordered variable names with their roles. The order is the term order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VariableTable {
    names: Vec<String>,
    roles: Vec<VarRole>,
}

impl VariableTable {
    pub fn new(entries: Vec<(String, VarRole)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (name, _) in &entries {
            if name.is_empty() || !name.chars().next().unwrap().is_alphabetic() {
                return Err(Error::Parameter(format!("invalid variable name {name:?}")));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::Parameter(format!("duplicate variable name {name:?}")));
            }
        }
        let (names, roles) = entries.into_iter().unzip();
        Ok(VariableTable { names, roles })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn role(&self, i: usize) -> VarRole {
        self.roles[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn indices_with(&self, role: VarRole) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.roles[i] == role).collect()
    }

    pub fn is_parameter(&self, i: usize) -> bool {
        self.roles[i] == VarRole::Parameter
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates() {
        let t = VariableTable::new(vec![("x".into(), VarRole::Acted), ("x".into(), VarRole::Fixed)]);
        assert!(t.is_err());
    }

    #[test]
    fn partitions_roles() {
        let t = VariableTable::new(vec![
            ("x1".into(), VarRole::Acted),
            ("x2".into(), VarRole::Fixed),
            ("q".into(), VarRole::Parameter),
        ])
        .unwrap();
        assert_eq!(t.indices_with(VarRole::Acted), vec![0]);
        assert_eq!(t.indices_with(VarRole::Parameter), vec![2]);
        assert_eq!(t.index_of("x2"), Some(1));
    }
}
