use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::monomial::MAX_VARS;

/// What a variable stands for in the ambient space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarRole {
    Primal,
    Homogenizing,
    Dual,
    Auxiliary,
}

/// Prefix that turns a primal variable name into its dual partner.
pub const DUAL_PREFIX: &str = "u_";
const AUX_PREFIX: &str = "__aux";

/// Ordered variable names with role tags.
///
/// The variable order is the order used by the default graded reverse
/// lexicographic monomial order (first variable largest).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    names: Vec<String>,
    roles: Vec<VarRole>,
    /// `dual[k]` is the index of the dual partner of primal/homogenizing variable `k`.
    dual: Vec<Option<usize>>,
}

/// Shared handle to a ring; polynomials keep one of these.
pub type Ring = Arc<RingContext>;

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingContext {
    /// A ring whose variables are all primal.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Ring> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let roles = vec![VarRole::Primal; names.len()];
        Self::from_parts(names, roles, None)
    }

    /// A ring in which `homogenizing` (one of `names`) plays the role of `w`.
    pub fn with_homogenizing<S: AsRef<str>>(names: &[S], homogenizing: &str) -> Result<Ring> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let pos = names
            .iter()
            .position(|n| n == homogenizing)
            .ok_or_else(|| AlgebraError::UnknownVariable(homogenizing.to_string()))?;
        let mut roles = vec![VarRole::Primal; names.len()];
        roles[pos] = VarRole::Homogenizing;
        Self::from_parts(names, roles, None)
    }

    fn from_parts(names: Vec<String>, roles: Vec<VarRole>, dual: Option<Vec<Option<usize>>>) -> Result<Ring> {
        if names.len() > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(names.len()));
        }
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(AlgebraError::InvalidRing(format!("invalid variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(AlgebraError::DuplicateVariable(n.clone()));
            }
        }
        if roles.iter().filter(|r| **r == VarRole::Homogenizing).count() > 1 {
            return Err(AlgebraError::InvalidRing("more than one homogenizing variable".into()));
        }
        let dual = dual.unwrap_or_else(|| vec![None; names.len()]);
        Ok(Arc::new(RingContext { names, roles, dual }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
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

    pub fn var(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    pub fn homogenizing(&self) -> Option<usize> {
        self.roles.iter().position(|r| *r == VarRole::Homogenizing)
    }

    /// Indices of primal and homogenizing variables, in ring order.
    pub fn point_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| matches!(self.roles[i], VarRole::Primal | VarRole::Homogenizing))
            .collect()
    }

    pub fn dual_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.roles[i] == VarRole::Dual).collect()
    }

    pub fn dual_of(&self, i: usize) -> Option<usize> {
        self.dual[i]
    }

    pub fn has_duals(&self) -> bool {
        self.dual.iter().any(Option::is_some)
    }

    /// The doubled ring: these variables followed by one dual `u_<name>` per
    /// primal/homogenizing variable, in the same order.
    pub fn with_duals(&self) -> Result<Ring> {
        if self.has_duals() {
            return Err(AlgebraError::InvalidRing("ring already carries dual variables".into()));
        }
        let mut names = self.names.clone();
        let mut roles = self.roles.clone();
        let mut dual = vec![None; self.nvars()];
        for i in self.point_vars() {
            dual[i] = Some(names.len());
            names.push(format!("{DUAL_PREFIX}{}", self.names[i]));
            roles.push(VarRole::Dual);
            dual.push(None);
        }
        Self::from_parts(names, roles, Some(dual))
    }

    /// This ring with `count` auxiliary variables appended.
    pub fn with_aux(&self, count: usize) -> Result<Ring> {
        let mut names = self.names.clone();
        let mut roles = self.roles.clone();
        let mut dual = self.dual.clone();
        for k in 0..count {
            names.push(format!("{AUX_PREFIX}{k}"));
            roles.push(VarRole::Auxiliary);
            dual.push(None);
        }
        Self::from_parts(names, roles, Some(dual))
    }

    /// The ring obtained by dropping the variables in `drop` (bitmask);
    /// returns the ring and, for each kept variable, its old index.
    pub fn without(&self, drop: u32) -> Result<(Ring, Vec<usize>)> {
        let keep: Vec<usize> = (0..self.nvars()).filter(|&i| drop & (1 << i) == 0).collect();
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let roles = keep.iter().map(|&i| self.roles[i]).collect();
        let dual = keep
            .iter()
            .map(|&i| self.dual[i].and_then(|d| keep.iter().position(|&k| k == d)))
            .collect();
        Ok((Self::from_parts(names, roles, Some(dual))?, keep))
    }

    /// Bitmask of all variables.
    pub fn all_mask(&self) -> u32 {
        if self.nvars() == 32 { u32::MAX } else { (1u32 << self.nvars()) - 1 }
    }

    pub fn mask_of(&self, vars: &[usize]) -> u32 {
        vars.iter().fold(0, |m, &v| m | (1 << v))
    }
}

impl fmt::Debug for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.names.join(","))
    }
}

pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_rejected() {
        assert_eq!(
            RingContext::new(&["x", "x"]).unwrap_err(),
            AlgebraError::DuplicateVariable("x".into())
        );
    }

    #[test]
    fn doubled_ring_pairs_indices() {
        let r = RingContext::with_homogenizing(&["x", "y", "w"], "w").unwrap();
        let d = r.with_duals().unwrap();
        assert_eq!(d.names(), &["x", "y", "w", "u_x", "u_y", "u_w"]);
        assert_eq!(d.dual_of(2), Some(5));
        assert_eq!(d.role(5), VarRole::Dual);
        assert_eq!(d.homogenizing(), Some(2));
        let (sub, keep) = d.without(d.mask_of(&[0, 1, 2])).unwrap();
        assert_eq!(sub.names(), &["u_x", "u_y", "u_w"]);
        assert_eq!(keep, vec![3, 4, 5]);
    }

    #[test]
    fn second_homogenizer_is_invalid() {
        let r = RingContext::with_homogenizing(&["x", "w"], "w").unwrap();
        assert!(r.with_aux(2).is_ok());
        assert!(RingContext::with_homogenizing(&["x", "w"], "q").is_err());
    }
}
