use std::collections::HashSet;
use std::sync::Arc;

use super::error::AlgebraError;

/// The two variable classes. Parameters live in coefficients, geometric
/// variables index the polynomial terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Layer {
    Parameter,
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    Param(usize),
    Geom(usize),
}

/// Ordered variable names for one polynomial ring, with the characteristic
/// and the root depth `k` (parameter `i` stands for `b_i` with
/// `a_i = b_i^(p^k)`).
///
/// At depth 0 the parameters are the `a_i` themselves. Every parameter keeps
/// its base name so expressions in the original parameters can still be
/// written at any depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarTable {
    characteristic: u32,
    root_depth: u32,
    params: Vec<String>,
    base_params: Vec<String>,
    geometric: Vec<String>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl VarTable {
    pub fn new(p: u32, params: &[&str], geometric: &[&str]) -> Result<Arc<Self>, AlgebraError> {
        let params: Vec<String> = params.iter().map(|s| s.to_string()).collect();
        Self::build(p, 0, params.clone(), params, geometric.iter().map(|s| s.to_string()).collect())
    }

    fn build(
        p: u32,
        root_depth: u32,
        params: Vec<String>,
        base_params: Vec<String>,
        geometric: Vec<String>,
    ) -> Result<Arc<Self>, AlgebraError> {
        if !is_prime(p as u64) {
            return Err(AlgebraError::InvalidTable(format!("{p} is not prime")));
        }
        let mut seen = HashSet::new();
        for name in params.iter().chain(&geometric) {
            if name.is_empty() || !name.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(AlgebraError::InvalidTable(format!("bad variable name `{name}`")));
            }
            if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(AlgebraError::InvalidTable(format!("bad variable name `{name}`")));
            }
            if !seen.insert(name.clone()) {
                return Err(AlgebraError::InvalidTable(format!("duplicate variable `{name}`")));
            }
        }
        if root_depth > 0 {
            for name in &base_params {
                if !seen.insert(name.clone()) {
                    return Err(AlgebraError::InvalidTable(format!("base name `{name}` collides")));
                }
            }
        }
        Ok(Arc::new(VarTable { characteristic: p, root_depth, params, base_params, geometric }))
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn root_depth(&self) -> u32 {
        self.root_depth
    }

    pub fn len(&self, layer: Layer) -> usize {
        match layer {
            Layer::Parameter => self.params.len(),
            Layer::Geometric => self.geometric.len(),
        }
    }

    pub fn names(&self, layer: Layer) -> &[String] {
        match layer {
            Layer::Parameter => &self.params,
            Layer::Geometric => &self.geometric,
        }
    }

    pub fn base_param_names(&self) -> &[String] {
        &self.base_params
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        if let Some(i) = self.params.iter().position(|n| n == name) {
            return Some(Var::Param(i));
        }
        self.geometric.iter().position(|n| n == name).map(Var::Geom)
    }

    /// Index of a parameter given by its base (depth 0) name.
    pub fn lookup_base(&self, name: &str) -> Option<usize> {
        self.base_params.iter().position(|n| n == name)
    }

    pub fn var(&self, name: &str) -> Result<Var, AlgebraError> {
        self.lookup(name).ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    pub fn geom(&self, name: &str) -> Result<usize, AlgebraError> {
        match self.var(name)? {
            Var::Geom(i) => Ok(i),
            Var::Param(_) => Err(AlgebraError::UnknownVariable(format!("{name} (not geometric)"))),
        }
    }

    pub fn name(&self, v: Var) -> &str {
        match v {
            Var::Param(i) => &self.params[i],
            Var::Geom(i) => &self.geometric[i],
        }
    }

    /// A new table where parameter `i` is the `p^depth`-th root of the base
    /// parameter. Parameters `a<i>` are renamed `b<i>`, others get a `_r`
    /// suffix.
    pub fn root_extend(&self, depth: u32) -> Result<Arc<Self>, AlgebraError> {
        if depth == 0 {
            return Self::build(
                self.characteristic,
                0,
                self.base_params.clone(),
                self.base_params.clone(),
                self.geometric.clone(),
            );
        }
        let params = self
            .base_params
            .iter()
            .map(|n| match n.strip_prefix('a') {
                Some(rest) if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) => {
                    format!("b{rest}")
                }
                _ => format!("{n}_r"),
            })
            .collect();
        Self::build(self.characteristic, depth, params, self.base_params.clone(), self.geometric.clone())
    }

    /// Same table with a different geometric variable list.
    pub fn with_geometric(&self, geometric: &[&str]) -> Result<Arc<Self>, AlgebraError> {
        Self::build(
            self.characteristic,
            self.root_depth,
            self.params.clone(),
            self.base_params.clone(),
            geometric.iter().map(|s| s.to_string()).collect(),
        )
    }

    /// `p^k`, checked.
    pub fn frobenius_power(&self, k: u32) -> Result<u32, AlgebraError> {
        self.characteristic.checked_pow(k).ok_or(AlgebraError::ExponentOverflow)
    }

    pub fn same_params(&self, other: &VarTable) -> bool {
        self.characteristic == other.characteristic
            && self.root_depth == other.root_depth
            && self.params == other.params
            && self.base_params == other.base_params
    }
}

pub(crate) fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn ensure_same(a: &Arc<VarTable>, b: &Arc<VarTable>) -> Result<(), AlgebraError> {
    if same_table(a, b) {
        Ok(())
    } else {
        Err(AlgebraError::TableMismatch)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_composite_characteristic() {
        assert!(VarTable::new(2, &["a0", "a1"], &["a1"]).is_err());
        assert!(VarTable::new(4, &["a0"], &["x"]).is_err());
        assert!(VarTable::new(3, &["a0"], &["x"]).is_ok());
    }

    #[test]
    fn root_extend_renames_parameters() {
        let t = VarTable::new(2, &["a0", "a1"], &["x1"]).unwrap();
        let r = t.root_extend(3).unwrap();
        assert_eq!(r.names(Layer::Parameter), &["b0".to_string(), "b1".to_string()]);
        assert_eq!(r.root_depth(), 3);
        assert_eq!(r.lookup_base("a1"), Some(1));
        assert_eq!(r.lookup("a1"), None);
    }
}
