use std::sync::Arc;

use super::error::AlgebraError;
use super::field::Coefficient;
use super::monomial::Monomial;
use super::poly::Poly;
use super::rational::{ParamRational, SparsePoly};
use super::vars::{Layer, Var, VarTable};

/// Polynomial in the geometric variables with parameter-field coefficients.
pub type GeomPoly = Poly<ParamRational>;

impl Poly<ParamRational> {
    /// The parameter `b_i` (or `a_i` at depth 0) as a constant.
    pub fn param(table: &Arc<VarTable>, i: usize) -> Self {
        Self::constant(table, ParamRational::param(table, i))
    }

    /// The base parameter `a_i`, written `b_i^(p^k)` at root depth `k`.
    pub fn alpha(table: &Arc<VarTable>, i: usize) -> Self {
        Self::constant(table, ParamRational::base_param(table, i).expect("depth 0 root"))
    }

    /// Variable by name, in either layer.
    pub fn named(table: &Arc<VarTable>, name: &str) -> Result<Self, AlgebraError> {
        Ok(match table.var(name)? {
            Var::Geom(i) => Self::var(table, i),
            Var::Param(i) => Self::param(table, i),
        })
    }

    pub fn is_geom_constant(&self) -> bool {
        self.is_constant()
    }

    /// Partial derivative in the parameter `i`, applied to every coefficient.
    pub fn param_partial(&self, i: usize) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(self.table());
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c.partial(i)?);
        }
        Ok(out)
    }

    pub fn partial_var(&self, v: Var) -> Result<Self, AlgebraError> {
        match v {
            Var::Geom(i) => Ok(self.partial(i)),
            Var::Param(i) => self.param_partial(i),
        }
    }

    /// Simultaneous substitution in both layers. `geom[i]` replaces geometric
    /// variable `i`, `params[j]` replaces parameter `j`; `None` keeps it.
    ///
    /// A parameter image may involve geometric variables. Each coefficient's
    /// numerator and denominator are then evaluated separately, and the
    /// denominator must become a nonzero constant.
    pub fn substitute_all(&self, geom: &[Option<GeomPoly>], params: &[Option<GeomPoly>]) -> Result<Self, AlgebraError> {
        let table = self.table().clone();
        let coeffs_moved = if params.iter().all(Option::is_none) {
            self.clone()
        } else {
            let np = table.len(Layer::Parameter);
            let images: Vec<GeomPoly> =
                (0..np).map(|j| params.get(j).cloned().flatten().unwrap_or_else(|| Self::param(&table, j))).collect();
            let mut out = Self::zero(&table);
            for (m, c) in self.terms() {
                let num = eval_sparse(c.numerator(), &images)?;
                let den = eval_sparse(&c.denominator(), &images)?;
                let den = den.as_constant().ok_or(AlgebraError::NotPolynomial)?;
                if den.is_zero() {
                    return Err(AlgebraError::ZeroDenominator);
                }
                let inv = den.inverse().ok_or(AlgebraError::ZeroDenominator)?;
                let mono = Self::monomial(&table, m.clone(), ParamRational::one(&table));
                out = out.checked_add(&num.scale(&inv).checked_mul(&mono)?)?;
            }
            out
        };
        if geom.iter().all(Option::is_none) {
            return Ok(coeffs_moved);
        }
        coeffs_moved.substitute(geom)
    }

    /// Substitution by variable name.
    pub fn substitute_named(&self, bindings: &[(&str, GeomPoly)]) -> Result<Self, AlgebraError> {
        let table = self.table();
        let mut geom = vec![None; table.len(Layer::Geometric)];
        let mut params = vec![None; table.len(Layer::Parameter)];
        for (name, value) in bindings {
            match table.var(name)? {
                Var::Geom(i) => geom[i] = Some(value.clone()),
                Var::Param(i) => params[i] = Some(value.clone()),
            }
        }
        self.substitute_all(&geom, &params)
    }

    /// The same polynomial over a table of larger root depth, with
    /// `b_i -> b_i^(p^(k'-k))` in the coefficients.
    pub fn lift_to(&self, target: &Arc<VarTable>) -> Result<Self, AlgebraError> {
        if target.names(Layer::Geometric) != self.table().names(Layer::Geometric) {
            return Err(AlgebraError::TableMismatch);
        }
        let mut out = Self::zero(target);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c.lift(target)?);
        }
        Ok(out)
    }

    /// Reads this polynomial in a table with the same parameters and a
    /// different geometric list, mapping variables by name. Variables absent
    /// from the target must not occur.
    pub fn rename_into(&self, target: &Arc<VarTable>) -> Result<Self, AlgebraError> {
        let src = self.table();
        if !src.same_params(target) {
            return Err(AlgebraError::TableMismatch);
        }
        let map: Vec<Option<usize>> = src.names(Layer::Geometric).iter().map(|n| target.geom(n).ok()).collect();
        let n = target.len(Layer::Geometric);
        let mut out = Self::zero(target);
        for (m, c) in self.terms() {
            let mut exps = vec![0u32; n];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| AlgebraError::UnknownVariable(src.names(Layer::Geometric)[i].clone()))?;
                exps[j] += e;
            }
            out.add_term(Monomial::from_exponents(&exps), c.retable(target)?);
        }
        Ok(out)
    }

    /// The constant coefficient as a parameter-field element, when the
    /// polynomial has no geometric variables.
    pub fn to_param(&self) -> Option<ParamRational> {
        self.as_constant()
    }

    /// Coefficient of `var^e` after viewing the polynomial as univariate in
    /// geometric variable `var`.
    pub fn coeff_in(&self, var: usize, e: u32) -> Self {
        let mut out = Self::zero(self.table());
        for (m, c) in self.terms() {
            if m.exponent(var) == e {
                out.add_term(m.with_exponent(var, 0), c.clone());
            }
        }
        out
    }
}

/// Evaluates a parameter polynomial with parameter `j` sent to `images[j]`.
pub fn eval_sparse(f: &SparsePoly, images: &[GeomPoly]) -> Result<GeomPoly, AlgebraError> {
    let table = images.first().map(|g| g.table().clone()).unwrap_or_else(|| f.table().clone());
    let mut powers: Vec<Vec<GeomPoly>> = images.iter().map(|g| vec![GeomPoly::one(&table), g.clone()]).collect();
    let mut out = GeomPoly::zero(&table);
    for (m, c) in f.terms() {
        let mut term = GeomPoly::from_int(&table, c.value() as i64);
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = powers[i].last().unwrap().checked_mul(&images[i])?;
                powers[i].push(next);
            }
            term = term.checked_mul(&powers[i][e as usize])?;
        }
        out = out.checked_add(&term)?;
    }
    Ok(out)
}

impl From<&SparsePoly> for ParamRational {
    fn from(p: &SparsePoly) -> Self {
        ParamRational::from_poly(p.clone())
    }
}
