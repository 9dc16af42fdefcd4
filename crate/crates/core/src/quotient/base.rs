use std::fmt;
use std::sync::Arc;

use crate::algebra::{AlgebraError, Coefficient, GeomPoly, Monomial, ParamRational, VarTable};

/// Names of the four quadric parameters.
pub const PARAMS: [&str; 4] = ["a0", "a1", "a2", "a3"];

/// Affine chart `X_{i0} != 0` of the quadric, with the remaining indices
/// `a < b < c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chart {
    pub i0: usize,
    pub idx: [usize; 3],
}

impl Chart {
    pub fn new(i0: usize) -> Result<Self, AlgebraError> {
        if i0 > 3 {
            return Err(AlgebraError::InvalidTable(format!("chart index {i0} not in 0..=3")));
        }
        let rest: Vec<usize> = (0..4).filter(|&i| i != i0).collect();
        Ok(Chart { i0, idx: [rest[0], rest[1], rest[2]] })
    }

    pub fn names(&self, prefix: &str) -> [String; 3] {
        self.idx.map(|i| format!("{prefix}{i}"))
    }
}

/// Bit `k` of a mask stands for the chart variable `x_{idx[k]}`. The order
/// is 1, x_a, x_b, x_c, x_a x_b, x_a x_c, x_b x_c, x_a x_b x_c.
pub const BASIS_MASKS: [u8; 8] = [0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111];

fn slot_of_mask(mask: u8) -> usize {
    BASIS_MASKS.iter().position(|&m| m == mask).expect("mask in 0..8")
}

/// The ring `S = K[u_a, u_b, u_c]/(r_0)` of squares on one chart, with
/// `r_0 = a_{i0} + a_a u_a + a_b u_b + a_c u_c`. Elements are stored as
/// polynomials in `u_a, u_b` after solving `r_0` for `u_c`.
#[derive(Clone, Debug)]
pub struct BaseRingS {
    chart: Chart,
    m_table: Arc<VarTable>,
    u_table: Arc<VarTable>,
    s_table: Arc<VarTable>,
    elim: GeomPoly,
}

impl BaseRingS {
    pub fn new(chart: Chart) -> Result<Self, AlgebraError> {
        Self::with_depth(chart, 0)
    }

    /// The same ring over the parameter field with `p^k`-th roots adjoined.
    pub fn with_depth(chart: Chart, depth: u32) -> Result<Self, AlgebraError> {
        let base = VarTable::new(2, &PARAMS, &[])?.root_extend(depth)?;
        let xs = chart.names("x");
        let us = chart.names("u");
        let m_table = base.with_geometric(&[&xs[0], &xs[1], &xs[2]])?;
        let u_table = base.with_geometric(&[&us[0], &us[1], &us[2]])?;
        let s_table = base.with_geometric(&[&us[0], &us[1]])?;
        let [a, b, c] = chart.idx;
        let alpha = |i| GeomPoly::alpha(&s_table, i);
        let num = &(&alpha(chart.i0) + &(&alpha(a) * &GeomPoly::var(&s_table, 0)))
            + &(&alpha(b) * &GeomPoly::var(&s_table, 1));
        let inv = ParamRational::base_param(&s_table, c)?.inverse().ok_or(AlgebraError::DivisionByZero)?;
        let elim = num.scale(&inv.negated());
        Ok(BaseRingS { chart, m_table, u_table, s_table, elim })
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    /// Table of the chart ring of the quadric, variables `x_a, x_b, x_c`.
    pub fn m_table(&self) -> &Arc<VarTable> {
        &self.m_table
    }

    /// Table of `K[u_a, u_b, u_c]`.
    pub fn u_table(&self) -> &Arc<VarTable> {
        &self.u_table
    }

    /// Table of the internal representation `K[u_a, u_b]`.
    pub fn s_table(&self) -> &Arc<VarTable> {
        &self.s_table
    }

    /// `u_c` expressed through `r_0`.
    pub fn eliminated(&self) -> &GeomPoly {
        &self.elim
    }

    pub fn r0(&self) -> GeomPoly {
        let t = &self.u_table;
        let mut f = GeomPoly::alpha(t, self.chart.i0);
        for (k, &i) in self.chart.idx.iter().enumerate() {
            f = &f + &(&GeomPoly::alpha(t, i) * &GeomPoly::var(t, k));
        }
        f
    }

    /// `q = a_{i0} + sum a_i x_i^2` on the chart.
    pub fn q(&self) -> GeomPoly {
        let t = &self.m_table;
        let mut f = GeomPoly::alpha(t, self.chart.i0);
        for (k, &i) in self.chart.idx.iter().enumerate() {
            f = &f + &(&GeomPoly::alpha(t, i) * &GeomPoly::var_pow(t, k, 2));
        }
        f
    }

    /// Image in `S` of a polynomial in `u_a, u_b, u_c` (any table whose
    /// other variables do not occur).
    pub fn eliminate(&self, f: &GeomPoly) -> Result<GeomPoly, AlgebraError> {
        let f = f.rename_into(&self.u_table)?;
        let images = [GeomPoly::var(&self.s_table, 0), GeomPoly::var(&self.s_table, 1), self.elim.clone()];
        f.compose_into(&self.s_table, &images)
    }

    /// The representative of an element of `S` as a polynomial in all three
    /// `u`.
    pub fn restore(&self, g: &GeomPoly) -> Result<GeomPoly, AlgebraError> {
        g.rename_into(&self.u_table)
    }

    /// Sends `u_i -> x_i^2`.
    pub fn to_m(&self, g: &GeomPoly) -> Result<GeomPoly, AlgebraError> {
        let g = g.rename_into(&self.u_table)?;
        let images: Vec<GeomPoly> = (0..3).map(|k| GeomPoly::var_pow(&self.m_table, k, 2)).collect();
        g.compose_into(&self.m_table, &images)
    }

    /// Basis monomial of slot `j` in the chart ring.
    pub fn basis(&self, j: usize) -> GeomPoly {
        let mask = BASIS_MASKS[j];
        let exps: Vec<u32> = (0..3).map(|k| ((mask >> k) & 1) as u32).collect();
        GeomPoly::monomial(&self.m_table, Monomial::from_exponents(&exps), ParamRational::one(&self.m_table))
    }

    pub fn basis_names(&self) -> [String; 8] {
        let xs = self.chart.names("x");
        BASIS_MASKS.map(|mask| {
            let parts: Vec<&str> = (0..3).filter(|k| (mask >> k) & 1 == 1).map(|k| xs[k].as_str()).collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        })
    }

    /// Rewrites every `x_i^2` to `u_i` and reads off the coordinates in the
    /// square-free basis.
    pub fn to_module_vector(&self, f: &GeomPoly) -> Result<ModuleVector, AlgebraError> {
        let f = f.rename_into(&self.m_table)?;
        let mut slots: Vec<GeomPoly> = vec![GeomPoly::zero(&self.u_table); 8];
        for (m, c) in f.terms() {
            let e = m.exponents();
            let mask = (0..3).fold(0u8, |acc, k| acc | (((e[k] & 1) as u8) << k));
            let u = Monomial::from_exponents(&[e[0] / 2, e[1] / 2, e[2] / 2]);
            slots[slot_of_mask(mask)].add_term(u, c.retable(&self.u_table)?);
        }
        let coords = slots.iter().map(|s| self.eliminate(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(ModuleVector { coords })
    }

    /// `sum_j coords[j] * basis_j` in the chart ring.
    pub fn from_module_vector(&self, v: &ModuleVector) -> Result<GeomPoly, AlgebraError> {
        let mut out = GeomPoly::zero(&self.m_table);
        for (j, c) in v.coords.iter().enumerate() {
            out = &out + &(&self.to_m(c)? * &self.basis(j));
        }
        Ok(out)
    }
}

/// Element of the rank-8 module `M` over `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleVector {
    pub coords: Vec<GeomPoly>,
}

impl ModuleVector {
    pub fn zero(s: &BaseRingS) -> Self {
        ModuleVector { coords: vec![GeomPoly::zero(s.s_table()); 8] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(GeomPoly::is_zero)
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_geom;

    fn s0() -> BaseRingS {
        BaseRingS::new(Chart::new(0).unwrap()).unwrap()
    }

    #[test]
    fn cube_rewrites_once() {
        let s = s0();
        let v = s.to_module_vector(&parse_geom(s.m_table(), "x1^3").unwrap()).unwrap();
        for (j, c) in v.coords.iter().enumerate() {
            if j == 1 {
                assert_eq!(c, &GeomPoly::var(s.s_table(), 0));
            } else {
                assert!(c.is_zero());
            }
        }
    }

    #[test]
    fn phi_coordinates() {
        let s = s0();
        let v = s.to_module_vector(&parse_geom(s.m_table(), "x2*x3 + x2^2*x3 + x2*x3^2").unwrap()).unwrap();
        let names = s.basis_names();
        let at = |n: &str| v.coords[names.iter().position(|x| x == n).unwrap()].clone();
        assert!(at("x2*x3").is_one());
        assert_eq!(at("x3"), GeomPoly::var(s.s_table(), 1));
        // u3 is eliminated: u3 = (a0 + a1 u1 + a2 u2)/a3
        assert_eq!(at("x2"), s.eliminated().clone());
        assert!(at("1").is_zero());
    }

    #[test]
    fn quadric_is_zero_in_s() {
        let s = s0();
        assert!(s.to_module_vector(&s.q()).unwrap().is_zero());
        assert!(s.eliminate(&s.r0()).unwrap().is_zero());
    }

    #[test]
    fn restore_then_eliminate_is_identity() {
        for i0 in 0..4 {
            let s = BaseRingS::new(Chart::new(i0).unwrap()).unwrap();
            let g =
                parse_geom(s.s_table(), &format!("a1*u{}^2 + u{} + a3", s.chart().idx[0], s.chart().idx[1])).unwrap();
            assert_eq!(s.eliminate(&s.restore(&g).unwrap()).unwrap(), g);
        }
    }
}
