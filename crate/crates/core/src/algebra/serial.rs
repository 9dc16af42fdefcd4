use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::error::AlgebraError;
use super::geom::GeomPoly;
use super::monomial::Monomial;
use super::parse::parse_param;
use super::rational::ParamRational;
use super::vars::{Layer, VarTable};

/// One term of a serialized polynomial. The coefficient is written as
/// numerator and denominator strings in the parameter names; exponents follow
/// the table's geometric variable order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff_num: String,
    pub coeff_den: String,
    pub exponents: Vec<u32>,
}

/// Terms in descending monomial order.
pub fn to_terms(f: &GeomPoly) -> Vec<TermJson> {
    f.terms()
        .rev()
        .map(|(m, c)| TermJson {
            coeff_num: c.numerator().to_string(),
            coeff_den: c.denominator().to_string(),
            exponents: m.exponents().to_vec(),
        })
        .collect()
}

pub fn from_terms(table: &Arc<VarTable>, terms: &[TermJson]) -> Result<GeomPoly, AlgebraError> {
    let n = table.len(Layer::Geometric);
    let mut out = GeomPoly::zero(table);
    for t in terms {
        if t.exponents.len() != n {
            return Err(AlgebraError::InvalidTable(format!(
                "term has {} exponents, table has {n} variables",
                t.exponents.len()
            )));
        }
        let num = parse_param(table, &t.coeff_num)?;
        let den = parse_param(table, &t.coeff_den)?;
        let c: ParamRational = num.checked_div(&den)?;
        out.add_term(Monomial::from_exponents(&t.exponents), c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_geom;

    #[test]
    fn json_round_trip() {
        let t = VarTable::new(2, &["a0", "a1", "a2"], &["u1", "t1"]).unwrap();
        let f = parse_geom(&t, "t1^2 + (a0 + a1)/(a2)*u1 + a1/(a0*a2)").unwrap();
        let terms = to_terms(&f);
        let json = serde_json::to_string(&terms).unwrap();
        let back: Vec<TermJson> = serde_json::from_str(&json).unwrap();
        assert_eq!(from_terms(&t, &back).unwrap(), f);
        assert_eq!(terms[0].exponents, vec![0, 2]);
    }
}
