use std::sync::Arc;

use crate::algebra::{AlgebraError, GeomPoly, Matrix, VarTable};
use crate::quotient::{BaseRingS, Chart};

use crate::report::{CheckReport, Report};

/// The quadric `Q = sum a_i X_i^2` and its affine chart `X_{i0} != 0`.
#[derive(Clone, Debug)]
pub struct QuadricChart {
    pub s: BaseRingS,
    /// `q = a_{i0} + sum_{i != i0} a_i x_i^2` in the chart variables.
    pub q: GeomPoly,
    /// `Q` in `X_0, .., X_3`.
    pub homogeneous: GeomPoly,
}

pub fn projective_table() -> Result<Arc<VarTable>, AlgebraError> {
    VarTable::new(2, &crate::quotient::base::PARAMS, &["X0", "X1", "X2", "X3"])
}

pub fn homogeneous_quadric(t: &Arc<VarTable>) -> GeomPoly {
    (0..4).fold(GeomPoly::zero(t), |acc, i| &acc + &(&GeomPoly::alpha(t, i) * &GeomPoly::var_pow(t, i, 2)))
}

impl QuadricChart {
    pub fn new(i0: usize) -> Result<Self, AlgebraError> {
        let s = BaseRingS::new(Chart::new(i0)?)?;
        let q = s.q();
        let homogeneous = homogeneous_quadric(&projective_table()?);
        Ok(QuadricChart { s, q, homogeneous })
    }

    pub fn chart(&self) -> Chart {
        self.s.chart()
    }

    /// `Q` with `X_{i0} = 1` and `X_i = x_i`.
    pub fn dehomogenize(&self, f: &GeomPoly) -> Result<GeomPoly, AlgebraError> {
        let mt = self.s.m_table();
        let c = self.chart();
        let images: Vec<GeomPoly> = (0..4)
            .map(|i| {
                if i == c.i0 {
                    GeomPoly::one(mt)
                } else {
                    GeomPoly::var(mt, c.idx.iter().position(|&j| j == i).unwrap())
                }
            })
            .collect();
        f.compose_into(mt, &images)
    }

    /// `q` is the dehomogenized `Q`.
    pub fn check_consistency(&self) -> Result<CheckReport, AlgebraError> {
        let dq = self.dehomogenize(&self.homogeneous)?;
        Ok(CheckReport::new(
            format!("chart {}: q = Q/X{}^2", self.chart().i0, self.chart().i0),
            dq == self.q,
            Some(self.q.to_string()),
        ))
    }
}

/// The fibres of the foliation's projection are finite on the quadric: the
/// `2 x 2` minors of the matrix with rows `(X_i^2)` and `(X_i)` are
/// `X_i X_j (X_i + X_j)`, and none of their common zeros lies on `Q`.
///
/// The common zeros have, for each pair, `X_i = 0`, `X_j = 0` or
/// `X_i = X_j`, so up to scaling they are the nonzero 0/1 vectors. `Q` at
/// such a vector is a nonempty sum of distinct parameters, which is nonzero
/// because the parameters are independent.
pub fn check_fibre_injectivity() -> Result<Report, AlgebraError> {
    let t = projective_table()?;
    let x = |i| GeomPoly::var(&t, i);
    let rows = vec![(0..4).map(|i| GeomPoly::var_pow(&t, i, 2)).collect(), (0..4).map(x).collect()];
    let m = Matrix::from_rows(rows)?;
    let mut report = Report::default();
    for (_, cols, minor) in m.minors(2)? {
        let (i, j) = (cols[0], cols[1]);
        let expected = &(&x(i) * &x(j)) * &(&x(i) + &x(j));
        report.push(CheckReport::new(
            format!("minor ({i},{j}) = X{i}*X{j}*(X{i} + X{j})"),
            minor == expected,
            Some(minor.to_string()),
        ));
    }
    let qq = homogeneous_quadric(&t);
    for mask in 1u8..16 {
        let eps: Vec<u8> = (0..4).map(|k| (mask >> k) & 1).collect();
        let images: Vec<Option<GeomPoly>> = eps.iter().map(|&e| Some(GeomPoly::from_int(&t, e as i64))).collect();
        let v = qq.substitute(&images)?;
        let label: Vec<String> = eps.iter().map(u8::to_string).collect();
        report.push(CheckReport::new(
            format!("Q({}) != 0", label.join(",")),
            !v.is_zero() && v.is_constant(),
            Some(v.to_string()),
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charts_dehomogenize() {
        for i0 in 0..4 {
            assert!(QuadricChart::new(i0).unwrap().check_consistency().unwrap().passed());
        }
    }

    #[test]
    fn vertex_values() {
        let r = check_fibre_injectivity().unwrap();
        assert!(r.passed());
        assert_eq!(r.checks.len(), 6 + 15);
        assert_eq!(r.find("Q(1,1,0,0) != 0").unwrap().witness.as_deref(), Some("a0 + a1"));
        assert_eq!(r.find("minor (0,1) = X0*X1*(X0 + X1)").unwrap().witness.as_deref(), Some("X0^2*X1 + X0*X1^2"));
    }
}
