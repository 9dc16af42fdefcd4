use crate::algebra::{AlgebraError, Derivation, GeomPoly, Matrix, RatFn, Ring, Var};

use super::base::{BaseRingS, ModuleVector};
use super::QuotientError;

/// Matrix of an `S`-linear derivation on `M`: column `j` holds the
/// coordinates of the image of basis element `j`.
///
/// `S`-linearity is checked, not assumed: every parameter and every `x_i^2`
/// must be sent to zero.
pub fn derivation_matrix(delta: &Derivation, s: &BaseRingS) -> Result<Matrix<GeomPoly>, QuotientError> {
    let t = s.m_table();
    for v in delta.support() {
        if let Var::Param(i) = v {
            return Err(QuotientError::NotSLinear(t.name(Var::Param(i)).to_string()));
        }
    }
    for k in 0..3 {
        let sq = GeomPoly::var_pow(t, k, 2);
        let img = delta.apply(&sq)?;
        if !s.to_module_vector(&img)?.is_zero() {
            return Err(QuotientError::NotSLinear(format!("{}^2", t.name(Var::Geom(k)))));
        }
    }
    let zero = GeomPoly::zero(s.s_table());
    let mut mat = Matrix::filled(8, 8, &zero);
    for j in 0..8 {
        let col = s.to_module_vector(&delta.apply(&s.basis(j))?)?;
        for (i, c) in col.coords.into_iter().enumerate() {
            mat.set(i, j, c);
        }
    }
    Ok(mat)
}

/// Applies a matrix over `S` to a module vector.
pub fn apply_matrix(mat: &Matrix<GeomPoly>, v: &ModuleVector) -> Result<ModuleVector, AlgebraError> {
    Ok(ModuleVector { coords: mat.mul_vec(&v.coords)? })
}

/// Multiplies a vector over `Frac(S)` by a common denominator so that every
/// coordinate is a polynomial.
pub fn clear_denominators(v: &[RatFn]) -> Result<Vec<GeomPoly>, AlgebraError> {
    let Some(first) = v.first() else {
        return Ok(Vec::new());
    };
    let mut lcm = GeomPoly::one(first.numerator().table());
    for x in v {
        if !x.denominator().divides(&lcm) {
            lcm = &lcm * x.denominator();
        }
    }
    v.iter().map(|x| Ok(x.numerator() * &lcm.exact_div(x.denominator())?)).collect()
}

/// Kernel of a matrix over `S`, computed over `Frac(S)` with denominators
/// cleared afterwards. Each returned vector is checked to be annihilated
/// exactly.
pub fn kernel_basis(mat: &Matrix<GeomPoly>) -> Result<Vec<ModuleVector>, QuotientError> {
    let frac = mat.map(|x| RatFn::from_poly(x.clone()));
    let mut out = Vec::new();
    for v in frac.kernel() {
        let coords = clear_denominators(&v)?;
        let image = mat.mul_vec(&coords)?;
        if !image.iter().all(GeomPoly::is_zero) {
            return Err(QuotientError::Check("kernel vector not annihilated".into()));
        }
        out.push(ModuleVector { coords });
    }
    Ok(out)
}

/// Matrix whose columns are the given vectors, over `Frac(S)`.
pub fn columns(vectors: &[ModuleVector]) -> Result<Matrix<RatFn>, AlgebraError> {
    let n = vectors.first().map_or(0, |v| v.coords.len());
    let rows: Vec<Vec<RatFn>> =
        (0..n).map(|i| vectors.iter().map(|v| RatFn::from_poly(v.coords[i].clone())).collect()).collect();
    Matrix::from_rows(rows)
}

/// Coefficients `c` with `targets[j] = sum_i c[i][j] * gens[i]` over
/// `Frac(S)`, or `None` when some target is outside the span. The generators
/// must be linearly independent.
pub fn express_in(gens: &[ModuleVector], targets: &[ModuleVector]) -> Result<Option<Matrix<RatFn>>, QuotientError> {
    let g = gens.len();
    let mut all = gens.to_vec();
    all.extend_from_slice(targets);
    let aug = columns(&all)?;
    let e = aug.rref();
    if e.pivots.len() != g || e.pivots.iter().enumerate().any(|(k, &p)| k != p) {
        return Ok(None);
    }
    let rows: Vec<Vec<RatFn>> =
        (0..g).map(|i| (0..targets.len()).map(|j| e.matrix.get(i, g + j).clone()).collect()).collect();
    Ok(Some(Matrix::from_rows(rows)?))
}

/// Change-of-basis determinant between two families spanning the same
/// `Frac(S)`-subspace: `det C` where `b = a * C`. `None` when the spans
/// differ or either family is dependent.
pub fn change_of_basis_det(a: &[ModuleVector], b: &[ModuleVector]) -> Result<Option<RatFn>, QuotientError> {
    if a.len() != b.len() || a.is_empty() {
        return Ok(None);
    }
    if columns(a)?.rank() != a.len() || columns(b)?.rank() != b.len() {
        return Ok(None);
    }
    let Some(c) = express_in(a, b)? else {
        return Ok(None);
    };
    let d = c.det()?;
    Ok((!d.ring_is_zero()).then_some(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::base::Chart;

    #[test]
    fn identity_has_empty_kernel() {
        let s = BaseRingS::new(Chart::new(0).unwrap()).unwrap();
        let id = Matrix::identity(8, &GeomPoly::one(s.s_table()));
        assert!(kernel_basis(&id).unwrap().is_empty());
        let zero = Matrix::filled(8, 8, &GeomPoly::zero(s.s_table()));
        assert_eq!(kernel_basis(&zero).unwrap().len(), 8);
    }
}
