use crate::algebra::{AlgebraError, Coefficient, Derivation, GeomPoly, ParamRational, Var};
use crate::quotient::base::BASIS_MASKS;
use crate::quotient::{BaseRingS, Chart, QuotientError};

use super::presentation::PresentationRun;
use crate::report::{CheckReport, Report};

/// Over `K(b_i)` with `a_i = b_i^2`, the square root `l = b_0 + sum b_i x_i`
/// of `q` satisfies `theta_P(l) = l + (b_0 + sum b_i x_i^2)`, and the second
/// summand is nonzero at the point `x_1 = x_2 = 0, x_3 = b_0/b_3` of `l = 0`.
pub fn reducedness_witness() -> Result<Report, AlgebraError> {
    let s = BaseRingS::with_depth(Chart::new(0)?, 1)?;
    let t = s.m_table();
    let x = |k| GeomPoly::var(t, k);
    let b = |i| GeomPoly::param(t, i);
    let mut theta = Derivation::zero(t);
    for k in 0..3 {
        theta.set(Var::Geom(k), &x(k) + &(&x(k) * &x(k)))?;
    }
    let l = (0..3).fold(b(0), |acc, k| &acc + &(&b(k + 1) * &x(k)));
    let rest = (0..3).fold(b(0), |acc, k| &acc + &(&b(k + 1) * &GeomPoly::var_pow(t, k, 2)));

    let mut report = Report::default();
    report.push(CheckReport::new("reduced: l^2 = q", &l * &l == s.q(), Some(s.q().to_string())));
    let image = theta.apply(&l)?;
    report.push(CheckReport::new(
        "reduced: theta_P(l) = l + (b0 + b1*x1^2 + b2*x2^2 + b3*x3^2)",
        image == &l + &rest,
        Some(image.to_string()),
    ));

    let b3 = ParamRational::param(t, 3);
    let x3 = ParamRational::param(t, 0).checked_div(&b3)?;
    let point = [Some(GeomPoly::zero(t)), Some(GeomPoly::zero(t)), Some(GeomPoly::constant(t, x3))];
    let at_l = l.substitute(&point)?;
    let at_image = image.substitute(&point)?;
    report.push(CheckReport::new("reduced: l = 0 at (0, 0, b0/b3)", at_l.is_zero(), None));
    let b0 = ParamRational::param(t, 0);
    let expected = b0.plus(&b0.times(&b0).checked_div(&b3)?);
    let value = at_image.as_constant();
    report.push(CheckReport::new(
        "reduced: theta_P(l) = b0 + b0^2/b3 != 0 at (0, 0, b0/b3)",
        value.as_ref().is_some_and(|v| !v.is_zero() && *v == expected),
        Some(at_image.to_string()),
    ));
    Ok(report)
}

/// Degrees in the tower `M -> R -> S`: `M` is free of rank 8 over `S`, the
/// quotient ring `R` free of rank 4, so the remaining map has degree 2.
pub fn frobenius_factorization_check(run: &PresentationRun) -> Result<(Report, [usize; 3]), QuotientError> {
    let s = &run.s;
    let label = format!("chart {}", s.chart().i0);
    let mut bijective = true;
    for j in 0..BASIS_MASKS.len() {
        let v = s.to_module_vector(&s.basis(j))?;
        for (k, c) in v.coords.iter().enumerate() {
            bijective &= if k == j { c.is_one() } else { c.is_zero() };
        }
        bijective &= s.from_module_vector(&v)? == s.basis(j);
    }
    let m_rank = BASIS_MASKS.len();
    let r_rank = run.kernel.len();
    let mut report = Report::default();
    report.push(CheckReport::new(
        format!("{label}: M has an S-basis of 8 monomials"),
        bijective && m_rank == 8,
        Some(m_rank.to_string()),
    ));
    report.push(CheckReport::new(format!("{label}: kernel rank 4"), r_rank == 4, Some(r_rank.to_string())));
    let deg = if r_rank == 0 || !m_rank.is_multiple_of(r_rank) { 0 } else { m_rank / r_rank };
    report.push(CheckReport::new(
        format!("{label}: degrees (8, 4, 2)"),
        (m_rank, r_rank, deg) == (8, 4, 2),
        Some(format!("({m_rank}, {r_rank}, {deg})")),
    ));
    Ok((report, [m_rank, r_rank, deg]))
}
