use std::sync::Arc;

use crate::algebra::{parse_geom, AlgebraError, Coefficient, GeomPoly, Matrix, Monomial, ParamRational, VarTable};
use crate::quotient::presentation::r_table;
use crate::quotient::{BaseRingS, Chart, QuotientError};

use super::presentation::standard_relations;
use crate::report::{CheckReport, Report};

/// Root depth needed: `c_ij` involve square roots, their change of
/// variables another square root, and the cusp a fourth root of a ratio.
pub const CUSP_DEPTH: u32 = 3;

const W_VARS: [&str; 8] = ["u1", "u2", "u3", "t1", "t2", "t3", "u", "s"];
const U: usize = 6;
const S: usize = 7;

#[derive(Clone, Debug)]
pub struct CuspReport {
    /// `c[i-1][j]` is the coefficient of `u^j` in `r_i`.
    pub c: Vec<Vec<ParamRational>>,
    /// `s^2 + u (c_11 + c_13 u^2)`.
    pub curve_relation: GeomPoly,
    /// `sqrt(c_11 / c_13)`.
    pub cusp_u: ParamRational,
    pub det_a0: ParamRational,
    pub det_a1: ParamRational,
    /// `sum a_i^(1/4) X_i`, whose square is the double line.
    pub double_line: GeomPoly,
    /// `sum a_i^(1/8) X_i`.
    pub cusp_plane: GeomPoly,
    pub report: Report,
}

fn table() -> Result<Arc<VarTable>, AlgebraError> {
    VarTable::new(2, &crate::quotient::base::PARAMS, &W_VARS)?.root_extend(CUSP_DEPTH)
}

fn root(c: &ParamRational, what: &str) -> Result<ParamRational, QuotientError> {
    c.checked_frobenius_root().map_err(|_| QuotientError::Check(format!("{what} is not a square")))
}

/// `s^2 -> g` until `s` occurs at most linearly.
fn reduce_s(f: &GeomPoly, g: &GeomPoly) -> Result<GeomPoly, AlgebraError> {
    let t = f.table().clone();
    let s2 = GeomPoly::var_pow(&t, S, 2);
    let mut f = f.clone();
    loop {
        let Some((m, c)) = f.terms().rev().find(|(m, _)| m.exponent(S) >= 2).map(|(m, c)| (m.clone(), c.clone()))
        else {
            return Ok(f);
        };
        let cof = m.with_exponent(S, m.exponent(S) - 2);
        f = &f + &(g - &s2).mul_term(&cof, &c)?;
    }
}

/// The cuspidal curve under the singular locus on chart 0.
///
/// On `sqrt(h) = 0` the chart coordinates `u_2, u_3` are linear in `u = u_1`;
/// then `r_i = t_i^2 + sum_j c_ij u^j` for `i = 1, 2, 3`. After
/// `t_1 = s + sqrt(c_10) + sqrt(c_12) u`,
/// `t_i = sqrt(c_i1/c_11) s + sqrt(c_i2) u` (`i = 2, 3`), all of `r_1..r_6`
/// must vanish modulo `s^2 + u (c_11 + c_13 u^2)`.
pub fn cusp_curve() -> Result<CuspReport, QuotientError> {
    let w = table()?;
    let s0 = BaseRingS::new(Chart::new(0)?)?;
    let rt3 = r_table(&s0)?.root_extend(CUSP_DEPTH)?;
    let rels: Vec<GeomPoly> =
        standard_relations(&s0)?.iter().map(|r| r.poly.lift_to(&rt3)?.rename_into(&w)).collect::<Result<_, _>>()?;

    let p = |src: &str| parse_geom(&w, src);
    // a_i = b_i^8, sqrt(a_i) = b_i^4
    let u2 = p("((a0 + b0^4*b3^4) + (a1 + b1^4*b3^4)*u)/(a2 + b2^4*b3^4)")?;
    let u3 = (&p("a0 + a1*u")? + &(&p("a2")? * &u2))
        .scale(&ParamRational::base_param(&w, 3)?.inverse().ok_or(AlgebraError::DivisionByZero)?);
    let mut on_line: Vec<Option<GeomPoly>> = vec![None; W_VARS.len()];
    on_line[0] = Some(GeomPoly::var(&w, U));
    on_line[1] = Some(u2.clone());
    on_line[2] = Some(u3.clone());
    let rels_u: Vec<GeomPoly> = rels.iter().map(|r| r.substitute(&on_line)).collect::<Result<_, _>>()?;

    let mut report = Report::default();
    // sqrt(h) and r_0 both vanish on the substituted line.
    let sqrt_h = p("b0^4 + b1^4*u1 + b2^4*u2 + b3^4*u3")?.substitute(&on_line)?;
    report.push(CheckReport::new(
        "cusp: r_0 and sqrt(h) vanish on the line",
        rels_u[0].is_zero() && sqrt_h.is_zero(),
        None,
    ));

    let mut c: Vec<Vec<ParamRational>> = Vec::new();
    let mut shape_ok = true;
    for (i, r) in rels_u.iter().enumerate().take(4).skip(1) {
        let tsq = Monomial::var(W_VARS.len(), 2 + i, 2);
        let mut row = vec![ParamRational::zero(&w); 4];
        for (m, coeff) in r.terms() {
            if *m == tsq && coeff.is_one() {
                continue;
            }
            let only_u = (0..W_VARS.len()).all(|k| k == U || m.exponent(k) == 0);
            let e = m.exponent(U) as usize;
            if !only_u || e > 3 {
                shape_ok = false;
                continue;
            }
            row[e] = coeff.clone();
        }
        c.push(row);
    }
    report.push(CheckReport::new("cusp: r_1..r_3 are t_i^2 plus a cubic in u", shape_ok, None));
    report.push(CheckReport::new("cusp: c_20 = 0", c[1][0].is_zero(), Some(c[1][0].to_string())));
    report.push(CheckReport::new("cusp: c_30 = 0", c[2][0].is_zero(), Some(c[2][0].to_string())));
    report.push(CheckReport::new("cusp: c_10 != 0", !c[0][0].is_zero(), Some(c[0][0].to_string())));
    for i in 0..3 {
        for j in i + 1..3 {
            let v = c[i][1].times(&c[j][3]).plus(&c[j][1].times(&c[i][3]));
            report.push(CheckReport::new(
                format!("cusp: c_{}1*c_{}3 + c_{}1*c_{}3 = 0", i + 1, j + 1, j + 1, i + 1),
                v.is_zero(),
                None,
            ));
        }
    }
    if c[0][1].is_zero() || c[0][3].is_zero() {
        return Err(QuotientError::Check("c_11 or c_13 vanishes".into()));
    }

    // s_i^2 = (c_i1/c_11) s_1^2 with s_i^2 = c_i1 u + c_i3 u^3
    let ut = |k: usize, e: u32| GeomPoly::monomial(&w, Monomial::var(W_VARS.len(), U, e), c[k][e as usize].clone());
    let s_sq = |k: usize| &ut(k, 1) + &ut(k, 3);
    for k in 1..3 {
        let ratio = c[k][1].checked_div(&c[0][1])?;
        let ok = s_sq(k) == s_sq(0).scale(&ratio);
        report.push(CheckReport::new(format!("cusp: s_{}^2 = (c_{}1/c_11) s_1^2", k + 1, k + 1), ok, None));
    }

    let s = GeomPoly::var(&w, S);
    let u = GeomPoly::var(&w, U);
    let cst = |x: ParamRational| GeomPoly::constant(&w, x);
    let t1 = &(&s + &cst(root(&c[0][0], "c_10")?)) + &(&cst(root(&c[0][2], "c_12")?) * &u);
    let t2 = &(&cst(root(&c[1][1].checked_div(&c[0][1])?, "c_21/c_11")?) * &s) + &(&cst(root(&c[1][2], "c_22")?) * &u);
    let t3 = &(&cst(root(&c[2][1].checked_div(&c[0][1])?, "c_31/c_11")?) * &s) + &(&cst(root(&c[2][2], "c_32")?) * &u);
    let mut on_curve: Vec<Option<GeomPoly>> = vec![None; W_VARS.len()];
    on_curve[3] = Some(t1);
    on_curve[4] = Some(t2);
    on_curve[5] = Some(t3);
    let g = &(&ut(0, 1) + &ut(0, 3)); // s^2 = u (c_11 + c_13 u^2)
    let curve_relation = &s * &s + g;
    for (i, r) in rels_u.iter().enumerate().skip(1) {
        let reduced = reduce_s(&r.substitute(&on_curve)?, g)?;
        report.push(CheckReport::new(
            format!("cusp: r_{i} = 0 on the cuspidal curve"),
            reduced.is_zero(),
            (!reduced.is_zero()).then(|| reduced.to_string()),
        ));
    }

    let ratio = c[0][1].checked_div(&c[0][3])?;
    let cusp_u = root(&ratio, "c_11/c_13")?;
    let fourth = root(&cusp_u, "sqrt(c_11/c_13)")?;

    // Cramer: rows of 2^j-th roots of a_1..a_3, right side from a_0.
    let b = |i: usize, j: u32| ParamRational::param_root(&w, i, j);
    let roots = [1u32, 2, 3];
    let a_rows: Vec<Vec<ParamRational>> =
        roots.iter().map(|&j| (1..4).map(|i| b(i, j)).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
    let rhs: Vec<ParamRational> = roots.iter().map(|&j| b(0, j)).collect::<Result<_, _>>()?;
    let a0 = Matrix::from_rows(a_rows.clone())?;
    let cramer = |col: usize| -> Result<ParamRational, AlgebraError> {
        let mut rows = a_rows.clone();
        for (r, v) in rows.iter_mut().zip(&rhs) {
            r[col] = v.clone();
        }
        Matrix::from_rows(rows)?.det_laplace()
    };
    let det_a0 = a0.det_laplace()?;
    let det_a1 = cramer(0)?;
    let pow4 = |x: &ParamRational| x.times(x).times(&x.times(x));
    report.push(CheckReport::new(
        "cusp: (det A_1)^4 * c_13 = (det A_0)^4 * c_11",
        pow4(&det_a1).times(&c[0][3]) == pow4(&det_a0).times(&c[0][1]),
        Some(format!("det A_0 = {det_a0}, det A_1 = {det_a1}")),
    ));
    let x1 = det_a1.checked_div(&det_a0)?;
    report.push(CheckReport::new("cusp: det A_1 / det A_0 = (c_11/c_13)^(1/4)", x1 == fourth, Some(x1.to_string())));
    report.push(CheckReport::new(
        "cusp: u-coordinate squared is c_11/c_13",
        cusp_u.times(&cusp_u) == ratio,
        Some(cusp_u.to_string()),
    ));

    // Planes sum a_i^(1/2^j) X_i through the point with X_0 = 1 given by
    // Cramer's rule.
    let point: Vec<ParamRational> = std::iter::once(Ok(ParamRational::one(&w)))
        .chain((0..3).map(|k| cramer(k).and_then(|d| d.checked_div(&det_a0))))
        .collect::<Result<_, _>>()?;
    for &j in &roots {
        let v = (0..4).try_fold(ParamRational::zero(&w), |acc, i| b(i, j).map(|bi| acc.plus(&bi.times(&point[i]))))?;
        report.push(CheckReport::new(format!("cusp: point lies on the plane of 2^{j}-th roots"), v.is_zero(), None));
    }

    let pt = VarTable::new(2, &crate::quotient::base::PARAMS, &["X0", "X1", "X2", "X3"])?.root_extend(CUSP_DEPTH)?;
    let plane = |j: u32| -> Result<GeomPoly, AlgebraError> {
        (0..4).try_fold(GeomPoly::zero(&pt), |acc, i| {
            Ok(&acc + &(&GeomPoly::constant(&pt, ParamRational::param_root(&pt, i, j)?) * &GeomPoly::var(&pt, i)))
        })
    };
    let double_line = plane(2)?;
    let cusp_plane = plane(3)?;
    let sq = double_line.frobenius()?;
    let xsq: Vec<GeomPoly> = (0..4).map(|i| GeomPoly::var_pow(&pt, i, 2)).collect();
    let sqrt_plane_frob = plane(1)?.compose_into(&pt, &xsq)?;
    report.push(CheckReport::new(
        "cusp: (sum a_i^(1/4) X_i)^2 = sum a_i^(1/2) X_i^2",
        sq == sqrt_plane_frob,
        Some(sq.to_string()),
    ));

    Ok(CuspReport { c, curve_relation, cusp_u, det_a0, det_a1, double_line, cusp_plane, report })
}
