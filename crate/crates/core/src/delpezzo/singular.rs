use crate::algebra::{GeomPoly, Matrix};
use crate::quotient::presentation::jacobian;
use crate::quotient::{jacobian_minors, normal_form_r, BaseRingS, Presentation, QuotientError};

use crate::report::{CheckReport, Report};

/// `h = a_{i0} + sum a_i u_i^2` in `K[u]`.
pub fn h_poly(p: &Presentation) -> GeomPoly {
    let rt = p.r_table();
    let c = p.chart;
    let mut h = GeomPoly::alpha(rt, c.i0);
    for (k, &i) in c.idx.iter().enumerate() {
        h = &h + &(&GeomPoly::alpha(rt, i) * &GeomPoly::var_pow(rt, k, 2));
    }
    h
}

fn u_plus_u2(p: &Presentation, k: usize) -> GeomPoly {
    let u = GeomPoly::var(p.r_table(), k);
    &u + &(&u * &u)
}

#[derive(Clone, Debug)]
pub struct SingularLocus {
    pub report: Report,
    pub minor_count: usize,
    pub nonzero_minors: usize,
}

/// Singular locus of the quotient chart through the Jacobian criterion:
/// (i) every `4 x 4` minor is divisible by `h` in `R`; (ii) the `3 x 3`
/// minors of the block of `r_0..r_3` in the `u` columns are `0` and
/// `(u_i + u_i^2) h`; (iii) every `2 x 2` minor of the block of `r_4..r_6` in
/// the `t` columns is `0` in `R`; (iv) the diagonal of that block generates
/// the unit ideal, by the residue enumeration `a_{i0} + sum e_i a_i != 0`.
pub fn singular_locus(p: &Presentation, s: &BaseRingS) -> Result<SingularLocus, QuotientError> {
    let label = format!("chart {}", p.chart.i0);
    let mut report = Report::default();
    let rels: Vec<GeomPoly> = p.relations.iter().map(|r| r.poly.clone()).collect();
    let vars: Vec<usize> = (0..6).collect();
    let h = h_poly(p);
    let h_s = s.eliminate(&h)?;

    let minors = jacobian_minors(&rels, &vars, 4, p, s)?;
    let nonzero = minors.iter().filter(|m| !m.normal.is_zero()).count();
    let mut bad = Vec::new();
    for m in &minors {
        if m.normal.divide_by(&h_s).is_err() {
            bad.push(format!("rows {:?} cols {:?}", m.rows, m.cols));
        }
    }
    report.push(CheckReport::new(
        format!("{label}: all {} 4x4 Jacobian minors divisible by h", minors.len()),
        bad.is_empty(),
        Some(if bad.is_empty() {
            format!("{nonzero} nonzero minors, h = {h}")
        } else {
            format!("{} minors not divisible, first {}", bad.len(), bad[0])
        }),
    ));

    // 3x3 minors of the u block: A_j omits row r_j.
    let jac = jacobian(&rels, &vars)?;
    for omit in 0..4 {
        let rows: Vec<usize> = (0..4).filter(|&r| r != omit).collect();
        let a = jac.submatrix(&rows, &[0, 1, 2]).det_laplace()?;
        let nf = normal_form_r(&a, p, s)?;
        let (expected, text) = if omit == 0 {
            (GeomPoly::zero(p.r_table()), "0".to_string())
        } else {
            let i = p.chart.idx[omit - 1];
            (&u_plus_u2(p, omit - 1) * &h, format!("(u{i} + u{i}^2)*h"))
        };
        let want = normal_form_r(&expected, p, s)?;
        report.push(CheckReport::new(
            format!("{label}: A_{} = {text}", if omit == 0 { 0 } else { p.chart.idx[omit - 1] }),
            nf == want,
            Some(a.to_string()),
        ));
    }

    // 2x2 minors of B
    let b: Matrix<GeomPoly> = jac.submatrix(&[4, 5, 6], &[3, 4, 5]);
    let mut all_zero = true;
    let mut witness = Vec::new();
    for (rows, cols, m) in b.minors(2)? {
        let nf = normal_form_r(&m, p, s)?;
        if !nf.is_zero() {
            all_zero = false;
            witness.push(format!("B rows {rows:?} cols {cols:?}"));
        }
    }
    report.push(CheckReport::new(
        format!("{label}: 2x2 minors of B vanish in R"),
        all_zero,
        Some(if all_zero { "9 minors".into() } else { witness.join("; ") }),
    ));
    // The two minor types up to cyclic symmetry: rows r_5, r_6 against the
    // t-columns (t_a, t_b) gives r_5, against (t_b, t_c) gives r_1.
    for (label_b, cols, rel) in [("B_{3,3}", [0usize, 1], 5usize), ("B_{1,3}", [1, 2], 1)] {
        let m = b.submatrix(&[1, 2], &cols).det_laplace()?;
        let r = &p.relations[rel].poly;
        report.push(CheckReport::new(
            format!("{label}: {label_b} = {}", p.relations[rel].name),
            &m == r,
            Some(m.to_string()),
        ));
    }

    // unit ideal certificate
    let mt = s.m_table();
    for mask in 0u8..8 {
        let mut v = GeomPoly::alpha(mt, p.chart.i0);
        let mut label_eps = Vec::new();
        for (k, &i) in p.chart.idx.iter().enumerate() {
            let e = (mask >> k) & 1;
            label_eps.push(e.to_string());
            if e == 1 {
                v = &v + &GeomPoly::alpha(mt, i);
            }
        }
        report.push(CheckReport::new(
            format!("{label}: residue ({}) gives a{} + sum != 0", label_eps.join(","), p.chart.i0),
            !v.is_zero(),
            Some(v.to_string()),
        ));
    }
    Ok(SingularLocus { report, minor_count: minors.len(), nonzero_minors: nonzero })
}
