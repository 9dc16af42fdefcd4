use crate::algebra::{parse_geom, AlgebraError, Coefficient, GeomPoly, Matrix, Monomial, ParamRational, RatFn};
use crate::quotient::presentation::r_table;
use crate::quotient::{
    derivation_matrix, express_in, kernel_basis, linear_coords, verify_presentation, BaseRingS, ModuleVector,
    Presentation, QuotientError, Relation,
};

use super::foliation::theta_p;
use super::quadric::QuadricChart;
use crate::report::{CheckReport, Report};

/// `x_j x_k (1 + x_j + x_k)` for the two chart slots other than `k0`.
pub fn phi(s: &BaseRingS, k0: usize) -> GeomPoly {
    let t = s.m_table();
    let others: Vec<usize> = (0..3).filter(|&k| k != k0).collect();
    let (xj, xk) = (GeomPoly::var(t, others[0]), GeomPoly::var(t, others[1]));
    &(&xj * &xk) * &(&(&GeomPoly::one(t) + &xj) + &xk)
}

/// Images `u_i -> x_i^2`, `t_i -> phi(t_i)` in generator order.
pub fn embedding(s: &BaseRingS) -> Vec<GeomPoly> {
    let t = s.m_table();
    (0..3).map(|k| GeomPoly::var_pow(t, k, 2)).chain((0..3).map(|k| phi(s, k))).collect()
}

/// The seven relations, written for the chart with its indices `a < b < c`
/// in place of `1, 2, 3`.
pub fn standard_relations(s: &BaseRingS) -> Result<Vec<Relation>, AlgebraError> {
    let c = s.chart();
    let [a, b, cc] = c.idx;
    let templates = [
        "A0 + A1*U1 + A2*U2 + A3*U3",
        "T1^2 + U2*U3 + U2*U3^2 + U2^2*U3",
        "T2^2 + U1*U3 + U1^2*U3 + U1*U3^2",
        "T3^2 + U1*U2 + U1^2*U2 + U1*U2^2",
        "T2*T3 + U1*U2*U3 + (U1 + U1^2)*T1 + U1*U2*T2 + U1*U3*T3",
        "T1*T3 + U1*U2*U3 + U1*U2*T1 + (U2 + U2^2)*T2 + U2*U3*T3",
        "T1*T2 + U1*U2*U3 + U1*U3*T1 + U2*U3*T2 + (U3 + U3^2)*T3",
    ];
    let rt = r_table(s)?;
    templates
        .iter()
        .enumerate()
        .map(|(n, tpl)| {
            let text = tpl
                .replace("A0", &format!("a{}", c.i0))
                .replace("A1", &format!("a{a}"))
                .replace("A2", &format!("a{b}"))
                .replace("A3", &format!("a{cc}"))
                .replace("U1", &format!("u{a}"))
                .replace("U2", &format!("u{b}"))
                .replace("U3", &format!("u{cc}"))
                .replace("T1", &format!("t{a}"))
                .replace("T2", &format!("t{b}"))
                .replace("T3", &format!("t{cc}"));
            Ok(Relation { name: format!("r_{n}"), poly: parse_geom(&rt, &text)? })
        })
        .collect()
}

/// Multiplication table of the kernel generators, computed by the engine:
/// for each quadratic monomial `t_i t_j`, the relation
/// `t_i t_j - c_0 - sum c_k t_k` with `phi(t_i) phi(t_j) = c_0 + sum c_k phi(t_k)`
/// over `S`. Coefficients are in `S` (with `u_c` eliminated).
pub fn derived_relations(s: &BaseRingS) -> Result<Vec<(Monomial, GeomPoly)>, QuotientError> {
    let rt = r_table(s)?;
    let emb = embedding(s);
    let mut gens: Vec<ModuleVector> = vec![s.to_module_vector(&GeomPoly::one(s.m_table()))?];
    for img in &emb[3..] {
        gens.push(s.to_module_vector(img)?);
    }
    let mut out = Vec::new();
    for i in 0..3 {
        for j in i..3 {
            let prod = &emb[3 + i] * &emb[3 + j];
            let target = s.to_module_vector(&prod)?;
            let coeffs = express_in(&gens, &[target])?
                .ok_or_else(|| QuotientError::Check(format!("phi(t{i})*phi(t{j}) outside the kernel span")))?;
            let mut exps = [0u32; 6];
            exps[3 + i] += 1;
            exps[3 + j] += 1;
            let mono = Monomial::from_exponents(&exps);
            let mut rel = GeomPoly::monomial(&rt, mono.clone(), ParamRational::one(&rt));
            for k in 0..4 {
                let c: &RatFn = coeffs.get(k, 0);
                let c = c
                    .as_poly()
                    .ok_or_else(|| QuotientError::Check(format!("coefficient {c} not in S")))?
                    .rename_into(&rt)?;
                let basis = if k == 0 { GeomPoly::one(&rt) } else { GeomPoly::var(&rt, 3 + k - 1) };
                rel = &rel - &(&c * &basis);
            }
            out.push((mono, rel));
        }
    }
    Ok(out)
}

/// Everything computed on the way to the presentation.
#[derive(Clone, Debug)]
pub struct PresentationRun {
    pub presentation: Presentation,
    pub s: BaseRingS,
    pub matrix: Matrix<GeomPoly>,
    pub kernel: Vec<ModuleVector>,
    pub report: Report,
}

/// Runs the derivation matrix, kernel and verification for the degree-one
/// foliation on a chart, and checks each stated relation against the
/// multiplication table computed by the engine.
pub fn quotient_presentation(chart: &QuadricChart) -> Result<PresentationRun, QuotientError> {
    let s = chart.s.clone();
    let theta = theta_p(chart)?;
    let matrix = derivation_matrix(&theta, &s)?;
    let kernel = kernel_basis(&matrix)?;
    let relations = standard_relations(&s)?;
    let presentation = Presentation::new(&s, relations, embedding(&s))?;
    let label = format!("chart {}", s.chart().i0);
    let mut report = Report::default();

    let verified = verify_presentation(&presentation, &s, &theta)?;
    for c in &verified.checks {
        report.push(CheckReport::new(
            format!("{label}: {}", c.name),
            c.passed,
            Some(c.detail.clone()).filter(|d| !d.is_empty()),
        ));
    }

    for (mono, derived) in derived_relations(&s)? {
        let stated = presentation.relations.iter().find(|r| r.poly.coeff(&mono).is_one());
        let name = match stated {
            Some(r) => r.name.clone(),
            None => "(missing)".into(),
        };
        let agrees = match stated {
            Some(r) => linear_coords(&(&r.poly - &derived), &s)?.is_zero(),
            None => false,
        };
        report.push(CheckReport::new(
            format!("{label}: {name} matches the computed multiplication table"),
            agrees,
            Some(derived.to_string()),
        ));
    }
    Ok(PresentationRun { presentation, s, matrix, kernel, report })
}

/// Re-verifies a presentation, e.g. one read back from JSON, against the
/// degree-one foliation on its chart.
pub fn reverify(presentation: &Presentation, s: &BaseRingS) -> Result<Report, QuotientError> {
    let chart = QuadricChart::new(s.chart().i0)?;
    let theta = theta_p(&chart)?;
    let label = format!("chart {}", s.chart().i0);
    let verified = verify_presentation(presentation, s, &theta)?;
    let mut report = Report::default();
    for c in &verified.checks {
        report.push(CheckReport::new(
            format!("{label}: {}", c.name),
            c.passed,
            Some(c.detail.clone()).filter(|d| !d.is_empty()),
        ));
    }
    Ok(report)
}

/// Replaces `r_1` by `r_1 + u_a` and reverifies; the check passes when the
/// tampered presentation is rejected with a failure naming `r_1`.
pub fn tampered_relation_control(run: &PresentationRun) -> Result<CheckReport, QuotientError> {
    let mut tampered = run.presentation.clone();
    let rt = tampered.r_table().clone();
    let r1 =
        tampered.relations.iter_mut().find(|r| r.name == "r_1").ok_or_else(|| QuotientError::Check("no r_1".into()))?;
    r1.poly = &r1.poly + &GeomPoly::var(&rt, 0);
    let report = reverify(&tampered, &run.s)?;
    let failures: Vec<String> = report.failures().map(|c| c.check_name.clone()).collect();
    let detected = failures.iter().any(|n| n.contains("relation r_1 "));
    Ok(CheckReport::new(
        format!("chart {}: tampered r_1 + u_a is rejected", run.s.chart().i0),
        detected,
        Some(format!("failing checks: {}", failures.join("; "))),
    ))
}
