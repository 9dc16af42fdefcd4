use crate::algebra::{AlgebraError, Derivation, GeomPoly, Var};

use super::quadric::QuadricChart;
use crate::report::{CheckReport, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FoliationKind {
    /// `theta_P = sum (x_i + x_i^2) d/dx_i`.
    Deg1,
    /// `theta_P + (1 + sum x_i) sum a_j d/da_j`.
    Deg2,
}

impl FoliationKind {
    pub fn label(self) -> &'static str {
        match self {
            FoliationKind::Deg1 => "deg1",
            FoliationKind::Deg2 => "deg2",
        }
    }
}

#[derive(Clone, Debug)]
pub struct FoliationSpec {
    pub kind: FoliationKind,
    pub theta: Derivation,
}

/// `sum_{i != i0} (x_i + x_i^2) d/dx_i` on the chart ring.
pub fn theta_p(chart: &QuadricChart) -> Result<Derivation, AlgebraError> {
    let t = chart.s.m_table();
    let mut d = Derivation::zero(t);
    for k in 0..3 {
        let x = GeomPoly::var(t, k);
        d.set(Var::Geom(k), &x + &(&x * &x))?;
    }
    Ok(d)
}

/// `(1 + sum_{i != i0} x_i) sum_j a_j d/da_j`.
pub fn theta_a(chart: &QuadricChart) -> Result<Derivation, AlgebraError> {
    let t = chart.s.m_table();
    let l = linear_factor(chart);
    let mut d = Derivation::zero(t);
    for j in 0..4 {
        d.set(Var::Param(j), &l * &GeomPoly::param(t, j))?;
    }
    Ok(d)
}

/// `1 + sum_{i != i0} x_i`.
pub fn linear_factor(chart: &QuadricChart) -> GeomPoly {
    let t = chart.s.m_table();
    (0..3).fold(GeomPoly::one(t), |acc, k| &acc + &GeomPoly::var(t, k))
}

impl FoliationSpec {
    pub fn new(kind: FoliationKind, chart: &QuadricChart) -> Result<Self, AlgebraError> {
        let theta = match kind {
            FoliationKind::Deg1 => theta_p(chart)?,
            FoliationKind::Deg2 => theta_p(chart)?.plus(&theta_a(chart)?)?,
        };
        Ok(FoliationSpec { kind, theta })
    }
}

/// `theta(theta(v)) = theta(v)` for every variable `v`. The `p`-th power of
/// a derivation is a derivation, so agreement on generators is enough.
pub fn check_p_closure(delta: &Derivation, label: &str) -> Result<Report, AlgebraError> {
    let t = delta.table().clone();
    let mut report = Report::default();
    for v in delta.variables() {
        let x = match v {
            Var::Geom(i) => GeomPoly::var(&t, i),
            Var::Param(i) => GeomPoly::param(&t, i),
        };
        let once = delta.apply(&x)?;
        let twice = delta.apply(&once)?;
        let diff = &twice - &once;
        report.push(CheckReport::new(
            format!("{label}: p-closure on {}", t.name(v)),
            diff.is_zero(),
            Some(if diff.is_zero() { once.to_string() } else { format!("difference {diff}") }),
        ));
    }
    Ok(report)
}

/// `theta(f)` is a multiple of `f`; the cofactor is the witness.
pub fn check_ideal_preserved(delta: &Derivation, f: &GeomPoly, label: &str) -> Result<CheckReport, AlgebraError> {
    let image = delta.apply(f)?;
    let name = format!("{label}: ideal preserved");
    Ok(match image.exact_div(f) {
        Ok(cofactor) => CheckReport::pass(name, cofactor.to_string()),
        Err(AlgebraError::NotDivisible) => CheckReport::fail(name, format!("image {image} not divisible")),
        Err(e) => return Err(e),
    })
}

/// deg1 kills every parameter; deg2 kills every product `a_i a_j` but not
/// `a_0`.
pub fn field_of_constants_check(f: &FoliationSpec, chart: &QuadricChart) -> Result<Report, AlgebraError> {
    let t = chart.s.m_table();
    let label = format!("{} chart {}", f.kind.label(), chart.chart().i0);
    let mut report = Report::default();
    match f.kind {
        FoliationKind::Deg1 => {
            for i in 0..4 {
                let v = f.theta.apply(&GeomPoly::alpha(t, i))?;
                report.push(CheckReport::new(format!("{label}: theta(a{i}) = 0"), v.is_zero(), Some(v.to_string())));
            }
        }
        FoliationKind::Deg2 => {
            for i in 0..4 {
                for j in i..4 {
                    let v = f.theta.apply(&(&GeomPoly::alpha(t, i) * &GeomPoly::alpha(t, j)))?;
                    report.push(CheckReport::new(
                        format!("{label}: theta(a{i}*a{j}) = 0"),
                        v.is_zero(),
                        Some(v.to_string()),
                    ));
                }
            }
            let a0 = GeomPoly::alpha(t, 0);
            let v = f.theta.apply(&a0)?;
            let expected = &a0 * &linear_factor(chart);
            report.push(CheckReport::new(
                format!("{label}: theta(a0) = a0*(1 + sum x_i) != 0"),
                !v.is_zero() && v == expected,
                Some(v.to_string()),
            ));
        }
    }
    Ok(report)
}

/// p-closure, ideal preservation and constants for one foliation on one
/// chart.
pub fn foliation_report(kind: FoliationKind, chart: &QuadricChart) -> Result<Report, AlgebraError> {
    let f = FoliationSpec::new(kind, chart)?;
    let label = format!("{} chart {}", kind.label(), chart.chart().i0);
    let mut report = check_p_closure(&f.theta, &label)?;
    report.push(check_ideal_preserved(&f.theta, &chart.q, &label)?);
    report.extend(field_of_constants_check(&f, chart)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_p_on_x1() {
        let c = QuadricChart::new(0).unwrap();
        let d = theta_p(&c).unwrap();
        let x1 = GeomPoly::var(c.s.m_table(), 0);
        assert_eq!(d.apply(&x1).unwrap(), &x1 + &(&x1 * &x1));
        assert!(d.apply(&c.q).unwrap().is_zero());
    }

    #[test]
    fn deg2_cofactor() {
        let c = QuadricChart::new(0).unwrap();
        let f = FoliationSpec::new(FoliationKind::Deg2, &c).unwrap();
        let r = check_ideal_preserved(&f.theta, &c.q, "t").unwrap();
        assert!(r.passed());
        assert_eq!(r.witness.as_deref(), Some("x1 + x2 + x3 + 1"));
    }

    #[test]
    fn negative_controls_fail() {
        let c = QuadricChart::new(0).unwrap();
        let t = c.s.m_table();
        let x1 = GeomPoly::var(t, 0);
        let bad = Derivation::zero(t)
            .with_image(Var::Geom(0), x1.clone())
            .unwrap()
            .with_image(Var::Geom(1), GeomPoly::one(t))
            .unwrap();
        let r = check_p_closure(&bad, "bad").unwrap();
        assert!(!r.passed());
        assert_eq!(r.failures().next().unwrap().check_name, "bad: p-closure on x2");

        let d = Derivation::zero(t).with_image(Var::Geom(0), GeomPoly::one(t)).unwrap();
        let q_prime = &GeomPoly::alpha(t, 0) + &x1;
        assert!(!check_ideal_preserved(&d, &q_prime, "bad").unwrap().passed());
        // d/dx1 kills q itself in characteristic 2
        assert!(check_ideal_preserved(&d, &c.q, "ok").unwrap().passed());
    }
}
