//! Named groups of checks, as run by the command line tool.

use std::fmt;
use std::str::FromStr;

use crate::delpezzo::{
    check_fibre_injectivity, cusp_curve, foliation_report, frobenius_factorization_check, quotient_presentation,
    reducedness_witness, singular_locus, tampered_relation_control, FoliationKind, QuadricChart,
};
use crate::numerics::numerics_report;
use crate::quotient::QuotientError;
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Foliations,
    Presentation,
    Singular,
    Cusp,
    Numerics,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["foliations", "presentation", "singular", "cusp", "numerics", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Foliations => "foliations",
            Suite::Presentation => "presentation",
            Suite::Singular => "singular",
            Suite::Cusp => "cusp",
            Suite::Numerics => "numerics",
            Suite::All => "all",
        }
    }

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Foliations, Suite::Presentation, Suite::Singular, Suite::Cusp, Suite::Numerics],
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "foliations" => Suite::Foliations,
            "presentation" => Suite::Presentation,
            "singular" => Suite::Singular,
            "cusp" => Suite::Cusp,
            "numerics" => Suite::Numerics,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite {s:?}, expected one of {}", Suite::NAMES.join(", "))),
        })
    }
}

/// Runs a suite on one chart. The cuspidal curve is always computed on
/// chart 0, the numerics do not depend on a chart.
pub fn run_suite(suite: Suite, chart: usize) -> Result<Report, QuotientError> {
    let qc = QuadricChart::new(chart)?;
    let mut report = Report::default();
    let mut presentation = None;
    for part in suite.parts() {
        match part {
            Suite::Foliations => {
                report.push(qc.check_consistency()?);
                report.extend(check_fibre_injectivity()?);
                report.extend(foliation_report(FoliationKind::Deg1, &qc)?);
                report.extend(foliation_report(FoliationKind::Deg2, &qc)?);
                report.extend(reducedness_witness()?);
            }
            Suite::Presentation | Suite::Singular => {
                if presentation.is_none() {
                    presentation = Some(quotient_presentation(&qc)?);
                }
                let run = presentation.as_ref().expect("computed above");
                if part == Suite::Presentation {
                    report.extend(run.report.clone());
                    report.push(tampered_relation_control(run)?);
                    report.extend(frobenius_factorization_check(run)?.0);
                } else {
                    report.extend(singular_locus(&run.presentation, &run.s)?.report);
                }
            }
            Suite::Cusp => report.extend(cusp_curve()?.report),
            Suite::Numerics => report.extend(numerics_report()),
            Suite::All => unreachable!("expanded by parts"),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for n in Suite::NAMES {
            assert_eq!(n.parse::<Suite>().unwrap().name(), n);
        }
        assert!("cusps".parse::<Suite>().is_err());
    }
}
