//! Exact integer arithmetic relating `p`, the power `m` of the dualizing
//! sheaf, the field-degree exponent `e`, `d = K_X^2` and the irregularity of a
//! regular del Pezzo surface `X` with an `alpha_p`- or `mu_p`-torsor `Z -> X`.
//!
//! Everything is `BigInt`/`BigRational`. `h^2(O) = 0` is taken as input, so
//! `chi(O) = 1 - q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::is_prime;
use crate::report::{CheckReport, Report};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericsError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("D.D - D.K = {0} is odd, so chi is not an integer")]
    Parity(BigInt),
    #[error("12 does not divide {0}")]
    NotDivisible(BigInt),
    #[error("closed form {closed} differs from the summation {brute}")]
    Mismatch { closed: BigInt, brute: BigInt },
}

/// `p`, `m >= 1`, `e in {0, 1}` with `[k_Z : k_X] = p^e`, `d = K_X^2 >= 1`
/// and `q_X = h^1(O_X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DelPezzoParams {
    pub p: u64,
    pub m: u64,
    pub e: u32,
    pub d: u64,
    pub q_x: u64,
}

impl DelPezzoParams {
    pub fn new(p: u64, m: u64, e: u32, d: u64, q_x: u64) -> Result<Self, NumericsError> {
        let params = DelPezzoParams { p, m, e, d, q_x };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), NumericsError> {
        if !is_prime(self.p) {
            return Err(NumericsError::NotPrime(self.p));
        }
        if self.m == 0 || self.d == 0 || self.e > 1 {
            return Err(NumericsError::InvalidParams(format!("m = {}, e = {}, d = {}", self.m, self.e, self.d)));
        }
        Ok(())
    }

    pub fn chi_x(&self) -> BigInt {
        BigInt::one() - BigInt::from(self.q_x)
    }
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

/// `chi(O) + (D.D - D.K)/2`.
pub fn riemann_roch_chi(chi_o: i64, d_self: i64, d_dot_k: i64) -> Result<BigInt, NumericsError> {
    let twice = BigInt::from(d_self) - BigInt::from(d_dot_k);
    if twice.is_odd() {
        return Err(NumericsError::Parity(twice));
    }
    Ok(BigInt::from(chi_o) + twice / 2)
}

/// `m p (p-1) d (3 + m(2p-1))`, twelve times the correction term.
fn twelve_t(p: u64, m: u64, d: u64) -> BigInt {
    big(m) * big(p) * big(p - 1) * big(d) * (big(3) + big(m) * big(2 * p - 1))
}

/// `m p (p-1) d (3 + m(2p-1)) / 12`.
pub fn correction_term(p: u64, m: u64, d: u64) -> Result<BigInt, NumericsError> {
    let n = twelve_t(p, m, d);
    let (q, r) = n.div_rem(&big(12));
    if !r.is_zero() {
        return Err(NumericsError::NotDivisible(n));
    }
    Ok(q)
}

/// `chi(f_* O_Z) = sum_{i<p} chi(L^{-i})` with `L = omega^m`, in closed form
/// and as the summation of Riemann-Roch terms; the two must agree.
pub fn torsor_chi_sum(params: &DelPezzoParams) -> Result<BigInt, NumericsError> {
    let DelPezzoParams { p, m, d, .. } = *params;
    let chi = params.chi_x();
    let closed = big(p) * &chi + correction_term(p, m, d)?;
    let mut brute = BigInt::zero();
    for i in 0..p {
        // D = -m i K: D.D = (mi)^2 d, D.K = -mi d
        let mi = BigInt::from(m) * BigInt::from(i);
        let twice = &mi * &mi * big(d) + &mi * big(d);
        brute += &chi + twice / 2;
    }
    if closed != brute {
        return Err(NumericsError::Mismatch { closed, brute });
    }
    Ok(closed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MainOutcome {
    /// The unique `q_Z`, a nonnegative integer.
    Solution(BigInt),
    /// `1 - q_Z` would have to equal this value, which is not of the form
    /// `1 - n` with `n >= 0` an integer.
    Infeasible(BigRational),
    /// The correction term is not an integer.
    NonIntegral(BigInt),
}

impl MainOutcome {
    pub fn q_z(&self) -> Option<&BigInt> {
        match self {
            MainOutcome::Solution(q) => Some(q),
            _ => None,
        }
    }
}

/// Solves `p^e (1 - q_Z) = p - p q_X + T` for `q_Z`.
pub fn main_equation(params: &DelPezzoParams) -> Result<MainOutcome, NumericsError> {
    params.validate()?;
    let DelPezzoParams { p, m, e, d, q_x } = *params;
    let t = match correction_term(p, m, d) {
        Ok(t) => t,
        Err(NumericsError::NotDivisible(n)) => return Ok(MainOutcome::NonIntegral(n)),
        Err(err) => return Err(err),
    };
    let rhs = big(p) - big(p) * big(q_x) + t;
    let one_minus_qz = BigRational::new(rhs, big(p).pow(e));
    if !one_minus_qz.is_integer() {
        return Ok(MainOutcome::Infeasible(one_minus_qz));
    }
    let q_z = BigInt::one() - one_minus_qz.to_integer();
    Ok(if q_z.is_negative() { MainOutcome::Infeasible(one_minus_qz) } else { MainOutcome::Solution(q_z) })
}

/// `K_Z^2 = p^(1-e) (1 + m(p-1))^2 d`. `m = 0` is accepted.
pub fn torsor_degree(p: u64, m: u64, e: u32, d: u64) -> BigInt {
    let base = big(1) + big(m) * big(p - 1);
    big(p).pow(1 - e.min(1)) * &base * &base * big(d)
}

/// `deg_ext | deg_f`.
pub fn field_degree_divides(deg_f: u64, deg_ext: u64) -> bool {
    deg_ext != 0 && deg_f.is_multiple_of(deg_ext)
}

/// All `(p, m, e, d)` in the bounds with `q_X = 1, q_Z = 0`, i.e.
/// `p^e = T(p, m, d)`, and `p^e | p`.
///
/// `T` increases in `m` and `d`. For `p >= 3`,
/// `T >= T(p, 1, 1) = p(p^2-1)/6 > p >= p^e`, so no solution has `p >= 3`.
/// For `p = 2`, `T = m d (m+1)/2` exceeds 2 once `m >= 2` or `d >= 3`. Any
/// bounds past these thresholds give the full solution set;
/// [`solve_q1_certificate`] checks the inequalities on the scan.
pub fn solve_q1(p_max: u64, m_max: u64, d_max: u64) -> Vec<DelPezzoParams> {
    let mut out = Vec::new();
    for p in (2..=p_max).filter(|&p| is_prime(p)) {
        for m in 1..=m_max {
            for e in 0..=1u32 {
                if !field_degree_divides(p, p.pow(e)) {
                    continue;
                }
                for d in 1..=d_max {
                    if correction_term(p, m, d).is_ok_and(|t| t == big(p).pow(e)) {
                        out.push(DelPezzoParams { p, m, e, d, q_x: 1 });
                    }
                }
            }
        }
    }
    out
}

/// Checks the growth inequalities behind the finite scan of [`solve_q1`].
pub fn solve_q1_certificate(p_max: u64) -> Report {
    let mut report = Report::default();
    for p in (3..=p_max).filter(|&p| is_prime(p)) {
        let t = correction_term(p, 1, 1).unwrap_or_default();
        let bound = big(p) * big(p * p - 1) / 6;
        report.push(CheckReport::new(
            format!("T({p}, 1, 1) = p(p^2-1)/6 > p"),
            t == bound && t > big(p),
            Some(t.to_string()),
        ));
    }
    for (m, d) in [(2u64, 1u64), (1, 3)] {
        let t = correction_term(2, m, d).unwrap_or_default();
        report.push(CheckReport::new(format!("T(2, {m}, {d}) > 2"), t > big(2), Some(t.to_string())));
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityRow {
    pub p: u64,
    pub d: u64,
    pub q: u64,
    pub feasible: bool,
    pub attained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QMin {
    pub d: u64,
    pub q_min: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityTable {
    pub p: u64,
    pub rows: Vec<FeasibilityRow>,
    pub q_min_by_d: Vec<QMin>,
}

/// `6 q >= d (p^2 - 1)`.
pub fn is_feasible(p: u64, d: u64, q: u64) -> bool {
    big(6) * big(q) >= big(d) * (big(p) * big(p) - BigInt::one())
}

/// The least `q >= 1` with `6 q >= d (p^2 - 1)`.
pub fn q_min(p: u64, d: u64) -> u64 {
    let n: BigInt = big(d) * (big(p) * big(p) - BigInt::one());
    n.div_ceil(&big(6)).to_u64().unwrap_or(u64::MAX).max(1)
}

/// The pairs `(d, q)` realized by the two surfaces over `F_2`.
pub fn attained(p: u64, d: u64, q: u64) -> bool {
    p == 2 && q == 1 && (d == 1 || d == 2)
}

pub fn feasibility_region(p: u64, d_max: u64, q_max: u64) -> FeasibilityTable {
    let mut rows = Vec::new();
    for d in 1..=d_max {
        for q in 1..=q_max {
            rows.push(FeasibilityRow { p, d, q, feasible: is_feasible(p, d, q), attained: attained(p, d, q) });
        }
    }
    let q_min_by_d = (1..=d_max).map(|d| QMin { d, q_min: q_min(p, d) }).collect();
    FeasibilityTable { p, rows, q_min_by_d }
}

impl FeasibilityTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("p,d,q,feasible,attained\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{},{},{}\n", r.p, r.d, r.q, r.feasible, r.attained));
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "p": self.p, "q_min_by_d": self.q_min_by_d })
    }
}

/// `h^0(-nK) = n(n+1)/2^(1-e)`.
pub fn h0_anticanonical(n: u64, e: u32) -> Result<BigInt, NumericsError> {
    if n == 0 || e > 1 {
        return Err(NumericsError::InvalidParams(format!("n = {n}, e = {e}")));
    }
    let num = big(n) * big(n + 1);
    let den = big(2).pow(1 - e);
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(NumericsError::NotDivisible(num));
    }
    Ok(q)
}

/// `2^e chi_Z = 2 chi_X + d_X` and `8 d_X = 2^e K_Z^2`, with `d_X` read as
/// `K_X^2`.
pub fn cover_identities(e: u32, chi_z: i64, chi_x: i64, d_x: i64, k_z_sq: i64) -> Report {
    let pe = BigInt::from(2).pow(e);
    let lhs = &pe * BigInt::from(chi_z);
    let rhs = BigInt::from(2 * chi_x + d_x);
    let mut report = Report::default();
    report.push(CheckReport::new("2^e chi(O_Z) = 2 chi(O_X) + d_X", lhs == rhs, Some(format!("{lhs} vs {rhs}"))));
    let lhs = BigInt::from(8) * BigInt::from(d_x);
    let rhs = pe * BigInt::from(k_z_sq);
    report.push(CheckReport::new("d_X = 2^e K_Z^2 / 8", lhs == rhs, Some(format!("8 d_X = {lhs}, 2^e K_Z^2 = {rhs}"))));
    report
}

/// Every solution of the main equation in the bounds satisfies
/// `6 q_X >= d (p^2 - 1)`, with equality only for `e = 1, m = 1`.
pub fn equality_boundary_scan(p_max: u64, m_max: u64, d_max: u64, q_max: u64) -> Report {
    let mut below = Vec::new();
    let mut bad_equality = Vec::new();
    let mut equalities = 0usize;
    let mut solutions = 0usize;
    for p in (2..=p_max).filter(|&p| is_prime(p)) {
        for m in 1..=m_max {
            for e in 0..=1 {
                for d in 1..=d_max {
                    for q_x in 0..=q_max {
                        let params = DelPezzoParams { p, m, e, d, q_x };
                        let Ok(MainOutcome::Solution(_)) = main_equation(&params) else { continue };
                        solutions += 1;
                        let lhs = big(6) * big(q_x);
                        let rhs = big(d) * (big(p) * big(p) - BigInt::one());
                        if lhs < rhs {
                            below.push(params);
                        } else if lhs == rhs {
                            equalities += 1;
                            if e != 1 || m != 1 {
                                bad_equality.push(params);
                            }
                        }
                    }
                }
            }
        }
    }
    let mut report = Report::default();
    report.push(CheckReport::new(
        "solutions satisfy 6 q >= d (p^2 - 1)",
        below.is_empty(),
        Some(match below.first() {
            None => format!("{solutions} solutions"),
            Some(b) => format!("{b:?}"),
        }),
    ));
    report.push(CheckReport::new(
        "equality only with e = 1, m = 1",
        bad_equality.is_empty(),
        Some(match bad_equality.first() {
            None => format!("{equalities} equality cases"),
            Some(b) => format!("{b:?}"),
        }),
    ));
    report
}

/// The checks of the numerics suite with the default bounds.
pub fn numerics_report() -> Report {
    let mut report = Report::default();
    let sols: Vec<(u64, u64, u32, u64)> = solve_q1(13, 20, 100).iter().map(|s| (s.p, s.m, s.e, s.d)).collect();
    report.push(CheckReport::new(
        "q = 1 solutions are (2,1,0,1) and (2,1,1,2)",
        sols == [(2, 1, 0, 1), (2, 1, 1, 2)],
        Some(format!("{sols:?}")),
    ));
    report.extend(solve_q1_certificate(13));
    for (e, d) in [(0u32, 1u64), (1, 2)] {
        let params = DelPezzoParams { p: 2, m: 1, e, d, q_x: 1 };
        let out = main_equation(&params);
        report.push(CheckReport::new(
            format!("main equation at (2,1,{e},{d}), q_X = 1 gives q_Z = 0"),
            matches!(&out, Ok(MainOutcome::Solution(q)) if q.is_zero()),
            Some(format!("{out:?}")),
        ));
        let k = torsor_degree(2, 1, e, d);
        report.push(CheckReport::new(format!("K_Z^2 = 8 at e = {e}"), k == big(8), Some(k.to_string())));
        let h = h0_anticanonical(1, e).unwrap_or_default();
        report.push(CheckReport::new(format!("h0(-K) = 2^e at e = {e}"), h == big(1 << e), Some(h.to_string())));
        report.extend(cover_identities(e, 1, 0, d as i64, 8).prefixed(&format!("e = {e}: ")));
    }
    report.extend(equality_boundary_scan(13, 10, 20, 40));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(p: u64, m: u64, e: u32, d: u64, q_x: u64) -> DelPezzoParams {
        DelPezzoParams::new(p, m, e, d, q_x).unwrap()
    }

    #[test]
    fn riemann_roch_examples() {
        assert_eq!(riemann_roch_chi(0, 1, -1).unwrap(), big(1));
        assert_eq!(riemann_roch_chi(5, 0, 0).unwrap(), big(5));
        assert_eq!(riemann_roch_chi(1, 32, -16).unwrap(), big(25));
        assert!(matches!(riemann_roch_chi(0, 1, 0), Err(NumericsError::Parity(_))));
    }

    #[test]
    fn torsor_sum_examples() {
        assert_eq!(torsor_chi_sum(&params(2, 1, 0, 1, 1)).unwrap(), big(1));
        assert_eq!(torsor_chi_sum(&params(2, 1, 1, 2, 1)).unwrap(), big(2));
        assert_eq!(torsor_chi_sum(&params(3, 1, 0, 2, 0)).unwrap(), big(11));
    }

    #[test]
    fn torsor_sum_exhaustive() {
        for p in (2..=13).filter(|&p| is_prime(p)) {
            for m in 1..=10 {
                for d in 1..=20 {
                    for q_x in 0..=1 {
                        torsor_chi_sum(&params(p, m, 0, d, q_x)).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn main_equation_examples() {
        assert_eq!(main_equation(&params(2, 1, 0, 1, 1)).unwrap(), MainOutcome::Solution(big(0)));
        assert_eq!(main_equation(&params(2, 1, 1, 2, 1)).unwrap(), MainOutcome::Solution(big(0)));
        // T = 3, so 1 - q_Z = 3
        assert_eq!(
            main_equation(&params(2, 1, 0, 3, 1)).unwrap(),
            MainOutcome::Infeasible(BigRational::from_integer(big(3)))
        );
        assert_eq!(
            main_equation(&params(2, 1, 1, 1, 1)).unwrap(),
            MainOutcome::Infeasible(BigRational::new(big(1), big(2)))
        );
        assert!(matches!(DelPezzoParams::new(4, 1, 0, 1, 1), Err(NumericsError::NotPrime(4))));
    }

    #[test]
    fn torsor_degree_examples() {
        assert_eq!(torsor_degree(2, 1, 0, 1), big(8));
        assert_eq!(torsor_degree(2, 1, 1, 2), big(8));
        assert_eq!(torsor_degree(5, 0, 0, 3), big(15));
        assert_eq!(torsor_degree(5, 0, 1, 3), big(3));
    }

    #[test]
    fn solve_q1_examples() {
        let key = |v: Vec<DelPezzoParams>| v.into_iter().map(|s| (s.p, s.m, s.e, s.d)).collect::<Vec<_>>();
        assert_eq!(key(solve_q1(13, 20, 100)), [(2, 1, 0, 1), (2, 1, 1, 2)]);
        assert_eq!(key(solve_q1(2, 1, 1)), [(2, 1, 0, 1)]);
        assert_eq!(key(solve_q1(3, 3, 3)), [(2, 1, 0, 1), (2, 1, 1, 2)]);
        assert!(solve_q1_certificate(13).passed());
    }

    #[test]
    fn feasibility_examples() {
        assert!(is_feasible(2, 1, 1) && is_feasible(2, 2, 1) && !is_feasible(2, 3, 1));
        assert!(!is_feasible(3, 1, 1));
        assert_eq!(q_min(2, 4), 2);
        let t = feasibility_region(2, 12, 8);
        assert_eq!(t.rows.len(), 96);
        assert_eq!(t.rows.iter().filter(|r| r.attained).count(), 2);
        assert!(t.to_csv().starts_with("p,d,q,feasible,attained\n2,1,1,true,true\n"));
        assert_eq!(t.to_json()["q_min_by_d"][3], serde_json::json!({"d": 4, "q_min": 2}));
    }

    #[test]
    fn h0_and_cover_identities() {
        assert_eq!(h0_anticanonical(1, 0).unwrap(), big(1));
        assert_eq!(h0_anticanonical(1, 1).unwrap(), big(2));
        assert_eq!(h0_anticanonical(3, 0).unwrap(), big(6));
        assert!(cover_identities(0, 1, 0, 1, 8).passed());
        assert!(cover_identities(1, 1, 0, 2, 8).passed());
        let r = cover_identities(0, 1, 0, 2, 8);
        assert!(!r.checks[1].passed());
    }

    #[test]
    fn field_degree() {
        assert!(field_degree_divides(2, 2));
        assert!(field_degree_divides(2, 1));
        assert!(!field_degree_divides(2, 4));
    }

    #[test]
    fn suite_passes() {
        let r = numerics_report();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    fn prime() -> impl Strategy<Value = u64> {
        prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn feasibility_monotone(p in prime(), d in 1u64..50, q in 1u64..200, dq in 0u64..50, dd in 0u64..50) {
            if is_feasible(p, d, q) {
                prop_assert!(is_feasible(p, d, q + dq));
                prop_assert!(is_feasible(p, d.saturating_sub(dd).max(1), q));
            }
            prop_assert!(is_feasible(p, d, q_min(p, d)));
            if q_min(p, d) > 1 {
                prop_assert!(!is_feasible(p, d, q_min(p, d) - 1));
            }
        }

        #[test]
        fn closed_form_matches_summation(p in prime(), m in 1u64..30, d in 1u64..60, q_x in 0u64..5) {
            prop_assert!(torsor_chi_sum(&params(p, m, 0, d, q_x)).is_ok());
        }

        #[test]
        fn main_equation_consistent(p in prime(), m in 1u64..6, e in 0u32..2, d in 1u64..20, q_x in 0u64..30) {
            let prm = params(p, m, e, d, q_x);
            if let MainOutcome::Solution(q_z) = main_equation(&prm).unwrap() {
                let lhs = big(p).pow(e) * (BigInt::one() - &q_z);
                let rhs = big(p) - big(p) * big(q_x) + correction_term(p, m, d).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
