use std::sync::{Arc, OnceLock};

use delpezzo_core::algebra::{
    parse_geom, Coefficient, Derivation, Fp, GeomPoly, Matrix, Monomial, ParamRational, Poly, SparsePoly, Var, VarTable,
};
use delpezzo_core::delpezzo::foliation::theta_p;
use delpezzo_core::delpezzo::{quotient_presentation, PresentationRun, QuadricChart};
use delpezzo_core::quotient::{apply_matrix, derivation_matrix, kernel_basis, normal_form_r, ModuleVector};
use proptest::prelude::*;

const PARAMS: [&str; 4] = ["a0", "a1", "a2", "a3"];

fn table(p: u32) -> Arc<VarTable> {
    VarTable::new(p, &PARAMS, &["x1", "x2", "x3"]).unwrap()
}

type Terms = Vec<(i64, Vec<u32>)>;

fn terms(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((-3i64..4, prop::collection::vec(0..=max_exp, nvars)), 0..=max_terms)
}

fn sparse(t: &Arc<VarTable>, ts: &Terms) -> SparsePoly {
    let p = t.characteristic();
    Poly::from_terms(t, ts.iter().map(|(c, e)| (Monomial::from_exponents(e), Fp::new(*c, p))))
}

/// Denominators drawn from a few fixed atoms.
fn denominator(t: &Arc<VarTable>, k: usize) -> SparsePoly {
    let src = ["1", "a1", "a0 + a1", "a2*a3 + 1"][k % 4];
    parse_geom(t, src).unwrap().as_constant().unwrap().numerator().clone()
}

fn param_rational(t: &Arc<VarTable>, ts: &Terms, k: usize) -> ParamRational {
    ParamRational::new(sparse(t, ts), &denominator(t, k)).unwrap()
}

fn geom(t: &Arc<VarTable>, parts: &[(Terms, usize, Vec<u32>)]) -> GeomPoly {
    Poly::from_terms(t, parts.iter().map(|(ts, k, e)| (Monomial::from_exponents(e), param_rational(t, ts, *k))))
}

fn geom_strategy() -> impl Strategy<Value = Vec<(Terms, usize, Vec<u32>)>> {
    prop::collection::vec((terms(4, 2, 3), 0usize..4, prop::collection::vec(0u32..3, 3)), 0..4)
}

fn chart0() -> &'static (PresentationRun, Matrix<GeomPoly>, Vec<ModuleVector>) {
    static RUN: OnceLock<(PresentationRun, Matrix<GeomPoly>, Vec<ModuleVector>)> = OnceLock::new();
    RUN.get_or_init(|| {
        let qc = QuadricChart::new(0).unwrap();
        let run = quotient_presentation(&qc).unwrap();
        let mat = derivation_matrix(&theta_p(&qc).unwrap(), &run.s).unwrap();
        let kernel = kernel_basis(&mat).unwrap();
        (run, mat, kernel)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sparse_ring_axioms(p in prop::sample::select(vec![2u32, 3, 5]), a in terms(4, 3, 5), b in terms(4, 3, 5), c in terms(4, 3, 5)) {
        let t = table(p);
        let (f, g, h) = (sparse(&t, &a), sparse(&t, &b), sparse(&t, &c));
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &SparsePoly::one(&t), f.clone());
        prop_assert!((&f + &(-&f)).is_zero());
    }

    #[test]
    fn sparse_frobenius_is_a_ring_map(p in prop::sample::select(vec![2u32, 3]), a in terms(4, 2, 4), b in terms(4, 2, 4)) {
        let t = table(p);
        let (f, g) = (sparse(&t, &a), sparse(&t, &b));
        let fr = |x: &SparsePoly| x.frobenius().unwrap();
        prop_assert_eq!(fr(&f), f.pow(p as u64).unwrap());
        prop_assert_eq!(fr(&(&f + &g)), &fr(&f) + &fr(&g));
        prop_assert_eq!(fr(&(&f * &g)), &fr(&f) * &fr(&g));
        prop_assert_eq!(fr(&f).frobenius_root(), Some(f.clone()));
    }

    #[test]
    fn geom_ring_axioms(a in geom_strategy(), b in geom_strategy(), c in geom_strategy()) {
        let t = table(2);
        let (f, g, h) = (geom(&t, &a), geom(&t, &b), geom(&t, &c));
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn geom_frobenius_is_a_ring_map(a in geom_strategy(), b in geom_strategy()) {
        let t = table(2);
        let (f, g) = (geom(&t, &a), geom(&t, &b));
        let fr = |x: &GeomPoly| x.frobenius().unwrap();
        prop_assert_eq!(fr(&(&f + &g)), &fr(&f) + &fr(&g));
        prop_assert_eq!(fr(&(&f * &g)), &fr(&f) * &fr(&g));
        prop_assert_eq!(fr(&f), &f * &f);
    }

    #[test]
    fn leibniz_and_p_th_powers(a in geom_strategy(), b in geom_strategy(), imgs in prop::collection::vec(geom_strategy(), 7)) {
        let t = table(2);
        let (f, g) = (geom(&t, &a), geom(&t, &b));
        let mut d = Derivation::zero(&t);
        for (k, img) in imgs[..3].iter().enumerate() {
            d.set(Var::Geom(k), geom(&t, img)).unwrap();
        }
        for (j, img) in imgs[3..].iter().enumerate() {
            d.set(Var::Param(j), geom(&t, img)).unwrap();
        }
        let lhs = d.apply(&(&f * &g)).unwrap();
        let rhs = &(&d.apply(&f).unwrap() * &g) + &(&f * &d.apply(&g).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert!(d.apply(&(&f * &f)).unwrap().is_zero());
        prop_assert_eq!(d.apply(&(&f + &g)).unwrap(), &d.apply(&f).unwrap() + &d.apply(&g).unwrap());
    }

    #[test]
    fn rational_eq_is_an_equivalence(n in terms(4, 2, 4), k1 in terms(4, 1, 3), k2 in terms(4, 1, 3), den in 0usize..4) {
        let t = table(2);
        // exponents of the random part stay below 3, so these are nonzero
        let k1 = &sparse(&t, &k1) + &SparsePoly::var_pow(&t, 3, 3);
        let k2 = &sparse(&t, &k2) + &SparsePoly::var_pow(&t, 2, 3);
        let d = denominator(&t, den);
        let a = ParamRational::new(sparse(&t, &n), &d).unwrap();
        let b = ParamRational::new(&sparse(&t, &n) * &k1, &(&d * &k1)).unwrap();
        let c = ParamRational::new(&(&sparse(&t, &n) * &k1) * &k2, &(&(&d * &k1) * &k2)).unwrap();
        prop_assert!(a.rational_eq(&a));
        prop_assert!(a.rational_eq(&b) && b.rational_eq(&a));
        prop_assert!(b.rational_eq(&c) && a.rational_eq(&c));
        let shifted = a.checked_add(&ParamRational::one(&t)).unwrap();
        prop_assert!(!a.rational_eq(&shifted));
    }

    #[test]
    fn root_extension_round_trip(a in geom_strategy(), depth in 1u32..4) {
        let t = table(2);
        let f = geom(&t, &a);
        let deep = t.root_extend(depth).unwrap();
        let lifted = f.lift_to(&deep).unwrap();
        // base names parse as p^k-th powers of the new parameters
        prop_assert_eq!(parse_geom(&deep, &f.to_string()).unwrap(), lifted.clone());
        prop_assert_eq!(parse_geom(&deep, &lifted.to_string()).unwrap(), lifted.clone());
        prop_assert_eq!(lifted.frobenius().unwrap().frobenius_root(), Some(lifted.clone()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn kernel_vectors_are_annihilated(coeffs in prop::collection::vec(terms(2, 2, 3), 4)) {
        let (run, mat, kernel) = chart0();
        let st = run.s.s_table();
        let lift = |ts: &Terms| -> GeomPoly {
            Poly::from_terms(st, ts.iter().map(|(c, e)| (Monomial::from_exponents(e), ParamRational::from_int(st, *c))))
        };
        let mut combo = ModuleVector::zero(&run.s);
        for (v, c) in kernel.iter().zip(&coeffs) {
            let c = lift(c);
            for (x, y) in combo.coords.iter_mut().zip(&v.coords) {
                *x = &*x + &(&c * y);
            }
        }
        prop_assert!(apply_matrix(mat, &combo).unwrap().is_zero());
    }

    #[test]
    fn normal_form_is_idempotent(ts in terms(6, 2, 4)) {
        let (run, _, _) = chart0();
        let p = &run.presentation;
        let rt = p.r_table();
        let f: GeomPoly =
            Poly::from_terms(rt, ts.iter().map(|(c, e)| (Monomial::from_exponents(e), ParamRational::from_int(rt, *c))));
        let nf = normal_form_r(&f, p, &run.s).unwrap();
        let again = normal_form_r(&nf.to_poly(p).unwrap(), p, &run.s).unwrap();
        prop_assert_eq!(nf, again);
    }
}
