use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::error::AlgebraError;
use super::field::{Coefficient, Fp};
use super::monomial::Monomial;
use super::poly::Poly;
use super::vars::{Layer, VarTable};

/// Polynomial in the parameters with GF(p) coefficients.
pub type SparsePoly = Poly<Fp>;

type Atoms = Vec<(SparsePoly, u32)>;

/// Element of the parameter field `GF(p)(a_0, ..)` (or its root extension).
///
/// The denominator is kept as a product of "atoms": monic, non-constant
/// polynomials that are either a single variable or have no monomial content,
/// and are not `p`-th powers. Atoms are not guaranteed irreducible, so the
/// representation is not canonical; equality is decided by cross
/// multiplication over the common denominator. Known atoms are cancelled from
/// the numerator by trial division after every operation, which keeps
/// denominators from growing multiplicatively through long sums.
#[derive(Clone, Debug)]
pub struct ParamRational {
    num: SparsePoly,
    den: Vec<(SparsePoly, u32)>,
}

fn atom_cmp(a: &SparsePoly, b: &SparsePoly) -> Ordering {
    a.num_terms().cmp(&b.num_terms()).then_with(|| {
        for ((m1, c1), (m2, c2)) in a.terms().zip(b.terms()) {
            let o = m1.cmp(m2).then(c1.value().cmp(&c2.value()));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

fn insert_factor(den: &mut Vec<(SparsePoly, u32)>, atom: SparsePoly, e: u32) {
    if e == 0 {
        return;
    }
    match den.binary_search_by(|(a, _)| atom_cmp(a, &atom)) {
        Ok(i) => den[i].1 += e,
        Err(i) => den.insert(i, (atom, e)),
    }
}

fn expand(table: &Arc<VarTable>, factors: &[(SparsePoly, u32)]) -> SparsePoly {
    let mut acc = SparsePoly::one(table);
    for (a, e) in factors {
        acc = &acc * &a.pow(*e as u64).expect("denominator exponent");
    }
    acc
}

/// Splits a nonzero polynomial into (unit, atoms), reusing `known` atoms by
/// trial division where possible.
fn split_into_atoms(poly: &SparsePoly, known: &[&SparsePoly]) -> Result<(Fp, Vec<(SparsePoly, u32)>), AlgebraError> {
    let table = poly.table().clone();
    let (_, lc) = poly.leading_term().ok_or(AlgebraError::DivisionByZero)?;
    let unit = *lc;
    let mut rest = poly.scale(&unit.inverse().expect("nonzero leading coefficient"));
    let mut factors = Vec::new();

    let content = rest.monomial_content();
    if !content.is_one() {
        rest = rest.div_monomial(&content).expect("content divides");
        let n = content.len();
        for (i, &e) in content.exponents().iter().enumerate() {
            if e > 0 {
                insert_factor(&mut factors, SparsePoly::monomial(&table, Monomial::var(n, i, 1), Fp::one(&table)), e);
            }
        }
    }
    if rest.is_constant() {
        return Ok((unit, factors));
    }

    let p = table.characteristic();
    let mut mult = 1u32;
    while let Some(r) = rest.frobenius_root() {
        if r.is_constant() {
            break;
        }
        rest = r;
        mult = mult.checked_mul(p).ok_or(AlgebraError::ExponentOverflow)?;
    }

    for atom in known {
        if atom.num_terms() < 2 {
            continue;
        }
        let mut count = 0u32;
        while let Ok(q) = rest.exact_div(atom) {
            rest = q;
            count += 1;
        }
        if count > 0 {
            insert_factor(&mut factors, (*atom).clone(), count * mult);
        }
        if rest.is_constant() {
            break;
        }
    }
    if !rest.is_constant() {
        insert_factor(&mut factors, rest, mult);
    } else {
        debug_assert!(rest.is_one());
    }
    Ok((unit, factors))
}

impl ParamRational {
    pub fn from_poly(num: SparsePoly) -> Self {
        ParamRational { num, den: Vec::new() }
    }

    /// `num / den`; fails when `den` is zero.
    pub fn new(num: SparsePoly, den: &SparsePoly) -> Result<Self, AlgebraError> {
        num.checked_add(&SparsePoly::zero(den.table()))?;
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let (unit, factors) = split_into_atoms(den, &[])?;
        let mut r = ParamRational { num: num.scale(&unit.inverse().unwrap()), den: factors };
        r.cancel();
        Ok(r)
    }

    /// The parameter with index `i` itself (a `b_i` at positive depth).
    pub fn param(table: &Arc<VarTable>, i: usize) -> Self {
        Self::from_poly(SparsePoly::var(table, i))
    }

    /// The base parameter `a_i = b_i^(p^k)` in a table of root depth `k`.
    pub fn base_param(table: &Arc<VarTable>, i: usize) -> Result<Self, AlgebraError> {
        Self::param_root(table, i, 0)
    }

    /// The `p^j`-th root of `a_i`, i.e. `b_i^(p^(k-j))`.
    pub fn param_root(table: &Arc<VarTable>, i: usize, j: u32) -> Result<Self, AlgebraError> {
        let k = table.root_depth();
        if j > k {
            return Err(AlgebraError::RootDepthExceeded { requested: j, depth: k });
        }
        let e = table.frobenius_power(k - j)?;
        Ok(Self::from_poly(SparsePoly::var_pow(table, i, e)))
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.num.table()
    }

    pub fn numerator(&self) -> &SparsePoly {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[(SparsePoly, u32)] {
        &self.den
    }

    pub fn denominator(&self) -> SparsePoly {
        expand(self.table(), &self.den)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// The numerator when the value is a polynomial.
    pub fn as_poly(&self) -> Option<&SparsePoly> {
        self.den.is_empty().then_some(&self.num)
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for (atom, e) in self.den.iter_mut() {
            while *e > 0 {
                match self.num.exact_div(atom) {
                    Ok(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
        self.den.retain(|(_, e)| *e > 0);
    }

    /// Least common multiple of the two atom lists (max exponents) and the
    /// cofactors bringing each side to it.
    fn common_den(&self, other: &Self) -> (Atoms, Atoms, Atoms) {
        let mut lcm: Vec<(SparsePoly, u32)> = self.den.clone();
        for (a, e) in &other.den {
            match lcm.binary_search_by(|(b, _)| atom_cmp(b, a)) {
                Ok(i) => lcm[i].1 = lcm[i].1.max(*e),
                Err(i) => lcm.insert(i, (a.clone(), *e)),
            }
        }
        let cof = |den: &[(SparsePoly, u32)]| -> Vec<(SparsePoly, u32)> {
            lcm.iter()
                .filter_map(|(a, e)| {
                    let have = den.binary_search_by(|(b, _)| atom_cmp(b, a)).map(|i| den[i].1).unwrap_or(0);
                    (e > &have).then(|| (a.clone(), e - have))
                })
                .collect()
        };
        let c1 = cof(&self.den);
        let c2 = cof(&other.den);
        (lcm, c1, c2)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.den.len() == rhs.den.len() && self.den.iter().zip(&rhs.den).all(|(a, b)| a.1 == b.1 && a.0 == b.0) {
            let mut r = ParamRational { num: self.num.checked_add(&rhs.num)?, den: self.den.clone() };
            r.cancel();
            return Ok(r);
        }
        let (lcm, c1, c2) = self.common_den(rhs);
        let table = self.table();
        let n1 = self.num.checked_mul(&expand(table, &c1))?;
        let n2 = rhs.num.checked_mul(&expand(table, &c2))?;
        let mut r = ParamRational { num: n1.checked_add(&n2)?, den: lcm };
        r.cancel();
        Ok(r)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        let num = self.num.checked_mul(&rhs.num)?;
        let mut den = self.den.clone();
        for (a, e) in &rhs.den {
            insert_factor(&mut den, a.clone(), *e);
        }
        let mut r = ParamRational { num, den };
        r.cancel();
        Ok(r)
    }

    pub fn checked_inv(&self) -> Result<Self, AlgebraError> {
        if self.num.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let known: Vec<&SparsePoly> = self.den.iter().map(|(a, _)| a).collect();
        let (unit, factors) = split_into_atoms(&self.num, &known)?;
        let num = self.denominator().scale(&unit.inverse().unwrap());
        let mut r = ParamRational { num, den: factors };
        r.cancel();
        Ok(r)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.checked_mul(&rhs.checked_inv()?)
    }

    /// Exact equality by cross multiplication over the common denominator.
    pub fn rational_eq(&self, other: &Self) -> bool {
        if self.table().characteristic() != other.table().characteristic() {
            return false;
        }
        let (_, c1, c2) = self.common_den(other);
        let table = self.table();
        match (self.num.checked_mul(&expand(table, &c1)), other.num.checked_mul(&expand(table, &c2))) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// Partial derivative in parameter `i` (quotient rule over the atoms).
    pub fn partial(&self, i: usize) -> Result<Self, AlgebraError> {
        let table = self.table().clone();
        let mut out = ParamRational { num: self.num.partial(i), den: self.den.clone() };
        out.cancel();
        for (atom, e) in &self.den {
            let da = atom.partial(i);
            if da.is_zero() {
                continue;
            }
            // d(f^-e) = -e f' f^-(e+1)
            let k = Fp::from_int(&table, -(*e as i64));
            let mut den = self.den.clone();
            insert_factor(&mut den, atom.clone(), 1);
            let mut term = ParamRational { num: self.num.checked_mul(&da)?.scale(&k), den };
            term.cancel();
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Substitutes `b_i -> b_i^(p^(k'-k))`, moving the value into a table of
    /// larger root depth `k'` with the same parameter count.
    pub fn lift(&self, target: &Arc<VarTable>) -> Result<Self, AlgebraError> {
        let src = self.table();
        if target.len(Layer::Parameter) != src.len(Layer::Parameter)
            || target.characteristic() != src.characteristic()
            || target.root_depth() < src.root_depth()
        {
            return Err(AlgebraError::TableMismatch);
        }
        let scale = target.frobenius_power(target.root_depth() - src.root_depth())?;
        let lift_poly = |f: &SparsePoly| -> Result<SparsePoly, AlgebraError> {
            let mut out = SparsePoly::zero(target);
            for (m, c) in f.terms() {
                out.add_term(m.checked_scale(scale)?, *c);
            }
            Ok(out)
        };
        // Over GF(p), f(b^(p^j)) = f(b)^(p^j), so atoms stay atoms.
        let mut den = Vec::new();
        for (a, e) in &self.den {
            let moved = a.retable(target)?;
            insert_factor(&mut den, moved, e.checked_mul(scale).ok_or(AlgebraError::ExponentOverflow)?);
        }
        Ok(ParamRational { num: lift_poly(&self.num)?, den })
    }

    pub fn checked_frobenius(&self) -> Result<Self, AlgebraError> {
        let p = self.table().characteristic();
        let mut den = Vec::with_capacity(self.den.len());
        for (a, e) in &self.den {
            den.push((a.clone(), e.checked_mul(p).ok_or(AlgebraError::ExponentOverflow)?));
        }
        Ok(ParamRational { num: self.num.frobenius()?, den })
    }

    /// The `p`-th root, when this value is a `p`-th power in the parameter
    /// field. A fraction `n / d` is a `p`-th power exactly when
    /// `n * d^(p-1)` is a `p`-th power polynomial.
    pub fn checked_frobenius_root(&self) -> Result<Self, AlgebraError> {
        let p = self.table().characteristic();
        let mut num = self.num.clone();
        let mut den = Vec::with_capacity(self.den.len());
        for (a, e) in &self.den {
            let pad = (p - e % p) % p;
            if pad > 0 {
                num = num.checked_mul(&a.pow(pad as u64)?)?;
            }
            den.push((a.clone(), (e + pad) / p));
        }
        let root = num.frobenius_root().ok_or_else(|| AlgebraError::NotAPower(self.to_string()))?;
        let mut r = ParamRational { num: root, den };
        r.den.retain(|(_, e)| *e > 0);
        r.cancel();
        Ok(r)
    }
}

impl PartialEq for ParamRational {
    fn eq(&self, other: &Self) -> bool {
        self.rational_eq(other)
    }
}

impl fmt::Display for ParamRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.num.to_string();
        if self.den.is_empty() {
            return write!(f, "{num}");
        }
        let num = if self.num.num_terms() > 1 { format!("({num})") } else { num };
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(a, e)| {
                let s = if a.num_terms() > 1 { format!("({a})") } else { a.to_string() };
                if *e == 1 {
                    s
                } else {
                    format!("{s}^{e}")
                }
            })
            .collect();
        if den.len() == 1 && (self.den[0].1 == 1 || self.den[0].0.num_terms() > 1) {
            write!(f, "{num}/{}", den[0])
        } else {
            write!(f, "{num}/({})", den.join("*"))
        }
    }
}

impl Coefficient for ParamRational {
    const LAYER: Layer = Layer::Geometric;

    fn zero(table: &Arc<VarTable>) -> Self {
        Self::from_poly(SparsePoly::zero(table))
    }

    fn one(table: &Arc<VarTable>) -> Self {
        Self::from_poly(SparsePoly::one(table))
    }

    fn from_int(table: &Arc<VarTable>, n: i64) -> Self {
        Self::from_poly(SparsePoly::from_int(table, n))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    fn plus(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("rational addition")
    }

    fn negated(&self) -> Self {
        ParamRational { num: self.num.neg_ref(), den: self.den.clone() }
    }

    fn times(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("rational multiplication")
    }

    fn inverse(&self) -> Option<Self> {
        self.checked_inv().ok()
    }

    fn frobenius(&self) -> Self {
        self.checked_frobenius().expect("rational frobenius")
    }

    fn frobenius_root(&self) -> Option<Self> {
        self.checked_frobenius_root().ok()
    }

    fn retable(&self, table: &Arc<VarTable>) -> Result<Self, AlgebraError> {
        if !self.table().same_params(table) {
            return Err(AlgebraError::TableMismatch);
        }
        if Arc::ptr_eq(self.table(), table) {
            return Ok(self.clone());
        }
        let mut den = Vec::with_capacity(self.den.len());
        for (a, e) in &self.den {
            den.push((a.retable(table)?, *e));
        }
        Ok(ParamRational { num: self.num.retable(table)?, den })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Arc<VarTable> {
        VarTable::new(2, &["a0", "a1", "a2", "a3"], &["x"]).unwrap()
    }

    fn a(t: &Arc<VarTable>, i: usize) -> ParamRational {
        ParamRational::param(t, i)
    }

    #[test]
    fn common_factor_cancels() {
        let t = table();
        let lhs = a(&t, 0).checked_div(&a(&t, 3)).unwrap();
        let rhs = a(&t, 0).times(&a(&t, 1)).checked_div(&a(&t, 1).times(&a(&t, 3))).unwrap();
        assert!(lhs.rational_eq(&rhs));
        assert!(!a(&t, 0).rational_eq(&a(&t, 1)));
    }

    #[test]
    fn depth_two_roots_agree() {
        // At depth 2, a_i = b_i^4 and sqrt(a_i) = b_i^2.
        let t = table().root_extend(2).unwrap();
        let b = |i| ParamRational::param(&t, i);
        let b4 = |i| b(i).checked_frobenius().unwrap().checked_frobenius().unwrap();
        let sqrt_ratio = ParamRational::param_root(&t, 0, 1)
            .unwrap()
            .checked_div(&ParamRational::param_root(&t, 3, 1).unwrap())
            .unwrap();
        let b2_ratio = b(0).times(&b(0)).checked_div(&b(3).times(&b(3))).unwrap();
        assert!(b2_ratio.rational_eq(&sqrt_ratio));
        let b4_ratio = b4(0).checked_div(&b4(3)).unwrap();
        let alpha_ratio =
            ParamRational::base_param(&t, 0).unwrap().checked_div(&ParamRational::base_param(&t, 3).unwrap()).unwrap();
        assert!(b4_ratio.rational_eq(&alpha_ratio));
        assert!(!b4_ratio.rational_eq(&sqrt_ratio));
        assert_eq!(
            ParamRational::param_root(&t, 0, 3),
            Err(AlgebraError::RootDepthExceeded { requested: 3, depth: 2 })
        );
    }

    #[test]
    fn zero_denominator_rejected() {
        let t = table();
        assert_eq!(ParamRational::new(SparsePoly::one(&t), &SparsePoly::zero(&t)), Err(AlgebraError::DivisionByZero));
        assert!(ParamRational::zero(&t).checked_inv().is_err());
    }

    #[test]
    fn frobenius_root_of_fraction() {
        let t = table();
        let f = a(&t, 0).plus(&a(&t, 1)).checked_div(&a(&t, 2).times(&a(&t, 3))).unwrap();
        let sq = f.checked_frobenius().unwrap();
        assert_eq!(sq.checked_frobenius_root().unwrap(), f);
        assert!(f.checked_frobenius_root().is_err());
    }

    #[test]
    fn sums_keep_factored_denominators_small() {
        let t = table();
        let d = a(&t, 2).plus(&a(&t, 3));
        let mut acc = ParamRational::zero(&t);
        for i in 0..4 {
            acc = acc.plus(&a(&t, i).checked_div(&d).unwrap());
        }
        // (a0+a1+a2+a3)/(a2+a3) has a single atom.
        assert_eq!(acc.denominator_factors().len(), 1);
        let back = acc.times(&d);
        assert!(back.is_polynomial());
    }

    #[test]
    fn quotient_rule() {
        let t = table();
        // d/da0 (a0/(a0+a1)) = a1/(a0+a1)^2
        let s = a(&t, 0).plus(&a(&t, 1));
        let f = a(&t, 0).checked_div(&s).unwrap();
        let expected = a(&t, 1).checked_div(&s.times(&s)).unwrap();
        assert!(f.partial(0).unwrap().rational_eq(&expected));
    }
}
