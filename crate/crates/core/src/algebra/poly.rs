use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::error::AlgebraError;
use super::field::Coefficient;
use super::monomial::Monomial;
use super::vars::{ensure_same, same_table, VarTable};

/// Sparse polynomial over the coefficient domain `C`, in the variables of the
/// table layer `C::LAYER`.
///
/// Terms are kept in canonical form: no zero coefficients, one entry per
/// exponent vector, ordered graded-lexicographically. The leading term is the
/// last entry.
#[derive(Clone, Debug)]
pub struct Poly<C: Coefficient> {
    table: Arc<VarTable>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl<C: Coefficient> Poly<C> {
    pub fn nvars(table: &VarTable) -> usize {
        table.len(C::LAYER)
    }

    pub fn zero(table: &Arc<VarTable>) -> Self {
        Poly { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, C::one(table))
    }

    pub fn constant(table: &Arc<VarTable>, c: C) -> Self {
        Self::monomial(table, Monomial::one(Self::nvars(table)), c)
    }

    pub fn from_int(table: &Arc<VarTable>, n: i64) -> Self {
        Self::constant(table, C::from_int(table, n))
    }

    /// The variable with index `i` in this polynomial's layer.
    pub fn var(table: &Arc<VarTable>, i: usize) -> Self {
        Self::var_pow(table, i, 1)
    }

    pub fn var_pow(table: &Arc<VarTable>, i: usize, e: u32) -> Self {
        Self::monomial(table, Monomial::var(Self::nvars(table), i, e), C::one(table))
    }

    pub fn monomial(table: &Arc<VarTable>, m: Monomial, c: C) -> Self {
        debug_assert_eq!(m.len(), Self::nvars(table));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { table: table.clone(), terms }
    }

    pub fn from_terms(table: &Arc<VarTable>, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(table);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(|| C::zero(&self.table))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(i)).max()
    }

    /// The constant value if this polynomial has no variables.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero(&self.table)),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().plus(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        ensure_same(&self.table, &rhs.table)?;
        let (mut acc, other) =
            if self.terms.len() >= rhs.terms.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &other.terms {
            acc.add_term(m.clone(), c.clone());
        }
        Ok(acc)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&rhs.neg_ref())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        ensure_same(&self.table, &rhs.table)?;
        let mut out = Self::zero(&self.table);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.checked_mul(m2)?, c1.times(c2));
            }
        }
        Ok(out)
    }

    pub fn neg_ref(&self) -> Self {
        Poly { table: self.table.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negated())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        Poly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(m, a)| {
                    let v = a.times(c);
                    (!v.is_zero()).then(|| (m.clone(), v))
                })
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &C) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(&self.table);
        if c.is_zero() {
            return Ok(out);
        }
        for (m1, c1) in &self.terms {
            let v = c1.times(c);
            if !v.is_zero() {
                out.terms.insert(m1.checked_mul(m)?, v);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Result<Self, AlgebraError> {
        let mut base = self.clone();
        let mut acc = Self::one(&self.table);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `f^p`: coefficientwise Frobenius and exponents scaled by `p`.
    pub fn frobenius(&self) -> Result<Self, AlgebraError> {
        let p = self.table.characteristic();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.checked_scale(p)?, c.frobenius());
        }
        Ok(Poly { table: self.table.clone(), terms })
    }

    /// The unique `g` with `g^p = f`, if `f` is a `p`-th power.
    pub fn frobenius_root(&self) -> Option<Self> {
        let p = self.table.characteristic();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.root(p)?, c.frobenius_root()?);
        }
        Some(Poly { table: self.table.clone(), terms })
    }

    /// Exact multivariate division. Returns the quotient when `g` divides
    /// `self`, `NotDivisible` otherwise.
    ///
    /// In an integral domain the leading monomial of a product is the product
    /// of the leading monomials, so the first leading term that `g` cannot
    /// cancel proves non-divisibility.
    pub fn exact_div(&self, g: &Self) -> Result<Self, AlgebraError> {
        ensure_same(&self.table, &g.table)?;
        let (lm, lc) = g.leading_term().ok_or(AlgebraError::DivisionByZero)?;
        let lc_inv = lc.inverse().ok_or(AlgebraError::NotDivisible)?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.table);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = lm.quotient_of(rm).ok_or(AlgebraError::NotDivisible)?;
            let qc = rc.times(&lc_inv);
            let sub = g.mul_term(&qm, &qc)?;
            rem = rem.checked_sub(&sub)?;
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    pub fn divides(&self, f: &Self) -> bool {
        f.exact_div(self).is_ok()
    }

    /// Formal partial derivative in the layer variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.table);
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let k = C::from_int(&self.table, e as i64);
            out.add_term(m.with_exponent(i, e - 1), c.times(&k));
        }
        out
    }

    /// Greatest common monomial divisor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(Self::nvars(&self.table)),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// Divides every term by a monomial known to divide all of them.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(m.quotient_of(k)?, c.clone());
        }
        Some(Poly { table: self.table.clone(), terms })
    }

    /// Simultaneous substitution of layer variables, `images[i]` replacing
    /// variable `i` (`None` keeps the variable).
    pub fn substitute(&self, images: &[Option<Self>]) -> Result<Self, AlgebraError> {
        for img in images.iter().flatten() {
            ensure_same(&self.table, &img.table)?;
        }
        let table = self.table.clone();
        let n = Self::nvars(&table);
        let resolved: Vec<Self> =
            (0..n).map(|i| images.get(i).cloned().flatten().unwrap_or_else(|| Self::var(&table, i))).collect();
        self.compose_into(&table, &resolved)
    }

    /// Ring map sending layer variable `i` to `images[i]`, possibly into a
    /// different table with the same parameter layout.
    pub fn compose_into(&self, target: &Arc<VarTable>, images: &[Self]) -> Result<Self, AlgebraError> {
        let n = Self::nvars(&self.table);
        if images.len() != n {
            return Err(AlgebraError::TableMismatch);
        }
        for img in images {
            ensure_same(target, &img.table)?;
        }
        let mut powers: Vec<Vec<Self>> = images.iter().map(|img| vec![Self::one(target), img.clone()]).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, c.retable(target)?);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().checked_mul(&images[i])?;
                    powers[i].push(next);
                }
                term = term.checked_mul(&powers[i][e as usize])?;
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Same polynomial read in another table with identical layout in this
    /// layer (used to move between tables that differ only in the other
    /// layer).
    pub fn retable(&self, target: &Arc<VarTable>) -> Result<Self, AlgebraError> {
        if Self::nvars(target) != Self::nvars(&self.table) {
            return Err(AlgebraError::TableMismatch);
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.clone(), c.retable(target)?);
        }
        Ok(Poly { table: target.clone(), terms })
    }

    /// Canonical string, highest term first.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

fn render_monomial(names: &[String], m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

fn needs_parens(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '/' if depth == 0 => return true,
            '-' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.table.names(C::LAYER);
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = render_monomial(names, m);
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{mono}")?;
            } else {
                let cs = c.to_string();
                if needs_parens(&cs) {
                    write!(f, "({cs})*{mono}")?;
                } else {
                    write!(f, "{cs}*{mono}")?;
                }
            }
        }
        Ok(())
    }
}

// Operator sugar. These panic on table mismatch; the `checked_*` methods
// report it instead.

impl<'a, C: Coefficient> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &'a Poly<C>) -> Poly<C> {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl<'a, C: Coefficient> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &'a Poly<C>) -> Poly<C> {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl<'a, C: Coefficient> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &'a Poly<C>) -> Poly<C> {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl<C: Coefficient> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.neg_ref()
    }
}

impl<C: Coefficient> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Poly<C>) -> Poly<C> {
        &self + &rhs
    }
}

impl<C: Coefficient> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Poly<C>) -> Poly<C> {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl<'a, C: Coefficient> Add<&'a Poly<C>> for Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &'a Poly<C>) -> Poly<C> {
        &self + rhs
    }
}

impl<'a, C: Coefficient> Sub<&'a Poly<C>> for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &'a Poly<C>) -> Poly<C> {
        &self - rhs
    }
}

impl<'a, C: Coefficient> Mul<&'a Poly<C>> for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &'a Poly<C>) -> Poly<C> {
        &self * rhs
    }
}

impl<C: Coefficient> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.neg_ref()
    }
}
