use std::fmt;

use super::error::AlgebraError;
use super::field::Coefficient;
use super::geom::GeomPoly;
use super::rational::ParamRational;

/// Quotient of two geometric polynomials: an element of the fraction field of
/// a polynomial ring over the parameter field.
///
/// Normalization removes common monomial content, cancels the denominator
/// when it divides the numerator (or vice versa), and makes the denominator's
/// leading coefficient one. Equality is by cross multiplication.
#[derive(Clone, Debug)]
pub struct RatFn {
    num: GeomPoly,
    den: GeomPoly,
}

impl RatFn {
    pub fn from_poly(num: GeomPoly) -> Self {
        let den = GeomPoly::one(num.table());
        RatFn { num, den }
    }

    pub fn new(num: GeomPoly, den: GeomPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        num.checked_add(&GeomPoly::zero(den.table()))?;
        let mut r = RatFn { num, den };
        r.normalize();
        Ok(r)
    }

    fn normalize(&mut self) {
        let table = self.num.table().clone();
        if self.num.is_zero() {
            self.den = GeomPoly::one(&table);
            return;
        }
        if let Some(c) = self.den.as_constant() {
            if !c.is_one() {
                self.num = self.num.scale(&c.inverse().expect("nonzero denominator"));
                self.den = GeomPoly::one(&table);
            }
            return;
        }
        let g = self.num.monomial_content().gcd(&self.den.monomial_content());
        if !g.is_one() {
            self.num = self.num.div_monomial(&g).expect("content");
            self.den = self.den.div_monomial(&g).expect("content");
        }
        if let Ok(q) = self.num.exact_div(&self.den) {
            self.num = q;
            self.den = GeomPoly::one(&table);
            return;
        }
        if let Ok(q) = self.den.exact_div(&self.num) {
            let c = self.num.leading_term().map(|(_, c)| c.clone()).expect("nonzero");
            self.num = GeomPoly::constant(&table, c.inverse().expect("nonzero"));
            self.den = q;
        }
        let lc = self.den.leading_term().map(|(_, c)| c.clone()).expect("nonzero");
        if !lc.is_one() {
            let inv = lc.inverse().expect("nonzero");
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        if let Some(c) = self.den.as_constant() {
            self.num = self.num.scale(&c.inverse().expect("nonzero"));
            self.den = GeomPoly::one(&table);
        }
    }

    pub fn numerator(&self) -> &GeomPoly {
        &self.num
    }

    pub fn denominator(&self) -> &GeomPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<&GeomPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.den == rhs.den {
            return RatFn::new(self.num.checked_add(&rhs.num)?, self.den.clone());
        }
        let num = self.num.checked_mul(&rhs.den)?.checked_add(&rhs.num.checked_mul(&self.den)?)?;
        RatFn::new(num, self.den.checked_mul(&rhs.den)?)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RatFn { num: self.num.neg_ref(), den: self.den.clone() }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        RatFn::new(self.num.checked_mul(&rhs.num)?, self.den.checked_mul(&rhs.den)?)
    }

    pub fn checked_inv(&self) -> Result<Self, AlgebraError> {
        if self.num.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &ParamRational) -> Self {
        let mut r = RatFn { num: self.num.scale(c), den: self.den.clone() };
        r.normalize();
        r
    }
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        match (self.num.checked_mul(&other.den), other.num.checked_mul(&self.den)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
