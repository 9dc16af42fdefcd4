use std::cmp::Ordering;

use smallvec::SmallVec;

use super::error::AlgebraError;

/// Exponent vector, ordered graded-lexicographically with variable 0 the
/// most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, index: usize, exponent: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = exponent;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        debug_assert_eq!(self.len(), other.len());
        let mut out = SmallVec::with_capacity(self.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_add(*b).ok_or(AlgebraError::ExponentOverflow)?);
        }
        Ok(Monomial(out))
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect()))
    }

    pub fn checked_scale(&self, k: u32) -> Result<Self, AlgebraError> {
        let mut out = SmallVec::with_capacity(self.len());
        for e in &self.0 {
            out.push(e.checked_mul(k).ok_or(AlgebraError::ExponentOverflow)?);
        }
        Ok(Monomial(out))
    }

    /// Componentwise exact division of every exponent by `k`.
    pub fn root(&self, k: u32) -> Option<Self> {
        if self.0.iter().any(|e| e % k != 0) {
            return None;
        }
        Some(Monomial(self.0.iter().map(|e| e / k).collect()))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Self {
        let mut m = self.clone();
        m.0[i] = e;
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x = Monomial::from_exponents(&[1, 0]);
        let y = Monomial::from_exponents(&[0, 1]);
        let y2 = Monomial::from_exponents(&[0, 2]);
        assert!(x > y);
        assert!(y2 > x);
        assert!(Monomial::one(2) < y);
    }

    #[test]
    fn overflow_is_reported() {
        let big = Monomial::from_exponents(&[u32::MAX]);
        assert_eq!(big.checked_mul(&big), Err(AlgebraError::ExponentOverflow));
        assert!(big.checked_scale(2).is_err());
    }
}
