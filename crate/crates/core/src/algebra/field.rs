use std::fmt;
use std::sync::Arc;

use super::error::AlgebraError;
use super::vars::{Layer, VarTable};

/// An element of the prime field GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    p: u32,
}

impl Fp {
    pub fn new(value: i64, p: u32) -> Self {
        Fp { value: value.rem_euclid(p as i64) as u32, p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    pub fn pow(self, mut e: u64) -> Self {
        let p = self.p as u64;
        let mut base = self.value as u64;
        let mut acc = 1u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp { value: acc as u32, p: self.p }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Coefficient domain of a [`Poly`](super::poly::Poly).
///
/// `LAYER` names the variable class a polynomial with these coefficients is
/// written in: GF(p) coefficients give polynomials in the parameters,
/// rational-function coefficients give polynomials in the geometric
/// variables.
pub trait Coefficient: Clone + fmt::Debug + fmt::Display + PartialEq {
    const LAYER: Layer;

    fn zero(table: &Arc<VarTable>) -> Self;
    fn one(table: &Arc<VarTable>) -> Self;
    fn from_int(table: &Arc<VarTable>, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn inverse(&self) -> Option<Self>;
    /// `c^p`.
    fn frobenius(&self) -> Self;
    /// The unique `r` with `r^p = c`, if it exists.
    fn frobenius_root(&self) -> Option<Self>;
    /// Reinterpret in a table with the same parameter layout.
    fn retable(&self, table: &Arc<VarTable>) -> Result<Self, AlgebraError>;

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }

    fn divided(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.times(&inv))
    }
}

impl Coefficient for Fp {
    const LAYER: Layer = Layer::Parameter;

    fn zero(table: &Arc<VarTable>) -> Self {
        Fp::new(0, table.characteristic())
    }

    fn one(table: &Arc<VarTable>) -> Self {
        Fp::new(1, table.characteristic())
    }

    fn from_int(table: &Arc<VarTable>, n: i64) -> Self {
        Fp::new(n, table.characteristic())
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn plus(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp { value: ((self.value as u64 + rhs.value as u64) % self.p as u64) as u32, p: self.p }
    }

    fn negated(&self) -> Self {
        Fp { value: (self.p - self.value) % self.p, p: self.p }
    }

    fn times(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp { value: ((self.value as u64 * rhs.value as u64) % self.p as u64) as u32, p: self.p }
    }

    fn inverse(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.p as u64 - 2))
        }
    }

    // Fermat: every element of the prime field is its own p-th power.
    fn frobenius(&self) -> Self {
        *self
    }

    fn frobenius_root(&self) -> Option<Self> {
        Some(*self)
    }

    fn retable(&self, table: &Arc<VarTable>) -> Result<Self, AlgebraError> {
        if table.characteristic() != self.p {
            return Err(AlgebraError::TableMismatch);
        }
        Ok(*self)
    }
}
