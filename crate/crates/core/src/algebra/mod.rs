//! Exact arithmetic over GF(p): sparse polynomials, the parameter field and
//! its finite root extensions, derivations, and small dense linear algebra.

pub mod derivation;
pub mod error;
pub mod field;
pub mod geom;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ratfn;
pub mod rational;
pub mod serial;
pub mod vars;

pub use derivation::Derivation;
pub use error::AlgebraError;
pub use field::{Coefficient, Fp};
pub use geom::GeomPoly;
pub use matrix::{Field, Matrix, Ring};
pub use monomial::Monomial;
pub use parse::{parse_geom, parse_param};
pub use poly::Poly;
pub use ratfn::RatFn;
pub use rational::{ParamRational, SparsePoly};
pub use vars::{is_prime, Layer, Var, VarTable};
