//! Exact verification engine for quotients of characteristic-2 quadric
//! surfaces by foliations, and the integer arithmetic constraining the degree
//! and irregularity of regular del Pezzo surfaces.

pub mod algebra;
pub mod delpezzo;
pub mod numerics;
pub mod quotient;
pub mod report;
pub mod suite;
