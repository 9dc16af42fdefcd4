//! The quadric, its two foliations, and every verification run on the
//! quotient: presentation, singular locus, cuspidal curve, reducedness.

pub mod cusp;
pub mod foliation;
pub mod presentation;
pub mod quadric;
pub mod reduced;
pub mod singular;

pub use crate::report::{CheckReport, Report, Status};
pub use cusp::{cusp_curve, CuspReport};
pub use foliation::{
    check_ideal_preserved, check_p_closure, field_of_constants_check, foliation_report, FoliationKind, FoliationSpec,
};
pub use presentation::{quotient_presentation, reverify, tampered_relation_control, PresentationRun};
pub use quadric::{check_fibre_injectivity, QuadricChart};
pub use reduced::{frobenius_factorization_check, reducedness_witness};
pub use singular::{singular_locus, SingularLocus};
