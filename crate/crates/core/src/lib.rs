//! Exact computation of ramification invariants (Swan conductor, total
//! dimension, characteristic forms) of Artin-Schreier characters over the
//! equal-characteristic two-dimensional local fields
//! `K_{a,b} = F_q(x^(1/p^a))((y^(1/p^b)))`, and their behaviour under purely
//! inseparable base change.
//!
//! Every field element is a finite sum of monomials `c * u^alpha * w^beta`
//! in the internal generators `u = x^(1/p^a)`, `w = y^(1/p^b)`.

pub mod acceptance;
pub mod artin_schreier;
pub mod base_change;
pub mod conductor;
pub mod corpus;
pub mod curve_oracle;
pub mod differentials;
mod error;
pub mod field;
pub mod finite_field;
mod parse;

pub use artin_schreier::{as_reduce, classify, is_reduced, ASCharacter, Classification, Reduction};
pub use base_change::{ExtInvariants, ExtensionDesc};
pub use conductor::{CCReport, ConductorReport};
pub use differentials::{Basis, DifferentialForm, GradedForm};
pub use error::{Error, ErrorKind, Result};
pub use field::{FieldDesc, FieldElem, Monomial};
pub use finite_field::{Fq, FqElem};
