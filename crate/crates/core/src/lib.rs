//! ppwb: a finite-field permutation-polynomial workbench.
//!
//! The crate provides exact arithmetic in GF(p^e) for odd p ([`gf`]), a
//! dense polynomial ring with reduction mod x^q - x ([`poly`]), reversed
//! Dickson polynomials of the (k+1)-th kind ([`dickson`]), three
//! independent permutation testers ([`ppcheck`]), and exhaustive verifiers
//! for the permutation classifications of the binomial and trinomial
//! families those polynomials reduce to ([`theorems`]). Everything is
//! deterministic: fields pick a canonical modulus, witnesses are reported
//! in canonical element order, and scan reports render to stable JSON
//! lines or CSV.

pub mod dickson;
pub mod error;
pub mod gf;
pub mod poly;
pub mod ppcheck;
pub mod theorems;

pub use error::{Error, Result};
pub use gf::{FieldElement, FieldSpec};
pub use poly::Poly;
pub use ppcheck::{Verdict, Witness};
pub use theorems::{Family, FamilyParams, Theorem, TheoremReport};
