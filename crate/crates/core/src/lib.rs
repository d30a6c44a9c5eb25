//! Maximal families of mutually unbiased bases and partitioned unitary error
//! bases built from finite fields, the maps between them, and numerical
//! checks of the underlying Frobenius-algebra identities.

pub mod axioms;
pub mod characters;
pub mod cli;
pub mod construct;
pub mod cplx;
pub mod error;
pub mod gf;
pub mod manifest;
pub mod mub;

pub use cplx::{CMatrix, C64};
pub use error::{Error, Result};
pub use gf::FiniteField;
