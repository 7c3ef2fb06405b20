//! Exact verification of Hilbert functions of unions of lines, degenerate
//! conics and 3-dimensional sundials in P^n, computed as ranks of condition
//! matrices over a prime field.

pub mod castelnuovo;
pub mod error;
pub mod expectations;
pub mod geometry;
pub mod gfp;
pub mod monomial;
pub mod scheme;
pub mod scheme_file;

pub use error::{Error, Result};
pub use gfp::{Fp, Prime, DEFAULT_PRIME};
pub use scheme::{ideal_dimension, Scheme, SchemeComponent};
