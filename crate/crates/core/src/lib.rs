//! Compile finite q-hypergeometric series, such as the quantum 6j-symbol,
//! into a sparse cyclotomic representation that is built once and then
//! evaluated in any target field: double precision, arbitrary precision,
//! exact roots of unity, exact cyclotomic fields and the classical `q = 1`
//! limit.
//!
//! ```
//! use cyclodcr::compiler::{compile_sixj, SixJLabels};
//! use cyclodcr::projection::evaluate_double_at_level;
//!
//! let dcr = compile_sixj(SixJLabels::symmetric(2)).unwrap();
//! let v = evaluate_double_at_level(&dcr, 12).unwrap();
//! assert!(v.im.abs() < 1e-12);
//! ```

pub mod compiler;
pub mod diag;
pub mod error;
pub mod exponent;
pub mod field;
pub mod projection;
pub mod qfactor;
pub mod statesum;

pub use compiler::{compile, Dcr, SixJLabels};
pub use error::{DcrError, Result};
pub use exponent::{CycloMonomial, ExponentVector, Sign};
