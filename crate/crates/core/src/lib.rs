//! Numerical toolkit around the contour integral of ζ'/ζ over rectangles in
//! the critical strip: special functions, zero tables, quadrature, arctan
//! telescoping, Riccati recurrences and universality scans.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod contour;
pub mod error;
pub mod quadrature;
pub mod report;
pub mod special_functions;
pub mod telescope;
pub mod universality;
pub mod zero_finder;

pub use error::{Error, Result, Singularity};
pub use special_functions::{ComplexValue, PrecisionConfig};
pub use zero_finder::ZeroTable;

pub use num_complex::Complex64;
