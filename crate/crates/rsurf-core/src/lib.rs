//! Computations on compact Riemann surfaces.
//!
//! Exact layers (Newton polygons, correction polynomials, Weil-Petersson
//! volumes) use arbitrary precision rationals. Numeric layers (theta
//! functions, periods, kernels) use `f64` complex arithmetic with explicit
//! error bounds where they are available.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod divisors;
pub mod error;
pub mod fundform;
pub mod linalg;
pub mod newton;
pub mod periods;
pub mod quad;
pub mod strebel;
pub mod theta;
pub mod torus;
pub mod wpvol;

pub use error::{Error, Result};
pub use num_complex::Complex64 as Complex;
