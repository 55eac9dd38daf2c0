//! Exact rationals, sparse bivariate polynomials, univariate polynomials,
//! the curve parser, resultants and root finding.

mod bivariate;
mod cpoly;
mod parse;
mod rational;
mod resultant;
mod roots;
mod univariate;

pub use bivariate::BivariatePoly;
pub use cpoly::{cpoly_add, cpoly_deriv, cpoly_eval, cpoly_from_roots, cpoly_interpolate, cpoly_mul, cpoly_scale};
pub use parse::{parse_poly, parse_poly_with};
pub use rational::{fmt_rational, parse_rational, rat, rat_int, rational_sqrt, to_f64, Rational};
pub use resultant::{discriminant_y, resultant_y};
pub use roots::{roots_complex, roots_univariate, Root};
pub use univariate::UniPoly;
