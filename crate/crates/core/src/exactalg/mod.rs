//! Exact arithmetic kernel: rationals, univariate and bivariate polynomials,
//! rational functions in `s`, cyclotomic products in `t`, roots of unity.

pub mod bipoly;
pub mod cyclo;
pub mod poly;
pub mod rat;
pub mod ratfunc;

pub use bipoly::{bivariate_gcd, bivariate_square_free, BiPoly};
pub use cyclo::{CycloProduct, RootOfUnity};
pub use poly::{poly_gcd, rational_roots, Poly, RootError};
pub use rat::{format_rat, int, parse_rat, rat, Rat};
pub use ratfunc::{LinearFactor, Pole, RationalFunction, RationalFunctionError, Term};
