//! Exact arithmetic: rationals, prime fields, rational functions, towers of
//! simple extensions, dense polynomials and matrices.

pub mod factor;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod qbinom;
pub mod upoly;

pub use factor::{factor_base, factor_base_with_bound, FACTOR_DEGREE_BOUND};
pub use field::{Elem, Field, Kind, RatFn, Value};
pub use matrix::{mat_char_poly, mat_is_semisimple, mat_kernel, mat_min_poly, Matrix};
pub use poly::{poly_gcd, Poly};
pub use qbinom::{binomial_mod, qbinom};

/// Arbitrary-precision rational number in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;
