//! Exact arithmetic: rationals, integer polynomials, truncated power series,
//! interpolation, prime fields and exact linear algebra.

mod field;
pub mod linalg;
mod poly;
mod rational;
mod series;

pub use field::{ff_arith, is_prime, FFElem, FieldOp, PrimeField};
pub use poly::{interpolate, interpolate_poly, poly_eval, IntPoly};
pub use rational::{int, rat, to_integer, Rational};
pub use series::{series_invert, SeriesCoeff, TruncSeries};
