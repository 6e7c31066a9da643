//! Univariate polynomials and reduced rational functions over a finite field.

mod poly;
mod ratfunc;

pub use poly::Poly;
pub use ratfunc::RatFunc;
