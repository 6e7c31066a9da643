//! Exact isogeny arithmetic on short-Weierstrass elliptic curves over small
//! finite fields of characteristic at least 5.
//!
//! Maps are kept as exact rational functions `(x, y) -> (r(x), y s(x))`, so
//! equality of isogenies is equality of reduced rational functions. On top of
//! that the crate builds Vélu isogenies from finite subgroups, splits maps
//! into separable part and Frobenius power, and constructs dual isogenies
//! together with a certificate that `dual ∘ phi = [deg phi]`.

pub mod curve;
pub mod dual;
pub mod error;
pub mod ff;
pub mod isogeny;
pub mod json;
pub mod polyrat;

pub use error::{Error, Result};
