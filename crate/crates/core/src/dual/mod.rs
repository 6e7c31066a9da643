//! Dual isogenies through separable decomposition, normalization and
//! factoring through multiplication maps.

mod decompose;
mod normalize;
mod pipeline;

pub use decompose::{separable_decompose, Decomposition};
pub use normalize::{factor_through, normalize, pullback_constant, quotient_isogeny, Normalized};
pub use pipeline::{
    dual_isogeny, frobenius_dual, frobenius_dual_parts, verification_points, verify_dual,
    DualCertificate, FrobeniusDual,
};
