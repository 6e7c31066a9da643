use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the toolkit can report.
///
/// Variants are grouped by the layer that raises them; higher layers
/// propagate lower-layer errors unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // fields
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is not supported (need p >= 5)")]
    CharTooSmall(u64),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    ContextMismatch,
    #[error("field of size {size} exceeds the enumeration bound of {limit}")]
    FieldTooLarge { size: u64, limit: u64 },
    #[error("F_{{{source_p}^{source_k}}} does not embed in F_{{{target_p}^{target_k}}}")]
    NotASubfield {
        source_p: u64,
        source_k: usize,
        target_p: u64,
        target_k: usize,
    },

    // polynomials
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,

    // curves
    #[error("curve is singular (discriminant vanishes)")]
    SingularCurve,
    #[error("point ({0}) does not lie on the curve")]
    NotOnCurve(String),
    #[error("points belong to different curves")]
    CurveMismatch,
    #[error("point set is not closed under the group law")]
    NotClosed,
    #[error("subgroup is not stable under the Frobenius of the base field")]
    NotGaloisStable,
    #[error("multiplier must be nonzero")]
    ZeroMultiplier,
    #[error("multiplier {m} exceeds the degree guard |m| <= {limit}")]
    DegreeTooLarge { m: i64, limit: i64 },
    #[error("subgroup of order {order} exceeds the bound of {limit}")]
    SubgroupTooLarge { order: usize, limit: usize },

    // isogenies
    #[error("codomain of the inner map is not the domain of the outer map")]
    CurveChainMismatch,
    #[error("kernel is not rational over the supplied field: {0}")]
    KernelNotRational(String),
    #[error("operation requires a curve over a prime field")]
    UnsupportedBaseField,
    #[error("rational maps do not send the domain into the codomain")]
    IncompatibleMap,
    #[error("not a kernel polynomial: {0}")]
    InvalidKernel(String),

    // dual construction
    #[error("map is inseparable (derivative of the x-map vanishes)")]
    InseparableMap,
    #[error("pullback ratio r'/s is not constant")]
    NonConstantRatio,
    #[error("map is not normalized: {0}")]
    NotNormalized(String),
    #[error("kernel of the first map is not contained in the kernel of the second")]
    KernelNotNested,
    #[error("constructed map does not reproduce the target: {0}")]
    CompositionMismatch(String),
    #[error("dual identity failed: {0}")]
    VerificationFailed(String),

    // interchange
    #[error("parse error at {at}: {message}")]
    Parse { at: String, message: String },
}

impl Error {
    pub(crate) fn parse(at: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            at: at.into(),
            message: message.into(),
        }
    }

    /// Short machine-readable name of the variant, used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::CharTooSmall(_) => "CharTooSmall",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::DivisionByZero => "DivisionByZero",
            Error::ContextMismatch => "ContextMismatch",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::NotASubfield { .. } => "NotASubfield",
            Error::BothZero => "BothZero",
            Error::SingularCurve => "SingularCurve",
            Error::NotOnCurve(_) => "NotOnCurve",
            Error::CurveMismatch => "CurveMismatch",
            Error::NotClosed => "NotClosed",
            Error::NotGaloisStable => "NotGaloisStable",
            Error::ZeroMultiplier => "ZeroMultiplier",
            Error::DegreeTooLarge { .. } => "DegreeTooLarge",
            Error::SubgroupTooLarge { .. } => "SubgroupTooLarge",
            Error::CurveChainMismatch => "CurveChainMismatch",
            Error::KernelNotRational(_) => "KernelNotRational",
            Error::UnsupportedBaseField => "UnsupportedBaseField",
            Error::IncompatibleMap => "IncompatibleMap",
            Error::InvalidKernel(_) => "InvalidKernel",
            Error::InseparableMap => "InseparableMap",
            Error::NonConstantRatio => "NonConstantRatio",
            Error::NotNormalized(_) => "NotNormalized",
            Error::KernelNotNested => "KernelNotNested",
            Error::CompositionMismatch(_) => "CompositionMismatch",
            Error::VerificationFailed(_) => "VerificationFailed",
            Error::Parse { .. } => "ParseError",
        }
    }
}
