use serde_json::{json, Value};
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Validation failures carry the smallest witness found (by canonical
/// element encoding), so a rejected input can be reproduced by hand.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field of order {p}^{m} exceeds the configured bound {cap}")]
    FieldTooLarge { p: u32, m: u32, cap: u64 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus is not a monic irreducible polynomial: {0}")]
    InvalidModulus(String),
    #[error("element {0} does not generate the multiplicative group")]
    NotPrimitive(u32),
    #[error("encoding {value} is not an element of a field of order {q}")]
    ElementOutOfRange { value: u64, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("logarithm of zero")]
    LogOfZero,
    #[error("fields differ")]
    FieldMismatch,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix rows have unequal lengths")]
    RaggedMatrix,
    #[error("matrix is singular")]
    Singular,
    #[error("characteristic polynomial does not split over the base field ({found} of {n} roots found)")]
    EigenvalueOutsideField { found: usize, n: usize },
    #[error("eigenvalue {eigenvalue} has geometric multiplicity {geometric} < algebraic multiplicity {algebraic}")]
    NotDiagonalizable { eigenvalue: u32, geometric: usize, algebraic: usize },

    #[error("primitive image does not satisfy S^(q-1) = I")]
    NotMultiplicativeOrder,
    #[error("additivity fails at ({a}, {b})")]
    AdditivityViolation { a: u32, b: u32 },
    #[error("multiplicativity fails at ({a}, {b})")]
    MultiplicativityViolation { a: u32, b: u32 },
    #[error("Frobenius exponent {exp} out of range [0, {m})")]
    ExponentOutOfRange { exp: u32, m: u32 },
    #[error("sigma(c) and tau(c) do not commute")]
    NonCommutingPair,
    #[error("twisted Leibniz rule fails at ({a}, {b})")]
    LeibnizViolation { a: u32, b: u32 },
    #[error("post-condition check failed at element {element}: {what}")]
    VerificationFailed { element: u32, what: &'static str },
    #[error("eigenvalue {eigenvalue} is not the image of c under a Frobenius power")]
    NotFrobeniusEigenvalue { eigenvalue: u32 },

    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("variable index {index} out of range for {n} variables")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("conjugating element must be nonzero")]
    ZeroConjugator,

    #[error("transforms cannot be chained: target of the first is not the source of the second")]
    ChainMismatch,
    #[error("image of x_{index} has degree {degree} > 1")]
    NotAffine { index: usize, degree: usize },
    #[error("linear part of the transform is singular")]
    SingularLinearPart,
    #[error("morphisms are not conjugate by the given matrix (fails at element {element})")]
    IncompatibleMorphisms { element: u32 },
    #[error("derivations are not compatible with the given transform (fails at element {element})")]
    IncompatibleDerivations { element: u32 },

    #[error("search space of {size} points exceeds the configured bound {cap}")]
    SearchSpaceTooLarge { size: u64, cap: u64 },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::ZeroDegree => "ZeroDegree",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::NotPrimitive(_) => "NotPrimitive",
            Error::ElementOutOfRange { .. } => "ElementOutOfRange",
            Error::DivisionByZero => "DivisionByZero",
            Error::LogOfZero => "LogOfZero",
            Error::FieldMismatch => "FieldMismatch",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::RaggedMatrix => "RaggedMatrix",
            Error::Singular => "Singular",
            Error::EigenvalueOutsideField { .. } => "EigenvalueOutsideField",
            Error::NotDiagonalizable { .. } => "NotDiagonalizable",
            Error::NotMultiplicativeOrder => "NotMultiplicativeOrder",
            Error::AdditivityViolation { .. } => "AdditivityViolation",
            Error::MultiplicativityViolation { .. } => "MultiplicativityViolation",
            Error::ExponentOutOfRange { .. } => "ExponentOutOfRange",
            Error::NonCommutingPair => "NonCommutingPair",
            Error::LeibnizViolation { .. } => "LeibnizViolation",
            Error::VerificationFailed { .. } => "VerificationFailed",
            Error::NotFrobeniusEigenvalue { .. } => "NotFrobeniusEigenvalue",
            Error::RingMismatch => "RingMismatch",
            Error::VariableOutOfRange { .. } => "VariableOutOfRange",
            Error::ZeroConjugator => "ZeroConjugator",
            Error::ChainMismatch => "ChainMismatch",
            Error::NotAffine { .. } => "NotAffine",
            Error::SingularLinearPart => "SingularLinearPart",
            Error::IncompatibleMorphisms { .. } => "IncompatibleMorphisms",
            Error::IncompatibleDerivations { .. } => "IncompatibleDerivations",
            Error::SearchSpaceTooLarge { .. } => "SearchSpaceTooLarge",
        }
    }

    /// Structured witness for the failure, `null` when there is none.
    pub fn witness(&self) -> Value {
        match self {
            Error::NotPrime(p) => json!({ "p": p }),
            Error::FieldTooLarge { p, m, cap } => json!({ "p": p, "m": m, "cap": cap }),
            Error::NotPrimitive(c) => json!({ "c": c }),
            Error::ElementOutOfRange { value, q } => json!({ "value": value, "q": q }),
            Error::DimensionMismatch { expected, got } => {
                json!({ "expected": expected, "got": got })
            }
            Error::EigenvalueOutsideField { found, n } => json!({ "found": found, "n": n }),
            Error::NotDiagonalizable { eigenvalue, geometric, algebraic } => json!({
                "eigenvalue": eigenvalue,
                "geometric": geometric,
                "algebraic": algebraic,
            }),
            Error::AdditivityViolation { a, b }
            | Error::MultiplicativityViolation { a, b }
            | Error::LeibnizViolation { a, b } => json!([a, b]),
            Error::ExponentOutOfRange { exp, m } => json!({ "exp": exp, "m": m }),
            Error::VerificationFailed { element, what } => {
                json!({ "element": element, "check": what })
            }
            Error::NotFrobeniusEigenvalue { eigenvalue } => json!({ "eigenvalue": eigenvalue }),
            Error::VariableOutOfRange { index, n } => json!({ "index": index, "n": n }),
            Error::NotAffine { index, degree } => json!({ "index": index, "degree": degree }),
            Error::IncompatibleMorphisms { element } | Error::IncompatibleDerivations { element } => {
                json!({ "element": element })
            }
            Error::SearchSpaceTooLarge { size, cap } => json!({ "size": size, "cap": cap }),
            Error::InvalidModulus(msg) => json!({ "message": msg }),
            _ => Value::Null,
        }
    }
}
