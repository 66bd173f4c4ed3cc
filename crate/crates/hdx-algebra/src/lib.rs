//! Scalar and matrix algebra over finite fields F_{p^s} and quotient rings
//! F_q[t]/phi(t), the substrate for the subspace and coset-complex constructions.
//!
//! All values are immutable after construction; every operation is a pure
//! function of its inputs plus an explicitly passed random stream.

pub mod field;
pub mod mat;
pub mod rng;

pub use field::{find_irreducible, Domain, FieldSpec, RingSpec, Scalar};
pub use mat::Mat;
pub use rng::Rng;

/// Errors surfaced by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    /// Inversion of zero or of a non-invertible element.
    NotInvertible,
    /// Operands belong to different domains.
    DomainMismatch,
    /// Malformed serialized input.
    Format(String),
    /// A random sampling loop exhausted its retry budget.
    SamplingExhausted,
    /// An enumeration exceeded its size cap.
    SizeCap,
    /// Construction-time validation failure (reducible modulus, bad shape, ...).
    Invalid(String),
}

impl std::fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlgebraError::NotInvertible => write!(f, "element is not invertible"),
            AlgebraError::DomainMismatch => write!(f, "operands from different domains"),
            AlgebraError::Format(s) => write!(f, "format error: {s}"),
            AlgebraError::SamplingExhausted => write!(f, "sampling retry budget exhausted"),
            AlgebraError::SizeCap => write!(f, "enumeration size cap exceeded"),
            AlgebraError::Invalid(s) => write!(f, "invalid construction: {s}"),
        }
    }
}

impl std::error::Error for AlgebraError {}
