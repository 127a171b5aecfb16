//! Exact nth-derivative formulas, partial Bell polynomials and two independent
//! derivative oracles.

pub mod basis;
pub mod bell;
pub mod closed_forms;
pub mod coeffs;
pub mod combinatorics;
pub mod error;
pub mod jet;
pub mod numeric;
pub mod oracle;
pub mod scalar;
pub mod verifier;

pub use basis::BasisValue;
pub use error::{Error, Result};
pub use jet::Jet;
pub use scalar::{Elementary, Scalar, SpecialFn};

/// Exact arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

pub type ExactJet = Jet<BasisValue>;
pub type RationalJet = Jet<Rational>;
pub type F64Jet = Jet<f64>;
pub type F32Jet = Jet<f32>;
