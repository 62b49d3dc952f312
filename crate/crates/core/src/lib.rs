//! Exact arithmetic for split octonions, reduced Albert algebras, Brown
//! algebras and their Freudenthal triple systems, with the inner and singular
//! ideals and flag-space machinery built on them.
//!
//! Everything is generic over a [`scalar::Scalar`]; the aliases below fix the
//! two fields used in practice.

pub mod scalar;
pub mod linalg;
pub mod cayley;
pub mod albert;
pub mod brown;
pub mod flags;
pub mod ideals;
pub mod textio;
pub mod verify;

pub use scalar::{QuadExt, QuadField, Rational, RationalField, Scalar, ScalarError, ScalarField};

pub type QMatrix = linalg::Matrix<Rational>;
pub type QSubspace = linalg::Subspace<Rational>;
