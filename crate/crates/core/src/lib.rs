//! Exact computations for the non-commutative crepant resolutions of the
//! minimal nilpotent orbit closure in `sl_n`.
//!
//! Everything is exact: dimensions are integers, linear algebra runs over
//! the rationals, the integers (fraction-free) or a prime field.

pub mod acceptance;
pub mod bwb;
pub mod cohengine;
pub mod combinat;
pub mod error;
pub mod kfunctor;
pub mod linalg;
pub mod mutation;
pub mod quiveralg;
pub mod repmoduli;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Field, Fp};

/// Rationals.
pub type Q = num_rational::BigRational;
/// Integers.
pub type Z = num_bigint::BigInt;
/// Prime field used for randomized cross-checks.
pub type Gf = Fp<1_000_000_007>;
/// Integer matrices for Grothendieck group maps.
pub type ZMatrix = linalg::DenseMatrix<Z>;
/// Rational matrices.
pub type QMatrix = linalg::DenseMatrix<Q>;
