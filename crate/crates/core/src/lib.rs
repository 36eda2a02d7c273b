//! Exact constructions of the three 8-dimensional representations of so(8)
//! and spin(1,7), the triality automorphisms between them, and the g2 and
//! su(3) sub-algebras they single out.
//!
//! Every number lives in the field ℚ(i, √2, √3) ([`scalar::ExactScalar`]),
//! so all identities are checked with zero tolerance.

pub mod clifford;
pub mod emit;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod representations;
pub mod scalar;
pub mod subalgebras;
pub mod triality;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use scalar::ExactScalar;
