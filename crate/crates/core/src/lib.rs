//! Exact computational homological algebra for monomorphism categories:
//! representations of finite acyclic quivers over finite-dimensional
//! algebras, perpendicular categories, cotilting transfer,
//! Gorenstein-projective detection, and finite-type certification.
//!
//! Everything is exact: matrices live over F_p or Q, and all verdicts are
//! produced by rank computations, never by floating point.

pub mod algebra;
pub mod error;
pub mod field;
pub mod fintype;
pub mod homalg;
pub mod json;
pub mod matrix;
pub mod monrep;
pub mod par;
pub mod poly;
pub mod quiver;
pub mod tiltperp;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::Matrix;
