//! Exact computations with filiform Leibniz algebras.

// dense exact linear algebra reads best with explicit indices
#![allow(clippy::needless_range_loop, clippy::large_enum_variant)]

pub mod algebra;
pub mod classification;
pub mod combinatorics;
pub mod derivations;
pub mod error;
pub mod exactlinalg;
pub mod families;
pub mod isomorphism;
pub mod json;
pub mod suite;

pub use algebra::{Algebra, LeibnizViolation, Subspace};
pub use error::{Error, Result};
pub use exactlinalg::{Field, Matrix, Scalar};
