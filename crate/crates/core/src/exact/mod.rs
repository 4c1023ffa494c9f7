//! Exact integer and rational linear algebra.
//!
//! Everything here is deterministic and allocation-heavy rather than clever:
//! the matrices are 4x4 (16x16 for conjugacy equation systems), so asymptotic
//! tricks would buy nothing and exactness is the whole point.

mod hnf;
mod kernel;
mod lattice;
mod matrix;

pub use hnf::{hermite_normal_form, HermiteForm};
pub use kernel::{rational_kernel, saturated_integer_kernel};
pub use lattice::LatticeBasis;
pub use matrix::{IntMatrix, RatMatrix, RatVector};
