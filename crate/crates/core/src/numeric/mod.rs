//! Arbitrary-precision decimal floats, complex arithmetic on top of them,
//! and a simultaneous root iteration for the few places where no exact
//! route exists.
//!
//! The classifier itself never needs these: spectral decisions are integer
//! predicates. They exist for reported numeric shadows (entropy values,
//! rotation angles, eigenvalue magnitudes) where the contract is "correct to
//! the requested number of decimal digits".

mod bigfloat;
mod complex;
mod roots;

pub use bigfloat::BigFloat;
pub use complex::BigComplex;
pub use roots::polynomial_roots;
