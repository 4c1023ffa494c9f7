//! Exact classification of integer unimodular 4x4 matrices viewed as
//! automorphisms of the 4-torus.
//!
//! Every `A` in `GL(4, Z)` induces an automorphism of `T^4 = R^4 / Z^4`. This
//! crate decides, in exact arbitrary-precision arithmetic, what kind of
//! dynamical system that automorphism is:
//!
//! * spectral taxonomy (Anosov saddle / saddle-focus, partially hyperbolic,
//!   elliptic, parabolic) from the reciprocal characteristic polynomial via
//!   the trace variable `mu = lambda + 1/lambda`,
//! * ergodicity (no eigenvalue is a root of unity) with a cyclotomic-factor
//!   certificate,
//! * invariant symplectic forms, including nonstandard ones, as integer
//!   skew matrices `J` with `A^T J A = J`,
//! * topological entropy as the sum of `log |lambda|` over expanding
//!   eigenvalues, evaluated to a requested decimal precision,
//! * the resonance lattice `{ m in Z^4 : (m, gamma) = 0 }` of the expanding
//!   eigenvector, which decides whether the strong-unstable foliation is
//!   transitive (rank 0) or the map splits over an invariant 2-torus pair
//!   (rank 2),
//! * integral conjugacy between two matrices, with an explicit unimodular
//!   witness when one is found,
//! * dynamical probes: dual orbits of Fourier modes, periodic point counts
//!   `|det(A^n - E)|`, and Weyl sums along the expanding line.
//!
//! All structural decisions (spectral type, ergodicity, resonance rank,
//! factorizations, conjugacy witnesses) are made over `Z` or `Q`; floating
//! point appears only in reported numeric shadows and in the Weyl-sum
//! simulator, which is double-precision by design.

pub mod algebraic;
pub mod classify;
pub mod conjugacy;
pub mod dynamics;
pub mod error;
pub mod exact;
pub mod numeric;
pub mod poly;
pub mod symplectic;

pub use algebraic::{eigenvector_kernel, field_kernel, normalize_leading, FieldElement, NumberField};
pub use classify::{
    classify, cmp_sqrt, eigen_data, entropy, ergodicity_test, resonance_lattice,
    spectral_classify, ClassificationReport, ClassifyConfig, EigenData, Entropy,
    ErgodicityCertificate, ResonanceLattice, SpectralType,
};
pub use conjugacy::{
    companion_of, decide_conjugacy, split_decomposable, sylvester_solution_space,
    unimodular_witness_search, ConjugacyVerdict, ConjugacyWitness, Decomposition, WitnessOutcome,
};
pub use dynamics::{
    dual_orbit_test, leaf_equidistribution, periodic_point_count, weyl_sum, DualOrbitResult,
    OrbitStatus, PeriodicCount, SimConfig, WeylReport,
};
pub use error::Error;
pub use exact::{
    hermite_normal_form, rational_kernel, saturated_integer_kernel, HermiteForm, IntMatrix,
    LatticeBasis, RatMatrix, RatVector,
};
pub use numeric::{polynomial_roots, BigComplex, BigFloat};
pub use symplectic::{check_form, companion_form, solve_invariant_form, FormSearch, SymplecticForm};
pub use poly::{
    char_poly, cyclotomic_order, cyclotomic_orders, factor_monic_quartic, lift_quadratic,
    reciprocal_coefficients, Factorization, IntPolynomial, MuQuadratic,
};
