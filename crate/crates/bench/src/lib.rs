//! Shared inputs for the benchmark targets.

use num_bigint::BigInt;
use toralclass_core::IntMatrix;

/// Companion matrix of `x^4 + a x^3 + b x^2 + a x + 1`.
pub fn companion(a: i64, b: i64) -> IntMatrix {
    IntMatrix::from_i64(4, &[0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, -1, -a, -b, -a])
}

/// A fixed unimodular change of basis (upper unitriangular, det 1).
pub fn scrambler() -> IntMatrix {
    IntMatrix::from_i64(4, &[1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1])
}

/// Rows of a rank-2 integer system whose kernel needs saturation.
pub fn kernel_rows() -> Vec<Vec<BigInt>> {
    vec![
        vec![2, 4, 6, 8].into_iter().map(BigInt::from).collect(),
        vec![3, 5, 7, 11].into_iter().map(BigInt::from).collect(),
    ]
}
