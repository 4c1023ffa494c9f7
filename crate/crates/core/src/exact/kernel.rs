use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::hnf::hermite_normal_form;
use super::lattice::LatticeBasis;
use super::matrix::{RatMatrix, RatVector};

/// Basis of `{ x in Q^ncols : M x = 0 }` for an integer row list `M`.
pub fn rational_kernel(rows: &[Vec<BigInt>], ncols: usize) -> Vec<RatVector> {
    if rows.is_empty() {
        return (0..ncols)
            .map(|i| {
                let mut v = vec![BigRational::zero(); ncols];
                v[i] = BigRational::from_integer(1.into());
                v
            })
            .collect();
    }
    RatMatrix::from_int_rows(rows, ncols).kernel()
}

/// The full integer kernel lattice `{ x in Z^ncols : M x = 0 }`.
///
/// Clearing denominators in a rational kernel basis and dividing out the
/// content is not enough: the resulting vectors can span a finite-index
/// sublattice of the true kernel (see the regression test below). Instead,
/// take the Hermite form `U * M^T = H`; the rows of `U` that align with zero
/// rows of `H` are integer combinations of unit vectors killed by `M`, and
/// because `U` is unimodular they generate the kernel saturated, not just a
/// sublattice of it.
pub fn saturated_integer_kernel(rows: &[Vec<BigInt>], ncols: usize) -> LatticeBasis {
    for row in rows {
        assert_eq!(row.len(), ncols, "ragged row list");
    }
    let transpose: Vec<Vec<BigInt>> = (0..ncols)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect();
    let hf = hermite_normal_form(&transpose);
    let gens: Vec<Vec<BigInt>> = hf.u[hf.rank..].to_vec();
    LatticeBasis::from_generators(ncols, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn vecs(data: &[&[i64]]) -> Vec<Vec<BigInt>> {
        data.iter()
            .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
            .collect()
    }

    fn apply(rows: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
        rows.iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    #[test]
    fn kernel_vectors_are_killed() {
        let m = vecs(&[&[2, 1, 1, 0], &[0, 0, 0, 1]]);
        let k = saturated_integer_kernel(&m, 4);
        assert_eq!(k.rank(), 2);
        for b in k.rows() {
            assert!(apply(&m, b).iter().all(|e| e.is_zero()));
        }
    }

    /// Naive recipe: rational kernel, clear denominators, divide content.
    fn unsaturated_kernel(rows: &[Vec<BigInt>], ncols: usize) -> LatticeBasis {
        use num_integer::Integer;
        let gens: Vec<Vec<BigInt>> = rational_kernel(rows, ncols)
            .into_iter()
            .map(|v| {
                let lcm = v.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
                let scale = BigRational::from_integer(lcm);
                let ints: Vec<BigInt> = v.iter().map(|e| (e * &scale).to_integer()).collect();
                let content = ints
                    .iter()
                    .fold(BigInt::zero(), |acc, e| acc.gcd(e))
                    .max(BigInt::one());
                ints.iter().map(|e| e / &content).collect()
            })
            .collect();
        LatticeBasis::from_generators(ncols, &gens)
    }

    /// The naive recipe drops index here: the echelon basis scaled to
    /// primitive vectors spans an index-2 sublattice that misses
    /// (1, -1, -1, 0).
    #[test]
    fn saturation_regression() {
        let m = vecs(&[&[2, 1, 1, 0], &[0, 0, 0, 1]]);
        let witness: Vec<BigInt> = vecs(&[&[1, -1, -1, 0]]).remove(0);
        assert!(apply(&m, &witness).iter().all(|e| e.is_zero()));

        let naive = unsaturated_kernel(&m, 4);
        assert!(!naive.contains(&witness), "naive kernel is accidentally saturated");

        let saturated = saturated_integer_kernel(&m, 4);
        assert!(saturated.contains(&witness));
        assert!(saturated.contains_lattice(&naive));
        assert_eq!(
            saturated.rows(),
            vecs(&[&[1, 0, -2, 0], &[0, 1, -1, 0]]).as_slice()
        );
    }

    #[test]
    fn kernel_of_full_rank_matrix_is_trivial() {
        let m = vecs(&[&[1, 2], &[3, 4]]);
        let k = saturated_integer_kernel(&m, 2);
        assert_eq!(k.rank(), 0);
    }

    #[test]
    fn kernel_of_empty_row_list_is_everything() {
        let k = saturated_integer_kernel(&[], 3);
        assert_eq!(k.rank(), 3);
    }
}
