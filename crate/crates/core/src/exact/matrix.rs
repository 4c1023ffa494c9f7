use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Square integer matrix, row-major.
///
/// The entry type is `BigInt` throughout: iterates of hyperbolic matrices
/// grow exponentially and conjugacy searches multiply several of them
/// together, so fixed-width integers would overflow almost immediately.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(n: usize, entries: Vec<BigInt>) -> Result<Self, Error> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        Ok(IntMatrix { n, entries })
    }

    /// Convenience constructor for literals. Panics on length mismatch,
    /// which is a programmer error rather than a data error.
    pub fn from_i64(n: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), n * n, "need {} entries", n * n);
        IntMatrix {
            n,
            entries: entries.iter().map(|&e| BigInt::from(e)).collect(),
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, Error> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(IntMatrix { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn zero(n: usize) -> Self {
        IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                t.entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        IntMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        IntMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            n: self.n,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    pub fn scalar(&self, c: &BigInt) -> Self {
        IntMatrix {
            n: self.n,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let aik = &self.entries[i * n + k];
                if aik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = aik * &other.entries[k * n + j];
                    out.entries[i * n + j] += t;
                }
            }
        }
        out
    }

    /// Matrix-vector product `A v`.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.n);
        let n = self.n;
        (0..n)
            .map(|i| (0..n).map(|j| &self.entries[i * n + j] * &v[j]).sum())
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.at(i, i).clone()).sum()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Determinant by fraction-free (Bareiss) elimination. Every interior
    /// division is exact, so no rationals are ever created.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = self.to_rows();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = t / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn inverse_rational(&self) -> Result<RatMatrix, Error> {
        RatMatrix::from_int(self).inverse()
    }

    /// Inverse of a matrix with `det = +-1`; the result is again integral.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix, Error> {
        let d = self.det();
        if !d.abs().is_one() {
            return Err(Error::NotUnimodular { det: d.to_string() });
        }
        let inv = self.inverse_rational()?;
        inv.to_int().map_err(|_| {
            Error::InternalInvariant("unimodular inverse came out non-integral".into())
        })
    }

    /// Largest absolute value of an entry.
    pub fn max_abs(&self) -> BigInt {
        self.entries
            .iter()
            .map(|e| e.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl std::fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub type RatVector = Vec<BigRational>;

/// Rectangular rational matrix, used for row reduction and kernels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(RatMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        RatMatrix {
            rows: m.size(),
            cols: m.size(),
            entries: m
                .entries
                .iter()
                .map(|e| BigRational::from_integer(e.clone()))
                .collect(),
        }
    }

    pub fn from_int_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            entries.extend(row.iter().map(|e| BigRational::from_integer(e.clone())));
        }
        RatMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.at(i, k).clone();
                if aik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &aik * other.at(k, j);
                    let cur = out.at(i, j) + t;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[BigRational]) -> RatVector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.at(r, c).recip();
            m.scale_row(r, &inv);
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    m.row_sub_mul(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Basis of the right null space `{ x : M x = 0 }`.
    pub fn kernel(&self) -> Vec<RatVector> {
        let (rref, pivots) = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![BigRational::zero(); self.cols];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rref.at(r, f).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<RatMatrix, Error> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        // Gauss-Jordan on [M | I].
        let mut aug = Self::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, BigRational::one());
        }
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !aug.at(i, c).is_zero()) else {
                return Err(Error::Singular);
            };
            aug.swap_rows(c, p);
            let inv = aug.at(c, c).recip();
            aug.scale_row(c, &inv);
            for i in 0..n {
                if i != c && !aug.at(i, c).is_zero() {
                    let f = aug.at(i, c).clone();
                    aug.row_sub_mul(i, c, &f);
                }
            }
        }
        let mut out = Self::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.at(i, n + j).clone());
            }
        }
        Ok(out)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.is_integer())
    }

    /// Converts a square integral matrix back to `IntMatrix`.
    pub fn to_int(&self) -> Result<IntMatrix, Error> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        if !self.is_integral() {
            return Err(Error::InternalInvariant(
                "matrix has non-integer entries".into(),
            ));
        }
        IntMatrix::new(
            self.rows,
            self.entries.iter().map(|e| e.to_integer()).collect(),
        )
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, f: &BigRational) {
        for j in 0..self.cols {
            let v = self.at(r, j) * f;
            self.set(r, j, v);
        }
    }

    /// `row[i] -= f * row[r]`
    fn row_sub_mul(&mut self, i: usize, r: usize, f: &BigRational) {
        for j in 0..self.cols {
            let v = self.at(i, j) - f * self.at(r, j);
            self.set(i, j, v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn det_matches_cofactor_expansion_on_4x4() {
        let a = IntMatrix::from_i64(4, &[0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, -1, 3, -3, 3]);
        // companion matrix of a monic quartic with constant term 1 has det 1
        assert_eq!(a.det(), big(1));
        let b = IntMatrix::from_i64(4, &[2, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0]);
        assert_eq!(b.det(), big(1));
        let sing = IntMatrix::from_i64(4, &[1, 2, 3, 4, 2, 4, 6, 8, 1, 0, 0, 0, 0, 1, 0, 0]);
        assert_eq!(sing.det(), big(0));
    }

    #[test]
    fn det_needs_row_swap() {
        let m = IntMatrix::from_i64(3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]);
        assert_eq!(m.det(), big(-1));
    }

    #[test]
    fn pow_and_mul_agree() {
        let a = IntMatrix::from_i64(4, &[0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, -1, 3, -3, 3]);
        let a5 = a.mul(&a).mul(&a).mul(&a).mul(&a);
        assert_eq!(a.pow(5), a5);
        assert_eq!(a.pow(0), IntMatrix::identity(4));
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let a = IntMatrix::from_i64(4, &[2, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0]);
        let inv = a.unimodular_inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
    }

    #[test]
    fn unimodular_inverse_rejects_det_2() {
        let m = IntMatrix::from_i64(2, &[2, 0, 0, 1]);
        assert!(matches!(
            m.unimodular_inverse(),
            Err(Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn rref_kernel_solves() {
        // one relation among four coordinates plus a forced zero
        let m = RatMatrix::from_int_rows(
            &[
                vec![big(2), big(1), big(1), big(0)],
                vec![big(0), big(0), big(0), big(1)],
            ],
            4,
        );
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            let img = m.apply(v);
            assert!(img.iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn rational_inverse_of_integer_matrix() {
        let a = IntMatrix::from_i64(2, &[2, 1, 1, 1]);
        let inv = a.inverse_rational().unwrap();
        let prod = RatMatrix::from_int(&a).mul(&inv);
        assert_eq!(prod, RatMatrix::identity(2));
    }
}
