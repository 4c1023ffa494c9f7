use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::hnf::hermite_normal_form;

/// A sublattice of `Z^ambient`, stored as its canonical Hermite basis.
///
/// Because the stored rows are the (unique) Hermite normal form of any
/// generating set, structural equality of two `LatticeBasis` values is
/// equality of the lattices themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    ambient: usize,
    rows: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn from_generators(ambient: usize, generators: &[Vec<BigInt>]) -> Self {
        for g in generators {
            assert_eq!(g.len(), ambient, "generator has wrong length");
        }
        let hf = hermite_normal_form(generators);
        LatticeBasis {
            ambient,
            rows: hf.h[..hf.rank].to_vec(),
        }
    }

    pub fn empty(ambient: usize) -> Self {
        LatticeBasis {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Coefficients of `v` in the Hermite basis, by back-substitution;
    /// `None` when `v` is outside the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient);
        let mut rem = v.to_vec();
        let mut coords = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let p = row.iter().position(|e| !e.is_zero()).unwrap();
            if rem[p].is_zero() {
                coords.push(BigInt::zero());
                continue;
            }
            let (q, r) = rem[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            for (re, be) in rem.iter_mut().zip(row) {
                *re -= &q * be;
            }
            coords.push(q);
        }
        rem.iter().all(|e| e.is_zero()).then_some(coords)
    }

    /// Membership test by back-substitution against the Hermite basis.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &LatticeBasis) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecs(data: &[&[i64]]) -> Vec<Vec<BigInt>> {
        data.iter()
            .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
            .collect()
    }

    #[test]
    fn generating_sets_of_same_lattice_compare_equal() {
        let a = LatticeBasis::from_generators(3, &vecs(&[&[2, 0, 1], &[0, 3, 1]]));
        let b = LatticeBasis::from_generators(3, &vecs(&[&[2, 3, 2], &[2, -3, 0], &[4, 3, 3]]));
        assert_eq!(a, b);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn membership() {
        let l = LatticeBasis::from_generators(3, &vecs(&[&[2, 0, 1], &[0, 3, 1]]));
        let yes = vecs(&[&[2, 0, 1], &[2, 3, 2], &[-2, 3, 0], &[0, 0, 0]]);
        let no = vecs(&[&[1, 0, 0], &[2, 0, 0], &[0, 3, 0]]);
        for v in &yes {
            assert!(l.contains(v), "{v:?} should be in the lattice");
        }
        for v in &no {
            assert!(!l.contains(v), "{v:?} should not be in the lattice");
        }
    }

    #[test]
    fn zero_generators_give_empty_lattice() {
        let l = LatticeBasis::from_generators(4, &vecs(&[&[0, 0, 0, 0]]));
        assert_eq!(l.rank(), 0);
        assert_eq!(l, LatticeBasis::empty(4));
        assert!(l.contains(&vecs(&[&[0, 0, 0, 0]])[0]));
    }
}
