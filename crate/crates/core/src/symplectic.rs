//! Invariant skew-symmetric bilinear forms of a unimodular 4x4 matrix.
//!
//! A form `J` is invariant under `A` when `A^T J A = J`. Collecting the six
//! independent entries of a skew `J` into a vector turns invariance into a
//! 6x6 integer linear system, so the full solution space is a saturated
//! sublattice of Z^6 and comes out of exact kernel computation. A canonical
//! representative is then picked by scanning small integer combinations of
//! the solution basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exact::{saturated_integer_kernel, IntMatrix};

/// Index pairs of the strict upper triangle, the coordinate order used for
/// every 6-vector in this module: (j12, j13, j14, j23, j24, j34) in 1-based
/// matrix labels.
const UPPER: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// A nonzero integer skew-symmetric 4x4 form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticForm {
    matrix: IntMatrix,
}

impl SymplecticForm {
    /// Builds the form from its strict upper triangle.
    pub fn from_upper(upper: &[BigInt]) -> Self {
        assert_eq!(upper.len(), 6, "a 4x4 skew form has 6 free entries");
        let mut m = IntMatrix::zero(4);
        for (v, &(i, j)) in upper.iter().zip(UPPER.iter()) {
            m.set(i, j, v.clone());
            m.set(j, i, -v);
        }
        SymplecticForm { matrix: m }
    }

    pub fn from_matrix(m: IntMatrix) -> Result<Self, Error> {
        if m.size() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                got: m.size(),
            });
        }
        for i in 0..4 {
            for j in i..4 {
                if *m.at(i, j) != -m.at(j, i) {
                    return Err(Error::NotSkewSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SymplecticForm { matrix: m })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn upper(&self) -> Vec<BigInt> {
        UPPER.iter().map(|&(i, j)| self.matrix.at(i, j).clone()).collect()
    }

    /// pf(J) = j12 j34 - j13 j24 + j14 j23; det(J) = pf(J)^2.
    pub fn pfaffian(&self) -> BigInt {
        let v = self.upper();
        let pf = &v[0] * &v[5] - &v[1] * &v[4] + &v[2] * &v[3];
        debug_assert_eq!(&pf * &pf, self.matrix.det());
        pf
    }

    pub fn is_degenerate(&self) -> bool {
        self.pfaffian().is_zero()
    }

    /// Divides out the content and flips the sign so the first nonzero
    /// upper-triangle entry is positive.
    pub fn canonicalized(&self) -> Self {
        let v = canonical_vector(&self.upper());
        SymplecticForm::from_upper(&v)
    }
}

/// Content-1, sign-normalized copy of a nonzero 6-vector.
fn canonical_vector(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for e in v {
        g = g.gcd(e);
    }
    assert!(!g.is_zero(), "canonicalizing the zero form");
    let mut out: Vec<BigInt> = v.iter().map(|e| e / &g).collect();
    if out.iter().find(|e| !e.is_zero()).is_some_and(|e| e.is_negative()) {
        for e in out.iter_mut() {
            *e = -&*e;
        }
    }
    out
}

/// Key for the magnitude-then-sign lexicographic order used to pick the
/// canonical form: entrywise (|e|, 1 if negative), compared left to right.
fn magnitude_sign_key(v: &[BigInt]) -> Vec<(BigInt, u8)> {
    v.iter()
        .map(|e| (e.abs(), u8::from(e.is_negative())))
        .collect()
}

/// Verifies that `j` is a nondegenerate invariant form of `a`: skewness is
/// structural, so this checks `A^T J A = J` and a nonzero Pfaffian.
pub fn check_form(a: &IntMatrix, j: &SymplecticForm) -> Result<(), Error> {
    if a.size() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: a.size(),
        });
    }
    let lhs = a.transpose().mul(j.matrix()).mul(a);
    for i in 0..4 {
        for col in 0..4 {
            if lhs.at(i, col) != j.matrix().at(i, col) {
                return Err(Error::FormNotPreserved { row: i, col });
            }
        }
    }
    if j.is_degenerate() {
        return Err(Error::DegenerateForm);
    }
    Ok(())
}

/// The lattice of invariant skew forms of `a`, plus the canonical
/// nondegenerate representative when one exists.
#[derive(Debug, Clone)]
pub struct FormSearch {
    /// Rank of the solution lattice inside Z^6.
    pub rank: usize,
    /// Saturated basis of the solution lattice, as forms.
    pub basis: Vec<SymplecticForm>,
    /// Canonical nondegenerate form: the magnitude-sign lexicographic
    /// minimum over content-1, sign-normalized combinations of the basis
    /// with coefficients in [-3, 3], Pfaffian nonzero. `None` when the
    /// Pfaffian vanishes on every combination in that box.
    pub canonical: Option<SymplecticForm>,
}

impl FormSearch {
    pub fn require_canonical(&self) -> Result<&SymplecticForm, Error> {
        self.canonical.as_ref().ok_or(Error::DegenerateForm)
    }
}

/// Radius of the coefficient box scanned for the canonical representative.
const COMBO_BOUND: i64 = 3;

/// Solves `A^T S A = S` over integer skew 4x4 matrices `S`.
pub fn solve_invariant_form(a: &IntMatrix) -> Result<FormSearch, Error> {
    if a.size() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: a.size(),
        });
    }
    if !a.is_unimodular() {
        return Err(Error::NotUnimodular {
            det: a.det().to_string(),
        });
    }
    // Equation (i,j), i<j: sum over unknowns (k,l) of
    //   (A[k][i] A[l][j] - A[l][i] A[k][j]) j_kl  =  j_ij
    let rows: Vec<Vec<BigInt>> = UPPER
        .iter()
        .map(|&(i, j)| {
            UPPER
                .iter()
                .map(|&(k, l)| {
                    let mut c = a.at(k, i) * a.at(l, j) - a.at(l, i) * a.at(k, j);
                    if (i, j) == (k, l) {
                        c -= 1;
                    }
                    c
                })
                .collect()
        })
        .collect();
    let lattice = saturated_integer_kernel(&rows, 6);
    let basis: Vec<Vec<BigInt>> = lattice.rows().to_vec();
    let canonical = canonical_over_box(&basis).map(|v| SymplecticForm::from_upper(&v));
    Ok(FormSearch {
        rank: basis.len(),
        basis: basis.iter().map(|v| SymplecticForm::from_upper(v)).collect(),
        canonical,
    })
}

/// Scans integer combinations of the basis with coefficients in the box
/// [-COMBO_BOUND, COMBO_BOUND] and returns the canonical-form minimum among
/// those with nonzero Pfaffian.
fn canonical_over_box(basis: &[Vec<BigInt>]) -> Option<Vec<BigInt>> {
    let rank = basis.len();
    if rank == 0 {
        return None;
    }
    let width = (2 * COMBO_BOUND + 1) as usize;
    let total = width.pow(rank as u32);
    let mut best: Option<(Vec<(BigInt, u8)>, Vec<BigInt>)> = None;
    let mut coeffs = vec![-COMBO_BOUND; rank];
    for step in 0..total {
        if step > 0 {
            // mixed-radix increment
            for c in coeffs.iter_mut() {
                if *c < COMBO_BOUND {
                    *c += 1;
                    break;
                }
                *c = -COMBO_BOUND;
            }
        }
        let mut v = vec![BigInt::zero(); 6];
        for (c, b) in coeffs.iter().zip(basis) {
            if *c == 0 {
                continue;
            }
            for (e, be) in v.iter_mut().zip(b) {
                *e += be * *c;
            }
        }
        if v.iter().all(|e| e.is_zero()) {
            continue;
        }
        let pf = &v[0] * &v[5] - &v[1] * &v[4] + &v[2] * &v[3];
        if pf.is_zero() {
            continue;
        }
        let cand = canonical_vector(&v);
        let key = magnitude_sign_key(&cand);
        match &best {
            Some((bk, _)) if *bk <= key => {}
            _ => best = Some((key, cand)),
        }
    }
    best.map(|(_, v)| v)
}

/// The closed-form invariant form of a companion matrix of
/// x^4 + a x^3 + b x^2 + a x + 1, in upper-triangle coordinates.
pub fn companion_form(a: &BigInt) -> SymplecticForm {
    let u = [
        BigInt::zero(),
        BigInt::one(),
        BigInt::zero(),
        a.clone(),
        BigInt::one(),
        BigInt::zero(),
    ];
    SymplecticForm::from_upper(&u)
}
