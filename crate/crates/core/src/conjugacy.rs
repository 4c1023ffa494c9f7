//! Integral conjugacy: deciding whether two unimodular matrices are related
//! by a change of basis of the lattice `Z^4`, and splitting a matrix with a
//! reducible characteristic polynomial into its invariant sublattices.
//!
//! The intertwiners `T` with `T A = B T` form a sublattice of the 4x4
//! integer matrices (a 16-dimensional Sylvester-style kernel). Conjugacy
//! over `Z` holds iff that lattice contains a matrix of determinant +-1, so
//! after the exact gates (characteristic and minimal polynomial, rational
//! companion reduction) the decision procedure is a determinant scan over
//! small coefficient combinations of the lattice basis. The scan is complete
//! only up to its shell bound, and says so: exhaustion is reported as
//! `Undecided`, never as a proof.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exact::{
    hermite_normal_form, saturated_integer_kernel, IntMatrix, LatticeBasis, RatMatrix,
};
use crate::poly::{char_poly, cyclotomic_order, factor_monic_quartic, IntPolynomial};

/// A verified conjugator: `w a w^-1 = b`, `det w = +-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyWitness {
    pub w: IntMatrix,
}

impl ConjugacyWitness {
    pub fn verify(&self, a: &IntMatrix, b: &IntMatrix) -> bool {
        self.w.is_unimodular() && self.w.mul(a) == b.mul(&self.w)
    }
}

#[derive(Debug, Clone)]
pub enum ConjugacyVerdict {
    Conjugate(ConjugacyWitness),
    /// With a certificate in the message: which exact invariant differs, or
    /// that no nonzero intertwiner exists at all.
    NotConjugate(String),
    /// The determinant scan exhausted its shells without a witness. Not a
    /// proof of non-conjugacy.
    Undecided {
        shell_bound: i64,
        candidates_tried: u64,
    },
}

/// Outcome of the unimodular scan over an intertwiner lattice.
#[derive(Debug, Clone)]
pub enum WitnessOutcome {
    Found {
        witness: IntMatrix,
        candidates_tried: u64,
    },
    Exhausted {
        candidates_tried: u64,
    },
}

fn validate(a: &IntMatrix) -> Result<(), Error> {
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
    Ok(())
}

/// The lattice of integer matrices `T` with `T A = B T`, inside `Z^16`
/// (row-major vectorization). Saturated, so it is exactly the set of all
/// integer intertwiners.
pub fn sylvester_solution_space(a: &IntMatrix, b: &IntMatrix) -> LatticeBasis {
    assert_eq!(a.size(), 4);
    assert_eq!(b.size(), 4);
    // entry (i,j) of T A - B T; unknown T[k][l] sits at index 4k + l
    let mut rows = Vec::with_capacity(16);
    for i in 0..4 {
        for j in 0..4 {
            let mut row = vec![BigInt::zero(); 16];
            for l in 0..4 {
                row[4 * i + l] += a.at(l, j);
            }
            for k in 0..4 {
                row[4 * k + j] -= b.at(i, k);
            }
            rows.push(row);
        }
    }
    saturated_integer_kernel(&rows, 16)
}

fn unvectorize(v: &[BigInt]) -> IntMatrix {
    IntMatrix::new(4, v.to_vec()).unwrap()
}

/// Scans integer combinations of the lattice basis for a matrix with
/// determinant +-1, in shells of increasing coefficient magnitude. Within a
/// shell the coefficients run through 0, 1, -1, 2, -2, ... with the first
/// basis coordinate moving fastest, and vectors already covered by a
/// smaller shell are skipped.
pub fn unimodular_witness_search(
    lattice: &LatticeBasis,
    a: &IntMatrix,
    b: &IntMatrix,
    shell_bound: i64,
) -> WitnessOutcome {
    assert_eq!(lattice.ambient(), 16);
    let rank = lattice.rank();
    let basis = lattice.rows();
    let mut tried: u64 = 0;
    if rank == 0 {
        return WitnessOutcome::Exhausted { candidates_tried: 0 };
    }
    for shell in 0..=shell_bound {
        // per-coordinate value sequence 0, 1, -1, ..., shell, -shell
        let seq: Vec<i64> = {
            let mut s = vec![0];
            for m in 1..=shell {
                s.push(m);
                s.push(-m);
            }
            s
        };
        let width = seq.len();
        let mut digits = vec![0usize; rank];
        'odometer: loop {
            let on_shell = digits.iter().any(|&d| seq[d].abs() == shell);
            if on_shell {
                tried += 1;
                let mut entries = vec![BigInt::zero(); 16];
                for (d, bv) in digits.iter().zip(basis) {
                    let c = seq[*d];
                    if c == 0 {
                        continue;
                    }
                    for (e, be) in entries.iter_mut().zip(bv) {
                        *e += be * c;
                    }
                }
                let t = unvectorize(&entries);
                if t.is_unimodular() {
                    debug_assert_eq!(t.mul(a), b.mul(&t));
                    return WitnessOutcome::Found {
                        witness: t,
                        candidates_tried: tried,
                    };
                }
            }
            // increment, first coordinate fastest
            for d in digits.iter_mut() {
                *d += 1;
                if *d < width {
                    continue 'odometer;
                }
                *d = 0;
            }
            break;
        }
    }
    WitnessOutcome::Exhausted {
        candidates_tried: tried,
    }
}

/// Whether `I, A, A^2, A^3` are linearly independent, i.e. the minimal
/// polynomial has full degree 4.
fn is_nonderogatory(a: &IntMatrix) -> bool {
    let mut pow = IntMatrix::identity(4);
    let mut rows = Vec::with_capacity(4);
    for _ in 0..4 {
        rows.push(pow.to_rows().into_iter().flatten().collect::<Vec<_>>());
        pow = pow.mul(a);
    }
    hermite_normal_form(&rows).rank == 4
}

/// Companion reduction: an integer matrix `T` of nonzero determinant with
/// `T A = C T`, where `C` is the companion matrix of the characteristic
/// polynomial. Exists iff `A` is nonderogatory; the rows of `T` are the
/// transpose-orbit of a cyclic vector.
pub fn companion_of(a: &IntMatrix) -> Result<(IntMatrix, IntMatrix), Error> {
    validate(a)?;
    if !is_nonderogatory(a) {
        return Err(Error::Derogatory);
    }
    let chi = char_poly(a);
    let mut c = IntMatrix::zero(4);
    for i in 0..3 {
        c.set(i, i + 1, BigInt::one());
    }
    for j in 0..4 {
        c.set(3, j, -chi.coeff(j));
    }
    let at = a.transpose();
    // cyclic vectors are Zariski-dense once they exist, so scanning small
    // integer vectors terminates; e_i alone is usually enough
    for shell in 1..=4i64 {
        let seq: Vec<i64> = {
            let mut s = vec![0];
            for m in 1..=shell {
                s.push(m);
                s.push(-m);
            }
            s
        };
        let width = seq.len();
        let mut digits = vec![0usize; 4];
        'odometer: loop {
            if digits.iter().any(|&d| seq[d].abs() == shell) {
                let v: Vec<BigInt> = digits.iter().map(|&d| BigInt::from(seq[d])).collect();
                let mut rows = Vec::with_capacity(4);
                let mut w = v;
                for _ in 0..4 {
                    rows.push(w.clone());
                    w = at.apply(&w);
                }
                let t = IntMatrix::from_rows(rows)?;
                if !t.det().is_zero() {
                    debug_assert_eq!(t.mul(a), c.mul(&t));
                    return Ok((c, t));
                }
            }
            for d in digits.iter_mut() {
                *d += 1;
                if *d < width {
                    continue 'odometer;
                }
                *d = 0;
            }
            break;
        }
    }
    Err(Error::InternalInvariant(
        "no small cyclic vector for a nonderogatory matrix".into(),
    ))
}

/// Decides integral conjugacy of `a` and `b` up to the scan bound.
pub fn decide_conjugacy(
    a: &IntMatrix,
    b: &IntMatrix,
    shell_bound: i64,
) -> Result<ConjugacyVerdict, Error> {
    validate(a)?;
    validate(b)?;
    if a == b {
        return Ok(ConjugacyVerdict::Conjugate(ConjugacyWitness {
            w: IntMatrix::identity(4),
        }));
    }
    if char_poly(a) != char_poly(b) {
        return Ok(ConjugacyVerdict::NotConjugate(
            "characteristic polynomials differ".into(),
        ));
    }
    let nd_a = is_nonderogatory(a);
    if nd_a != is_nonderogatory(b) {
        return Ok(ConjugacyVerdict::NotConjugate(
            "minimal polynomial degrees differ".into(),
        ));
    }
    if nd_a {
        // rational fast path: chain a -> companion <- b and check whether
        // the composite happens to be integral and unimodular
        let (_, t1) = companion_of(a)?;
        let (_, t2) = companion_of(b)?;
        if let Ok(t2_inv) = t2.inverse_rational() {
            let w = t2_inv.mul(&RatMatrix::from_int(&t1));
            if w.is_integral() {
                let w = w.to_int()?;
                if w.is_unimodular() {
                    let witness = ConjugacyWitness { w };
                    debug_assert!(witness.verify(a, b));
                    return Ok(ConjugacyVerdict::Conjugate(witness));
                }
            }
        }
    }
    let lattice = sylvester_solution_space(a, b);
    if lattice.rank() == 0 {
        return Ok(ConjugacyVerdict::NotConjugate(
            "no nonzero integer intertwiner exists".into(),
        ));
    }
    match unimodular_witness_search(&lattice, a, b, shell_bound) {
        WitnessOutcome::Found { witness, .. } => {
            let witness = ConjugacyWitness { w: witness };
            debug_assert!(witness.verify(a, b));
            Ok(ConjugacyVerdict::Conjugate(witness))
        }
        WitnessOutcome::Exhausted { candidates_tried } => Ok(ConjugacyVerdict::Undecided {
            shell_bound,
            candidates_tried,
        }),
    }
}

/// An exact splitting of `Z^4` under a matrix whose characteristic
/// polynomial factors into a hyperbolic and an elliptic quadratic.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// `x^2 - r x + 1` with |r| > 2.
    pub hyperbolic_factor: IntPolynomial,
    /// The cyclotomic factor; its roots have order 3, 4 or 6.
    pub elliptic_factor: IntPolynomial,
    pub elliptic_order: u32,
    /// Saturated invariant sublattice annihilated by the hyperbolic factor.
    pub hyperbolic_lattice: LatticeBasis,
    /// Saturated invariant sublattice annihilated by the elliptic factor.
    pub elliptic_lattice: LatticeBasis,
    /// Action of the matrix on the hyperbolic sublattice, in its Hermite
    /// basis (column convention: basis images expanded in the basis).
    pub hyperbolic_action: IntMatrix,
    /// Action on the elliptic sublattice.
    pub elliptic_action: IntMatrix,
    /// Index of `W_h + W_c` in `Z^4`: 1 exactly when the stacked Hermite
    /// bases of the two sublattices already form a basis of `Z^4`.
    pub index: BigInt,
    /// A unimodular `S` with `S A = (H (+) R) S` when one was found within
    /// the scan bound.
    pub splitting: Option<ConjugacyWitness>,
    pub candidates_tried: u64,
}

/// Evaluates a monic quadratic `x^2 + c1 x + c0` at `a`.
fn eval_quadratic(f: &IntPolynomial, a: &IntMatrix) -> IntMatrix {
    let a2 = a.mul(a);
    let lin = a.scalar(&f.coeff(1));
    let cst = IntMatrix::identity(4).scalar(&f.coeff(0));
    a2.add(&lin).add(&cst)
}

/// Action of `a` on an invariant sublattice, expanded in the lattice basis.
fn restricted_action(a: &IntMatrix, w: &LatticeBasis) -> Result<IntMatrix, Error> {
    let k = w.rank();
    let mut m = IntMatrix::zero(k);
    for (i, row) in w.rows().iter().enumerate() {
        let image = a.apply(row);
        let coords = w.coordinates(&image).ok_or_else(|| {
            Error::InternalInvariant("sublattice is not invariant under the matrix".into())
        })?;
        for (j, cj) in coords.into_iter().enumerate() {
            m.set(j, i, cj);
        }
    }
    Ok(m)
}

pub fn split_decomposable(a: &IntMatrix, shell_bound: i64) -> Result<Decomposition, Error> {
    validate(a)?;
    let chi = char_poly(a);
    let fact = factor_monic_quartic(&chi)?;
    if fact.factors.len() != 2 || fact.factors.iter().any(|(_, m)| *m != 1) {
        return Err(Error::NotDecomposable(format!(
            "characteristic polynomial factors as {fact}"
        )));
    }
    let f0 = &fact.factors[0].0;
    let f1 = &fact.factors[1].0;
    if f0.degree() != Some(2) || f1.degree() != Some(2) {
        return Err(Error::NotDecomposable(format!(
            "characteristic polynomial factors as {fact}"
        )));
    }
    // the hyperbolic factor is x^2 - r x + 1 with |r| > 2; the elliptic one
    // is cyclotomic of order 3, 4 or 6
    let is_hyp = |f: &IntPolynomial| f.coeff(0).is_one() && f.coeff(1).abs() > BigInt::from(2);
    let ell_order = |f: &IntPolynomial| cyclotomic_order(f).filter(|k| [3u32, 4, 6].contains(k));
    let (q_h, q_c, order) = if is_hyp(f0) && ell_order(f1).is_some() {
        (f0, f1, ell_order(f1).unwrap())
    } else if is_hyp(f1) && ell_order(f0).is_some() {
        (f1, f0, ell_order(f0).unwrap())
    } else {
        return Err(Error::NotDecomposable(format!(
            "factors {fact} are not a hyperbolic/elliptic pair"
        )));
    };
    let w_h = saturated_integer_kernel(&eval_quadratic(q_h, a).to_rows(), 4);
    let w_c = saturated_integer_kernel(&eval_quadratic(q_c, a).to_rows(), 4);
    if w_h.rank() != 2 || w_c.rank() != 2 {
        return Err(Error::InternalInvariant(
            "factor kernels of a split quartic are not planes".into(),
        ));
    }
    let h = restricted_action(a, &w_h)?;
    let r = restricted_action(a, &w_c)?;
    debug_assert_eq!(char_poly(&h), *q_h);
    debug_assert_eq!(char_poly(&r), *q_c);
    let mut stacked = Vec::with_capacity(4);
    stacked.extend(w_h.rows().iter().cloned());
    stacked.extend(w_c.rows().iter().cloned());
    let stack = IntMatrix::from_rows(stacked)?;
    let index = stack.det().abs();
    if index.is_zero() {
        return Err(Error::InternalInvariant(
            "invariant planes of coprime factors failed to span".into(),
        ));
    }
    // block model: D = H (+) R
    let mut d = IntMatrix::zero(4);
    for i in 0..2 {
        for j in 0..2 {
            d.set(i, j, h.at(i, j).clone());
            d.set(i + 2, j + 2, r.at(i, j).clone());
        }
    }
    let (splitting, candidates_tried) = if index.is_one() {
        // the stacked basis itself is a lattice basis of Z^4; A acts on the
        // columns of stack^T exactly by D
        let s = stack.transpose().unimodular_inverse()?;
        debug_assert_eq!(s.mul(a), d.mul(&s));
        (Some(ConjugacyWitness { w: s }), 0)
    } else {
        let lattice = sylvester_solution_space(a, &d);
        match unimodular_witness_search(&lattice, a, &d, shell_bound) {
            WitnessOutcome::Found {
                witness,
                candidates_tried,
            } => (Some(ConjugacyWitness { w: witness }), candidates_tried),
            WitnessOutcome::Exhausted { candidates_tried } => (None, candidates_tried),
        }
    };
    Ok(Decomposition {
        hyperbolic_factor: q_h.clone(),
        elliptic_factor: q_c.clone(),
        elliptic_order: order,
        hyperbolic_lattice: w_h,
        elliptic_lattice: w_c,
        hyperbolic_action: h,
        elliptic_action: r,
        index,
        splitting,
        candidates_tried,
    })
}
