//! Randomized invariants. Every property here is a theorem, not a
//! statistical expectation, so a single counterexample is a real bug.

use num_bigint::BigInt;
use proptest::prelude::*;

use toralclass_core::{
    char_poly, check_form, classify, companion_form, decide_conjugacy, dual_orbit_test,
    factor_monic_quartic, saturated_integer_kernel, ClassifyConfig, ConjugacyVerdict, IntMatrix,
    IntPolynomial, OrbitStatus, SpectralType,
};

fn companion(a: i64, b: i64) -> IntMatrix {
    IntMatrix::from_i64(4, &[0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, -1, -a, -b, -a])
}

/// Product of unit shears `row_i += s * row_j`; always in SL(4, Z).
fn unimodular_from_ops(ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut u = IntMatrix::identity(4);
    for &(i, j, s) in ops {
        if i == j || s == 0 {
            continue;
        }
        for col in 0..4 {
            let v = u.at(i, col) + u.at(j, col) * s;
            u.set(i, col, v);
        }
    }
    u
}

fn shear_ops() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..4, 0usize..4, -1i64..=1), 0..8)
}

fn conjugate(a: &IntMatrix, u: &IntMatrix) -> IntMatrix {
    u.mul(a).mul(&u.unimodular_inverse().unwrap())
}

proptest! {
    /// The factor list multiplies back to the input, every factor is monic,
    /// and the degrees account for the whole quartic.
    #[test]
    fn factorization_multiplies_back(
        c1 in -12i64..=12,
        c2 in -12i64..=12,
        c3 in -12i64..=12,
        unit in prop::bool::ANY,
    ) {
        let c0 = if unit { 1 } else { -1 };
        let p = IntPolynomial::from_i64(&[c0, c1, c2, c3, 1]);
        let f = factor_monic_quartic(&p).unwrap();
        prop_assert_eq!(f.expand(), p);
        let mut degree_sum = 0usize;
        for g in f.iter_with_multiplicity() {
            prop_assert_eq!(g.coeffs().last().unwrap(), &BigInt::from(1));
            degree_sum += g.coeffs().len() - 1;
        }
        prop_assert_eq!(degree_sum, 4);
    }

    /// Every trace-parameter companion matrix preserves its closed-form
    /// skew pairing exactly.
    #[test]
    fn companion_preserves_its_closed_form(a in -20i64..=20, b in -20i64..=20) {
        let j = companion_form(&BigInt::from(a));
        prop_assert!(check_form(&companion(a, b), &j).is_ok());
    }

    /// Classification never fails on a reciprocal companion, and its
    /// certificates imply each other the way the taxonomy promises.
    #[test]
    fn classify_is_total_on_reciprocal_companions(a in -9i64..=9, b in -9i64..=9) {
        let r = classify(&companion(a, b), &ClassifyConfig::default()).unwrap();
        match r.spectral_type.unwrap() {
            SpectralType::Elliptic => {
                prop_assert!(r.entropy.exact_zero && !r.ergodicity.ergodic)
            }
            SpectralType::AnosovSaddle | SpectralType::AnosovSaddleFocus => {
                prop_assert!(r.ergodicity.ergodic && !r.entropy.exact_zero)
            }
            SpectralType::PartiallyHyperbolic => {
                prop_assert!(!r.entropy.exact_zero);
                prop_assert_eq!(r.ergodicity.ergodic, r.factorization.is_irreducible());
            }
            SpectralType::Parabolic => prop_assert!(!r.ergodicity.ergodic),
        }
    }

    /// A basis vector of the saturated kernel is annihilated by every row,
    /// and every small integer kernel vector already lies in the lattice:
    /// saturation leaves no finite-index sublattice behind.
    #[test]
    fn kernel_saturation_is_complete(
        raw in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..=3),
    ) {
        let rows: Vec<Vec<BigInt>> = raw
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let basis = saturated_integer_kernel(&rows, 4);
        let dot = |r: &[BigInt], v: &[BigInt]| -> BigInt {
            r.iter().zip(v).map(|(a, b)| a * b).sum()
        };
        for v in basis.rows() {
            for r in &rows {
                prop_assert_eq!(dot(r, v), BigInt::from(0));
            }
        }
        for x1 in -3i64..=3 {
            for x2 in -3i64..=3 {
                for x3 in -3i64..=3 {
                    for x4 in -3i64..=3 {
                        let v: Vec<BigInt> =
                            [x1, x2, x3, x4].iter().map(|&x| BigInt::from(x)).collect();
                        if rows.iter().all(|r| dot(r, &v) == BigInt::from(0)) {
                            prop_assert!(basis.contains(&v));
                        }
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Conjugation by a unimodular matrix changes nothing observable.
    #[test]
    fn classification_is_conjugation_invariant(
        a in -6i64..=6,
        b in -6i64..=6,
        ops in shear_ops(),
    ) {
        let m = companion(a, b);
        let n = conjugate(&m, &unimodular_from_ops(&ops));
        let rm = classify(&m, &ClassifyConfig::default()).unwrap();
        let rn = classify(&n, &ClassifyConfig::default()).unwrap();
        prop_assert_eq!(&rm.char_poly, &rn.char_poly);
        prop_assert_eq!(rm.spectral_type, rn.spectral_type);
        prop_assert_eq!(rm.ergodicity.ergodic, rn.ergodicity.ergodic);
        prop_assert!(rm.entropy.value.cmp_value(&rn.entropy.value).is_eq());
        let rank = |r: &toralclass_core::ClassificationReport| {
            r.eigen.as_ref().map(|e| e.resonance.rank)
        };
        prop_assert_eq!(rank(&rm), rank(&rn));
    }

    /// Dual orbits of nonzero modes: never periodic under an ergodic
    /// automorphism, always periodic with the full cyclotomic order under
    /// a finite-order one, and any periodicity claim survives a
    /// square-and-multiply recheck.
    #[test]
    fn dual_orbit_claims_close(
        base in 0usize..3,
        ops in shear_ops(),
        raw_mode in prop::collection::vec(-3i64..=3, 4),
    ) {
        prop_assume!(raw_mode.iter().any(|&x| x != 0));
        // Ergodic expanding; order 5 (x^4+x^3+x^2+x+1); order 12 (x^4-x^2+1).
        let (m, expect) = match base {
            0 => (companion(-3, 3), None),
            1 => (
                IntMatrix::from_i64(4, &[0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, -1, -1, -1, -1]),
                Some(5),
            ),
            _ => (
                IntMatrix::from_i64(4, &[0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, -1, 0, 1, 0]),
                Some(12),
            ),
        };
        let aa = conjugate(&m, &unimodular_from_ops(&ops));
        let mode: Vec<BigInt> = raw_mode.iter().map(|&x| BigInt::from(x)).collect();
        let r = dual_orbit_test(&aa, &mode, 512).unwrap();
        match (expect, r.status) {
            (None, status) => prop_assert_eq!(status, OrbitStatus::NoCycleWithin(512)),
            (Some(k), OrbitStatus::Periodic(p)) => {
                prop_assert_eq!(p, k);
                let closed = aa.transpose().pow(p).apply(&mode);
                prop_assert_eq!(closed, mode);
            }
            (Some(k), status) => {
                prop_assert!(false, "order-{} base produced {:?}", k, status);
            }
        }
    }

    /// Deciding conjugacy of a genuine conjugate pair may time out at a
    /// small search bound, but it must never refute, and any witness it
    /// does return must verify.
    #[test]
    fn true_conjugates_are_never_refuted(
        hyperbolic in prop::bool::ANY,
        vops in shear_ops(),
        uops in shear_ops(),
    ) {
        let base = if hyperbolic { companion(-7, 13) } else { companion(-3, 3) };
        let a = conjugate(&base, &unimodular_from_ops(&vops));
        let b = conjugate(&a, &unimodular_from_ops(&uops));
        match decide_conjugacy(&a, &b, 8).unwrap() {
            ConjugacyVerdict::Conjugate(w) => prop_assert!(w.verify(&a, &b)),
            ConjugacyVerdict::NotConjugate(reason) => {
                prop_assert!(false, "refuted a true conjugacy: {}", reason);
            }
            ConjugacyVerdict::Undecided { .. } => {}
        }
        // The characteristic polynomial is a complete conjugacy obstruction
        // detector in the other direction: different chi, always refuted.
        prop_assert_eq!(char_poly(&a), char_poly(&b));
    }
}
