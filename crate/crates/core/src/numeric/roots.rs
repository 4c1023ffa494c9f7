use num_traits::ToPrimitive;

use super::bigfloat::{pow10, BigFloat};
use super::complex::BigComplex;
use crate::error::Error;
use crate::poly::IntPolynomial;

/// All complex roots of a monic integer polynomial by Durand-Kerner
/// (Weierstrass) simultaneous iteration.
///
/// Only used where no exact route applies: irreducible non-reciprocal cubic
/// and quartic factors. Reciprocal quartics, quadratics, and linear factors
/// are handled exactly elsewhere, so this is a last-resort numeric path, not
/// part of any structural decision.
pub fn polynomial_roots(p: &IntPolynomial, scale: u32) -> Result<Vec<BigComplex>, Error> {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Ok(Vec::new());
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }

    let coeffs: Vec<BigFloat> = (0..=n)
        .map(|k| BigFloat::from_bigint(&p.coeff(k), scale))
        .collect();

    // Cauchy bound keeps the seed circle outside no root; the small angular
    // offset breaks the symmetry that can stall the iteration on real
    // polynomials.
    let bound = 1.0
        + (0..n)
            .map(|k| p.coeff(k).to_f64().unwrap_or(f64::MAX).abs())
            .fold(0.0f64, f64::max);
    let mut z: Vec<BigComplex> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.41;
            BigComplex::new(
                BigFloat::from_f64(bound * theta.cos(), scale).unwrap(),
                BigFloat::from_f64(bound * theta.sin(), scale).unwrap(),
            )
        })
        .collect();

    let eval = |x: &BigComplex| -> BigComplex {
        let mut acc = BigComplex::zero(scale);
        for c in coeffs.iter().rev() {
            acc = acc.mul(x).add(&BigComplex::from_real(c.clone()));
        }
        acc
    };

    // stop when every update is below 10^-(scale - 8)
    let tol = BigFloat::from_mant(pow10(8.min(scale)), scale);
    for _ in 0..500 {
        let mut worst = BigFloat::zero(scale);
        for k in 0..n {
            let mut denom = BigComplex::from_real(BigFloat::from_i64(1, scale));
            for j in 0..n {
                if j != k {
                    denom = denom.mul(&z[k].sub(&z[j]));
                }
            }
            if denom.is_zero() {
                // collided seeds; nudge and keep going
                z[k] = z[k].add(&BigComplex::new(
                    BigFloat::from_decimal_str("0.0009765625", scale).unwrap(),
                    BigFloat::zero(scale),
                ));
                worst = tol.clone();
                continue;
            }
            let delta = eval(&z[k]).div(&denom);
            z[k] = z[k].sub(&delta);
            let step = delta.taxi_norm();
            if step.cmp_value(&worst) == std::cmp::Ordering::Greater {
                worst = step;
            }
        }
        if worst.cmp_value(&tol) == std::cmp::Ordering::Less {
            return Ok(z);
        }
    }
    Err(Error::InternalInvariant(
        "root iteration did not converge".into(),
    ))
}
