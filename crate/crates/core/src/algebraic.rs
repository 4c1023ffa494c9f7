//! Arithmetic in `Q[t]/(m)` for a monic irreducible modulus `m`, and kernels
//! of matrices over that field.
//!
//! This is where eigenvectors live: the expanding eigenvalue of a reciprocal
//! quartic generates a degree-2 or degree-4 number field, and computing the
//! eigenvector symbolically (coordinates as polynomials in the field
//! generator) keeps the resonance analysis exact instead of trusting any
//! floating-point kernel.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::exact::IntMatrix;
use crate::numeric::BigFloat;
use crate::poly::IntPolynomial;

/// An element of `Q[t]/(m)`: coefficients of `1, t, ..., t^(d-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    coeffs: Vec<BigRational>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }
}

/// The field `Q[t]/(m)`, `m` monic of degree >= 1. Irreducibility is the
/// caller's responsibility; a reducible modulus surfaces as a `Singular`
/// error the moment some zero divisor needs inverting.
#[derive(Debug, Clone)]
pub struct NumberField {
    modulus: IntPolynomial,
    degree: usize,
}

impl NumberField {
    pub fn new(modulus: IntPolynomial) -> Result<Self, Error> {
        let degree = modulus.degree().ok_or(Error::NotMonic)?;
        if !modulus.is_monic() || degree == 0 {
            return Err(Error::NotMonic);
        }
        Ok(NumberField { modulus, degree })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &IntPolynomial {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![BigRational::zero(); self.degree],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(BigRational::one())
    }

    /// The residue class of `t`.
    pub fn generator(&self) -> FieldElement {
        let mut e = self.zero();
        if self.degree == 1 {
            // t = -m(0) in a degree-1 field
            e.coeffs[0] = -BigRational::from_integer(self.modulus.coeff(0));
        } else {
            e.coeffs[1] = BigRational::one();
        }
        e
    }

    pub fn from_rational(&self, r: BigRational) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = r;
        e
    }

    pub fn from_integer(&self, n: &BigInt) -> FieldElement {
        self.from_rational(BigRational::from_integer(n.clone()))
    }

    /// Reduces an arbitrary coefficient list modulo `m`.
    fn reduce(&self, mut coeffs: Vec<BigRational>) -> FieldElement {
        let d = self.degree;
        while coeffs.len() > d {
            let lead = coeffs.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let k = coeffs.len() - d;
            for j in 0..d {
                let delta = &lead * BigRational::from_integer(self.modulus.coeff(j));
                coeffs[k + j] -= delta;
            }
        }
        coeffs.resize(d, BigRational::zero());
        FieldElement { coeffs }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut prod = vec![BigRational::zero(); 2 * self.degree - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        self.reduce(prod)
    }

    pub fn scale(&self, a: &FieldElement, r: &BigRational) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().map(|x| x * r).collect(),
        }
    }

    /// Inverse by the extended Euclidean algorithm in `Q[t]`.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, Error> {
        if a.is_zero() {
            return Err(Error::Singular);
        }
        // r0 = m, r1 = a as polynomials; keep s-coefficients for a only
        let mut r0: Vec<BigRational> = (0..=self.degree)
            .map(|k| BigRational::from_integer(self.modulus.coeff(k)))
            .collect();
        let mut r1 = trim(a.coeffs.clone());
        let mut s0 = vec![BigRational::zero()];
        let mut s1 = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, rem) = poly_div(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        // r0 is now gcd(m, a); for an irreducible modulus it is a nonzero
        // constant, and s0 * a = r0 (mod m)
        if r0.len() != 1 {
            return Err(Error::Singular);
        }
        let c = r0[0].recip();
        let scaled: Vec<BigRational> = s0.iter().map(|x| x * &c).collect();
        Ok(self.reduce(scaled))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, Error> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Evaluates the element at a real embedding `t -> x`.
    pub fn eval_real(&self, a: &FieldElement, x: &BigFloat) -> BigFloat {
        let scale = x.scale();
        let mut acc = BigFloat::zero(scale);
        for c in a.coeffs.iter().rev() {
            acc = acc.mul(x).add(&BigFloat::from_ratio(c, scale));
        }
        acc
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let get = |v: &[BigRational], k: usize| v.get(k).cloned().unwrap_or_else(BigRational::zero);
    trim((0..n).map(|k| get(a, k) - get(b, k)).collect())
}

/// Division with remainder in `Q[t]`; the divisor need not be monic.
fn poly_div(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![BigRational::zero(); a.len() - db];
    let lead = b.last().unwrap();
    while rem.len() > db {
        let k = rem.len() - 1 - db;
        let f = rem.last().unwrap() / lead;
        if !f.is_zero() {
            quot[k] = f.clone();
            for (j, c) in b.iter().enumerate() {
                let delta = &f * c;
                rem[k + j] -= delta;
            }
        }
        rem.pop();
    }
    (trim(quot), trim(rem))
}

/// Basis of the right kernel of a matrix over the field, by Gaussian
/// elimination. Rows of `rows` all have the same length.
pub fn field_kernel(
    field: &NumberField,
    rows: &[Vec<FieldElement>],
) -> Result<Vec<Vec<FieldElement>>, Error> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<FieldElement>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(&m[r][c])?;
        for x in m[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let sub = field.mul(&f, &m[r][j]);
                    m[i][j] = field.sub(&m[i][j], &sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for f in 0..ncols {
        if is_pivot[f] {
            continue;
        }
        let mut v = vec![field.zero(); ncols];
        v[f] = field.one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(&m[row][f]);
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Kernel of `A - t E` over `Q[t]/(m)`: the eigenvectors of `A` for the
/// eigenvalue represented by `t`.
pub fn eigenvector_kernel(
    field: &NumberField,
    a: &IntMatrix,
) -> Result<Vec<Vec<FieldElement>>, Error> {
    let n = a.size();
    let t = field.generator();
    let rows: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = field.from_integer(a.at(i, j));
                    if i == j {
                        e = field.sub(&e, &t);
                    }
                    e
                })
                .collect()
        })
        .collect();
    field_kernel(field, &rows)
}

/// Rescales a kernel vector so its first nonzero coordinate is 1.
pub fn normalize_leading(
    field: &NumberField,
    v: &[FieldElement],
) -> Result<Vec<FieldElement>, Error> {
    let lead = v
        .iter()
        .find(|e| !e.is_zero())
        .ok_or_else(|| Error::InternalInvariant("normalizing the zero vector".into()))?;
    let inv = field.inv(lead)?;
    Ok(v.iter().map(|e| field.mul(e, &inv)).collect())
}
