//! Integer polynomials, characteristic polynomials, and exact factorization
//! of the monic quartics that arise as characteristic polynomials of
//! unimodular 4x4 matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exact::IntMatrix;

/// Dense integer polynomial with ascending coefficients (`coeffs[k]` is the
/// coefficient of `x^k`). Trailing zeros are trimmed; the zero polynomial is
/// the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Long division by a monic divisor; quotient and remainder stay integral.
    pub fn div_rem_monic(&self, divisor: &Self) -> Result<(Self, Self), Error> {
        if !divisor.is_monic() {
            return Err(Error::NotMonic);
        }
        let d = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let k = rem.len() - 1 - d;
            let lead = rem.last().unwrap().clone();
            if !lead.is_zero() {
                quot[k] = lead.clone();
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &lead * c;
                }
            }
            rem.pop();
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// A polynomial is reciprocal when `x^deg * p(1/x) = p(x)`, i.e. the
    /// coefficient vector is a palindrome.
    pub fn is_reciprocal(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|k| self.coeffs[k] == self.coeffs[n - 1 - k])
    }

    pub fn format_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let show_mag = !mag.is_one() || k == 0;
            if show_mag {
                out.push_str(&mag.to_string());
            }
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => {
                    out.push_str(var);
                    out.push('^');
                    out.push_str(&k.to_string());
                }
            }
        }
        out
    }
}

impl std::fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.format_var("x"))
    }
}

/// Characteristic polynomial `det(x E - A)` by the Faddeev-LeVerrier
/// recurrence. All divisions in the recurrence are exact over `Z`.
pub fn char_poly(a: &IntMatrix) -> IntPolynomial {
    let n = a.size();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = IntMatrix::zero(n);
    for k in 1..=n {
        let mut mk = a.mul(&m);
        for i in 0..n {
            let v = mk.at(i, i) + &c[n - k + 1];
            mk.set(i, i, v);
        }
        // tr(A * M_k) without forming the product
        let mut t = BigInt::zero();
        for i in 0..n {
            for j in 0..n {
                t += a.at(i, j) * mk.at(j, i);
            }
        }
        let (q, r) = (-t).div_rem(&BigInt::from(k));
        assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
        c[n - k] = q;
        m = mk;
    }
    IntPolynomial::new(c)
}

/// Extracts `(a, b)` from a monic reciprocal quartic
/// `x^4 + a x^3 + b x^2 + a x + 1`.
pub fn reciprocal_coefficients(p: &IntPolynomial) -> Result<(BigInt, BigInt), Error> {
    if p.degree() != Some(4) {
        return Err(Error::WrongDegree {
            degree: p.degree().map_or(0, |d| d),
            expected: 4,
        });
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if !p.coeff(0).is_one() {
        return Err(Error::NotReciprocal(format!(
            "constant term is {}, not 1",
            p.coeff(0)
        )));
    }
    if p.coeff(1) != p.coeff(3) {
        return Err(Error::NotReciprocal(format!(
            "x and x^3 coefficients differ: {} vs {}",
            p.coeff(1),
            p.coeff(3)
        )));
    }
    Ok((p.coeff(3), p.coeff(2)))
}

/// The trace-variable quadratic of a reciprocal quartic.
///
/// Substituting `mu = x + 1/x` into `x^4 + a x^3 + b x^2 + a x + 1 = 0`
/// (after dividing by `x^2`) gives `mu^2 + a mu + (b - 2) = 0`. Each root
/// `mu` lifts back to an eigenvalue pair through `x^2 - mu x + 1 = 0`, so
/// the quartic's spectrum is controlled entirely by this quadratic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuQuadratic {
    pub a: BigInt,
    pub b: BigInt,
}

impl MuQuadratic {
    pub fn from_reciprocal(p: &IntPolynomial) -> Result<Self, Error> {
        let (a, b) = reciprocal_coefficients(p)?;
        Ok(MuQuadratic { a, b })
    }

    /// `t^2 + a t + (b - 2)`
    pub fn polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(vec![&self.b - 2, self.a.clone(), BigInt::one()])
    }

    /// Discriminant `a^2 - 4(b - 2)`.
    pub fn disc(&self) -> BigInt {
        &self.a * &self.a - (&self.b - 2) * 4
    }

    /// Integer roots `(mu_minus, mu_plus)` when the discriminant is a perfect
    /// square. The parity always works out: `disc = a^2 (mod 4)` forces the
    /// square root to share the parity of `a`.
    pub fn integer_roots(&self) -> Option<(BigInt, BigInt)> {
        let d = self.disc();
        let s = perfect_sqrt(&d)?;
        let lo = (-&self.a - &s) / 2;
        let hi = (-&self.a + &s) / 2;
        Some((lo, hi))
    }
}

/// `sqrt(d)` when `d` is a perfect square, else `None`.
pub fn perfect_sqrt(d: &BigInt) -> Option<BigInt> {
    if d.is_negative() {
        return None;
    }
    let s = d.sqrt();
    (&s * &s == *d).then_some(s)
}

/// The eigenvalue-pair quadratic `x^2 - mu x + 1` of a trace value `mu`.
pub fn lift_quadratic(mu: &BigInt) -> IntPolynomial {
    IntPolynomial::new(vec![BigInt::one(), -mu, BigInt::one()])
}

/// Factorization of a monic polynomial into monic irreducible factors over
/// `Z` (equivalently over `Q`, by Gauss's lemma) with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// Sorted by (degree, ascending coefficient vector).
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPolynomial {
        let mut acc = IntPolynomial::one();
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn iter_with_multiplicity(&self) -> impl Iterator<Item = &IntPolynomial> {
        self.factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat(f).take(*m as usize))
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, m)| {
                if *m == 1 {
                    format!("({p})")
                } else {
                    format!("({p})^{m}")
                }
            })
            .collect();
        f.write_str(&parts.join(" * "))
    }
}

/// Exact factorization of a monic integer polynomial of degree at most 4.
///
/// Linear factors come from the integer roots (which must divide the
/// constant term); a rootless quartic splits into two quadratics iff the
/// coefficient-matching system over a divisor pair `(q, q')` of the constant
/// term has an integer solution, and a rootless quadratic, cubic, or
/// unsplittable quartic is irreducible.
pub fn factor_monic_quartic(p: &IntPolynomial) -> Result<Factorization, Error> {
    let deg = p.degree().ok_or(Error::WrongDegree {
        degree: 0,
        expected: 4,
    })?;
    if deg > 4 {
        return Err(Error::WrongDegree {
            degree: deg,
            expected: 4,
        });
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }

    let mut factors: Vec<IntPolynomial> = Vec::new();
    let mut rest = p.clone();

    // strip integer roots with multiplicity (a zero constant term means the
    // root 0, so x^k factors are covered too)
    loop {
        let Some(root) = integer_root(&rest) else {
            break;
        };
        let lin = IntPolynomial::new(vec![-&root, BigInt::one()]);
        let (q, r) = rest.div_rem_monic(&lin)?;
        debug_assert!(r.is_zero());
        factors.push(lin);
        rest = q;
    }

    match rest.degree().unwrap_or(0) {
        0 => {}
        1 => factors.push(rest.clone()),
        2 | 3 => factors.push(rest.clone()), // rootless quadratics and cubics are irreducible
        4 => match split_rootless_quartic(&rest) {
            Some((f, g)) => {
                factors.push(f);
                factors.push(g);
            }
            None => factors.push(rest.clone()),
        },
        _ => unreachable!(),
    }

    factors.sort_by_key(|f| (f.degree().unwrap(), f.coeffs().to_vec()));
    let mut grouped: Vec<(IntPolynomial, u32)> = Vec::new();
    for f in factors {
        match grouped.last_mut() {
            Some((g, m)) if *g == f => *m += 1,
            _ => grouped.push((f, 1)),
        }
    }
    let fact = Factorization { factors: grouped };
    debug_assert_eq!(fact.expand(), *p, "factor product must reproduce input");
    Ok(fact)
}

/// Smallest integer root of a monic polynomial, if any. Roots divide the
/// constant term.
fn integer_root(p: &IntPolynomial) -> Option<BigInt> {
    if p.degree().unwrap_or(0) == 0 {
        return None;
    }
    let c0 = p.coeff(0);
    if c0.is_zero() {
        return Some(BigInt::zero());
    }
    let mut candidates: Vec<BigInt> = Vec::new();
    let bound = c0.abs().sqrt();
    let mut d = BigInt::one();
    while d <= bound {
        if c0.is_multiple_of(&d) {
            let e = c0.abs() / &d;
            candidates.extend([d.clone(), -&d, e.clone(), -&e]);
        }
        d += 1;
    }
    candidates.sort();
    candidates.dedup();
    candidates.into_iter().find(|r| p.eval_int(r).is_zero())
}

/// Tries to split a monic rootless quartic into two monic quadratics
/// `(x^2 + p x + q)(x^2 + p' x + q')`. Matching coefficients against
/// `x^4 + c3 x^3 + c2 x^2 + c1 x + c0` gives, for each divisor pair
/// `q q' = c0`: `p + p' = c3` and `p p' = c2 - q - q'`, so `p, p'` are the
/// roots of a known quadratic; the `x` coefficient then selects the pairing.
fn split_rootless_quartic(p: &IntPolynomial) -> Option<(IntPolynomial, IntPolynomial)> {
    let c0 = p.coeff(0);
    let c1 = p.coeff(1);
    let c2 = p.coeff(2);
    let c3 = p.coeff(3);
    debug_assert!(!c0.is_zero());

    for q in divisors_signed(&c0) {
        let qp = &c0 / &q;
        let s = c3.clone();
        let m = &c2 - &q - &qp;
        let disc = &s * &s - &m * 4;
        let Some(root) = perfect_sqrt(&disc) else {
            continue;
        };
        // parity matches automatically: disc = s^2 (mod 4)
        let pa = (&s + &root) / 2i32;
        let pb = (&s - &root) / 2i32;
        for (x, y) in [(pa.clone(), pb.clone()), (pb, pa)] {
            if &x * &qp + &y * &q == c1 {
                let f = IntPolynomial::new(vec![q.clone(), x, BigInt::one()]);
                let g = IntPolynomial::new(vec![qp.clone(), y, BigInt::one()]);
                debug_assert_eq!(f.mul(&g), *p);
                return Some((f, g));
            }
        }
    }
    None
}

fn divisors_signed(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let abs = n.abs();
    let bound = abs.sqrt();
    let mut d = BigInt::one();
    while d <= bound {
        if abs.is_multiple_of(&d) {
            let e = &abs / &d;
            out.extend([d.clone(), -&d, e.clone(), -&e]);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// Cyclotomic polynomials of degree at most 4: the only orders `k` with
/// `phi(k) <= 4`.
pub fn cyclotomic_table() -> Vec<(u32, IntPolynomial)> {
    vec![
        (1, IntPolynomial::from_i64(&[-1, 1])),
        (2, IntPolynomial::from_i64(&[1, 1])),
        (3, IntPolynomial::from_i64(&[1, 1, 1])),
        (4, IntPolynomial::from_i64(&[1, 0, 1])),
        (6, IntPolynomial::from_i64(&[1, -1, 1])),
        (5, IntPolynomial::from_i64(&[1, 1, 1, 1, 1])),
        (8, IntPolynomial::from_i64(&[1, 0, 0, 0, 1])),
        (10, IntPolynomial::from_i64(&[1, -1, 1, -1, 1])),
        (12, IntPolynomial::from_i64(&[1, 0, -1, 0, 1])),
    ]
}

/// If `p` is the `k`-th cyclotomic polynomial for some `k`, returns `k`.
pub fn cyclotomic_order(p: &IntPolynomial) -> Option<u32> {
    cyclotomic_table()
        .into_iter()
        .find_map(|(k, c)| (c == *p).then_some(k))
}

/// Orders of the cyclotomic factors of `p`, with the factors themselves.
pub fn cyclotomic_orders(p: &IntPolynomial) -> Result<Vec<(u32, IntPolynomial)>, Error> {
    let fact = factor_monic_quartic(p)?;
    Ok(fact
        .factors
        .iter()
        .filter_map(|(f, _)| cyclotomic_order(f).map(|k| (k, f.clone())))
        .collect())
}
