//! Exact spectral classification of unimodular 4x4 integer matrices, with
//! ergodicity and entropy certificates and the resonance analysis of the
//! expanding eigendirection.
//!
//! Everything structural here is decided over the integers. The recipe: the
//! characteristic polynomial of a matrix with reciprocal spectrum is
//! `x^4 + a x^3 + b x^2 + a x + 1`, the substitution `mu = x + 1/x` halves
//! it to `mu^2 + a mu + (b - 2)`, and the position of the two `mu` roots
//! relative to [-2, 2] fixes the eigenvalue geometry. Comparing
//! `(-a +- sqrt(D))/2` against +-2 only ever needs `cmp_sqrt`, an integer
//! comparison of `sqrt(D)` with a rational, so no branch of the taxonomy
//! rests on floating point.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebraic::{eigenvector_kernel, normalize_leading, FieldElement, NumberField};
use crate::error::Error;
use crate::exact::{saturated_integer_kernel, IntMatrix, LatticeBasis};
use crate::numeric::{polynomial_roots, BigComplex, BigFloat};
use crate::poly::{
    char_poly, cyclotomic_order, factor_monic_quartic, lift_quadratic, Factorization,
    IntPolynomial, MuQuadratic,
};
use crate::symplectic::{solve_invariant_form, FormSearch};

/// Spectral taxonomy of a reciprocal unimodular 4x4 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralType {
    /// All four eigenvalues real, off the unit circle.
    AnosovSaddle,
    /// All four eigenvalues complex, off the unit circle.
    AnosovSaddleFocus,
    /// One hyperbolic pair and one elliptic pair on the unit circle.
    PartiallyHyperbolic,
    /// All eigenvalues on the unit circle, none equal to +-1.
    Elliptic,
    /// Some eigenvalue is +-1.
    Parabolic,
}

impl SpectralType {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpectralType::AnosovSaddle => "anosov-saddle",
            SpectralType::AnosovSaddleFocus => "anosov-saddle-focus",
            SpectralType::PartiallyHyperbolic => "partially-hyperbolic",
            SpectralType::Elliptic => "elliptic",
            SpectralType::Parabolic => "parabolic",
        }
    }

    pub fn is_expanding(&self) -> bool {
        matches!(
            self,
            SpectralType::AnosovSaddle | SpectralType::PartiallyHyperbolic
        )
    }
}

impl std::fmt::Display for SpectralType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Compares `sqrt(d)` with the integer `r` exactly. Requires `d >= 0`.
pub fn cmp_sqrt(d: &BigInt, r: &BigInt) -> Ordering {
    assert!(!d.is_negative(), "cmp_sqrt needs a nonnegative radicand");
    if r.is_negative() {
        return Ordering::Greater;
    }
    d.cmp(&(r * r))
}

/// Whether `mu+` and `mu-` lie outside [-2, 2]. Requires `disc >= 0` and no
/// root equal to +-2 (i.e. the caller has ruled out the parabolic case).
fn mu_outside(mu: &MuQuadratic) -> (bool, bool) {
    let d = mu.disc();
    let up = &mu.a + 4i32;
    let dn = &mu.a - 4i32;
    // mu+ - 2 and mu+ + 2 have the signs of sqrt(D) - (a+4), sqrt(D) - (a-4)
    let plus = cmp_sqrt(&d, &up) == Ordering::Greater || cmp_sqrt(&d, &dn) == Ordering::Less;
    // mu- > 2 iff sqrt(D) < -(a+4); mu- < -2 iff sqrt(D) > -(a-4)
    let minus =
        cmp_sqrt(&d, &(-&up)) == Ordering::Less || cmp_sqrt(&d, &(-&dn)) == Ordering::Greater;
    (plus, minus)
}

/// Decides the spectral type from the halved quadratic alone.
pub fn spectral_classify(mu: &MuQuadratic) -> SpectralType {
    if mu.disc().is_negative() {
        return SpectralType::AnosovSaddleFocus;
    }
    // chi(1) = b + 2a + 2 and chi(-1) = b - 2a + 2 vanish exactly when some
    // mu equals 2 or -2
    let chi_1 = &mu.b + &mu.a * 2i32 + 2i32;
    let chi_m1 = &mu.b - &mu.a * 2i32 + 2i32;
    if chi_1.is_zero() || chi_m1.is_zero() {
        return SpectralType::Parabolic;
    }
    let (plus, minus) = mu_outside(mu);
    match u8::from(plus) + u8::from(minus) {
        2 => SpectralType::AnosovSaddle,
        1 => SpectralType::PartiallyHyperbolic,
        _ => SpectralType::Elliptic,
    }
}

/// Ergodicity certificate: a toral automorphism is ergodic iff no eigenvalue
/// is a root of unity, i.e. iff the characteristic polynomial has no
/// cyclotomic factor.
#[derive(Debug, Clone)]
pub struct ErgodicityCertificate {
    pub ergodic: bool,
    /// The offending factors, each with the order of its roots of unity.
    pub cyclotomic_factors: Vec<(u32, IntPolynomial)>,
}

fn ergodicity_from_factors(fact: &Factorization) -> ErgodicityCertificate {
    let cyclotomic_factors: Vec<(u32, IntPolynomial)> = fact
        .factors
        .iter()
        .filter_map(|(f, _)| cyclotomic_order(f).map(|k| (k, f.clone())))
        .collect();
    ErgodicityCertificate {
        ergodic: cyclotomic_factors.is_empty(),
        cyclotomic_factors,
    }
}

pub fn ergodicity_test(chi: &IntPolynomial) -> Result<ErgodicityCertificate, Error> {
    Ok(ergodicity_from_factors(&factor_monic_quartic(chi)?))
}

/// Topological entropy: the sum of `ln |lambda|` over eigenvalues outside
/// the unit circle.
#[derive(Debug, Clone)]
pub struct Entropy {
    pub value: BigFloat,
    /// True exactly when every factor is cyclotomic, which by Kronecker's
    /// theorem is the only way the entropy of a unimodular matrix vanishes.
    pub exact_zero: bool,
    /// Contribution of each irreducible factor (multiplicity included).
    pub terms: Vec<(IntPolynomial, BigFloat)>,
}

/// Extra working digits so that the final rounding to the caller's scale is
/// the only visible rounding step.
const ENTROPY_PAD: u32 = 15;

pub fn entropy(a: &IntMatrix, digits: u32) -> Result<Entropy, Error> {
    validate_automorphism(a)?;
    entropy_of_char_poly(&char_poly(a), digits)
}

pub(crate) fn entropy_of_char_poly(chi: &IntPolynomial, digits: u32) -> Result<Entropy, Error> {
    let fact = factor_monic_quartic(chi)?;
    if fact
        .factors
        .iter()
        .all(|(f, _)| cyclotomic_order(f).is_some())
    {
        let terms = fact
            .factors
            .iter()
            .map(|(f, _)| (f.clone(), BigFloat::zero(digits)))
            .collect();
        return Ok(Entropy {
            value: BigFloat::zero(digits),
            exact_zero: true,
            terms,
        });
    }
    let w = digits + ENTROPY_PAD;
    let mut value = BigFloat::zero(w);
    let mut terms = Vec::with_capacity(fact.factors.len());
    for (f, m) in &fact.factors {
        let term = factor_entropy_term(f, w)?.mul_i64(i64::from(*m));
        value = value.add(&term);
        terms.push((f.clone(), term.with_scale(digits)));
    }
    Ok(Entropy {
        value: value.with_scale(digits),
        exact_zero: false,
        terms,
    })
}

/// `ln((t + sqrt(t^2 + shift)) / 2)` for `t >= 2`, the log of the larger
/// root modulus of `x^2 - t x +- 1`.
fn log_dominant_root(t: &BigFloat, shift: i64) -> BigFloat {
    let s = t
        .mul(t)
        .add(&BigFloat::from_i64(shift, t.scale()))
        .sqrt();
    t.add(&s).half().ln()
}

/// Entropy contribution of one monic irreducible factor, at working scale.
fn factor_entropy_term(f: &IntPolynomial, w: u32) -> Result<BigFloat, Error> {
    let deg = f.degree().unwrap_or(0);
    match deg {
        // the only rational roots of a unimodular spectrum are +-1
        1 => Ok(BigFloat::zero(w)),
        2 => {
            let p = f.coeff(1);
            let q = f.coeff(0);
            if q.is_one() {
                // roots lambda, 1/lambda with lambda + 1/lambda = -p
                let pa = p.abs();
                if pa <= BigInt::from(2) {
                    return Ok(BigFloat::zero(w));
                }
                Ok(log_dominant_root(&BigFloat::from_bigint(&pa, w), -4))
            } else if (-&q).is_one() {
                // roots of x^2 + p x - 1: moduli r and 1/r
                Ok(log_dominant_root(&BigFloat::from_bigint(&p.abs(), w), 4))
            } else {
                Err(Error::InternalInvariant(
                    "quadratic factor with non-unit constant term".into(),
                ))
            }
        }
        4 if f.is_reciprocal() && f.coeff(0).is_one() => {
            let mu = MuQuadratic::from_reciprocal(f)?;
            let d = mu.disc();
            if d.is_negative() {
                // complex mu: the two roots outside the circle are a
                // conjugate pair, so the contribution is ln |lambda|^2
                let re = BigFloat::from_bigint(&mu.a, w).neg().half();
                let im = BigFloat::from_bigint(&(-&d), w).sqrt().half();
                let mu_c = BigComplex::new(re, im);
                let four = BigComplex::from_real(BigFloat::from_i64(4, w));
                let s = mu_c.mul(&mu_c).sub(&four).sqrt();
                let lam_a = halve(&mu_c.add(&s));
                let lam_b = halve(&mu_c.sub(&s));
                let ns_a = lam_a.norm_sq();
                let ns_b = lam_b.norm_sq();
                let ns = if ns_a.cmp_value(&ns_b) == Ordering::Greater {
                    ns_a
                } else {
                    ns_b
                };
                Ok(ns.ln())
            } else {
                let (plus, minus) = mu_outside(&mu);
                let sqrt_d = BigFloat::from_bigint(&d, w).sqrt();
                let a_f = BigFloat::from_bigint(&mu.a, w);
                let mut term = BigFloat::zero(w);
                if plus {
                    let m = sqrt_d.sub(&a_f).half();
                    term = term.add(&log_dominant_root(&m.abs(), -4));
                }
                if minus {
                    let m = a_f.add(&sqrt_d).neg().half();
                    term = term.add(&log_dominant_root(&m.abs(), -4));
                }
                Ok(term)
            }
        }
        3 | 4 => {
            // irreducible with unit constant term and (for degree 4) not
            // reciprocal: no root can sit on the unit circle, since a circle
            // pair would force the polynomial to be self- or anti-reciprocal
            // and the anti-reciprocal ones all have the root 1
            let roots = polynomial_roots(f, w)?;
            let one = BigFloat::from_i64(1, w);
            let mut term = BigFloat::zero(w);
            for r in &roots {
                let ns = r.norm_sq();
                if ns.cmp_value(&one) == Ordering::Greater {
                    term = term.add(&ns.ln().half());
                }
            }
            Ok(term)
        }
        _ => Err(Error::InternalInvariant(format!(
            "factor of unexpected degree {deg}"
        ))),
    }
}

fn halve(z: &BigComplex) -> BigComplex {
    BigComplex::new(z.re.half(), z.im.half())
}

/// The lattice of integer vectors orthogonal to the expanding
/// eigendirection. Rank 0 means the direction projects densely onto every
/// rational subtorus; rank 2 means it lies in a rational 2-plane.
#[derive(Debug, Clone)]
pub struct ResonanceLattice {
    pub lattice: LatticeBasis,
    pub rank: usize,
}

/// Symbolic eigendirection data shared by the resonance and numeric layers.
struct SymbolicEigen {
    mu: MuQuadratic,
    spectral_type: SpectralType,
    min_poly: IntPolynomial,
    field: NumberField,
    gamma: Vec<FieldElement>,
    resonance: ResonanceLattice,
}

fn validate_automorphism(a: &IntMatrix) -> Result<(), Error> {
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

/// Picks the irreducible factor whose root is the leading eigenvalue: the
/// whole quartic when irreducible; among quadratics `x^2 + p x + 1` the one
/// with the largest |trace| (positive trace on a tie); among quadratics
/// `x^2 + p x - 1` the one with negative `p`, which holds the positive
/// dominant root.
fn select_min_poly(chi: &IntPolynomial, fact: &Factorization) -> Result<IntPolynomial, Error> {
    if fact.is_irreducible() {
        return Ok(chi.clone());
    }
    let quads: Vec<&IntPolynomial> = fact.factors.iter().map(|(f, _)| f).collect();
    if quads.iter().any(|f| f.degree() != Some(2)) {
        return Err(Error::InternalInvariant(
            "expanding spectral type with a linear factor".into(),
        ));
    }
    if quads.iter().all(|f| f.coeff(0).is_one()) {
        let mu_star = quads
            .iter()
            .map(|f| -f.coeff(1))
            .max_by_key(|m| (m.abs(), m.clone()))
            .unwrap();
        return Ok(lift_quadratic(&mu_star));
    }
    if quads.iter().all(|f| (-f.coeff(0)).is_one()) {
        if let Some(f) = quads.iter().find(|f| f.coeff(1).is_negative()) {
            return Ok((*f).clone());
        }
    }
    Err(Error::InternalInvariant(
        "factor constants inconsistent with a reciprocal quartic".into(),
    ))
}

fn symbolic_eigen(a: &IntMatrix) -> Result<SymbolicEigen, Error> {
    validate_automorphism(a)?;
    let chi = char_poly(a);
    let mu = MuQuadratic::from_reciprocal(&chi)?;
    let spectral_type = spectral_classify(&mu);
    if !spectral_type.is_expanding() {
        let why = match spectral_type {
            SpectralType::AnosovSaddleFocus => "the leading eigenvalue is complex",
            _ => "there is no eigenvalue off the unit circle",
        };
        return Err(Error::EigenDataUnavailable(why.into()));
    }
    let factorization = factor_monic_quartic(&chi)?;
    let min_poly = select_min_poly(&chi, &factorization)?;
    let field = NumberField::new(min_poly.clone())?;
    let kernel = eigenvector_kernel(&field, a)?;
    if kernel.len() != 1 {
        return Err(Error::EigenDataUnavailable(format!(
            "expanding eigenspace has dimension {}",
            kernel.len()
        )));
    }
    let gamma = normalize_leading(&field, &kernel[0])?;
    let resonance = resonance_from_gamma(&field, &gamma);
    // provable shape: rank 4 - deg(m); and rank 0 exactly for irreducible chi
    if resonance.rank + field.degree() != 4 {
        return Err(Error::InternalInvariant(format!(
            "resonance rank {} against a degree-{} eigenvalue field",
            resonance.rank,
            field.degree()
        )));
    }
    if (resonance.rank == 0) != factorization.is_irreducible() {
        return Err(Error::InternalInvariant(
            "resonance rank disagrees with irreducibility".into(),
        ));
    }
    Ok(SymbolicEigen {
        mu,
        spectral_type,
        min_poly,
        field,
        gamma,
        resonance,
    })
}

/// Integer relations among the coordinates of gamma: one linear condition
/// per power of the field generator, cleared of denominators.
fn resonance_from_gamma(field: &NumberField, gamma: &[FieldElement]) -> ResonanceLattice {
    let deg = field.degree();
    let mut rows = Vec::with_capacity(deg);
    for j in 0..deg {
        let mut l = BigInt::one();
        for g in gamma {
            l = l.lcm(g.coeffs()[j].denom());
        }
        let row: Vec<BigInt> = gamma
            .iter()
            .map(|g| {
                let c = &g.coeffs()[j];
                c.numer() * (&l / c.denom())
            })
            .collect();
        rows.push(row);
    }
    let lattice = saturated_integer_kernel(&rows, 4);
    let rank = lattice.rank();
    ResonanceLattice { lattice, rank }
}

pub fn resonance_lattice(a: &IntMatrix) -> Result<ResonanceLattice, Error> {
    Ok(symbolic_eigen(a)?.resonance)
}

/// Eigendirection of the leading eigenvalue, both symbolically (coordinates
/// in the eigenvalue's number field) and as rounded decimal shadows.
#[derive(Debug, Clone)]
pub struct EigenData {
    pub min_poly: IntPolynomial,
    pub field: NumberField,
    /// Eigenvector coordinates, first nonzero coordinate normalized to 1.
    pub gamma: Vec<FieldElement>,
    pub resonance: ResonanceLattice,
    /// Leading eigenvalue (the real root of `min_poly` of largest modulus).
    pub lambda: BigFloat,
    /// Its trace pair `mu = lambda + 1/lambda`.
    pub mu_expanding: BigFloat,
    pub gamma_numeric: Vec<BigFloat>,
    /// `arccos(mu_c / 2)` for the elliptic pair of a partially hyperbolic
    /// matrix; `None` otherwise.
    pub rotation_angle: Option<BigFloat>,
}

/// Internal guard digits for the numeric shadows.
const EIGEN_PAD: u32 = 10;

pub fn eigen_data(a: &IntMatrix, digits: u32) -> Result<EigenData, Error> {
    let sym = symbolic_eigen(a)?;
    let w = digits + EIGEN_PAD;
    let d = sym.mu.disc();
    let sqrt_d = BigFloat::from_bigint(&d, w).sqrt();
    let a_f = BigFloat::from_bigint(&sym.mu.a, w);
    let mu_plus = sqrt_d.sub(&a_f).half();
    let mu_minus = a_f.add(&sqrt_d).neg().half();
    // |mu+|^2 - |mu-|^2 = -a sqrt(D), so the expanding branch follows the
    // sign of a, with the positive branch on a tie
    let (mu_star, mu_other) = if sym.mu.a.is_positive() {
        (mu_minus, mu_plus)
    } else {
        (mu_plus, mu_minus)
    };
    let s = mu_star
        .mul(&mu_star)
        .sub(&BigFloat::from_i64(4, w))
        .sqrt();
    let lambda = if mu_star.is_negative() {
        mu_star.sub(&s).half()
    } else {
        mu_star.add(&s).half()
    };
    let gamma_numeric = sym
        .gamma
        .iter()
        .map(|g| sym.field.eval_real(g, &lambda).with_scale(digits))
        .collect();
    let rotation_angle = (sym.spectral_type == SpectralType::PartiallyHyperbolic)
        .then(|| mu_other.half().acos().with_scale(digits));
    Ok(EigenData {
        min_poly: sym.min_poly,
        field: sym.field,
        gamma: sym.gamma,
        resonance: sym.resonance,
        lambda: lambda.with_scale(digits),
        mu_expanding: mu_star.with_scale(digits),
        gamma_numeric,
        rotation_angle,
    })
}

/// Knobs for `classify`.
#[derive(Debug, Clone)]
pub struct ClassifyConfig {
    /// Decimal digits of the reported numeric shadows.
    pub digits: u32,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig { digits: 50 }
    }
}

/// Everything the classifier knows about one matrix.
///
/// The trace-variable fields are `None` exactly when the characteristic
/// polynomial is not reciprocal (always the case for det = -1, possible
/// for det = +1). Such a matrix pairs no eigenvalue with its inverse, so
/// the spectral taxonomy does not apply; factorization, ergodicity and
/// entropy still do, and no nondegenerate invariant form can exist.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub matrix: IntMatrix,
    pub char_poly: IntPolynomial,
    pub mu: Option<MuQuadratic>,
    pub mu_disc: Option<BigInt>,
    pub spectral_type: Option<SpectralType>,
    pub factorization: Factorization,
    pub ergodicity: ErgodicityCertificate,
    pub entropy: Entropy,
    pub invariant_form: FormSearch,
    /// Present for the expanding types when the leading eigenvalue is
    /// geometrically simple.
    pub eigen: Option<EigenData>,
}

impl ClassificationReport {
    /// Topological transitivity. For a toral automorphism this coincides
    /// with ergodicity; in the partially hyperbolic case both are further
    /// equivalent to density of the strong-unstable leaf, certified by a
    /// resonance lattice of rank zero. `classify` cross-checks that
    /// coincidence instead of assuming it.
    pub fn transitive(&self) -> bool {
        self.ergodicity.ergodic
    }
}

pub fn classify(a: &IntMatrix, config: &ClassifyConfig) -> Result<ClassificationReport, Error> {
    validate_automorphism(a)?;
    let chi = char_poly(a);
    let mu = match MuQuadratic::from_reciprocal(&chi) {
        Ok(m) => Some(m),
        Err(Error::NotReciprocal(_)) => None,
        Err(e) => return Err(e),
    };
    let spectral_type = mu.as_ref().map(spectral_classify);
    let factorization = factor_monic_quartic(&chi)?;
    let ergodicity = ergodicity_from_factors(&factorization);
    let entropy = entropy_of_char_poly(&chi, config.digits)?;
    let invariant_form = solve_invariant_form(a)?;
    let eigen = if spectral_type.is_some_and(|t| t.is_expanding()) {
        match eigen_data(a, config.digits) {
            Ok(e) => Some(e),
            Err(Error::EigenDataUnavailable(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let consistent = match spectral_type {
        Some(SpectralType::AnosovSaddle) | Some(SpectralType::AnosovSaddleFocus) => {
            ergodicity.ergodic && !entropy.exact_zero
        }
        Some(SpectralType::PartiallyHyperbolic) => {
            !entropy.exact_zero
                && ergodicity.ergodic == factorization.is_irreducible()
                && eigen
                    .as_ref()
                    .map_or(true, |e| (e.resonance.rank == 0) == ergodicity.ergodic)
        }
        Some(SpectralType::Elliptic) => !ergodicity.ergodic && entropy.exact_zero,
        Some(SpectralType::Parabolic) => !ergodicity.ergodic,
        // An eigenvalue of a non-reciprocal quartic is never on the unit
        // circle together with its inverse, so no cross-check binds here
        // beyond what the certificate constructors already enforce, except
        // that a nondegenerate invariant form would force reciprocity.
        None => invariant_form.canonical.is_none(),
    };
    if !consistent {
        return Err(Error::InternalInvariant(
            "spectral type disagrees with the ergodicity or entropy certificate".into(),
        ));
    }
    Ok(ClassificationReport {
        matrix: a.clone(),
        char_poly: chi,
        mu_disc: mu.as_ref().map(MuQuadratic::disc),
        mu,
        spectral_type,
        factorization,
        ergodicity,
        entropy,
        invariant_form,
        eigen,
    })
}
