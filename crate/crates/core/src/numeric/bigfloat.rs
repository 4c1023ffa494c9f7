use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Fixed-point decimal: the represented value is `mant / 10^scale`.
///
/// Computations pick one working scale (requested digits plus guard digits)
/// and keep every intermediate at it; each operation rounds once, to
/// nearest, so `k` operations perturb the result by at most `k` units in the
/// last (guarded) place. Decimal rather than binary fixed point so that
/// rendering to the decimal strings in reports is exact.
#[derive(Debug, Clone)]
pub struct BigFloat {
    mant: BigInt,
    scale: u32,
}

pub(crate) fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

/// Round-to-nearest division, ties away from zero.
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    if r.abs() * 2 >= d.abs() {
        let bump = if n.sign() == d.sign() { 1 } else { -1 };
        q + bump
    } else {
        q
    }
}

impl BigFloat {
    pub fn from_mant(mant: BigInt, scale: u32) -> Self {
        BigFloat { mant, scale }
    }

    pub fn zero(scale: u32) -> Self {
        BigFloat {
            mant: BigInt::zero(),
            scale,
        }
    }

    pub fn from_bigint(n: &BigInt, scale: u32) -> Self {
        BigFloat {
            mant: n * pow10(scale),
            scale,
        }
    }

    pub fn from_i64(n: i64, scale: u32) -> Self {
        Self::from_bigint(&BigInt::from(n), scale)
    }

    pub fn from_ratio(r: &BigRational, scale: u32) -> Self {
        BigFloat {
            mant: div_round(&(r.numer() * pow10(scale)), r.denom()),
            scale,
        }
    }

    /// Parses `[-]digits[.digits][e[+-]exp]`.
    pub fn from_decimal_str(s: &str, scale: u32) -> Option<Self> {
        let (body, exp) = match s.split_once(['e', 'E']) {
            Some((b, e)) => (b, e.parse::<i64>().ok()?),
            None => (s, 0),
        };
        let (body, negative) = match body.strip_prefix('-') {
            Some(rest) => (rest, true),
            None => (body.strip_prefix('+').unwrap_or(body), false),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return None;
        }
        // digits / 10^(len(frac) - exp), rounded onto the requested scale
        let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
        let shift = scale as i64 + exp - frac_part.len() as i64;
        let mant = match shift.cmp(&0) {
            Ordering::Greater => digits * pow10(shift as u32),
            Ordering::Equal => digits,
            Ordering::Less => div_round(&digits, &pow10((-shift) as u32)),
        };
        Some(BigFloat {
            mant: if negative { -mant } else { mant },
            scale,
        })
    }

    pub fn from_f64(v: f64, scale: u32) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        Self::from_decimal_str(&format!("{v:e}"), scale)
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn with_scale(&self, target: u32) -> Self {
        let mant = match target.cmp(&self.scale) {
            Ordering::Greater => &self.mant * pow10(target - self.scale),
            Ordering::Equal => self.mant.clone(),
            Ordering::Less => div_round(&self.mant, &pow10(self.scale - target)),
        };
        BigFloat {
            mant,
            scale: target,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            scale: self.scale,
        }
    }

    fn working_scale(&self, other: &Self) -> u32 {
        self.scale.max(other.scale)
    }

    pub fn add(&self, other: &Self) -> Self {
        let s = self.working_scale(other);
        BigFloat {
            mant: self.with_scale(s).mant + other.with_scale(s).mant,
            scale: s,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let s = self.working_scale(other);
        BigFloat {
            mant: self.with_scale(s).mant - other.with_scale(s).mant,
            scale: s,
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mant: -self.mant.clone(),
            scale: self.scale,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let s = self.working_scale(other);
        let prod = &self.mant * &other.mant; // at scale self.scale + other.scale
        BigFloat {
            mant: div_round(&prod, &pow10(self.scale + other.scale - s)),
            scale: s,
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero");
        let s = self.working_scale(other);
        // value * 10^s = mant_a * 10^(s + scale_b - scale_a) / mant_b
        let shift = s + other.scale - self.scale;
        BigFloat {
            mant: div_round(&(&self.mant * pow10(shift)), &other.mant),
            scale: s,
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        BigFloat {
            mant: &self.mant * BigInt::from(k),
            scale: self.scale,
        }
    }

    pub fn div_i64(&self, k: i64) -> Self {
        assert!(k != 0);
        BigFloat {
            mant: div_round(&self.mant, &BigInt::from(k)),
            scale: self.scale,
        }
    }

    /// Halve in place without changing scale; used by range reductions.
    pub fn half(&self) -> Self {
        self.div_i64(2)
    }

    pub fn sqrt(&self) -> Self {
        assert!(
            !self.mant.is_negative(),
            "sqrt of a negative value; use the complex layer"
        );
        // sqrt(mant / 10^s) * 10^(s+2) = floor sqrt(mant * 10^(s+4)); the two
        // extra digits turn the floor into a round-to-nearest at scale s
        let wide = &self.mant * pow10(self.scale + 4);
        BigFloat {
            mant: wide.sqrt(),
            scale: self.scale + 2,
        }
        .with_scale(self.scale)
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let s = self.working_scale(other);
        self.with_scale(s).mant.cmp(&other.with_scale(s).mant)
    }

    pub fn to_f64(&self) -> f64 {
        // Collapse to at most 18 fractional digits first so the conversion
        // never overflows intermediate floats for values of moderate size.
        let narrowed = self.with_scale(self.scale.min(18));
        let m = narrowed.mant.to_f64().unwrap_or(f64::NAN);
        m / 10f64.powi(narrowed.scale as i32)
    }

    /// Renders with exactly `decimals` digits after the point, rounded to
    /// nearest.
    pub fn to_decimal_string(&self, decimals: u32) -> String {
        let r = self.with_scale(decimals);
        let sign = if r.mant.is_negative() { "-" } else { "" };
        let abs = r.mant.abs();
        let ten = pow10(decimals);
        let (int_part, frac_part) = abs.div_rem(&ten);
        if decimals == 0 {
            format!("{sign}{int_part}")
        } else {
            format!(
                "{sign}{int_part}.{frac:0>width$}",
                frac = frac_part.to_string(),
                width = decimals as usize
            )
        }
    }

    /// pi at the given scale, by Machin's formula.
    pub fn pi(scale: u32) -> Self {
        let w = scale + GUARD;
        let a = atan_inv_mant(5, w);
        let b = atan_inv_mant(239, w);
        BigFloat {
            mant: a * 16 - b * 4,
            scale: w,
        }
        .with_scale(scale)
    }

    /// ln 2 at the given scale, via `2 atanh(1/3)`.
    pub fn ln2(scale: u32) -> Self {
        let w = scale + GUARD;
        BigFloat {
            mant: atanh_inv_mant(3, w) * 2,
            scale: w,
        }
        .with_scale(scale)
    }

    /// Natural log of a positive value.
    ///
    /// Range-reduce by powers of two into `[3/4, 3/2)`, where
    /// `ln m = 2 atanh((m - 1)/(m + 1))` converges quickly (the series ratio
    /// is at most 1/25).
    pub fn ln(&self) -> Self {
        assert!(self.is_positive(), "ln needs a positive argument");
        let s = self.scale;
        let w = s + GUARD;
        let one = Self::from_i64(1, w);
        let hi = Self::from_decimal_str("1.5", w).unwrap();
        let lo = Self::from_decimal_str("0.75", w).unwrap();
        let mut m = self.with_scale(w);
        let mut e = 0i64;
        while m.cmp_value(&hi) != Ordering::Less {
            m = m.half();
            e += 1;
        }
        while m.cmp_value(&lo) == Ordering::Less {
            m = m.mul_i64(2);
            e -= 1;
        }
        let r = m.sub(&one).div(&m.add(&one));
        let r2 = r.mul(&r);
        let mut term = r.clone();
        let mut sum = r;
        let mut k = 1i64;
        while !term.is_zero() {
            term = term.mul(&r2);
            sum = sum.add(&term.div_i64(2 * k + 1));
            k += 1;
            assert!(k < 4 * w as i64 + 64, "ln series failed to terminate");
        }
        sum.mul_i64(2)
            .add(&Self::ln2(w).mul_i64(e))
            .with_scale(s)
    }

    /// Arctangent by argument halving plus the Taylor series.
    pub fn atan(&self) -> Self {
        let s = self.scale;
        if self.is_negative() {
            return self.neg().atan().neg();
        }
        let w = s + GUARD;
        let quarter = Self::from_decimal_str("0.25", w).unwrap();
        let one = Self::from_i64(1, w);
        let mut x = self.with_scale(w);
        let mut halvings = 0u32;
        while x.cmp_value(&quarter) == Ordering::Greater {
            // atan x = 2 atan(x / (1 + sqrt(1 + x^2)))
            let denom = one.add(&one.add(&x.mul(&x)).sqrt());
            x = x.div(&denom);
            halvings += 1;
            assert!(halvings < 64, "atan reduction failed to terminate");
        }
        let x2 = x.mul(&x);
        let mut term = x.clone();
        let mut sum = x;
        let mut k = 1i64;
        let mut negate = true;
        while !term.is_zero() {
            term = term.mul(&x2);
            let contrib = term.div_i64(2 * k + 1);
            sum = if negate {
                sum.sub(&contrib)
            } else {
                sum.add(&contrib)
            };
            negate = !negate;
            k += 1;
            assert!(k < 4 * w as i64 + 64, "atan series failed to terminate");
        }
        sum.mul_i64(1i64 << halvings.min(62)).with_scale(s)
    }

    /// Four-quadrant arctangent; `(0, 0)` maps to 0.
    pub fn atan2(y: &Self, x: &Self) -> Self {
        let s = y.scale.max(x.scale);
        let w = s + GUARD;
        let (y, x) = (y.with_scale(w), x.with_scale(w));
        let out = if x.is_zero() && y.is_zero() {
            Self::zero(w)
        } else if x.is_positive() {
            y.div(&x).atan()
        } else if x.is_zero() {
            let half_pi = Self::pi(w).half();
            if y.is_positive() {
                half_pi
            } else {
                half_pi.neg()
            }
        } else if !y.is_negative() {
            y.div(&x).atan().add(&Self::pi(w))
        } else {
            y.div(&x).atan().sub(&Self::pi(w))
        };
        out.with_scale(s)
    }

    /// acos on [-1, 1]; arguments pushed outside by rounding are clamped.
    pub fn acos(&self) -> Self {
        let s = self.scale;
        let w = s + GUARD;
        let x = self.with_scale(w);
        let one = Self::from_i64(1, w);
        let rest = one.sub(&x.mul(&x));
        let root = if rest.is_negative() {
            Self::zero(w)
        } else {
            rest.sqrt()
        };
        Self::atan2(&root, &x).with_scale(s)
    }
}

/// Extra digits carried inside the transcendental functions so that series
/// truncation and per-operation rounding stay invisible at the caller's
/// scale.
const GUARD: u32 = 12;

/// `atan(1/x) * 10^scale` as an integer, by the alternating series.
fn atan_inv_mant(x: i64, scale: u32) -> BigInt {
    let xx = BigInt::from(x) * BigInt::from(x);
    let mut term = pow10(scale) / BigInt::from(x);
    let mut sum = term.clone();
    let mut k = 1i64;
    let mut negate = true;
    while !term.is_zero() {
        term /= &xx;
        if term.is_zero() {
            break;
        }
        let contrib = &term / BigInt::from(2 * k + 1);
        if negate {
            sum -= contrib;
        } else {
            sum += contrib;
        }
        negate = !negate;
        k += 1;
    }
    sum
}

/// `atanh(1/x) * 10^scale` as an integer; all series terms are positive.
fn atanh_inv_mant(x: i64, scale: u32) -> BigInt {
    let xx = BigInt::from(x) * BigInt::from(x);
    let mut term = pow10(scale) / BigInt::from(x);
    let mut sum = term.clone();
    let mut k = 1i64;
    while !term.is_zero() {
        term /= &xx;
        if term.is_zero() {
            break;
        }
        sum += &term / BigInt::from(2 * k + 1);
        k += 1;
    }
    sum
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl Eq for BigFloat {}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl Ord for BigFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl std::fmt::Display for BigFloat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_decimal_string(self.scale))
    }
}
