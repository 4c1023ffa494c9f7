use super::bigfloat::BigFloat;

/// Complex number over `BigFloat`, just enough for root finding and for
/// eigenvalues of saddle-focus blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub fn from_real(re: BigFloat) -> Self {
        let scale = re.scale();
        BigComplex {
            re,
            im: BigFloat::zero(scale),
        }
    }

    pub fn zero(scale: u32) -> Self {
        BigComplex {
            re: BigFloat::zero(scale),
            im: BigFloat::zero(scale),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        BigComplex {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        BigComplex {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn neg(&self) -> Self {
        BigComplex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        BigComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        let denom = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        assert!(!denom.is_zero(), "complex division by zero");
        BigComplex {
            re: self.re.mul(&o.re).add(&self.im.mul(&o.im)).div(&denom),
            im: self.im.mul(&o.re).sub(&self.re.mul(&o.im)).div(&denom),
        }
    }

    pub fn norm_sq(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sq().sqrt()
    }

    /// `|re| + |im|`, a cheap norm for convergence checks.
    pub fn taxi_norm(&self) -> BigFloat {
        self.re.abs().add(&self.im.abs())
    }

    /// Principal square root:
    /// `sqrt(z) = sqrt((|z|+re)/2) + i sign(im) sqrt((|z|-re)/2)`.
    pub fn sqrt(&self) -> Self {
        let r = self.abs();
        let u = r.add(&self.re).half();
        let v = r.sub(&self.re).half();
        let u = if u.is_negative() {
            BigFloat::zero(u.scale())
        } else {
            u.sqrt()
        };
        let v = if v.is_negative() {
            BigFloat::zero(v.scale())
        } else {
            v.sqrt()
        };
        BigComplex {
            re: u,
            im: if self.im.is_negative() { v.neg() } else { v },
        }
    }
}
