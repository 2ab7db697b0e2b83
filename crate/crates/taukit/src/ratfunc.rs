//! Rational functions as unreduced numerator/denominator pairs with exact
//! cross-multiplied comparison.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::vars::VarRef;

/// num/den with a nonzero denominator whose leading coefficient is positive.
/// No polynomial gcd is taken; equality is decided by cross-multiplication.
#[derive(Debug, Clone)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::invalid("rational function with zero denominator"));
        }
        Ok(RatFunc { num, den }.normalized())
    }

    fn normalized(mut self) -> RatFunc {
        if self
            .den
            .leading()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
        {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
        self
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RatFunc {
            num,
            den: self.den.mul(&other.den),
        }
        .normalized()
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
        .normalized()
    }

    /// Quotient-rule partial derivative; the denominator squares.
    pub fn partial_derivative(&self, v: VarRef) -> RatFunc {
        let num = self
            .num
            .partial_derivative(v)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.partial_derivative(v)));
        RatFunc {
            num,
            den: self.den.mul(&self.den),
        }
        .normalized()
    }

    /// Equality as rational functions: num1*den2 == num2*den1.
    pub fn eq_as_fraction(&self, other: &RatFunc) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
