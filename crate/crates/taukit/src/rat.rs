//! Arbitrary-precision rational numbers with a fast machine-word path.
//!
//! Coefficient arithmetic dominates the crate's runtime, and almost all
//! coefficients fit comfortably in an `i64` numerator and denominator, so
//! `Rat` keeps a reduced `i64/i64` representation and only spills into a
//! heap-allocated `BigRational` when a value genuinely needs it. Values that
//! shrink back into machine range are demoted again, which keeps the
//! representation canonical: equal values always have identical structure.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, ToBigInt};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// An exact rational number. Denominators are kept positive and fractions
/// fully reduced in both representations.
#[derive(Debug, Clone)]
pub enum Rat {
    /// Reduced fraction with positive denominator, both in machine range.
    Small(i64, i64),
    /// Reduced fraction that does not fit the small representation.
    Big(Box<BigRational>),
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    a.abs().gcd(&b.abs())
}

/// Builds a `Rat` from a reduced i128 fraction with positive denominator.
fn from_reduced_i128(num: i128, den: i128) -> Rat {
    debug_assert!(den > 0);
    debug_assert!(num == 0 || gcd_i128(num, den) == 1);
    if let (Ok(n), Ok(d)) = (i64::try_from(num), i64::try_from(den)) {
        Rat::Small(n, d)
    } else {
        Rat::Big(Box::new(BigRational::new_raw(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }
}

fn reduce_i128(mut num: i128, mut den: i128) -> Rat {
    debug_assert!(den != 0);
    if den < 0 {
        num = -num;
        den = -den;
    }
    if num == 0 {
        return Rat::Small(0, 1);
    }
    let g = gcd_i128(num, den);
    from_reduced_i128(num / g, den / g)
}

/// Demotes a reduced `BigRational` to the small representation when it fits.
fn demote(r: BigRational) -> Rat {
    if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
        Rat::Small(n, d)
    } else {
        Rat::Big(Box::new(r))
    }
}

impl Rat {
    pub const ZERO: Rat = Rat::Small(0, 1);
    pub const ONE: Rat = Rat::Small(1, 1);

    /// Creates `num/den`, reducing and normalizing signs. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        reduce_i128(num as i128, den as i128)
    }

    pub fn from_big(r: BigRational) -> Rat {
        // BigRational::new reduces; new_raw callers must already be reduced.
        demote(r.reduced())
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(r) => (**r).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n < 0,
            Rat::Big(r) => r.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rat::Small(_, d) => *d == 1,
            Rat::Big(r) => r.is_integer(),
        }
    }

    /// The numerator as a `BigInt`.
    pub fn numer_big(&self) -> BigInt {
        match self {
            Rat::Small(n, _) => BigInt::from(*n),
            Rat::Big(r) => r.numer().clone(),
        }
    }

    /// The denominator as a `BigInt` (always positive).
    pub fn denom_big(&self) -> BigInt {
        match self {
            Rat::Small(_, d) => BigInt::from(*d),
            Rat::Big(r) => r.denom().clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Rat::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        match self {
            Rat::Small(n, d) => {
                if *n < 0 {
                    reduce_i128(-(*d as i128), -(*n as i128))
                } else {
                    Rat::Small(*d, *n)
                }
            }
            Rat::Big(r) => demote(r.recip()),
        }
    }

    /// Raises to an integer power; negative exponents invert (panics on zero base).
    pub fn pow(&self, exp: i32) -> Rat {
        if exp == 0 {
            return Rat::ONE;
        }
        let base = if exp < 0 { self.recip() } else { self.clone() };
        let mut acc = Rat::ONE;
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::ZERO
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::Small(n, 1)
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Self) -> bool {
        // Canonical representation: variants never overlap in value.
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => a == c && b == d,
            (Rat::Big(a), Rat::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rat::Small(n, d) => {
                state.write_u8(0);
                state.write_i64(*n);
                state.write_i64(*d);
            }
            Rat::Big(r) => {
                state.write_u8(1);
                state.write_u8(if r.numer().is_negative() { 1 } else { 0 });
                for digit in r.numer().magnitude().iter_u64_digits() {
                    state.write_u64(digit);
                }
                state.write_u8(2);
                for digit in r.denom().magnitude().iter_u64_digits() {
                    state.write_u64(digit);
                }
            }
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Add for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        match (self, rhs) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let num = *a as i128 * *d as i128 + *c as i128 * *b as i128;
                let den = *b as i128 * *d as i128;
                reduce_i128(num, den)
            }
            _ => demote(self.to_big() + rhs.to_big()),
        }
    }
}

impl Sub for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        match (self, rhs) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let num = *a as i128 * *d as i128 - *c as i128 * *b as i128;
                let den = *b as i128 * *d as i128;
                reduce_i128(num, den)
            }
            _ => demote(self.to_big() - rhs.to_big()),
        }
    }
}

impl Mul for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        match (self, rhs) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                // Cross-reduce first so products of already-reduced fractions
                // stay as small as possible.
                let g1 = gcd_i128(*a as i128, *d as i128).max(1);
                let g2 = gcd_i128(*c as i128, *b as i128).max(1);
                let num = (*a as i128 / g1) * (*c as i128 / g2);
                let den = (*b as i128 / g2) * (*d as i128 / g1);
                from_reduced_i128(num, den)
            }
            _ => demote(self.to_big() * rhs.to_big()),
        }
    }
}

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        self * &rhs.recip()
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self {
            Rat::Small(n, d) => {
                if *n == i64::MIN {
                    demote(-BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)))
                } else {
                    Rat::Small(-n, *d)
                }
            }
            Rat::Big(r) => Rat::Big(Box::new(-(**r).clone())),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num = BigInt::from_str(num_str)
            .map_err(|_| Error::invalid(format!("bad rational numerator {num_str:?}")))?;
        let den = match den_str {
            Some(d) => BigInt::from_str(d)
                .map_err(|_| Error::invalid(format!("bad rational denominator {d:?}")))?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(Rat::from_big(BigRational::new(num, den)))
    }
}

/// Sums an iterator of rationals.
impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        let mut acc = Rat::ZERO;
        for x in iter {
            acc += &x;
        }
        acc
    }
}

pub fn factorial_big(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k.to_bigint().unwrap();
    }
    acc
}
