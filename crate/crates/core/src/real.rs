use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{iroot, Rational};

/// Number of decimal places carried by [`Real`].
pub const SCALE: u32 = 60;

const PI_DIGITS: &str = "3141592653589793238462643383279502884197169399375105820974944592307816406286209";

/// Fixed-point real number with [`SCALE`] decimal places.
///
/// Values are truncated toward negative infinity after every operation, so
/// each multiplication or division loses at most one unit in the last
/// place. That is far below anything the counting code reports.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Real {
    // value = mantissa / 10^SCALE
    mantissa: BigInt,
}

fn ten_pow(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u8), e as usize)
}

impl Real {
    pub fn zero() -> Self {
        Real { mantissa: BigInt::zero() }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Real { mantissa: n.into() * ten_pow(SCALE) }
    }

    pub fn from_rational(q: &Rational) -> Self {
        let scaled = q.numer() * ten_pow(SCALE);
        Real { mantissa: scaled.div_floor(q.denom()) }
    }

    /// `floor(q^{1/k} * 10^SCALE) / 10^SCALE` for a nonnegative rational.
    pub fn root_of_rational(q: &Rational, k: u32) -> Self {
        assert!(!q.is_negative(), "root of a negative rational");
        assert!(k >= 1);
        let scaled = (q.numer() * ten_pow(SCALE * k)).div_floor(q.denom());
        let root = iroot(&scaled.to_biguint().expect("nonnegative"), k);
        Real { mantissa: BigInt::from(root) }
    }

    pub fn pi() -> Self {
        let digits = &PI_DIGITS[..(SCALE as usize + 1)];
        Real { mantissa: digits.parse().expect("static digits") }
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = Real::from_integer(1u8);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn abs(&self) -> Self {
        Real { mantissa: self.mantissa.abs() }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        format!("{}e-{}", self.mantissa, SCALE).parse().expect("formatted mantissa is a valid float literal")
    }

    /// Rounds half away from zero to `decimals` places.
    pub fn to_string_fixed(&self, decimals: u32) -> String {
        let decimals = decimals.min(SCALE);
        let drop = ten_pow(SCALE - decimals);
        let (q, r) = self.mantissa.abs().div_rem(&drop);
        let rounded = if &r * 2 >= drop { q + 1 } else { q };
        let negative = self.mantissa.sign() == Sign::Minus && !rounded.is_zero();
        let digits = rounded.to_string();
        let body = if decimals == 0 {
            digits
        } else {
            let width = decimals as usize + 1;
            let padded = format!("{digits:0>width$}");
            let (int_part, frac) = padded.split_at(padded.len() - decimals as usize);
            format!("{int_part}.{frac}")
        };
        if negative {
            format!("-{body}")
        } else {
            body
        }
    }

    /// Rounds to `digits` significant digits (fixed notation).
    pub fn to_string_digits(&self, digits: u32) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let magnitude = self.mantissa.abs().to_string().len() as i64 - SCALE as i64;
        let decimals = (digits as i64 - magnitude).clamp(0, SCALE as i64) as u32;
        self.to_string_fixed(decimals)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // `pad` would treat the precision as a truncation width.
        let s = match f.precision() {
            Some(p) => self.to_string_fixed(p as u32),
            None => self.to_string_digits(30),
        };
        let width = f.width().unwrap_or(0);
        write!(f, "{s:>width$}")
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_string_digits(40))
    }
}

impl From<&BigUint> for Real {
    fn from(n: &BigUint) -> Self {
        Real::from_integer(BigInt::from(n.clone()))
    }
}

impl<'a> Add<&'a Real> for &'a Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        Real { mantissa: &self.mantissa + &rhs.mantissa }
    }
}

impl<'a> Sub<&'a Real> for &'a Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        Real { mantissa: &self.mantissa - &rhs.mantissa }
    }
}

impl<'a> Mul<&'a Real> for &'a Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        Real { mantissa: (&self.mantissa * &rhs.mantissa).div_floor(&ten_pow(SCALE)) }
    }
}

impl<'a> Div<&'a Real> for &'a Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        assert!(!rhs.is_zero(), "division by zero");
        Real { mantissa: (&self.mantissa * ten_pow(SCALE)).div_floor(&rhs.mantissa) }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { mantissa: -self.mantissa }
    }
}

impl std::iter::Sum for Real {
    fn sum<I: Iterator<Item = Real>>(iter: I) -> Real {
        iter.fold(Real::zero(), |acc, x| acc + x)
    }
}

impl PartialEq<f64> for Real {
    fn eq(&self, other: &f64) -> bool {
        self.to_f64() == *other
    }
}

impl PartialOrd<f64> for Real {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.to_f64().partial_cmp(other)
    }
}

impl ToPrimitive for Real {
    fn to_i64(&self) -> Option<i64> {
        self.mantissa.div_floor(&ten_pow(SCALE)).to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        self.mantissa.div_floor(&ten_pow(SCALE)).to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(Real::to_f64(self))
    }
}
