//! Exact arithmetic substrate: rationals, prime factorization, the Möbius
//! function, exact integer roots and k-free counting.

mod kfree;
mod prime;
mod roots;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::real::Real;

pub use kfree::{count_kfree, is_kfree, moebius, moebius_table};
pub use prime::{factorize, factorize_rational, is_prime, ord_p, Factorization};
pub use roots::{floor_rational_root, iroot};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `q^e` for a (possibly negative) integer exponent.
pub fn pow_rational(q: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(q.clone(), e as usize)
    } else {
        num_traits::pow(q.recip(), (-e) as usize)
    }
}

/// `p^e` for a prime and signed exponent, as a rational.
pub(crate) fn prime_power(p: &BigUint, e: i64) -> Rational {
    let base = Rational::from_integer(BigInt::from(p.clone()));
    pow_rational(&base, e)
}

pub(crate) fn is_positive(q: &Rational) -> bool {
    q.is_positive() && !q.is_zero()
}

/// `zeta(s)` for the even arguments with closed forms the counting formulas
/// use, evaluated to 60 decimal places from `pi`.
pub fn zeta_value(s: u32) -> Result<Real> {
    let denom: u64 = match s {
        2 => 6,
        4 => 90,
        6 => 945,
        10 => 93555,
        _ => return Err(Error::UnsupportedZeta(s)),
    };
    Ok(Real::pi().powi(s) / Real::from_integer(denom))
}
