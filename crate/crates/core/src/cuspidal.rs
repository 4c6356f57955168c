//! Integral points on the cuspidal cubic `C_a: y^2 = a x^3`.
//!
//! For `a = (-1)^e prod p^{v_p}` set `alpha_p = ceil(v_p / 2)` when
//! `v_p >= 0` and `ceil(v_p / 3)` when `v_p < 0`, and `N_a = prod p^{alpha_p}`.
//! Then `t -> (t^2 / a, t^3 / a)` is a bijection from the lattice `N_a Z`
//! onto `C_a(Z)`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{factorize_rational, floor_rational_root, is_positive, prime_power, Rational};
use crate::error::{Error, Result};
use crate::families::decimal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicParam {
    pub a: Rational,
    /// Lattice step `N_a > 0`.
    pub n_a: Rational,
    /// `alpha_p(a)` for each prime dividing numerator or denominator of `a`.
    pub alpha_exponents: BTreeMap<BigUint, i64>,
}

fn alpha_exponent(ord: i64) -> i64 {
    if ord >= 0 {
        Integer::div_ceil(&ord, &2)
    } else {
        Integer::div_ceil(&ord, &3)
    }
}

impl CubicParam {
    pub fn new(a: &Rational) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroCubic);
        }
        let fac = factorize_rational(a)?;
        let mut n_a = Rational::one();
        let mut alpha_exponents = BTreeMap::new();
        for (p, &ord) in fac.factors() {
            let e = alpha_exponent(ord);
            n_a *= prime_power(p, e);
            alpha_exponents.insert(p.clone(), e);
        }
        Ok(CubicParam { a: a.clone(), n_a, alpha_exponents })
    }

    /// `(m N_a)^2 / a, (m N_a)^3 / a`
    fn point_for(&self, m: &BigInt) -> CuspidalPoint {
        let t = &self.n_a * Rational::from_integer(m.clone());
        let (x, y) = phi_unchecked(&self.a, &t);
        CuspidalPoint { m: m.clone(), x, y }
    }

    /// Largest `M` with `|m| <= M` admissible in the box `|x| <= T1`, `|y| <= T2`.
    fn max_parameter(&self, t1: &Rational, t2: &Rational) -> Result<BigUint> {
        if !is_positive(t1) || !is_positive(t2) {
            return Err(Error::NonPositiveBox);
        }
        let abs_a = self.a.abs();
        let n6 = num_traits::pow(self.n_a.clone(), 6);
        let first = num_traits::pow(&abs_a * t1, 3) / &n6;
        let second = num_traits::pow(&abs_a * t2, 2) / &n6;
        Ok(floor_rational_root(&first, 6)?.min(floor_rational_root(&second, 6)?))
    }
}

pub fn cubic_param(a: &Rational) -> Result<CubicParam> {
    CubicParam::new(a)
}

fn phi_unchecked(a: &Rational, t: &Rational) -> (BigInt, BigInt) {
    let x = t * t / a;
    let y = t * t * t / a;
    assert!(x.is_integer() && y.is_integer(), "lattice point {t} maps off Z^2 for a = {a}");
    (x.to_integer(), y.to_integer())
}

/// `phi_a(t) = (t^2 / a, t^3 / a)` for `t` in `N_a Z`.
pub fn phi(a: &Rational, t: &Rational) -> Result<(BigInt, BigInt)> {
    let param = CubicParam::new(a)?;
    if !(t / &param.n_a).is_integer() {
        return Err(Error::NotOnLattice { t: Box::new(t.clone()), n_a: Box::new(param.n_a) });
    }
    Ok(phi_unchecked(a, t))
}

/// `#C_a(Z; T1, T2)`, including the origin.
pub fn count_points(a: &Rational, t1: &Rational, t2: &Rational) -> Result<BigUint> {
    let m = CubicParam::new(a)?.max_parameter(t1, t2)?;
    Ok(m * 2u8 + 1u8)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CuspidalPoint {
    #[serde(with = "decimal")]
    pub m: BigInt,
    #[serde(with = "decimal")]
    pub x: BigInt,
    #[serde(with = "decimal")]
    pub y: BigInt,
}

/// The points of `C_a(Z; T1, T2)` ordered by ascending parameter `m`.
pub fn enumerate_points(a: &Rational, t1: &Rational, t2: &Rational) -> Result<Vec<CuspidalPoint>> {
    let param = CubicParam::new(a)?;
    let bound = BigInt::from(param.max_parameter(t1, t2)?);
    let mut out = Vec::new();
    let mut m = -bound.clone();
    while m <= bound {
        out.push(param.point_for(&m));
        m += 1;
    }
    Ok(out)
}
