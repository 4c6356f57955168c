//! Main terms of the asymptotic counts, the constants `K(alpha, beta)`,
//! density limits and relative-error reporting.
//!
//! Every fractional power is taken of an exact rational, so
//! `X^{p/6} * weight` is computed as one sixth root of a rational and no
//! rounding enters before the root.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{is_positive, zeta_value, Rational};
use crate::cm::{cm_orders, CmOrder};
use crate::error::{Error, Result};
use crate::families::{is_special_j, JInvariantData};
use crate::heights::HeightSpec;
use crate::real::Real;

fn require_positive(bound: &Rational) -> Result<()> {
    if is_positive(bound) {
        Ok(())
    } else {
        Err(Error::NonPositiveBound(bound.clone()))
    }
}

fn j0(j: &Rational) -> bool {
    j.is_zero()
}

/// `X^{5/6} / (alpha^{1/3} beta^{1/2})`, the leading size of the box.
fn box_scale(spec: &HeightSpec, bound: &Rational) -> Real {
    let x = bound;
    let inner = num_traits::pow(x.clone(), 5)
        / (num_traits::pow(spec.alpha().clone(), 2) * num_traits::pow(spec.beta().clone(), 3));
    Real::root_of_rational(&inner, 6)
}

/// `4 X^{5/6} / (alpha^{1/3} beta^{1/2})`
pub fn main_term_tilde_all(spec: &HeightSpec, bound: &Rational) -> Result<Real> {
    require_positive(bound)?;
    Ok(Real::from_integer(4) * box_scale(spec, bound))
}

/// `4 X^{5/6} / (alpha^{1/3} beta^{1/2} zeta(10))`
pub fn main_term_rep_all(spec: &HeightSpec, bound: &Rational) -> Result<Real> {
    Ok(main_term_tilde_all(spec, bound)? / zeta_value(10)?)
}

/// `c(j; H)` as the sixth root of the exact minimum of its two candidates.
pub fn c_value(j: &Rational, spec: &HeightSpec) -> Result<Real> {
    Ok(Real::root_of_rational(JInvariantData::new(j, spec)?.c_pow6(), 6))
}

/// Leading term of `#Ẽ_j(X; H)`, with the zeta factor `zeta(k)` that turns
/// it into the representative count.
fn fixed_j_parts(j: &Rational, spec: &HeightSpec, bound: &Rational) -> Result<(Real, u32)> {
    require_positive(bound)?;
    let two = Real::from_integer(2);
    if j0(j) {
        Ok((two * Real::root_of_rational(&(bound / spec.beta()), 2), 6))
    } else if is_special_j(j) {
        Ok((two * Real::root_of_rational(&(bound / spec.alpha()), 3), 4))
    } else {
        let data = JInvariantData::new(j, spec)?;
        Ok((two * Real::root_of_rational(&(data.c_pow6() * bound), 6), 2))
    }
}

/// `2 X^{1/2} / beta^{1/2}`, `2 X^{1/3} / alpha^{1/3}` or `2 c(j) X^{1/6}`.
pub fn main_term_tilde_j(j: &Rational, spec: &HeightSpec, bound: &Rational) -> Result<Real> {
    Ok(fixed_j_parts(j, spec, bound)?.0)
}

/// The tilde term divided by `zeta(6)`, `zeta(4)` or `zeta(2)`.
pub fn main_term_rep_j(j: &Rational, spec: &HeightSpec, bound: &Rational) -> Result<Real> {
    let (term, k) = fixed_j_parts(j, spec, bound)?;
    Ok(term / zeta_value(k)?)
}

fn generic_cm_orders() -> impl Iterator<Item = &'static CmOrder> {
    cm_orders().iter().filter(|o| !is_special_j(&o.j_invariant()))
}

/// `K(alpha, beta)`: the sum of `c(j; H)` over the eleven CM `j` outside
/// `{0, 1728}`.
pub fn constant_k(spec: &HeightSpec) -> Result<Real> {
    generic_cm_orders().map(|o| c_value(&o.j_invariant(), spec)).sum()
}

/// Three-term expansion of `#E^cm(X; H)`.
pub fn cm_asymptotic(spec: &HeightSpec, bound: &Rational) -> Result<Real> {
    cm_orders().iter().map(|o| main_term_rep_j(&o.j_invariant(), spec, bound)).sum()
}

/// Three-term expansion of `#Ẽ^cm(X; H)`.
pub fn cm_tilde_asymptotic(spec: &HeightSpec, bound: &Rational) -> Result<Real> {
    cm_orders().iter().map(|o| main_term_tilde_j(&o.j_invariant(), spec, bound)).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityFamily {
    All,
    J0,
    J1728,
    JOther,
}

impl FromStr for DensityFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(DensityFamily::All),
            "j0" => Ok(DensityFamily::J0),
            "j1728" => Ok(DensityFamily::J1728),
            "j_other" | "j-other" => Ok(DensityFamily::JOther),
            _ => Err(Error::Parse(format!("unknown density family {s:?}"))),
        }
    }
}

/// Limit of `#E / #Ẽ` as `X` grows: `1 / zeta(k)` with `k = 10, 6, 4, 2`.
pub fn density_limit(family: DensityFamily) -> Real {
    let k = match family {
        DensityFamily::All => 10,
        DensityFamily::J0 => 6,
        DensityFamily::J1728 => 4,
        DensityFamily::JOther => 2,
    };
    Real::from_integer(1) / zeta_value(k).expect("supported argument")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticReport {
    pub exact: BigInt,
    pub approximation: Real,
    /// `|approximation - exact| / exact`, as a fraction.
    pub relative_error: Real,
}

impl AsymptoticReport {
    /// Relative error in percent, two significant figures.
    pub fn percent(&self) -> String {
        let pct = &self.relative_error * &Real::from_integer(100);
        format!("{}%", pct.to_string_digits(2))
    }
}

impl fmt::Display for AsymptoticReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vs {:.2} ({})", self.exact, self.approximation, self.percent())
    }
}

pub fn report(exact: &BigInt, approximation: &Real) -> Result<AsymptoticReport> {
    if exact.is_negative() {
        return Err(Error::Negative(exact.to_string()));
    }
    let relative_error = if exact.is_zero() {
        if !approximation.is_zero() {
            return Err(Error::UndefinedRelativeError);
        }
        Real::zero()
    } else {
        let e = Real::from_integer(exact.clone());
        (approximation - &e).abs() / e
    };
    Ok(AsymptoticReport { exact: exact.clone(), approximation: approximation.clone(), relative_error })
}
