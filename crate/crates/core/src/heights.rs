//! The generalized naive height `H(A, B) = max(alpha |A|^3, beta B^2)` and
//! the coefficient box it cuts out.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::arith::{floor_rational_root, is_positive, Rational};
use crate::error::{Error, Result};
use crate::families::WeierstrassCurve;
use crate::parse::parse_rational;

/// Positive rational weights `(alpha, beta)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeightSpec {
    alpha: Rational,
    beta: Rational,
}

impl HeightSpec {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self> {
        if !is_positive(&alpha) || !is_positive(&beta) {
            return Err(Error::NonPositiveHeight { alpha: Box::new(alpha), beta: Box::new(beta) });
        }
        Ok(HeightSpec { alpha, beta })
    }

    /// `max(4|A|^3, 27B^2)`
    pub fn calibrated() -> Self {
        HeightSpec { alpha: Rational::from_integer(4.into()), beta: Rational::from_integer(27.into()) }
    }

    /// `max(|A|^3, B^2)`
    pub fn uncalibrated() -> Self {
        HeightSpec { alpha: Rational::one(), beta: Rational::one() }
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn height(&self, curve: &WeierstrassCurve) -> Rational {
        let a = Rational::from_integer(curve.a().abs());
        let b = Rational::from_integer(curve.b().clone());
        let first = &self.alpha * &a * &a * &a;
        let second = &self.beta * &b * &b;
        first.max(second)
    }

    /// Integer box `|A| <= x_bound`, `|B| <= y_bound` holding exactly the
    /// curves of height at most `bound`.
    pub fn height_box(&self, bound: &Rational) -> Result<HeightBox> {
        if !is_positive(bound) {
            return Err(Error::NonPositiveBound(bound.clone()));
        }
        Ok(HeightBox {
            x_bound: floor_rational_root(&(bound / &self.alpha), 3)?,
            y_bound: floor_rational_root(&(bound / &self.beta), 2)?,
        })
    }
}

pub fn height(spec: &HeightSpec, curve: &WeierstrassCurve) -> Rational {
    spec.height(curve)
}

fn format_weight(q: &Rational) -> String {
    format!("{}:{}", q.numer(), q.denom())
}

impl fmt::Display for HeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == HeightSpec::calibrated() {
            f.write_str("cal")
        } else if *self == HeightSpec::uncalibrated() {
            f.write_str("ncal")
        } else {
            write!(f, "alpha/{},beta/{}", format_weight(&self.alpha), format_weight(&self.beta))
        }
    }
}

impl FromStr for HeightSpec {
    type Err = Error;

    /// Accepts `cal`, `ncal`, or `alpha/NUM:DEN,beta/NUM:DEN` (the `:DEN`
    /// part may be omitted, and `/` may be used in place of `:`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "cal" | "calibrated" => return Ok(HeightSpec::calibrated()),
            "ncal" | "uncalibrated" => return Ok(HeightSpec::uncalibrated()),
            _ => {}
        }
        let bad = || Error::Parse(format!("malformed height spec {s:?}; expected cal, ncal or alpha/N:D,beta/N:D"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let weight = |part: &str, name: &str| -> Result<Rational> {
            let value = part.trim().strip_prefix(name).and_then(|r| r.strip_prefix('/')).ok_or_else(bad)?;
            parse_rational(&value.replacen(':', "/", 1))
        };
        HeightSpec::new(weight(a, "alpha")?, weight(b, "beta")?)
    }
}

impl Serialize for HeightSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Bounds `T1 = floor((X/alpha)^{1/3})` on `|A|` and
/// `T2 = floor((X/beta)^{1/2})` on `|B|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeightBox {
    pub x_bound: BigUint,
    pub y_bound: BigUint,
}

impl HeightBox {
    pub fn contains(&self, curve: &WeierstrassCurve) -> bool {
        curve.a().magnitude() <= &self.x_bound && curve.b().magnitude() <= &self.y_bound
    }

    /// `(2 T1 + 1)(2 T2 + 1)`
    pub fn lattice_points(&self) -> BigUint {
        (&self.x_bound * 2u8 + 1u8) * (&self.y_bound * 2u8 + 1u8)
    }
}
