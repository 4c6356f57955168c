//! Curves `E_{A,B}`, their invariants, quadratic twists, the fixed-j
//! parametrization and the exact counts it implies.
//!
//! For `j` outside `{0, 1728}` every integral curve with invariant `j` is a
//! point `(A, B)` on the cuspidal cubic `y^2 = a(j) x^3`, so
//! `(A, B) = (N^2 m^2 / a, N^3 m^3 / a)` for a unique nonzero integer `m`,
//! with `N = N_{a(j)}`. The curve is a representative (minimal twist) iff
//! `m` is square-free.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{count_kfree, factorize, floor_rational_root, is_kfree, is_positive, moebius, Rational};
use crate::cuspidal::CubicParam;
use crate::error::{Error, Result};
use crate::heights::HeightSpec;

type GammaFn<'a> = Box<dyn Fn(&BigUint) -> u64 + 'a>;

pub(crate) mod decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(n)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `y^2 = x^3 + A x + B` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeierstrassCurve {
    #[serde(rename = "A", with = "decimal")]
    a: BigInt,
    #[serde(rename = "B", with = "decimal")]
    b: BigInt,
}

impl WeierstrassCurve {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        WeierstrassCurve { a: a.into(), b: b.into() }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// `4A^3 + 27B^2`; the curve is singular iff this vanishes.
    fn disc_core(&self) -> BigInt {
        BigInt::from(4) * self.a.pow(3) + BigInt::from(27) * &self.b * &self.b
    }

    /// `-16(4A^3 + 27B^2)`
    pub fn discriminant(&self) -> BigInt {
        BigInt::from(-16) * self.disc_core()
    }

    pub fn is_elliptic(&self) -> bool {
        !self.disc_core().is_zero()
    }

    fn require_elliptic(&self) -> Result<()> {
        if self.is_elliptic() {
            Ok(())
        } else {
            Err(Error::Singular { a: self.a.clone(), b: self.b.clone() })
        }
    }

    /// `1728 * 4A^3 / (4A^3 + 27B^2)`
    pub fn j_invariant(&self) -> Result<Rational> {
        self.require_elliptic()?;
        let four_a3 = BigInt::from(4) * self.a.pow(3);
        Ok(Rational::new(BigInt::from(1728) * &four_a3, self.disc_core()))
    }

    /// `d * E_{A,B} = E_{d^4 A, d^6 B}`
    pub fn twist(&self, d: impl Into<BigUint>) -> Result<WeierstrassCurve> {
        let d = BigInt::from(d.into());
        if d.is_zero() {
            return Err(Error::ZeroTwist);
        }
        Ok(WeierstrassCurve { a: &self.a * d.pow(4), b: &self.b * d.pow(6) })
    }

    /// Writes the curve uniquely as `d * E` with `E` a representative.
    pub fn twist_decompose(&self) -> Result<TwistDecomposition> {
        self.require_elliptic()?;
        let (a, b) = (self.a.magnitude(), self.b.magnitude());
        // gamma_p = max{g : p^{4g} | A and p^{6g} | B}; a zero coordinate
        // is divisible by every power.
        let (support, gamma): (BigUint, GammaFn) = if a.is_zero() {
            (b.clone(), Box::new(|p| valuation(b, p) / 6))
        } else if b.is_zero() {
            (a.clone(), Box::new(|p| valuation(a, p) / 4))
        } else {
            (a.gcd(b), Box::new(|p| (valuation(a, p) / 4).min(valuation(b, p) / 6)))
        };
        let mut d = BigUint::one();
        if !support.is_one() {
            for p in factorize(&BigInt::from(support))?.factors().keys() {
                d *= p.pow(gamma(p) as u32);
            }
        }
        let d_signed = BigInt::from(d.clone());
        let representative = WeierstrassCurve { a: &self.a / d_signed.pow(4), b: &self.b / d_signed.pow(6) };
        Ok(TwistDecomposition { d, representative })
    }

    /// No prime `p` with `p^4 | A` and `p^6 | B`.
    pub fn is_representative(&self) -> Result<bool> {
        Ok(self.twist_decompose()?.d.is_one())
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3")?;
        if !self.a.is_zero() {
            let sign = if self.a.is_negative() { '-' } else { '+' };
            if self.a.magnitude().is_one() {
                write!(f, " {sign} x")?;
            } else {
                write!(f, " {sign} {}x", self.a.magnitude())?;
            }
        }
        if !self.b.is_zero() {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, " {sign} {}", self.b.magnitude())?;
        }
        Ok(())
    }
}

fn valuation(n: &BigUint, p: &BigUint) -> u64 {
    let mut n = n.clone();
    let mut e = 0;
    while !n.is_zero() {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            break;
        }
        n = q;
        e += 1;
    }
    e
}

/// `curve = d * representative`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistDecomposition {
    #[serde(serialize_with = "serialize_biguint")]
    pub d: BigUint,
    pub representative: WeierstrassCurve,
}

fn serialize_biguint<S: serde::Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(n)
}

pub fn discriminant(curve: &WeierstrassCurve) -> BigInt {
    curve.discriminant()
}

pub fn j_invariant(curve: &WeierstrassCurve) -> Result<Rational> {
    curve.j_invariant()
}

pub fn is_representative(curve: &WeierstrassCurve) -> Result<bool> {
    curve.is_representative()
}

pub fn twist(curve: &WeierstrassCurve, d: impl Into<BigUint>) -> Result<WeierstrassCurve> {
    curve.twist(d)
}

pub fn twist_decompose(curve: &WeierstrassCurve) -> Result<TwistDecomposition> {
    curve.twist_decompose()
}

fn is_j_zero(j: &Rational) -> bool {
    j.is_zero()
}

fn is_j_1728(j: &Rational) -> bool {
    j.is_integer() && j.numer() == &BigInt::from(1728)
}

pub fn is_special_j(j: &Rational) -> bool {
    is_j_zero(j) || is_j_1728(j)
}

/// `a(j) = 4(1728 - j) / (27 j)` for `j` outside `{0, 1728}`.
pub fn a_of_j(j: &Rational) -> Result<Rational> {
    if is_special_j(j) {
        return Err(Error::SpecialJ(j.clone()));
    }
    let four = Rational::from_integer(4.into());
    let twenty_seven = Rational::from_integer(27.into());
    Ok(four * (Rational::from_integer(1728.into()) - j) / (twenty_seven * j))
}

/// Data for a generic j-invariant under a fixed height: `a(j)`, `N_{a(j)}`
/// and the exact sixth powers of the two candidates whose minimum is
/// `c(j; H)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JInvariantData {
    pub j: Rational,
    pub a: Rational,
    pub n_a: Rational,
    /// `|a|^3 / (N_a^6 alpha)`
    pub c_pow6_first: Rational,
    /// `|a|^2 / (N_a^6 beta)`
    pub c_pow6_second: Rational,
}

impl JInvariantData {
    pub fn new(j: &Rational, spec: &HeightSpec) -> Result<Self> {
        let a = a_of_j(j)?;
        let n_a = CubicParam::new(&a)?.n_a;
        let abs_a = a.abs();
        let n6 = num_traits::pow(n_a.clone(), 6);
        let c_pow6_first = num_traits::pow(abs_a.clone(), 3) / (&n6 * spec.alpha());
        let c_pow6_second = num_traits::pow(abs_a, 2) / (&n6 * spec.beta());
        Ok(JInvariantData { j: j.clone(), a, n_a, c_pow6_first, c_pow6_second })
    }

    /// `c(j; H)^6`
    pub fn c_pow6(&self) -> &Rational {
        (&self.c_pow6_first).min(&self.c_pow6_second)
    }

    /// `(N^2 m^2 / a, N^3 m^3 / a)`
    pub fn curve(&self, m: &BigInt) -> Result<WeierstrassCurve> {
        if m.is_zero() {
            return Err(Error::ZeroParameter);
        }
        let m = Rational::from_integer(m.clone());
        let t = &self.n_a * m;
        let x = &t * &t / &self.a;
        let y = &t * &t * &t / &self.a;
        assert!(x.is_integer() && y.is_integer(), "N_a lattice point off the integers for j = {}", self.j);
        Ok(WeierstrassCurve { a: x.to_integer(), b: y.to_integer() })
    }

    /// `floor(c(j; H) X^{1/6})`
    pub fn param_bound(&self, bound: &Rational) -> Result<BigUint> {
        require_positive(bound)?;
        floor_rational_root(&(self.c_pow6() * bound), 6)
    }
}

fn require_positive(bound: &Rational) -> Result<()> {
    if is_positive(bound) {
        Ok(())
    } else {
        Err(Error::NonPositiveBound(bound.clone()))
    }
}

/// The curve for parameter `m` in the family of invariant `j`. For `j = 0`
/// this is `(0, m)`, for `j = 1728` it is `(m, 0)`.
pub fn curve_from_parameter(j: &Rational, m: &BigInt) -> Result<WeierstrassCurve> {
    if m.is_zero() {
        return Err(Error::ZeroParameter);
    }
    if is_j_zero(j) {
        return Ok(WeierstrassCurve::new(0, m.clone()));
    }
    if is_j_1728(j) {
        return Ok(WeierstrassCurve::new(m.clone(), 0));
    }
    // The height only enters the bound, not the curve itself.
    JInvariantData::new(j, &HeightSpec::uncalibrated())?.curve(m)
}

/// Largest `M` such that the curves with parameter `|m| <= M` are exactly
/// those of height at most `bound`.
pub fn param_bound(j: &Rational, spec: &HeightSpec, bound: &Rational) -> Result<BigUint> {
    require_positive(bound)?;
    if is_j_zero(j) {
        floor_rational_root(&(bound / spec.beta()), 2)
    } else if is_j_1728(j) {
        floor_rational_root(&(bound / spec.alpha()), 3)
    } else {
        JInvariantData::new(j, spec)?.param_bound(bound)
    }
}

/// `#Ẽ_j(X; H) = 2 * param_bound`
pub fn count_tilde_j(j: &Rational, spec: &HeightSpec, bound: &Rational) -> Result<BigInt> {
    Ok(BigInt::from(param_bound(j, spec, bound)? * 2u8))
}

/// `#E_j(X; H)`: the admissible `m` must be square-free (generic `j`),
/// 6-free (`j = 0`) or 4-free (`j = 1728`).
pub fn count_rep_j(j: &Rational, spec: &HeightSpec, bound: &Rational) -> Result<BigInt> {
    let m = param_bound(j, spec, bound)?;
    Ok(BigInt::from(count_kfree(&m, freeness(j))? * 2u8))
}

/// `k` such that the curve with parameter `m` is a representative iff `m`
/// is k-free.
fn freeness(j: &Rational) -> u32 {
    if is_j_zero(j) {
        6
    } else if is_j_1728(j) {
        4
    } else {
        2
    }
}

/// A member of the fixed-j family with its parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParametrizedCurve {
    #[serde(with = "decimal")]
    pub m: BigInt,
    #[serde(flatten)]
    pub curve: WeierstrassCurve,
}

/// The curves of invariant `j` and height at most `bound`, ordered by
/// ascending `m`; with `representatives_only` just the twist-minimal ones.
pub fn parametrized_curves(
    j: &Rational,
    spec: &HeightSpec,
    bound: &Rational,
    representatives_only: bool,
) -> Result<Vec<ParametrizedCurve>> {
    let limit = BigInt::from(param_bound(j, spec, bound)?);
    let generic = if is_special_j(j) { None } else { Some(JInvariantData::new(j, spec)?) };
    let k = freeness(j);
    let mut out = Vec::new();
    let mut m = -limit.clone();
    while m <= limit {
        if !m.is_zero() && (!representatives_only || is_kfree(&m, k)?) {
            let curve = match &generic {
                Some(data) => data.curve(&m)?,
                None => curve_from_parameter(j, &m)?,
            };
            out.push(ParametrizedCurve { m: m.clone(), curve });
        }
        m += 1;
    }
    Ok(out)
}

/// Number of nonsingular `(A, B)` of height at most `bound`: the box minus
/// the lattice points on the singular cubic `y^2 = -4/27 x^3`.
pub fn count_tilde_all(spec: &HeightSpec, bound: &Rational) -> Result<BigInt> {
    let hbox = spec.height_box(bound)?;
    // Sixth powers of the cuspidal bounds for a = -4/27, N_a = 2/3.
    let first = bound / (spec.alpha() * Rational::from_integer(27.into()));
    let second = bound / (spec.beta() * Rational::from_integer(4.into()));
    let singular_m = floor_rational_root(&first, 6)?.min(floor_rational_root(&second, 6)?);
    let singular = singular_m * 2u8 + 1u8;
    Ok(BigInt::from(hbox.lattice_points()) - BigInt::from(singular))
}

/// Number of representatives of height at most `bound`, by Möbius inversion
/// over the twist decomposition `Ẽ(X) = ⊔_d d * E(X / d^12)`.
pub fn count_rep_all(spec: &HeightSpec, bound: &Rational) -> Result<BigInt> {
    require_positive(bound)?;
    let mut total = BigInt::zero();
    let mut d = 1u64;
    loop {
        let scaled = bound / Rational::from_integer(BigInt::from(d).pow(12));
        let tilde = count_tilde_all(spec, &scaled)?;
        // Monotone in the bound, so the first empty level ends the sum.
        if tilde.is_zero() {
            break;
        }
        match moebius(&BigInt::from(d))? {
            1 => total += tilde,
            -1 => total -= tilde,
            _ => {}
        }
        d += 1;
    }
    Ok(total)
}

/// The two curves of minimal height with invariant `j`, ordered `m = +1`
/// then `m = -1`, and their common height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalCurves {
    pub curves: [WeierstrassCurve; 2],
    pub height: Rational,
}

pub fn minimal_curves(j: &Rational, spec: &HeightSpec) -> Result<MinimalCurves> {
    let plus = curve_from_parameter(j, &BigInt::one())?;
    let minus = curve_from_parameter(j, &-BigInt::one())?;
    let height = spec.height(&plus);
    debug_assert_eq!(height, spec.height(&minus));
    Ok(MinimalCurves { curves: [plus, minus], height })
}
