//! Exhaustive census of the height box, independent of the counting
//! formulas: its own box bounds, its own singularity, twist-minimality and
//! j-membership tests, and only machine integers inside the scan.
//!
//! The A-range is cut into stripes that are scanned in parallel; partial
//! results are merged by integer addition, so the outcome does not depend
//! on the partition or the thread count.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::families::WeierstrassCurve;
use crate::heights::HeightSpec;

/// Points in the calibrated box at `X = 10^10`: `(2*1357 + 1)(2*19245 + 1)`.
pub const DEFAULT_CAP_POINTS: u64 = 104_503_065;

/// Environment variable overriding [`DEFAULT_CAP_POINTS`].
pub const CAP_ENV: &str = "NHC_ORACLE_CAP";

// |A|, |B| below 2^40 keep A^3 and 27 B^2 well inside i128.
const COORD_LIMIT: i64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest number of lattice points a scan may visit.
    pub cap_points: u64,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Number of A-stripes; `None` gives one stripe per value of A.
    pub stripes: Option<usize>,
    /// Keep the curves found for each tracked j.
    pub enumerate: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cap_points: DEFAULT_CAP_POINTS, threads: None, stripes: None, enumerate: false }
    }
}

impl OracleConfig {
    /// Default configuration with the cap taken from `NHC_ORACLE_CAP` when set.
    pub fn from_env() -> Result<Self> {
        let mut config = OracleConfig::default();
        if let Ok(raw) = std::env::var(CAP_ENV) {
            let cap = crate::parse::parse_rational(&raw)?;
            config.cap_points = cap
                .to_integer()
                .to_u64()
                .filter(|_| cap.is_integer() && !cap.is_negative())
                .ok_or_else(|| Error::Parse(format!("{CAP_ENV} must be a nonnegative integer, got {raw:?}")))?;
        }
        Ok(config)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct JCensus {
    pub tilde: u64,
    pub rep: u64,
    /// Filled only when enumeration was requested; sorted by `(A, B)`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub curves: Vec<(i64, i64)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CensusResult {
    pub x_bound: u64,
    pub y_bound: u64,
    pub total_elliptic: u64,
    pub total_representatives: u64,
    pub singular_points: u64,
    pub per_j: BTreeMap<Rational, JCensus>,
}

impl CensusResult {
    pub fn box_points(&self) -> u64 {
        (2 * self.x_bound + 1) * (2 * self.y_bound + 1)
    }

    fn merge(mut self, other: CensusResult) -> CensusResult {
        self.total_elliptic += other.total_elliptic;
        self.total_representatives += other.total_representatives;
        self.singular_points += other.singular_points;
        for (j, c) in other.per_j {
            let e = self.per_j.entry(j).or_default();
            e.tilde += c.tilde;
            e.rep += c.rep;
            e.curves.extend(c.curves);
        }
        self
    }
}

/// Largest `n >= 0` with `w * n^k <= x`, by bisection on exact rationals.
fn largest_below(w: &Rational, k: usize, x: &Rational) -> BigUint {
    let fits = |n: &BigUint| w * Rational::from_integer(BigInt::from(n.pow(k as u32))) <= *x;
    let mut lo = BigUint::zero();
    let mut hi = BigUint::from(1u8);
    while fits(&hi) {
        lo = hi.clone();
        hi <<= 1;
    }
    // fits(lo) and !fits(hi)
    while &hi - &lo > BigUint::from(1u8) {
        let mid = (&lo + &hi) >> 1;
        if fits(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `(|A| bound, |B| bound)` of the box `max(alpha|A|^3, beta B^2) <= X`.
pub fn oracle_box(spec: &HeightSpec, bound: &Rational) -> Result<(BigUint, BigUint)> {
    if !bound.is_positive() {
        return Err(Error::NonPositiveBound(bound.clone()));
    }
    Ok((largest_below(spec.alpha(), 3, bound), largest_below(spec.beta(), 2, bound)))
}

fn check_budget(x: &BigUint, y: &BigUint, cap: u64) -> Result<(i64, i64)> {
    let points: BigUint = (x * 2u8 + 1u8) * (y * 2u8 + 1u8);
    let too_large = || Error::ScanTooLarge { points: points.clone(), cap };
    if points > BigUint::from(cap) {
        return Err(too_large());
    }
    let x = x.to_i64().filter(|&v| v < COORD_LIMIT).ok_or_else(too_large)?;
    let y = y.to_i64().filter(|&v| v < COORD_LIMIT).ok_or_else(too_large)?;
    Ok((x, y))
}

/// Number of points the scan for `(spec, X)` would visit.
pub fn scan_size(spec: &HeightSpec, bound: &Rational) -> Result<BigUint> {
    let (x, y) = oracle_box(spec, bound)?;
    Ok((x * 2u8 + 1u8) * (y * 2u8 + 1u8))
}

fn small_primes(limit: u64) -> Vec<i64> {
    (2..=limit.max(2)).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)).map(|n| n as i64).collect()
}

/// `j = n/d` holds iff `27 n B^2 = (6912 d - 4 n) A^3`.
#[derive(Debug)]
struct JTest {
    j: Rational,
    lhs: BigInt,
    rhs: BigInt,
    small: Option<(i128, i128)>,
}

impl JTest {
    fn new(j: &Rational) -> Self {
        let (n, d) = (j.numer(), j.denom());
        let lhs = BigInt::from(27) * n;
        let rhs = BigInt::from(6912) * d - BigInt::from(4) * n;
        let small = lhs.to_i128().zip(rhs.to_i128());
        JTest { j: j.clone(), lhs, rhs, small }
    }

    fn matches(&self, a3: i128, b2: i128) -> bool {
        if let Some((l, r)) = self.small {
            if let (Some(x), Some(y)) = (l.checked_mul(b2), r.checked_mul(a3)) {
                return x == y;
            }
        }
        &self.lhs * BigInt::from(b2) == &self.rhs * BigInt::from(a3)
    }
}

/// `1728 * 4A^3 / (4A^3 + 27B^2)`, evaluated only after [`JTest`] passed.
fn exact_j(a3: i128, b2: i128) -> Rational {
    let four_a3 = BigInt::from(4) * BigInt::from(a3);
    Rational::new(BigInt::from(1728) * &four_a3, four_a3 + BigInt::from(27) * BigInt::from(b2))
}

struct Scan<'a> {
    y: i64,
    primes: &'a [i64],
    tests: &'a [JTest],
    enumerate: bool,
}

impl Scan<'_> {
    /// Some prime `p` has `p^4 | A` and `p^6 | B`; `(A, B) != (0, 0)`.
    fn is_twisted(&self, a: i64, b: i64) -> bool {
        let (ua, ub) = (a.unsigned_abs(), b.unsigned_abs());
        for &p in self.primes {
            let p = p as u64;
            let (p4, p6) = (p.pow(4), p.saturating_pow(6));
            if (ua != 0 && p4 > ua) || (ub != 0 && p6 > ub) {
                return false;
            }
            if ua % p4 == 0 && ub % p6 == 0 {
                return true;
            }
        }
        false
    }

    fn stripe(&self, a_range: RangeInclusive<i64>) -> CensusResult {
        let mut out = CensusResult::default();
        for t in self.tests {
            out.per_j.insert(t.j.clone(), JCensus::default());
        }
        for a in a_range {
            let a3 = (a as i128).pow(3);
            for b in -self.y..=self.y {
                let b2 = (b as i128) * (b as i128);
                if 4 * a3 + 27 * b2 == 0 {
                    out.singular_points += 1;
                    continue;
                }
                out.total_elliptic += 1;
                let rep = !self.is_twisted(a, b);
                out.total_representatives += rep as u64;
                for t in self.tests {
                    if t.matches(a3, b2) {
                        debug_assert_eq!(exact_j(a3, b2), t.j);
                        if exact_j(a3, b2) != t.j {
                            continue;
                        }
                        let e = out.per_j.get_mut(&t.j).expect("inserted above");
                        e.tilde += 1;
                        e.rep += rep as u64;
                        if self.enumerate {
                            e.curves.push((a, b));
                        }
                    }
                }
            }
        }
        out
    }
}

fn stripes(x: i64, count: Option<usize>) -> Vec<RangeInclusive<i64>> {
    let width = 2 * x + 1;
    let k = count.unwrap_or(width as usize).clamp(1, width as usize) as i64;
    (0..k)
        .map(|i| {
            let lo = -x + i * width / k;
            let hi = -x + (i + 1) * width / k - 1;
            lo..=hi
        })
        .collect()
}

/// Census of every integer `(A, B)` with `alpha|A|^3 <= X` and `beta B^2 <= X`.
pub fn brute_census_with(
    spec: &HeightSpec,
    bound: &Rational,
    tracked_j: &[Rational],
    config: &OracleConfig,
) -> Result<CensusResult> {
    let (xb, yb) = oracle_box(spec, bound)?;
    let (x, y) = check_budget(&xb, &yb, config.cap_points)?;
    let limit = ((x as f64).powf(0.25).max((y as f64).powf(1.0 / 6.0)) as u64) + 2;
    let primes = small_primes(limit);
    let tests: Vec<JTest> = tracked_j.iter().map(JTest::new).collect();
    let scan = Scan { y, primes: &primes, tests: &tests, enumerate: config.enumerate };
    let parts = stripes(x, config.stripes);
    let run = || parts.par_iter().map(|r| scan.stripe(r.clone())).reduce(CensusResult::default, CensusResult::merge);
    let mut result = match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Parse(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };
    for t in &tests {
        result.per_j.entry(t.j.clone()).or_default().curves.sort_unstable();
    }
    result.x_bound = x as u64;
    result.y_bound = y as u64;
    Ok(result)
}

pub fn brute_census(spec: &HeightSpec, bound: &Rational, tracked_j: &[Rational]) -> Result<CensusResult> {
    brute_census_with(spec, bound, tracked_j, &OracleConfig::from_env()?)
}

/// The curves of least height with invariant `j` among those of height at
/// most `cap`, sorted by `(A, B)`, with that height.
pub fn brute_minimal(
    j: &Rational,
    spec: &HeightSpec,
    cap: &Rational,
) -> Result<Option<(Vec<WeierstrassCurve>, Rational)>> {
    let config = OracleConfig { enumerate: true, ..OracleConfig::from_env()? };
    let census = brute_census_with(spec, cap, std::slice::from_ref(j), &config)?;
    let height = |&(a, b): &(i64, i64)| {
        let ha = spec.alpha() * Rational::from_integer(BigInt::from(a.unsigned_abs()).pow(3));
        let hb = spec.beta() * Rational::from_integer(BigInt::from(b).pow(2));
        ha.max(hb)
    };
    let found = &census.per_j[j].curves;
    let Some(min) = found.iter().map(height).min() else {
        return Ok(None);
    };
    let curves = found.iter().filter(|p| height(p) == min).map(|&(a, b)| WeierstrassCurve::new(a, b)).collect();
    Ok(Some((curves, min)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn census_examples() {
        let cal = HeightSpec::calibrated();
        let r = brute_census_with(&cal, &int(7000), &[], &cfg()).unwrap();
        assert_eq!((r.total_elliptic, r.singular_points), (820, 5));
        assert_eq!(r.total_elliptic + r.singular_points, r.box_points());
        let r = brute_census_with(&cal, &int(27), &[int(0)], &cfg()).unwrap();
        assert_eq!((r.per_j[&int(0)].tilde, r.per_j[&int(0)].rep), (2, 2));
        let r = brute_census_with(&HeightSpec::uncalibrated(), &int(1), &[], &cfg()).unwrap();
        assert_eq!(r.total_elliptic, 8);
    }

    #[test]
    fn box_bounds() {
        let cal = HeightSpec::calibrated();
        let b = |x: i64| oracle_box(&cal, &int(x)).unwrap();
        assert_eq!(b(7000), (BigUint::from(12u8), BigUint::from(16u8)));
        assert_eq!(b(3), (BigUint::zero(), BigUint::zero()));
        assert_eq!(scan_size(&cal, &int(10_000_000_000i64)).unwrap(), BigUint::from(DEFAULT_CAP_POINTS));
    }

    #[test]
    fn refuses_above_cap() {
        let err = brute_census_with(&HeightSpec::calibrated(), &int(1_000_000_000_000i64), &[], &cfg());
        assert!(matches!(err, Err(Error::ScanTooLarge { .. })));
        let tiny = OracleConfig { cap_points: 10, ..cfg() };
        assert!(brute_census_with(&HeightSpec::uncalibrated(), &int(8), &[], &tiny).is_err());
    }

    #[test]
    fn minimal_examples() {
        let cal = HeightSpec::calibrated();
        let (curves, h) = brute_minimal(&int(-3375), &cal, &int(1_000_000)).unwrap().unwrap();
        assert_eq!(curves, vec![WeierstrassCurve::new(-35, -98), WeierstrassCurve::new(-35, 98)]);
        assert_eq!(h, int(259308));
        assert_eq!(brute_minimal(&int(54000), &cal, &int(10_000)).unwrap(), None);
        let (curves, h) = brute_minimal(&int(0), &cal, &int(30)).unwrap().unwrap();
        assert_eq!(curves, vec![WeierstrassCurve::new(0, -1), WeierstrassCurve::new(0, 1)]);
        assert_eq!(h, int(27));
    }

    #[test]
    fn partition_independence() {
        let spec = HeightSpec::uncalibrated();
        let js = [int(0), int(1728), int(-3375)];
        let results: Vec<_> = [Some(1), Some(2), Some(8), None]
            .into_iter()
            .map(|k| {
                let c = OracleConfig { stripes: k, threads: Some(2), enumerate: true, ..cfg() };
                brute_census_with(&spec, &int(100_000), &js, &c).unwrap()
            })
            .collect();
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn stripes_cover_range() {
        for x in [0i64, 1, 5, 12] {
            for k in [1usize, 2, 3, 8, 100] {
                let v: Vec<i64> = stripes(x, Some(k)).into_iter().flatten().collect();
                assert_eq!(v, (-x..=x).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn twisted_detection() {
        let primes = small_primes(20);
        let s = Scan { y: 0, primes: &primes, tests: &[], enumerate: false };
        assert!(s.is_twisted(0, 64));
        assert!(s.is_twisted(16, 0));
        assert!(s.is_twisted(-240, 1408));
        assert!(!s.is_twisted(16, 32));
        assert!(!s.is_twisted(-15, 22));
        assert!(s.is_twisted(81, 729));
    }
}
