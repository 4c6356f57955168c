use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::SeedableRng;

use super::{prime_power, Rational};
use crate::error::{Error, Result};

/// Trial division runs over every prime below this bound.
const TRIAL_LIMIT: usize = 1_000_000;

/// The first 13 primes are a deterministic Miller-Rabin witness set for
/// every n below this value (Sorenson and Webster).
const DETERMINISTIC_MR_BOUND: u128 = 3_317_044_064_679_887_385_961_981;
const MR_WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const MR_RANDOM_ROUNDS: usize = 40;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut composite = vec![false; TRIAL_LIMIT];
        let mut primes = Vec::with_capacity(80_000);
        for i in 2..TRIAL_LIMIT {
            if !composite[i] {
                primes.push(i as u32);
                let mut k = i * i;
                while k < TRIAL_LIMIT {
                    composite[k] = true;
                    k += i;
                }
            }
        }
        primes
    })
}

/// Sign and prime-power decomposition of a nonzero rational.
///
/// Exponents are nonzero; negative exponents come from the denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    negative: bool,
    factors: BTreeMap<BigUint, i64>,
}

impl Factorization {
    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    /// Primes in increasing order with their exponents.
    pub fn factors(&self) -> &BTreeMap<BigUint, i64> {
        &self.factors
    }

    pub fn exponent(&self, p: &BigUint) -> i64 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    /// Reassembles `(-1)^sign * prod p^e`.
    pub fn value(&self) -> Rational {
        let mut acc = Rational::one();
        for (p, &e) in &self.factors {
            acc *= prime_power(p, e);
        }
        if self.negative {
            -acc
        } else {
            acc
        }
    }

    fn add(&mut self, p: BigUint, e: i64) {
        let entry = self.factors.entry(p).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.factors.retain(|_, v| *v != 0);
        }
    }
}

fn mod_pow_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut result = 1u128 % m128;
    let mut b = base as u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    base = result as u64;
    base
}

fn miller_rabin_u64(n: u64) -> bool {
    let d0 = n - 1;
    let s = d0.trailing_zeros();
    let d = d0 >> s;
    'witness: for &a in &MR_WITNESSES {
        let a = a as u64 % n;
        if a == 0 {
            continue;
        }
        let mut x = mod_pow_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn miller_rabin_round(n: &BigUint, n_minus_1: &BigUint, d: &BigUint, s: u64, a: &BigUint) -> bool {
    let mut x = a.modpow(d, n);
    if x.is_one() || &x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if &x == n_minus_1 {
            return true;
        }
    }
    false
}

fn miller_rabin_big(n: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;
    let deterministic = n.to_u128().is_some_and(|v| v < DETERMINISTIC_MR_BOUND);
    if deterministic {
        return MR_WITNESSES.iter().all(|&a| miller_rabin_round(n, &n_minus_1, &d, s, &BigUint::from(a)));
    }
    // Seeded from n so repeated calls agree.
    let seed = (n % BigUint::from(u64::MAX)).to_u64().unwrap_or(0);
    let mut rng = StdRng::seed_from_u64(seed);
    let two = BigUint::from(2u8);
    (0..MR_RANDOM_ROUNDS).all(|_| {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        miller_rabin_round(n, &n_minus_1, &d, s, &a)
    })
}

/// Primality test: table lookup below 10^6, Miller-Rabin above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        if v < 2 {
            return false;
        }
        if (v as usize) < TRIAL_LIMIT {
            return small_primes().binary_search(&(v as u32)).is_ok();
        }
        for &p in &small_primes()[..12] {
            if v % p as u64 == 0 {
                return false;
            }
        }
        return miller_rabin_u64(v);
    }
    for &p in &small_primes()[..12] {
        if (n % p).is_zero() {
            return false;
        }
    }
    miller_rabin_big(n)
}

fn abs_diff(a: &BigUint, b: &BigUint) -> BigUint {
    if a > b {
        a - b
    } else {
        b - a
    }
}

/// Brent's variant of Pollard's rho; returns a nontrivial factor or `None`
/// when this choice of constant cycles without splitting `n`.
fn pollard_brent(n: &BigUint, c: &BigUint) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u8));
    }
    let f = |v: &BigUint| (v * v + c) % n;
    let block = 128u64;
    let mut y = BigUint::from(2u8);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut r = 1u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..block.min(r - k) {
                y = f(&y);
                q = (q * abs_diff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += block;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = abs_diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

fn split_large(n: BigUint, out: &mut Factorization, sign: i64) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.add(n, sign);
        return;
    }
    let mut c = BigUint::one();
    let factor = loop {
        if let Some(d) = pollard_brent(&n, &c) {
            break d;
        }
        c += 1u8;
    };
    let rest = &n / &factor;
    split_large(factor, out, sign);
    split_large(rest, out, sign);
}

fn factor_into(n: &BigUint, out: &mut Factorization, sign: i64) {
    let mut rest = n.clone();
    if let Some(mut v) = rest.to_u64() {
        for &p in small_primes() {
            let p = p as u64;
            if p * p > v {
                break;
            }
            let mut e = 0;
            while v % p == 0 {
                v /= p;
                e += 1;
            }
            if e > 0 {
                out.add(BigUint::from(p), sign * e);
            }
        }
        let limit = *small_primes().last().unwrap() as u64;
        if v > 1 && (v <= limit * limit || is_prime(&BigUint::from(v))) {
            out.add(BigUint::from(v), sign);
            return;
        }
        rest = BigUint::from(v);
    } else {
        for &p in small_primes() {
            if (&rest % p).is_zero() {
                let mut e = 0;
                while (&rest % p).is_zero() {
                    rest /= p;
                    e += 1;
                }
                out.add(BigUint::from(p), sign * e);
            }
            if rest.is_one() {
                return;
            }
            let pp = BigUint::from(p as u64 * p as u64);
            if pp > rest {
                out.add(rest, sign);
                return;
            }
        }
    }
    // Every remaining prime factor exceeds the trial-division limit.
    split_large(rest, out, sign);
}

/// Prime factorization of a nonzero integer.
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out = Factorization { negative: n.sign() == Sign::Minus, factors: BTreeMap::new() };
    factor_into(n.magnitude(), &mut out, 1);
    Ok(out)
}

/// Prime factorization of a nonzero rational; denominator primes get
/// negative exponents.
pub fn factorize_rational(q: &Rational) -> Result<Factorization> {
    if q.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out = Factorization { negative: q.numer().sign() == Sign::Minus, factors: BTreeMap::new() };
    factor_into(q.numer().magnitude(), &mut out, 1);
    factor_into(q.denom().magnitude(), &mut out, -1);
    Ok(out)
}

fn valuation(n: &BigUint, p: &BigUint) -> i64 {
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (quot, rem) = n.div_rem(p);
        if !rem.is_zero() {
            return e;
        }
        n = quot;
        e += 1;
    }
}

/// Exponent of the prime `p` in the nonzero rational `q`.
pub fn ord_p(q: &Rational, p: &BigUint) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    Ok(valuation(q.numer().magnitude(), p) - valuation(q.denom().magnitude(), p))
}
