use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use super::{factorize, iroot};
use crate::error::{Error, Result};

/// Möbius function of a positive integer.
pub fn moebius(n: &BigInt) -> Result<i8> {
    if !n.is_positive() {
        return Err(Error::Negative(format!("moebius needs n >= 1, got {n}")));
    }
    let f = factorize(n)?;
    if f.factors().values().any(|&e| e > 1) {
        return Ok(0);
    }
    Ok(if f.factors().len() % 2 == 0 { 1 } else { -1 })
}

/// True iff no prime `p` has `p^k | n`.
pub fn is_kfree(n: &BigInt, k: u32) -> Result<bool> {
    if k < 2 {
        return Err(Error::InvalidExponent { k, min: 2 });
    }
    let f = factorize(n)?;
    Ok(f.factors().values().all(|&e| e < k as i64))
}

/// `mu(0..=limit)` by a linear sieve; `mu[0]` is 0.
pub fn moebius_table(limit: usize) -> Vec<i8> {
    let mut mu = vec![0i8; limit + 1];
    if limit >= 1 {
        mu[1] = 1;
    }
    let mut primes: Vec<usize> = Vec::new();
    let mut composite = vec![false; limit + 1];
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > limit {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu
}

/// Number of k-free integers in `[1, m]`, via
/// `Q_k(m) = sum_{d^k <= m} mu(d) floor(m / d^k)`.
///
/// The sieve runs to `m^{1/k}`, which must fit in memory.
pub fn count_kfree(m: &BigUint, k: u32) -> Result<BigUint> {
    if k < 2 {
        return Err(Error::InvalidExponent { k, min: 2 });
    }
    if m.is_zero() {
        return Ok(BigUint::zero());
    }
    let limit = iroot(m, k).to_usize().expect("k-th root of the bound exceeds addressable memory");
    let mu = moebius_table(limit);
    if let Some(m64) = m.to_u64() {
        let mut total: i128 = 0;
        for (d, &sign) in mu.iter().enumerate().skip(1) {
            if sign != 0 {
                total += sign as i128 * (m64 / (d as u64).pow(k)) as i128;
            }
        }
        return Ok(BigUint::from(total as u128));
    }
    let mut total = BigInt::zero();
    for (d, &sign) in mu.iter().enumerate().skip(1) {
        if sign != 0 {
            let term = BigInt::from(m / BigUint::from(d).pow(k));
            if sign > 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    Ok(total.to_biguint().expect("Q_k is nonnegative"))
}
