use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// `floor(n^{1/k})`: Newton iteration from an upper bound, then an exact
/// correction step.
pub fn iroot(n: &BigUint, k: u32) -> BigUint {
    assert!(k >= 1, "iroot needs k >= 1");
    if k == 1 || n <= &BigUint::one() {
        return n.clone();
    }
    let bits = n.bits();
    if bits <= k as u64 {
        // 1 <= root < 2
        return BigUint::one();
    }
    // 2^ceil(bits/k) > n^{1/k}
    let mut x = BigUint::one() << bits.div_ceil(k as u64);
    let k_big = BigUint::from(k);
    let k_minus_1 = BigUint::from(k - 1);
    loop {
        let next = (&k_minus_1 * &x + n / x.pow(k - 1)) / &k_big;
        if next >= x {
            break;
        }
        x = next;
    }
    while x.pow(k) > *n {
        x -= 1u8;
    }
    loop {
        let up = &x + 1u8;
        if up.pow(k) > *n {
            break;
        }
        x = up;
    }
    x
}

/// Largest `m >= 0` with `m^k <= q`.
pub fn floor_rational_root(q: &Rational, k: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::InvalidExponent { k, min: 1 });
    }
    if q.is_negative() {
        return Err(Error::Negative(q.to_string()));
    }
    if q.is_zero() {
        return Ok(BigUint::zero());
    }
    // floor(q^{1/k}) = floor(floor(q)^{1/k})
    let whole = q.floor().to_integer().to_biguint().expect("q >= 0");
    let m = iroot(&whole, k);
    debug_assert!({
        let lo = Rational::from_integer(m.clone().into()).pow(k as i32);
        let hi = Rational::from_integer((&m + 1u8).into()).pow(k as i32);
        &lo <= q && q < &hi
    });
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use num_traits::pow;
    use proptest::prelude::*;

    fn iroot_u(n: u64, k: u32) -> u64 {
        iroot(&BigUint::from(n), k).try_into().unwrap()
    }

    #[test]
    fn iroot_examples() {
        assert_eq!(iroot_u(7000, 6), 4);
        assert_eq!(iroot_u(0, 3), 0);
        let big = pow(BigUint::from(10u8), 30);
        assert_eq!(iroot(&big, 2), pow(BigUint::from(10u8), 15));
        assert_eq!(iroot(&(&big - 1u8), 2), pow(BigUint::from(10u8), 15) - 1u8);
        assert_eq!(iroot_u(1, 5), 1);
        assert_eq!(iroot_u(31, 5), 1);
        assert_eq!(iroot_u(32, 5), 2);
    }

    #[test]
    fn iroot_exhaustive_small() {
        for k in [2u32, 3, 6] {
            for n in 0..=100_000u64 {
                let m = iroot_u(n, k);
                assert!(m.pow(k) <= n && (m + 1).pow(k) > n, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn rational_root_examples() {
        assert_eq!(floor_rational_root(&rat(27, 1), 2), Ok(BigUint::from(5u8)));
        assert_eq!(floor_rational_root(&rat(1, 2), 6), Ok(BigUint::zero()));
        let q = rat(7000, 27);
        assert_eq!(floor_rational_root(&q, 2), Ok(BigUint::from(16u8)));
        assert_eq!((7000.0f64 / 27.0).sqrt().floor(), 16.0);
        assert!(floor_rational_root(&rat(-1, 2), 2).is_err());
        assert!(floor_rational_root(&rat(1, 2), 0).is_err());
    }

    proptest! {
        #[test]
        fn iroot_brackets_large(n in any::<u128>(), k in 1u32..13) {
            let n = BigUint::from(n) * BigUint::from(n) + 7u8;
            let m = iroot(&n, k);
            prop_assert!(m.pow(k) <= n);
            prop_assert!((&m + 1u8).pow(k) > n);
        }

        #[test]
        fn rational_root_monotone(a in 0u64..1_000_000, b in 1u64..1000, extra in 0u64..1000, k in 1u32..7) {
            let q1 = rat(a as i64, b as i64);
            let q2 = rat((a + extra) as i64, b as i64);
            prop_assert!(floor_rational_root(&q1, k)? <= floor_rational_root(&q2, k)?);
            let whole = rat(a as i64, 1);
            prop_assert_eq!(floor_rational_root(&whole, k)?, iroot(&BigUint::from(a), k));
        }
    }
}
