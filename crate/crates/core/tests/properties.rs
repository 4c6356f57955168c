//! Structural invariants of the exact formulas, checked against naive
//! reference computations written independently here.

use std::collections::BTreeSet;

use nhc::arith::{
    count_kfree, factorize, floor_rational_root, int, iroot, is_kfree, moebius, moebius_table, ord_p, rat,
};
use nhc::cuspidal::count_points;
use nhc::families::{
    a_of_j, count_rep_all, count_tilde_all, curve_from_parameter, is_special_j, param_bound, JInvariantData,
};
use nhc::oracle::{brute_census_with, OracleConfig};
use nhc::{HeightSpec, Rational, WeierstrassCurve};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn naive_moebius(n: u64) -> i8 {
    let f = trial_factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn naive_kfree(n: u64, k: u32) -> bool {
    trial_factor(n).iter().all(|&(_, e)| e < k)
}

fn spec_presets() -> [HeightSpec; 2] {
    [HeightSpec::calibrated(), HeightSpec::uncalibrated()]
}

fn cm_js() -> Vec<Rational> {
    nhc::cm::cm_orders().iter().map(|o| o.j_invariant()).collect()
}

/// The thirteen CM values plus seventeen rationals from a fixed seed.
fn sample_js() -> Vec<Rational> {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let mut js = cm_js();
    while js.len() < 30 {
        let j = rat(rng.gen_range(-100_000..100_000), rng.gen_range(1..2000));
        if !is_special_j(&j) && !js.contains(&j) {
            js.push(j);
        }
    }
    js
}

#[test]
fn factorization_round_trip() {
    for n in (-1_000_000i64..=1_000_000).filter(|&n| n != 0) {
        let f = factorize(&BigInt::from(n)).unwrap();
        assert_eq!(f.value(), int(n), "n = {n}");
    }
}

#[test]
fn moebius_agrees_with_naive() {
    let table = moebius_table(10_000);
    for n in 1..=10_000u64 {
        let m = naive_moebius(n);
        assert_eq!(moebius(&BigInt::from(n)).unwrap(), m, "n = {n}");
        assert_eq!(table[n as usize], m, "n = {n}");
    }
}

#[test]
fn iroot_brackets() {
    for k in [2u32, 3, 6] {
        for n in 0..=100_000u64 {
            let r = iroot(&BigUint::from(n), k).to_u64().unwrap();
            assert!(r.pow(k) <= n && (r + 1).pow(k) > n, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn kfree_counts_match_scan() {
    for k in [2u32, 4, 6] {
        let mut running = 0u64;
        for m in 0..=10_000u64 {
            if m > 0 {
                assert_eq!(is_kfree(&BigInt::from(m), k).unwrap(), naive_kfree(m, k));
                running += naive_kfree(m, k) as u64;
            }
            assert_eq!(count_kfree(&BigUint::from(m), k).unwrap(), BigUint::from(running), "M = {m}, k = {k}");
        }
    }
}

proptest! {
    #[test]
    fn rational_root_agrees_with_iroot(n in 0u64..u64::MAX, k in 1u32..8) {
        prop_assert_eq!(floor_rational_root(&int(n), k).unwrap(), iroot(&BigUint::from(n), k));
    }

    #[test]
    fn rational_root_monotone(p in 0u64..10_000_000, q in 1u64..10_000, dp in 0u64..10_000, k in 1u32..7) {
        let lo = rat(p as i64, q as i64);
        let hi = rat((p + dp) as i64, q as i64);
        prop_assert!(floor_rational_root(&lo, k).unwrap() <= floor_rational_root(&hi, k).unwrap());
    }

    #[test]
    fn height_scales_by_d12(a in -1000i64..1000, b in -1000i64..1000, d in 1u32..6) {
        for spec in spec_presets() {
            let e = WeierstrassCurve::new(a, b);
            let t = e.twist(d).unwrap();
            prop_assert_eq!(spec.height(&t), spec.height(&e) * int(BigInt::from(d).pow(12)));
        }
    }
}

/// For every bound `X` in `1..=10^5` at once: both box bounds are monotone
/// in `X`, so the box first contains `(A, B)` at the least `X` whose bounds
/// cover `|A|` and `|B|`, and that `X` must be the height itself.
#[test]
fn box_membership_matches_height() {
    const MAX_X: i64 = 100_000;
    for spec in spec_presets() {
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        for x in 1..=MAX_X {
            let bx = spec.height_box(&int(x)).unwrap();
            xs.push(bx.x_bound.to_u64().unwrap());
            ys.push(bx.y_bound.to_u64().unwrap());
        }
        for a in -50i64..=50 {
            for b in -50i64..=50 {
                let h = spec.height(&WeierstrassCurve::new(a, b));
                let first =
                    xs.partition_point(|&t| t < a.unsigned_abs()).max(ys.partition_point(|&t| t < b.unsigned_abs()));
                // index i stands for X = i + 1
                let entered = (first < xs.len()).then(|| int(first as i64 + 1));
                let expected = (h <= int(MAX_X)).then(|| h.clone().max(int(1)).ceil());
                assert_eq!(entered, expected, "{spec} ({a},{b}) height {h}");
            }
        }
    }
}

#[test]
fn parametrization_is_sound() {
    for j in sample_js() {
        let a = if is_special_j(&j) { None } else { Some(a_of_j(&j).unwrap()) };
        for m in (-50i64..=50).filter(|&m| m != 0) {
            let e = curve_from_parameter(&j, &BigInt::from(m)).unwrap();
            assert!(e.is_elliptic());
            assert_eq!(e.j_invariant().unwrap(), j);
            if let Some(a) = &a {
                // (A, B) on y^2 = a x^3
                assert_eq!(int(e.b().pow(2)), a * int(e.a().pow(3)));
            }
        }
    }
}

#[test]
fn exponent_bounds() {
    let ord = |n: &BigInt, p: &BigUint| ord_p(&int(n.clone()), p).unwrap();
    for j in sample_js().into_iter().filter(|j| !is_special_j(j)) {
        let a = a_of_j(&j).unwrap();
        let mut primes: BTreeSet<BigUint> =
            [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47].into_iter().map(BigUint::from).collect();
        primes.extend(nhc::arith::factorize_rational(&a).unwrap().factors().keys().cloned());
        for m in (-50i64..=50).filter(|&m| m != 0) {
            let e = curve_from_parameter(&j, &BigInt::from(m)).unwrap();
            for p in &primes {
                let om = ord(&BigInt::from(m), p);
                if ord_p(&a, p).unwrap() >= 0 {
                    let oa = ord(e.a(), p);
                    assert!(2 * om <= oa && oa <= 2 * om + 1, "j={j} m={m} p={p}");
                } else {
                    let ob = ord(e.b(), p);
                    assert!(3 * om <= ob && ob <= 3 * om + 2, "j={j} m={m} p={p}");
                }
            }
        }
    }
}

#[test]
fn representative_iff_parameter_kfree() {
    for j in sample_js() {
        let k = if j.is_zero() {
            6
        } else if is_special_j(&j) {
            4
        } else {
            2
        };
        for m in (-50i64..=50).filter(|&m| m != 0) {
            let e = curve_from_parameter(&j, &BigInt::from(m)).unwrap();
            assert_eq!(e.is_representative().unwrap(), naive_kfree(m.unsigned_abs(), k), "j={j} m={m}");
        }
    }
}

#[test]
fn parametrization_is_complete() {
    let js = sample_js();
    let config = OracleConfig { enumerate: true, ..OracleConfig::default() };
    for spec in spec_presets() {
        for x in [1_000i64, 100_000, 1_000_000] {
            let census = brute_census_with(&spec, &int(x), &js, &config).unwrap();
            for j in &js {
                let limit = param_bound(j, &spec, &int(x)).unwrap().to_i64().unwrap();
                let ours: BTreeSet<(i64, i64)> = (-limit..=limit)
                    .filter(|&m| m != 0)
                    .map(|m| {
                        let e = curve_from_parameter(j, &BigInt::from(m)).unwrap();
                        (e.a().to_i64().unwrap(), e.b().to_i64().unwrap())
                    })
                    .collect();
                let scanned: BTreeSet<(i64, i64)> = census.per_j[j].curves.iter().copied().collect();
                assert_eq!(ours, scanned, "{spec} X={x} j={j}");
            }
        }
    }
}

#[test]
fn twist_round_trip() {
    for a in -100i64..=100 {
        for b in -100i64..=100 {
            let rep = WeierstrassCurve::new(a, b);
            if !rep.is_elliptic() || !rep.is_representative().unwrap() {
                continue;
            }
            for d in 1u32..=4 {
                let t = rep.twist(d).unwrap().twist_decompose().unwrap();
                assert_eq!((t.d, &t.representative), (BigUint::from(d), &rep));
            }
        }
    }
}

#[test]
fn decomposition_identity() {
    for spec in spec_presets() {
        for x in [1_000i64, 10_000, 100_000] {
            let x = int(x);
            let mut sum = BigInt::zero();
            let mut d = 1i64;
            while int(BigInt::from(d).pow(12)) <= x {
                sum += count_rep_all(&spec, &(&x / int(BigInt::from(d).pow(12)))).unwrap();
                d += 1;
            }
            assert_eq!(count_tilde_all(&spec, &x).unwrap(), sum, "{spec} X={x}");
        }
    }
}

#[test]
fn tilde_is_box_minus_singular_cubic() {
    for spec in spec_presets() {
        for x in [100i64, 7_000, 100_000] {
            let bx = spec.height_box(&int(x)).unwrap();
            let t1 = Rational::from_integer(BigInt::from(bx.x_bound.clone()));
            let t2 = Rational::from_integer(BigInt::from(bx.y_bound.clone()));
            // with T1 = 0 the cubic contributes only the origin
            let singular = if t1.is_zero() || t2.is_zero() {
                BigUint::one()
            } else {
                count_points(&rat(-4, 27), &t1, &t2).unwrap()
            };
            let expect = BigInt::from(bx.lattice_points()) - BigInt::from(singular);
            assert_eq!(count_tilde_all(&spec, &int(x)).unwrap(), expect, "{spec} X={x}");
        }
    }
}

#[test]
fn c_pow6_is_the_exact_minimum() {
    for spec in spec_presets() {
        for j in sample_js().into_iter().filter(|j| !is_special_j(j)) {
            let d = JInvariantData::new(&j, &spec).unwrap();
            let c = d.c_pow6().clone();
            assert!(c == d.c_pow6_first || c == d.c_pow6_second);
            assert!(c <= d.c_pow6_first && c <= d.c_pow6_second);
            assert!(c.is_positive());
        }
    }
}
