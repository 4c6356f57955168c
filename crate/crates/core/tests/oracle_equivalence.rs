//! Brute-force census against the closed formulas.

use nhc::arith::{int, rat};
use nhc::cm::{cm_orders, count_rep_cm, count_tilde_cm};
use nhc::families::{count_rep_all, count_rep_j, count_tilde_all, count_tilde_j};
use nhc::oracle::{brute_census_with, CensusResult, OracleConfig};
use nhc::{HeightSpec, Rational, WeierstrassCurve};
use num_bigint::BigInt;
use proptest::prelude::*;

fn cm_js() -> Vec<Rational> {
    cm_orders().iter().map(|o| o.j_invariant()).collect()
}

fn check_against_formulas(spec: &HeightSpec, x: &Rational, census: &CensusResult) {
    assert_eq!(census.total_elliptic + census.singular_points, census.box_points());
    assert_eq!(BigInt::from(census.total_elliptic), count_tilde_all(spec, x).unwrap(), "{spec} X={x}");
    assert_eq!(BigInt::from(census.total_representatives), count_rep_all(spec, x).unwrap(), "{spec} X={x}");
    for (j, c) in &census.per_j {
        assert_eq!(BigInt::from(c.tilde), count_tilde_j(j, spec, x).unwrap(), "{spec} X={x} j={j}");
        assert_eq!(BigInt::from(c.rep), count_rep_j(j, spec, x).unwrap(), "{spec} X={x} j={j}");
    }
}

#[test]
fn cm_counts_match_scan_up_to_1e7() {
    let spec = HeightSpec::calibrated();
    let js = cm_js();
    for e in 1..=7u32 {
        let x = int(BigInt::from(10).pow(e));
        let census = brute_census_with(&spec, &x, &js, &OracleConfig::default()).unwrap();
        check_against_formulas(&spec, &x, &census);
        let tilde: u64 = census.per_j.values().map(|c| c.tilde).sum();
        let rep: u64 = census.per_j.values().map(|c| c.rep).sum();
        assert_eq!(BigInt::from(tilde), count_tilde_cm(&spec, &x).unwrap());
        assert_eq!(BigInt::from(rep), count_rep_cm(&spec, &x).unwrap());
    }
}

#[test]
fn single_thread_matches_pool() {
    let spec = HeightSpec::calibrated();
    let x = int(1_000_000);
    let js = cm_js();
    let one = OracleConfig { threads: Some(1), ..OracleConfig::default() };
    let many = OracleConfig { threads: Some(4), stripes: Some(8), ..OracleConfig::default() };
    assert_eq!(brute_census_with(&spec, &x, &js, &one).unwrap(), brute_census_with(&spec, &x, &js, &many).unwrap());
}

fn height_spec() -> impl Strategy<Value = HeightSpec> {
    (1i64..30, 1i64..5, 1i64..30, 1i64..5)
        .prop_map(|(an, ad, bn, bd)| HeightSpec::new(rat(an, ad), rat(bn, bd)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn census_equals_formulas(
        spec in prop_oneof![Just(HeightSpec::calibrated()), Just(HeightSpec::uncalibrated()), height_spec()],
        num in 1i64..2_000_000,
        den in 1i64..20,
        curves in proptest::collection::vec((-30i64..=30, -100i64..=100), 1..6),
    ) {
        let x = rat(num, den);
        let mut js = cm_js();
        js.extend(curves.into_iter().filter_map(|(a, b)| WeierstrassCurve::new(a, b).j_invariant().ok()));
        js.sort();
        js.dedup();
        let census = brute_census_with(&spec, &x, &js, &OracleConfig::default())?;
        check_against_formulas(&spec, &x, &census);
    }

    #[test]
    fn partition_is_irrelevant(
        num in 1i64..300_000,
        threads in 1usize..4,
        j_curve in (-20i64..=20, -60i64..=60),
    ) {
        let spec = HeightSpec::calibrated();
        let x = int(num);
        let mut js = vec![int(0), int(1728)];
        js.extend(WeierstrassCurve::new(j_curve.0, j_curve.1).j_invariant().ok());
        js.dedup();
        let run = |k| {
            let c = OracleConfig { stripes: Some(k), threads: Some(threads), enumerate: true, ..OracleConfig::default() };
            brute_census_with(&spec, &x, &js, &c).unwrap()
        };
        let base = run(1);
        prop_assert_eq!(&base, &run(2));
        prop_assert_eq!(&base, &run(8));
    }
}
