//! The thirteen imaginary quadratic orders of class number one and the
//! exact CM counts assembled from the fixed-j formulas.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::families::{count_rep_j, count_tilde_j, decimal, minimal_curves, WeierstrassCurve};
use crate::heights::HeightSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CmOrder {
    pub d_k: i64,
    pub f: u32,
    #[serde(with = "decimal")]
    pub j: BigInt,
}

const ORDERS: [(i64, u32, i64); 13] = [
    (-3, 1, 0),
    (-3, 2, 54000),
    (-3, 3, -12288000),
    (-4, 1, 1728),
    (-4, 2, 287496),
    (-7, 1, -3375),
    (-7, 2, 16581375),
    (-8, 1, 8000),
    (-11, 1, -32768),
    (-19, 1, -884736),
    (-43, 1, -884736000),
    (-67, 1, -147197952000),
    (-163, 1, -262537412640768000),
];

/// The orders in the conventional order: by `|d_K|`, then by `f`.
pub fn cm_orders() -> &'static [CmOrder] {
    static TABLE: OnceLock<Vec<CmOrder>> = OnceLock::new();
    TABLE.get_or_init(|| ORDERS.iter().map(|&(d_k, f, j)| CmOrder { d_k, f, j: BigInt::from(j) }).collect())
}

impl CmOrder {
    pub fn lookup(d_k: i64, f: u32) -> Result<&'static CmOrder> {
        cm_orders().iter().find(|o| o.d_k == d_k && o.f == f).ok_or(Error::UnknownCmOrder { d_k, f })
    }

    pub fn j_invariant(&self) -> Rational {
        Rational::from_integer(self.j.clone())
    }
}

pub fn is_cm_j(j: &Rational) -> bool {
    j.is_integer() && cm_orders().iter().any(|o| &o.j == j.numer())
}

fn sum_over_orders(f: impl Fn(&Rational) -> Result<BigInt>) -> Result<BigInt> {
    cm_orders().iter().try_fold(BigInt::zero(), |acc, o| Ok(acc + f(&o.j_invariant())?))
}

/// `#Ẽ^cm(X; H)`
pub fn count_tilde_cm(spec: &HeightSpec, bound: &Rational) -> Result<BigInt> {
    sum_over_orders(|j| count_tilde_j(j, spec, bound))
}

/// `#E^cm(X; H)`
pub fn count_rep_cm(spec: &HeightSpec, bound: &Rational) -> Result<BigInt> {
    sum_over_orders(|j| count_rep_j(j, spec, bound))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmMinimalRow {
    pub order: CmOrder,
    /// Parameters `m = +1` and `m = -1`.
    pub curves: [WeierstrassCurve; 2],
    pub height: Rational,
}

pub fn cm_minimal_table(spec: &HeightSpec) -> Result<Vec<CmMinimalRow>> {
    cm_orders()
        .iter()
        .map(|o| {
            let min = minimal_curves(&o.j_invariant(), spec)?;
            Ok(CmMinimalRow { order: o.clone(), curves: min.curves, height: min.height })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmCountTable {
    pub bounds: Vec<Rational>,
    /// `#Ẽ_j(X; H)` per order, one entry per bound.
    pub rows: Vec<(CmOrder, Vec<BigInt>)>,
    /// Column sums of `rows`.
    pub totals: Vec<BigInt>,
}

pub fn cm_count_table(spec: &HeightSpec, bounds: &[Rational]) -> Result<CmCountTable> {
    if bounds.is_empty() {
        return Err(Error::EmptyBounds);
    }
    let mut totals = vec![BigInt::zero(); bounds.len()];
    let mut rows = Vec::with_capacity(13);
    for o in cm_orders() {
        let j = o.j_invariant();
        let counts = bounds.iter().map(|x| count_tilde_j(&j, spec, x)).collect::<Result<Vec<_>>>()?;
        for (t, c) in totals.iter_mut().zip(&counts) {
            *t += c;
        }
        rows.push((o.clone(), counts));
    }
    Ok(CmCountTable { bounds: bounds.to_vec(), rows, totals })
}
