use num_bigint::{BigInt, BigUint};
use thiserror::Error;

use crate::arith::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no prime factorization")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("exponent k = {k} is out of range (need k >= {min})")]
    InvalidExponent { k: u32, min: u32 },
    #[error("expected a nonnegative value, got {0}")]
    Negative(String),
    #[error("zeta({0}) is not supported (only s = 2, 4, 6, 10)")]
    UnsupportedZeta(u32),
    #[error("height coefficients must be positive, got alpha = {alpha}, beta = {beta}")]
    NonPositiveHeight { alpha: Box<Rational>, beta: Box<Rational> },
    #[error("height bound must be positive, got {0}")]
    NonPositiveBound(Rational),
    #[error("the cuspidal cubic y^2 = a x^3 needs a != 0")]
    ZeroCubic,
    #[error("box bounds must be positive")]
    NonPositiveBox,
    #[error("{t} is not a multiple of N_a = {n_a}")]
    NotOnLattice { t: Box<Rational>, n_a: Box<Rational> },
    #[error("curve y^2 = x^3 + ({a})x + ({b}) is singular")]
    Singular { a: BigInt, b: BigInt },
    #[error("j = {0} has no generic parametrization (j = 0 and j = 1728 are special)")]
    SpecialJ(Rational),
    #[error("the parameter m must be nonzero")]
    ZeroParameter,
    #[error("twist scale must be at least 1")]
    ZeroTwist,
    #[error("scan of {points} lattice points exceeds the oracle cap of {cap} points")]
    ScanTooLarge { points: BigUint, cap: u64 },
    #[error("no CM order with d_K = {d_k}, f = {f}")]
    UnknownCmOrder { d_k: i64, f: u32 },
    #[error("{0}")]
    Parse(String),
    #[error("relative error is undefined for an exact count of zero")]
    UndefinedRelativeError,
    #[error("at least one height bound is required")]
    EmptyBounds,
}
