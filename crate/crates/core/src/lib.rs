//! Exact enumeration and counting of elliptic curves `y^2 = x^3 + Ax + B`
//! with integer coefficients, ordered by the generalized naive height
//! `H(A, B) = max(alpha |A|^3, beta B^2)`.
//!
//! Everything that ends in a count is computed with exact integer and
//! rational arithmetic: floors of irrational quantities such as
//! `c(j) X^{1/6}` are evaluated by comparing exact sixth powers. Floating
//! quantities (main terms of the asymptotic formulas, the constants `C`
//! and `D`) are evaluated in fixed point with 60 decimal places, see
//! [`Real`].
//!
//! The [`oracle`] module is an independent brute-force scan of the height
//! box that every closed formula is tested against.

pub mod arith;
pub mod asymptotics;
pub mod cm;
pub mod cuspidal;
mod error;
pub mod families;
pub mod heights;
pub mod oracle;
pub mod parse;
mod real;
pub mod tables;

pub use arith::{Factorization, Rational};
pub use error::{Error, Result};
pub use families::{JInvariantData, TwistDecomposition, WeierstrassCurve};
pub use heights::{HeightBox, HeightSpec};
pub use real::Real;
