//! Exact polynomial algebra for substitution invariants.
//!
//! * [`arith`]: rationals and cyclotomic fields ℚ(ζ_M).
//! * [`poly`]: sparse polynomials in `x₁..x_n, z` with exact division.
//! * [`expr`]: the text grammar used for input and output.
//! * [`invariance`]: substitution maps `z ↦ q·z + r(x)`, their
//!   classification, and the decomposition of invariant polynomials as
//!   polynomials in the orbit product `b`.
//! * [`classical`]: the power-gap polynomials `(x+y)^p − x^p − y^p` and
//!   `(x+y+z)^p − x^p − y^p − z^p`, Cauchy polynomials and Catalan's identity.
//! * [`verify`]: seeded verification suites shared by the CLI and tests.

pub mod arith;
pub mod classical;
mod error;
pub mod expr;
pub mod invariance;
pub mod poly;
pub mod verify;

pub use arith::{CycloField, CycloNum, Rational};
pub use error::{Error, ParseError, Result};
pub use expr::{format, parse};

pub use invariance::{AdequateMap, Classification, Decomposition, SubstMap};
pub use poly::{linear_coprime_witness, Context, MPoly, Monomial};
