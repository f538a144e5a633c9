//! Exact scalar arithmetic: rationals and cyclotomic number fields.

mod cyclo;
pub(crate) mod upoly;

pub use cyclo::{cyclotomic_polynomial, euler_phi, root_of_unity_order, CycloField, CycloNum};

use num::{BigInt, BigRational, One};

/// Exact rational scalar. `num`'s `BigRational` keeps every value reduced
/// with a positive denominator, so structural equality is value equality.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integral(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Binomial coefficient `C(n, k)` as a big integer (zero when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
