//! Cyclotomic fields ℚ(ζ_M), realised as ℚ[w] / Φ_M(w).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::integer::{gcd, lcm};
use num::{BigInt, One, Zero};

use super::{upoly, Rational};
use crate::error::{Error, Result};

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u32
}

fn divisors(n: u32) -> impl Iterator<Item = u32> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

fn cyclotomic_rational(index: u32) -> Vec<Rational> {
    // w^M - 1 divided by Φ_d for every proper divisor d
    let mut acc = vec![Rational::zero(); index as usize + 1];
    acc[0] = -Rational::one();
    acc[index as usize] = Rational::one();
    for d in divisors(index).filter(|&d| d < index) {
        let (quo, rem) = upoly::div_rem(&acc, &cyclotomic_rational(d));
        debug_assert!(rem.is_empty());
        acc = quo;
    }
    acc
}

/// The `index`-th cyclotomic polynomial Φ_M as ascending integer coefficients.
pub fn cyclotomic_polynomial(index: u32) -> Result<Vec<BigInt>> {
    if index == 0 {
        return Err(Error::InvalidFieldIndex(index));
    }
    Ok(cyclotomic_rational(index)
        .into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect())
}

struct FieldData {
    index: u32,
    modulus: Vec<BigInt>,
    modulus_q: Vec<Rational>,
}

/// The field ℚ(ζ_M). Cheap to clone; equality compares the index.
#[derive(Clone)]
pub struct CycloField(Arc<FieldData>);

impl CycloField {
    pub fn new(index: u32) -> Result<Self> {
        let modulus = cyclotomic_polynomial(index)?;
        let modulus_q = modulus
            .iter()
            .cloned()
            .map(Rational::from_integer)
            .collect();
        Ok(CycloField(Arc::new(FieldData {
            index,
            modulus,
            modulus_q,
        })))
    }

    /// Plain ℚ, i.e. M = 1.
    pub fn rationals() -> Self {
        Self::new(1).expect("index 1 is valid")
    }

    pub fn index(&self) -> u32 {
        self.0.index
    }

    /// φ(M), the length of every residue representative.
    pub fn degree(&self) -> usize {
        self.0.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.0.modulus
    }

    pub fn zero(&self) -> CycloNum {
        CycloNum {
            field: self.clone(),
            coeffs: vec![Rational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> CycloNum {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, q: Rational) -> CycloNum {
        let mut out = self.zero();
        out.coeffs[0] = q;
        out
    }

    pub fn from_int(&self, n: i64) -> CycloNum {
        self.from_rational(Rational::from_integer(n.into()))
    }

    /// The class of `w`, i.e. ζ_M.
    pub fn generator(&self) -> CycloNum {
        self.element(vec![Rational::zero(), Rational::one()])
    }

    /// Reduces an arbitrary polynomial in `w` (ascending coefficients) mod Φ_M.
    pub fn element(&self, mut coeffs: Vec<Rational>) -> CycloNum {
        let deg = self.degree();
        let phi = &self.0.modulus_q;
        while coeffs.len() > deg {
            let top = coeffs.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = coeffs.len() - deg;
            for (j, m) in phi[..deg].iter().enumerate() {
                coeffs[shift + j] -= &top * m;
            }
        }
        coeffs.resize(deg, Rational::zero());
        CycloNum {
            field: self.clone(),
            coeffs,
        }
    }
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.index == other.0.index
    }
}

impl Eq for CycloField {}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index() == 1 {
            write!(f, "Q")
        } else {
            write!(f, "Q(zeta_{})", self.index())
        }
    }
}

/// An element of ℚ(ζ_M): the residue representative of degree < φ(M).
#[derive(Clone, PartialEq, Eq)]
pub struct CycloNum {
    field: CycloField,
    coeffs: Vec<Rational>,
}

impl CycloNum {
    pub fn field(&self) -> &CycloField {
        &self.field
    }

    /// Coefficients of the representative in ascending powers of `w`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, when it lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    pub fn is_integer(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_integer())
    }

    fn check_field(&self, other: &CycloNum) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.index(),
                right: other.field.index(),
            })
        }
    }

    pub fn checked_add(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycloNum {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycloNum {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_field(other)?;
        if self.field.degree() == 1 {
            return Ok(self.field.from_rational(&self.coeffs[0] * &other.coeffs[0]));
        }
        Ok(self.field.element(upoly::mul(&self.coeffs, &other.coeffs)))
    }

    pub fn checked_div(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_field(other)?;
        self.checked_mul(&other.inverse()?)
    }

    /// Multiplicative inverse via the extended gcd with Φ_M.
    pub fn inverse(&self) -> Result<CycloNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(self.field.from_rational(q.recip()));
        }
        let (g, s) = upoly::gcd_cofactor(&self.coeffs, &self.field.0.modulus_q);
        // Φ_M is irreducible, so any nonzero residue is a unit
        debug_assert!(g.len() == 1 && g[0].is_one());
        Ok(self.field.element(s))
    }

    pub fn pow(&self, mut exp: u32) -> CycloNum {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> CycloNum {
        CycloNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }
}

/// Least `k ≥ 1` with `a^k = 1`, or `None` when `a` is not a root of unity.
///
/// Every root of unity in ℚ(ζ_M) has order dividing lcm(2, M), so the search
/// stops there.
pub fn root_of_unity_order(a: &CycloNum) -> Option<u32> {
    if a.is_zero() {
        return None;
    }
    let bound = lcm(2, a.field().index());
    let mut power = a.clone();
    for k in 1..=bound {
        if power.is_one() {
            return Some(k);
        }
        power = &power * a;
    }
    None
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics when the operands live in different fields.
        impl $trait<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                self.$checked(rhs).expect("cyclotomic field mismatch")
            }
        }

        impl $trait<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
