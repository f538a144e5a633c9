//! Sparse multivariate polynomials over a cyclotomic field.
//!
//! A [`Context`] fixes the variable slots `x₁..x_n, z` (the last slot is the
//! distinguished variable acted on by substitution maps) and the coefficient
//! field. Terms are kept in a `BTreeMap` under the graded lexicographic order,
//! so the leading term is always the last entry and two equal polynomials
//! have identical term maps.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::arith::{CycloField, CycloNum, Rational};
use crate::error::{Error, Result};

/// Exponent vector over all slots of a context; the last entry is the
/// exponent of `z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(slots: usize) -> Self {
        Monomial(vec![0; slots])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn x_exponents(&self) -> &[u32] {
        &self.0[..self.0.len() - 1]
    }

    pub fn z_exponent(&self) -> u32 {
        *self.0.last().unwrap()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

/// Graded lexicographic: total degree first, then exponents compared slot by
/// slot from `x₁`, so `x² > xy > y²` and `z` breaks ties last.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, PartialEq, Eq)]
struct ContextData {
    names: Vec<String>,
    field: CycloField,
}

/// Variable names (x-block then `z`) and coefficient field.
#[derive(Debug, Clone)]
pub struct Context(Arc<ContextData>);

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Context {}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Context {
    pub fn new<S: AsRef<str>>(names: &[S], field: CycloField) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidContext("no variables".into()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidContext(format!(
                    "`{name}` is not an identifier"
                )));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidContext(format!(
                    "duplicate variable `{name}`"
                )));
            }
            if name == "w" && field.index() > 1 {
                return Err(Error::InvalidContext(
                    "`w` is reserved for the root of unity".into(),
                ));
            }
        }
        Ok(Context(Arc::new(ContextData { names, field })))
    }

    /// Variables `x, y, z` over ℚ.
    pub fn xyz() -> Self {
        Self::new(&["x", "y", "z"], CycloField::rationals()).unwrap()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn field(&self) -> &CycloField {
        &self.0.field
    }

    /// Number of variable slots, `n + 1`.
    pub fn slots(&self) -> usize {
        self.0.names.len()
    }

    pub fn z_slot(&self) -> usize {
        self.slots() - 1
    }

    pub fn slot_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> MPoly {
        MPoly {
            ctx: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: CycloNum) -> MPoly {
        self.term(Monomial::one(self.slots()), c)
    }

    pub fn from_int(&self, n: i64) -> MPoly {
        self.constant(self.field().from_int(n))
    }

    pub fn from_rational(&self, q: Rational) -> MPoly {
        self.constant(self.field().from_rational(q))
    }

    pub fn one(&self) -> MPoly {
        self.from_int(1)
    }

    pub fn var(&self, slot: usize) -> MPoly {
        let mut e = vec![0; self.slots()];
        e[slot] = 1;
        self.term(Monomial(e), self.field().one())
    }

    pub fn z(&self) -> MPoly {
        self.var(self.z_slot())
    }

    /// A single term. Panics if `c` lives in a different field or the
    /// exponent vector has the wrong length.
    pub fn term(&self, m: Monomial, c: CycloNum) -> MPoly {
        assert_eq!(m.0.len(), self.slots(), "monomial arity");
        assert!(c.field() == self.field(), "coefficient field");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly {
            ctx: self.clone(),
            terms,
        }
    }
}

/// A polynomial in `K[x₁..x_n, z]` with `K = ℚ(ζ_M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    ctx: Context,
    terms: BTreeMap<Monomial, CycloNum>,
}

impl MPoly {
    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycloNum)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&CycloNum> {
        self.terms.get(m)
    }

    /// Coefficient of the monomial with the given exponents, zero if absent.
    pub fn coefficient_of(&self, exponents: &[u32]) -> CycloNum {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.ctx.field().zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &CycloNum)> {
        self.terms.last_key_value()
    }

    pub fn leading_coefficient(&self) -> Option<&CycloNum> {
        self.leading_term().map(|(_, c)| c)
    }

    /// The constant value, when the polynomial has no variables.
    pub fn as_constant(&self) -> Option<CycloNum> {
        match self.terms.len() {
            0 => Some(self.ctx.field().zero()),
            1 => {
                let (m, c) = self.leading_term().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::total_degree);
        match degrees.next() {
            Some(d) => degrees.all(|e| e == d),
            None => true,
        }
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(CycloNum::is_integer)
    }

    fn check_context(&self, other: &MPoly) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn accumulate(terms: &mut BTreeMap<Monomial, CycloNum>, m: Monomial, c: CycloNum) {
        match terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_context(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(MPoly {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check_context(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::accumulate(&mut terms, m.clone(), -c);
        }
        Ok(MPoly {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_context(other)?;
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                Self::accumulate(&mut terms, m1.mul(m2), c1 * c2);
            }
        }
        Ok(MPoly {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &CycloNum) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            for (m, d) in &self.terms {
                terms.insert(m.clone(), d * c);
            }
        }
        MPoly {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn pow(&self, mut k: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = self.ctx.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    ///
    /// Runs leading-term reduction under the graded lexicographic order. If
    /// `divisor` divides `self` then every intermediate remainder is still a
    /// multiple of it, so its leading monomial is divisible by the divisor's;
    /// the first time that fails the division cannot be exact.
    pub fn exact_div(&self, divisor: &MPoly) -> Result<Option<MPoly>> {
        self.check_context(divisor)?;
        let (lead_m, lead_c) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let lead_inv = lead_c.inverse()?;
        let mut rem = self.terms.clone();
        let mut quo = BTreeMap::new();
        while let Some((m, c)) = rem.last_key_value() {
            let Some(qm) = m.checked_div(lead_m) else {
                return Ok(None);
            };
            let qc = c * &lead_inv;
            for (dm, dc) in &divisor.terms {
                Self::accumulate(&mut rem, dm.mul(&qm), -(dc * &qc));
            }
            quo.insert(qm, qc);
        }
        let quo = MPoly {
            ctx: self.ctx.clone(),
            terms: quo,
        };
        debug_assert_eq!(&(&quo * divisor), self, "exact_div re-multiplication");
        Ok(Some(quo))
    }

    /// Coefficients `c₀..c_d` with `self = Σ c_k · v^k` for the variable in
    /// `slot`; each `c_k` is free of that variable.
    pub fn coefficients_in(&self, slot: usize) -> Vec<MPoly> {
        let Some(deg) = self.terms.keys().map(|m| m.0[slot]).max() else {
            return vec![self.ctx.zero()];
        };
        let mut out = vec![self.ctx.zero(); deg as usize + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = std::mem::replace(&mut e[slot], 0) as usize;
            out[k].terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Substitutes the variable in `slot` by `p` and expands.
    pub fn substitute_var(&self, slot: usize, p: &MPoly) -> Result<MPoly> {
        self.check_context(p)?;
        let coeffs = self.coefficients_in(slot);
        let mut acc = self.ctx.zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * p) + c;
        }
        Ok(acc)
    }

    /// `F(x, p(x, z))`.
    pub fn substitute_z(&self, p: &MPoly) -> Result<MPoly> {
        self.substitute_var(self.ctx.z_slot(), p)
    }

    /// Degree in `z`; `-1` for the zero polynomial.
    pub fn degree_in_z(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| i64::from(m.z_exponent()))
            .max()
            .unwrap_or(-1)
    }

    pub fn is_free_of_z(&self) -> bool {
        self.degree_in_z() <= 0
    }

    /// `F(x, 0)`: the terms without `z`.
    pub fn eval_z_zero(&self) -> MPoly {
        MPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.z_exponent() == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `[c₀, .., c_d]` with `F = Σ c_k z^k`; `[0]` for the zero polynomial.
    pub fn z_coefficients(&self) -> Vec<MPoly> {
        self.coefficients_in(self.ctx.z_slot())
    }

    /// Inverse of [`MPoly::z_coefficients`].
    pub fn from_z_coefficients(ctx: &Context, coeffs: &[MPoly]) -> Result<MPoly> {
        let z = ctx.z();
        let mut acc = ctx.zero();
        for c in coeffs.iter().rev() {
            acc = acc.checked_mul(&z)?.checked_add(c)?;
        }
        Ok(acc)
    }

    /// Relabels variables: the exponent of slot `i` moves to slot `sigma[i]`.
    pub fn permute_vars(&self, sigma: &[usize]) -> Result<MPoly> {
        let n = self.ctx.slots();
        let mut seen = vec![false; n];
        if sigma.len() != n
            || !sigma
                .iter()
                .all(|&s| s < n && !std::mem::replace(&mut seen[s], true))
        {
            return Err(Error::InvalidPermutation { slots: n });
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; n];
                for (i, &x) in m.0.iter().enumerate() {
                    e[sigma[i]] = x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Ok(MPoly {
            ctx: self.ctx.clone(),
            terms,
        })
    }

    /// Moves the polynomial into `target`, sending slot `i` to `slots[i]`.
    /// Both contexts must share the coefficient field.
    pub fn remap(&self, target: &Context, slots: &[usize]) -> Result<MPoly> {
        if target.field() != self.ctx.field()
            || slots.len() != self.ctx.slots()
            || slots.iter().any(|&s| s >= target.slots())
        {
            return Err(Error::ContextMismatch);
        }
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut e = vec![0; target.slots()];
            for (i, &x) in m.0.iter().enumerate() {
                e[slots[i]] += x;
            }
            Self::accumulate(&mut acc.terms, Monomial(e), c.clone());
        }
        Ok(acc)
    }

    /// Evaluates at a rational point given for every slot.
    pub fn evaluate(&self, point: &[Rational]) -> CycloNum {
        assert_eq!(point.len(), self.ctx.slots(), "evaluation point arity");
        let mut acc = self.ctx.field().zero();
        for (m, c) in &self.terms {
            let mut v = Rational::from_integer(1.into());
            for (x, &e) in point.iter().zip(&m.0) {
                v *= num::pow(x.clone(), e as usize);
            }
            acc = &acc + &c.scale(&v);
        }
        acc
    }
}

/// For `P = a·z + c` and `Q = a'·z + c'` (coefficients free of `z`), the
/// resultant in `z`, `a·c' − a'·c`. The two are coprime in `K(x)[z]` exactly
/// when the witness is nonzero.
pub fn linear_coprime_witness(p: &MPoly, q: &MPoly) -> Result<MPoly> {
    p.check_context(q)?;
    if p.degree_in_z() != 1 || q.degree_in_z() != 1 {
        return Err(Error::NotLinear);
    }
    let pc = p.z_coefficients();
    let qc = q.z_coefficients();
    Ok(&(&pc[1] * &qc[0]) - &(&qc[1] * &pc[0]))
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics on a context mismatch; use the `checked_*` form to recover.
        impl $trait<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                self.$checked(rhs).expect("polynomial context mismatch")
            }
        }

        impl $trait<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
