//! Power-gap polynomials and their classical factorizations.
//!
//! For a prime `p > 3`:
//!
//! * `F_p = (x+y)^p − x^p − y^p` and its dehomogenization
//!   `K_p(t) = (t+1)^p − t^p − 1 = p·t(t+1)(t²+t+1)^e·C_p(t)`, where
//!   `e = 1` for `p ≡ 5 (mod 6)` and `e = 2` for `p ≡ 1 (mod 6)`;
//! * `E₂ = F_p / (p·x·y·(x+y))`;
//! * `H_p = (x+y+z)^p − x^p − y^p − z^p` and `E₃ = H_p / (p(x+y)(y+z)(z+x))`,
//!   which is invariant under `z ↦ −(x+y+z)` and hence a polynomial in
//!   `b = z(x+y+z)`.
//!
//! Catalan's identity concerns the quotient without the `1/n` factor and
//! holds for every odd `n > 3`, prime or not.
//!
//! All bivariate and trivariate polynomials live in [`Context::xyz`].

use num::{BigInt, Integer, One, ToPrimitive, Zero};

use crate::arith::{binomial, CycloField, Rational};
use crate::error::{Error, Result};
use crate::invariance::AdequateMap;
use crate::poly::{Context, MPoly, Monomial};

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Accepts primes greater than 3.
pub fn check_prime(p: u64) -> Result<u32> {
    if p > 3 && is_prime(p) {
        u32::try_from(p).map_err(|_| Error::InvalidPrime(p))
    } else {
        Err(Error::InvalidPrime(p))
    }
}

fn check_odd(n: u64) -> Result<u32> {
    if n > 3 && n % 2 == 1 {
        u32::try_from(n).map_err(|_| Error::InvalidOddExponent(n))
    } else {
        Err(Error::InvalidOddExponent(n))
    }
}

fn verify(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::VerificationFailed(what()))
    }
}

fn exact(f: &MPoly, d: &MPoly, what: &str) -> Result<MPoly> {
    f.exact_div(d)?
        .ok_or_else(|| Error::VerificationFailed(format!("{what}: division leaves a remainder")))
}

/// The univariate context `t` over ℚ.
pub fn t_context() -> Context {
    Context::new(&["t"], CycloField::rationals()).unwrap()
}

fn xyz() -> (Context, MPoly, MPoly, MPoly) {
    let c = Context::xyz();
    let (x, y, z) = (c.var(0), c.var(1), c.var(2));
    (c, x, y, z)
}

fn int_term(ctx: &Context, c: BigInt, exps: Vec<u32>) -> MPoly {
    ctx.term(
        Monomial::new(exps),
        ctx.field().from_rational(Rational::from_integer(c)),
    )
}

/// `F_p(x, y) = (x+y)^p − x^p − y^p`.
pub fn power_gap2(p: u64) -> Result<MPoly> {
    let p = check_prime(p)?;
    let (_, x, y, _) = xyz();
    Ok(&(&(&x + &y).pow(p) - &x.pow(p)) - &y.pow(p))
}

/// `K_p(t) = Σ_{k=1}^{p−1} C(p, k) t^k`.
pub fn kappa(p: u64) -> Result<MPoly> {
    let p = check_prime(p)?;
    let t = t_context();
    Ok((1..p).fold(t.zero(), |acc, k| {
        &acc + &int_term(&t, binomial(p.into(), k.into()), vec![k])
    }))
}

/// Multiplicity of `t² + t + 1` in `K_p`: 1 if `p ≡ 5`, 2 if `p ≡ 1 (mod 6)`.
pub fn exponent_e(p: u64) -> Result<u32> {
    check_prime(p)?;
    match p % 6 {
        5 => Ok(1),
        1 => Ok(2),
        _ => Err(Error::InvalidPrime(p)),
    }
}

/// `K_p = p·t(t+1)(t²+t+1)^e · C_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauchyFactorization {
    pub p: u32,
    pub e: u32,
    /// `C_p(t)`, integral of degree `p − 3 − 2e`.
    pub cauchy: MPoly,
}

impl CauchyFactorization {
    /// `C_p(x, y) = Σ c_k x^k y^{D−k}` with `D = deg C_p`.
    pub fn homogenized(&self) -> MPoly {
        let (c, ..) = xyz();
        let deg = self.cauchy.total_degree().unwrap_or(0);
        self.cauchy.terms().fold(c.zero(), |acc, (m, coeff)| {
            let k = m.exponents()[0];
            &acc + &c.term(Monomial::new(vec![k, deg - k, 0]), coeff.clone())
        })
    }
}

pub fn cauchy_factorization(p: u64) -> Result<CauchyFactorization> {
    let e = exponent_e(p)?;
    let k = kappa(p)?;
    let t = k.context().clone();
    let tv = t.var(0);
    let divisor = &(&(&t.from_int(p as i64) * &tv) * &(&tv + &t.one()))
        * &t_squared_plus_t_plus_one(&t).pow(e);
    let cauchy = exact(&k, &divisor, "K_p / p t (t+1) (t^2+t+1)^e")?;
    let expected = p as i64 - 3 - 2 * i64::from(e);
    verify(cauchy.degree_in_z() == expected, || {
        format!("deg C_{p} = {}, expected {expected}", cauchy.degree_in_z())
    })?;
    verify(cauchy.has_integer_coefficients(), || {
        format!("C_{p} has non-integral coefficients")
    })?;
    Ok(CauchyFactorization {
        p: p as u32,
        e,
        cauchy,
    })
}

/// `t² + t + 1` in a univariate context.
fn t_squared_plus_t_plus_one(t: &Context) -> MPoly {
    let v = t.var(0);
    &(&v.pow(2) + &v) + &t.one()
}

fn quadratic_xy() -> MPoly {
    let (_, x, y, _) = xyz();
    &(&x.pow(2) + &(&x * &y)) + &y.pow(2)
}

/// `E₂ = F_p / (p·x·y·(x+y))`, checked to be integral and equal to
/// `(x²+xy+y²)^e · C_p(x, y)`.
pub fn e2_by_division(p: u64) -> Result<MPoly> {
    let f = power_gap2(p)?;
    let (c, x, y, _) = xyz();
    let d = &(&(&c.from_int(p as i64) * &x) * &y) * &(&x + &y);
    let e2 = exact(&f, &d, "F_p / p x y (x+y)")?;
    verify(e2.has_integer_coefficients(), || {
        format!("E2 for p = {p} is not integral")
    })?;
    let fac = cauchy_factorization(p)?;
    let product = &quadratic_xy().pow(fac.e) * &fac.homogenized();
    verify(product == e2, || {
        format!("E2 != (x^2+xy+y^2)^e C_p(x,y) for p = {p}")
    })?;
    Ok(e2)
}

/// `E₂ = Σ_{k=1}^{p−2} ((C(p−1,k) − (−1)^k)/p) x^{k−1} y^{p−k−2}`, every
/// coefficient checked to be an integer.
pub fn e2_closed_form(p: u64) -> Result<MPoly> {
    let p = check_prime(p)?;
    let (c, ..) = xyz();
    let mut acc = c.zero();
    for k in 1..=p - 2 {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let num = binomial((p - 1).into(), k.into()) - BigInt::from(sign);
        let (coeff, rem) = num.div_rem(&BigInt::from(p));
        verify(rem.is_zero(), || {
            format!("(C({}, {k}) - (-1)^{k}) / {p} is not an integer", p - 1)
        })?;
        acc = &acc + &int_term(&c, coeff, vec![k - 1, p - k - 2, 0]);
    }
    Ok(acc)
}

/// `F_p(t·y, y) = y^p · K_p(t)` as polynomials in `t, y`.
pub fn dehomogenization_holds(p: u64) -> Result<bool> {
    let k = kappa(p)?;
    let p = p as u32;
    let ty = Context::new(&["t", "y"], CycloField::rationals())?;
    let (t, y) = (ty.var(0), ty.var(1));
    let x = &t * &y;
    let lhs = &(&(&x + &y).pow(p) - &x.pow(p)) - &y.pow(p);
    let rhs = &y.pow(p) * &k.remap(&ty, &[0])?;
    Ok(lhs == rhs)
}

/// `H_p = (x+y+z)^p − x^p − y^p − z^p`, checked to vanish on
/// `y = −x`, `z = −y` and `z = −x`.
pub fn power_gap3(p: u64) -> Result<MPoly> {
    let p = check_prime(p)?;
    let (_, x, y, z) = xyz();
    let h = &(&(&(&x + &y) + &z).pow(p) - &x.pow(p)) - &(&y.pow(p) + &z.pow(p));
    for (slot, image, label) in [(1, -&x, "y = -x"), (2, -&y, "z = -y"), (2, -&x, "z = -x")] {
        let v = h.substitute_var(slot, &image)?;
        verify(v.is_zero(), || format!("H_{p} does not vanish at {label}"))?;
    }
    Ok(h)
}

/// The map `z ↦ −(x+y+z)` on [`Context::xyz`].
pub fn granville_map() -> AdequateMap {
    let (_, x, y, z) = xyz();
    AdequateMap::from_polynomial(&-(&(&x + &y) + &z)).expect("-(x+y+z) is 2-adequate")
}

/// `z(x+y+z)`.
pub fn granville_generator() -> MPoly {
    let (_, x, y, z) = xyz();
    &z * &(&(&x + &y) + &z)
}

const S3: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// `E₃ = H_p / (p(x+y)(y+z)(z+x))`, checked to be integral, symmetric in
/// `x, y, z`, invariant under `z ↦ −(x+y+z)`, and to reduce to `E₂` at
/// `z = 0`.
pub fn e3_by_division(p: u64) -> Result<MPoly> {
    let h = power_gap3(p)?;
    let (c, x, y, z) = xyz();
    let d = &(&(&c.from_int(p as i64) * &(&x + &y)) * &(&y + &z)) * &(&z + &x);
    let e3 = exact(&h, &d, "H_p / p (x+y)(y+z)(z+x)")?;
    verify(e3.has_integer_coefficients(), || {
        format!("E3 for p = {p} is not integral")
    })?;
    for sigma in S3 {
        verify(e3.permute_vars(&sigma)? == e3, || {
            format!("E3 for p = {p} is not symmetric under {sigma:?}")
        })?;
    }
    verify(granville_map().is_invariant(&e3), || {
        format!("E3 for p = {p} is not invariant under z -> -(x+y+z)")
    })?;
    verify(e3.eval_z_zero() == e2_by_division(p)?, || {
        format!("E3(x, y, 0) != E2 for p = {p}")
    })?;
    Ok(e3)
}

/// `E₃` from `(1/(p(y+z)(z+x))) Σ_{k=0}^{p−1} (C(p,k+1)(x+y)^k z^{p−k−1} −
/// (−1)^k x^k y^{p−k−1})`, checked against [`e3_by_division`].
pub fn e3_alternative(p: u64) -> Result<MPoly> {
    let pp = check_prime(p)?;
    let (c, x, y, z) = xyz();
    let s = &x + &y;
    let mut sum = c.zero();
    for k in 0..pp {
        let binom = c.from_rational(Rational::from_integer(binomial(p, (k + 1).into())));
        let a = &(&binom * &s.pow(k)) * &z.pow(pp - k - 1);
        let sign = c.from_int(if k % 2 == 0 { 1 } else { -1 });
        let b = &(&sign * &x.pow(k)) * &y.pow(pp - k - 1);
        sum = &sum + &(&a - &b);
    }
    let d = &(&c.from_int(p as i64) * &(&y + &z)) * &(&z + &x);
    let e3 = exact(&sum, &d, "alternative sum / p (y+z)(z+x)")?;
    verify(e3 == e3_by_division(p)?, || {
        format!("alternative E3 differs from the quotient for p = {p}")
    })?;
    Ok(e3)
}

/// `E₃ = Σ_{j=0}^{n} a_j · b^{n−j}` with `b = z(x+y+z)`, `n = (p−3)/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E3Expansion {
    pub p: u32,
    pub n: u32,
    /// `a₀ = 1, a₁, …, a_n = E₂`, each free of `z`.
    pub coeffs: Vec<MPoly>,
}

impl E3Expansion {
    pub fn expand(&self) -> MPoly {
        let b = granville_generator();
        self.coeffs
            .iter()
            .fold(Context::xyz().zero(), |acc, a| &(&acc * &b) + a)
    }
}

/// Decomposes `E₃` over the generator `z(x+y+z)` and re-indexes so that `a_j`
/// multiplies `b^{n−j}`.
pub fn e3_expansion(p: u64) -> Result<E3Expansion> {
    let e3 = e3_by_division(p)?;
    let e2 = e2_by_division(p)?;
    let dec = granville_map().decompose(&e3, Some(&granville_generator()))?;
    let n = (p as u32 - 3) / 2;
    let mut coeffs = dec.coeffs;
    coeffs.reverse();
    verify(coeffs.len() == n as usize + 1, || {
        format!("expected {} coefficients, got {}", n + 1, coeffs.len())
    })?;
    verify(coeffs[0] == Context::xyz().one(), || {
        format!("a_0 = {} != 1", coeffs[0])
    })?;
    verify(coeffs[n as usize] == e2, || {
        format!("a_n != E2 for p = {p}")
    })?;
    verify(coeffs.iter().all(MPoly::is_free_of_z), || {
        "a_j depends on z".into()
    })?;
    Ok(E3Expansion {
        p: p as u32,
        n,
        coeffs,
    })
}

/// Both sides of a claimed polynomial identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub lhs: MPoly,
    pub rhs: MPoly,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn difference(&self) -> MPoly {
        &self.lhs - &self.rhs
    }
}

/// `a_n + xy·a_{n−1}` against `(x+y)^{p−3}`.
pub fn check_xy_identity(p: u64) -> Result<IdentityReport> {
    let exp = e3_expansion(p)?;
    Ok(xy_identity(&exp))
}

pub fn xy_identity(exp: &E3Expansion) -> IdentityReport {
    conjecture(exp, 0).1
}

fn leading_rational(f: &MPoly) -> Rational {
    f.leading_coefficient()
        .and_then(|c| c.as_rational().cloned())
        .unwrap_or_else(Rational::zero)
}

/// `(a_{n−m}^{(1)}, report)` for `a_{n−m} + xy·a_{n−m−1}` against
/// `a_{n−m}^{(1)}·(x+y)^{p−2m−3}`.
fn conjecture(exp: &E3Expansion, m: usize) -> (Rational, IdentityReport) {
    let (c, x, y, _) = xyz();
    let n = exp.n as usize;
    let a = &exp.coeffs[n - m];
    let lead = leading_rational(a);
    let lhs = a + &(&(&x * &y) * &exp.coeffs[n - m - 1]);
    let rhs = &c.from_rational(lead.clone()) * &(&x + &y).pow(exp.p - 2 * m as u32 - 3);
    (lead, IdentityReport { lhs, rhs })
}

/// One instance of the conjectured family, `a_k^{(1)}` read as the leading
/// coefficient of `a_k` in the canonical monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub p: u32,
    pub m_index: usize,
    pub leading: Rational,
    pub identity: IdentityReport,
}

pub fn check_conjecture(p: u64, m_index: usize) -> Result<ConjectureReport> {
    let exp = e3_expansion(p)?;
    conjecture_report(&exp, m_index)
}

pub fn conjecture_report(exp: &E3Expansion, m_index: usize) -> Result<ConjectureReport> {
    let max = exp.n as usize - 1;
    if m_index > max {
        return Err(Error::IndexOutOfRange {
            index: m_index,
            max,
        });
    }
    let (leading, identity) = conjecture(exp, m_index);
    Ok(ConjectureReport {
        p: exp.p,
        m_index,
        leading,
        identity,
    })
}

/// The coefficient observations `a_{n−1}^{(1)} = a_n^{(2)}` and
/// `a_n^{(2)} = (p−3)/2`, with `^{(j)}` the j-th coefficient in canonical
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientObservations {
    pub a_n_second: Rational,
    pub a_n_minus_1_first: Rational,
    pub half_p_minus_3: Rational,
}

impl CoefficientObservations {
    pub fn first_holds(&self) -> bool {
        self.a_n_minus_1_first == self.a_n_second
    }

    pub fn second_holds(&self) -> bool {
        self.a_n_second == self.half_p_minus_3
    }
}

pub fn coefficient_observations(exp: &E3Expansion) -> CoefficientObservations {
    let n = exp.n as usize;
    let nth = |f: &MPoly, j: usize| {
        f.terms()
            .nth(j)
            .and_then(|(_, c)| c.as_rational().cloned())
            .unwrap_or_else(Rational::zero)
    };
    CoefficientObservations {
        a_n_second: nth(&exp.coeffs[n], 1),
        a_n_minus_1_first: nth(&exp.coeffs[n - 1], 0),
        half_p_minus_3: Rational::new(BigInt::from(exp.p - 3), BigInt::from(2)),
    }
}

/// Complete homogeneous polynomial `Σ_{j+k+l=m} x^{sj} y^{sk} z^{sl}` with
/// every variable raised to `power = s`; `power = 1` gives `H_m(x, y, z)`.
pub fn complete_homog(m: u32, power: u32) -> MPoly {
    let c = Context::xyz();
    let mut acc = c.zero();
    for j in 0..=m {
        for k in 0..=m - j {
            let l = m - j - k;
            acc = &acc + &int_term(&c, BigInt::one(), vec![power * j, power * k, power * l]);
        }
    }
    acc
}

/// `((x+y+z)^n − x^n − y^n − z^n) / ((x+y)(y+z)(z+x))`, without the `1/n`
/// normalisation of `E₃`.
pub fn catalan_quotient(n: u64) -> Result<MPoly> {
    let n = check_odd(n)?;
    let (_, x, y, z) = xyz();
    let h = &(&(&(&x + &y) + &z).pow(n) - &x.pow(n)) - &(&y.pow(n) + &z.pow(n));
    let d = &(&(&x + &y) * &(&y + &z)) * &(&z + &x);
    exact(&h, &d, "power gap / (x+y)(y+z)(z+x)")
}

/// `Σ_{m=0}^{n−3} H_m·P^{n−3−m} + 2·H_{(n−3)/2}(x², y², z²)`, `P = x+y+z`.
pub fn catalan_rhs(n: u64) -> Result<MPoly> {
    let n = check_odd(n)?;
    let (c, x, y, z) = xyz();
    let p = &(&x + &y) + &z;
    let mut acc = c.zero();
    for m in 0..=n - 3 {
        acc = &acc + &(&complete_homog(m, 1) * &p.pow(n - 3 - m));
    }
    Ok(&acc + &(&c.from_int(2) * &complete_homog((n - 3) / 2, 2)))
}

pub fn catalan_check(n: u64) -> Result<IdentityReport> {
    Ok(IdentityReport {
        lhs: catalan_quotient(n)?,
        rhs: catalan_rhs(n)?,
    })
}

/// Integer value of a constant polynomial, for spot checks.
pub fn integer_value(f: &MPoly, point: &[i64]) -> Option<i64> {
    let point: Vec<Rational> = point
        .iter()
        .map(|&v| Rational::from_integer(v.into()))
        .collect();
    let v = f.evaluate(&point);
    v.as_rational()
        .filter(|q| q.is_integer())
        .and_then(|q| q.numer().to_i64())
}
