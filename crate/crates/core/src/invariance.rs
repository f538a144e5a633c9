//! Substitution endomorphisms `T: F(x, z) ↦ F(x, p(x, z))` and their
//! invariant polynomials.
//!
//! When `p = q·z + r(x)` with `q` a primitive m-th root of unity, `T^m` is the
//! identity and every invariant `F` is a polynomial in
//! `b = p₀·p₁⋯p_{m−1}` (the product of the orbit `p_k = T^k z`) with
//! coefficients free of `z`. [`AdequateMap::decompose`] computes that
//! polynomial by peeling off `F(x, 0)` and dividing the rest by `b`, which
//! lowers the z-degree by `m` each round.

use std::fmt;

use crate::arith::{root_of_unity_order, CycloNum, Rational};
use crate::error::{Error, Result};
use crate::expr;
use crate::poly::{linear_coprime_witness, Context, MPoly};

/// The map `z ↦ p(x, z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstMap {
    p: MPoly,
}

impl SubstMap {
    pub fn new(p: MPoly) -> Self {
        SubstMap { p }
    }

    pub fn image(&self) -> &MPoly {
        &self.p
    }

    /// `TF = F(x, p(x, z))`.
    pub fn apply(&self, f: &MPoly) -> Result<MPoly> {
        f.substitute_z(&self.p)
    }

    /// Whether `TF = F`. Polynomials from another context are never invariant.
    pub fn is_invariant(&self, f: &MPoly) -> bool {
        self.apply(f).is_ok_and(|tf| &tf == f)
    }

    pub fn classify(&self) -> Classification {
        classify_map(&self.p)
    }
}

/// Why a substitution map does or does not admit invariants outside `K[x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// `p = z`; every polynomial is invariant.
    Identity,
    /// `p = q·z + r(x)` with `q` a primitive m-th root of unity, `m ≥ 2`.
    Adequate(AdequateMap),
    /// `d(p) ≠ 1`: only polynomials free of `z` are invariant.
    NonlinearInZ { degree: i64 },
    /// `p = q·z + r` with constant `q` that is not a root of unity.
    UnitNotRootOfUnity { q: CycloNum },
    /// `p = z + r` with `r ≠ 0`.
    TranslationLike { r: MPoly },
    /// The coefficient of `z` depends on `x`.
    NonconstantLeading { leading: MPoly },
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::Identity => "Identity",
            Classification::Adequate(_) => "Adequate",
            Classification::NonlinearInZ { .. } => "NonlinearInZ",
            Classification::UnitNotRootOfUnity { .. } => "UnitNotRootOfUnity",
            Classification::TranslationLike { .. } => "TranslationLike",
            Classification::NonconstantLeading { .. } => "NonconstantLeading",
        }
    }

    /// Whether invariants outside `K[x]` exist, i.e. the map is adequate.
    pub fn has_nonconstant_invariants(&self) -> bool {
        matches!(self, Classification::Identity | Classification::Adequate(_))
    }

    /// Human-readable reason.
    pub fn explanation(&self) -> String {
        match self {
            Classification::Identity => "p = z: T is the identity and B = A".into(),
            Classification::Adequate(map) => {
                format!("p = q*z + r with q of order {}: B = K[x][b]", map.order())
            }
            Classification::NonlinearInZ { degree } => {
                format!("degree of p in z is {degree}, not 1: B = K[x]")
            }
            Classification::UnitNotRootOfUnity { q } => {
                format!("q = {q} is not a root of unity: B = K[x]")
            }
            Classification::TranslationLike { r } => {
                format!("q = 1 but r = {r} is nonzero: B = K[x]")
            }
            Classification::NonconstantLeading { leading } => {
                format!("coefficient of z is {leading}, which depends on x: not adequate")
            }
        }
    }
}

/// Classifies `p` by the case analysis on `d(p)`, the coefficient `q` of `z`
/// and the remainder `r(x)`.
pub fn classify_map(p: &MPoly) -> Classification {
    let degree = p.degree_in_z();
    if degree != 1 {
        return Classification::NonlinearInZ { degree };
    }
    let mut coeffs = p.z_coefficients();
    let leading = coeffs.pop().unwrap();
    let r = coeffs.pop().unwrap();
    let Some(q) = leading.as_constant() else {
        return Classification::NonconstantLeading { leading };
    };
    match root_of_unity_order(&q) {
        None => Classification::UnitNotRootOfUnity { q },
        Some(1) if r.is_zero() => Classification::Identity,
        Some(1) => Classification::TranslationLike { r },
        Some(m) => Classification::Adequate(AdequateMap {
            ctx: p.context().clone(),
            m,
            q,
            r,
        }),
    }
}

/// Validated data of an m-adequate map `z ↦ q·z + r(x)`.
#[derive(Clone, PartialEq, Eq)]
pub struct AdequateMap {
    ctx: Context,
    m: u32,
    q: CycloNum,
    r: MPoly,
}

impl fmt::Debug for AdequateMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AdequateMap")
            .field("m", &self.m)
            .field("q", &self.q)
            .field("r", &expr::format(&self.r))
            .finish()
    }
}

/// One pairwise coprimality witness `resultant_z(p_j, p_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoprimeWitness {
    pub j: u32,
    pub k: u32,
    pub witness: MPoly,
}

/// The two leading-coefficient identities forced by `TF = F`: with
/// `F = u·z^d + v·z^{d−1} + …`, `q^d = 1` and `q^{d−1}(d·u·r + v) = v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadingRelations {
    pub degree: u32,
    pub q_power_is_one: bool,
    pub second_coefficient_holds: bool,
}

impl AdequateMap {
    /// Builds the map `z ↦ q·z + r`, checking that `q` is a root of unity,
    /// `r` is free of `z`, and `r = 0` when `q = 1`.
    pub fn new(ctx: &Context, q: CycloNum, r: MPoly) -> Result<Self> {
        if r.context() != ctx || q.field() != ctx.field() {
            return Err(Error::ContextMismatch);
        }
        if !r.is_free_of_z() {
            return Err(Error::NotAdequate(format!("r = {r} depends on z")));
        }
        let m = root_of_unity_order(&q)
            .ok_or_else(|| Error::NotAdequate(format!("q = {q} is not a root of unity")))?;
        if m == 1 && !r.is_zero() {
            return Err(Error::NotAdequate(format!("q = 1 with r = {r} nonzero")));
        }
        Ok(AdequateMap {
            ctx: ctx.clone(),
            m,
            q,
            r,
        })
    }

    /// The 1-adequate map `z ↦ z`.
    pub fn identity(ctx: &Context) -> Self {
        AdequateMap {
            ctx: ctx.clone(),
            m: 1,
            q: ctx.field().one(),
            r: ctx.zero(),
        }
    }

    /// Classifies `p` and returns its adequate data, or `NotAdequate` with the
    /// classifier's explanation.
    pub fn from_polynomial(p: &MPoly) -> Result<Self> {
        match classify_map(p) {
            Classification::Identity => Ok(Self::identity(p.context())),
            Classification::Adequate(map) => Ok(map),
            other => Err(Error::NotAdequate(other.explanation())),
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// The order `m` of `q`.
    pub fn order(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> &CycloNum {
        &self.q
    }

    pub fn r(&self) -> &MPoly {
        &self.r
    }

    /// `q·z + r`.
    pub fn polynomial(&self) -> MPoly {
        &self.ctx.z().scale(&self.q) + &self.r
    }

    pub fn subst_map(&self) -> SubstMap {
        SubstMap::new(self.polynomial())
    }

    pub fn apply(&self, f: &MPoly) -> Result<MPoly> {
        f.substitute_z(&self.polynomial())
    }

    pub fn is_invariant(&self, f: &MPoly) -> bool {
        self.subst_map().is_invariant(f)
    }

    /// `p_k = q^k·z + (1 + q + … + q^{k−1})·r`.
    pub fn iterate(&self, k: u32) -> MPoly {
        let field = self.ctx.field();
        let mut geometric = field.zero();
        let mut power = field.one();
        for _ in 0..k {
            geometric = &geometric + &power;
            power = &power * &self.q;
        }
        let p = &self.ctx.z().scale(&power) + &self.r.scale(&geometric);
        #[cfg(debug_assertions)]
        if k <= 2 * self.m {
            debug_assert_eq!(p, self.iterate_by_substitution(k));
        }
        p
    }

    /// `T^k z` computed by `k` successive substitutions.
    pub fn iterate_by_substitution(&self, k: u32) -> MPoly {
        let p = self.polynomial();
        (0..k).fold(self.ctx.z(), |acc, _| {
            acc.substitute_z(&p).expect("same context")
        })
    }

    /// `[p₀, …, p_{m−1}]`.
    pub fn orbit(&self) -> Vec<MPoly> {
        (0..self.m).map(|k| self.iterate(k)).collect()
    }

    /// The canonical invariant generator `b = p₀·p₁⋯p_{m−1}`.
    pub fn generator(&self) -> MPoly {
        let b = self.orbit().iter().fold(self.ctx.one(), |acc, p| &acc * p);
        debug_assert!(self.is_invariant(&b));
        debug_assert_eq!(b.degree_in_z(), i64::from(self.m));
        b
    }

    /// `resultant_z(p_j, p_k)` for every pair `j < k < m`. All are nonzero
    /// exactly when `r ≠ 0`.
    pub fn coprimality_report(&self) -> Vec<CoprimeWitness> {
        let orbit = self.orbit();
        let mut out = Vec::new();
        for j in 0..orbit.len() {
            for k in j + 1..orbit.len() {
                let witness = linear_coprime_witness(&orbit[j], &orbit[k])
                    .expect("orbit elements are linear in z");
                out.push(CoprimeWitness {
                    j: j as u32,
                    k: k as u32,
                    witness,
                });
            }
        }
        out
    }

    fn require_invariant(&self, f: &MPoly) -> Result<()> {
        if f.context() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        let tf = self.apply(f)?;
        let diff = &tf - f;
        match diff.leading_term() {
            None => Ok(()),
            Some((m, _)) => {
                let ctx = f.context();
                let mono = ctx.term(m.clone(), ctx.field().one());
                let zero = ctx.field().zero();
                Err(Error::NotInvariant(format!(
                    "T(F) and F differ at monomial {}: coefficient {} in F, {} in T(F)",
                    mono,
                    f.coefficient(m).unwrap_or(&zero),
                    tf.coefficient(m).unwrap_or(&zero),
                )))
            }
        }
    }

    fn check_generator(&self, g: &MPoly) -> Result<()> {
        if g.context() != &self.ctx {
            return Err(Error::BadGenerator("different context".into()));
        }
        if g.degree_in_z() != i64::from(self.m) {
            return Err(Error::BadGenerator(format!(
                "degree in z is {}, expected {}",
                g.degree_in_z(),
                self.m
            )));
        }
        if !self.is_invariant(g) {
            return Err(Error::BadGenerator(format!("{g} is not invariant")));
        }
        let canonical = self.generator();
        match g.exact_div(&canonical)?.and_then(|c| c.as_constant()) {
            Some(c) if !c.is_zero() => Ok(()),
            _ => Err(Error::BadGenerator(format!(
                "{g} is not a constant multiple of {canonical}"
            ))),
        }
    }

    /// Writes an invariant `F` as `Σ G_j·b^j` with each `G_j` free of `z`.
    ///
    /// `generator` defaults to [`AdequateMap::generator`]; a supplied one must
    /// be a nonzero constant multiple of it.
    pub fn decompose(&self, f: &MPoly, generator: Option<&MPoly>) -> Result<Decomposition> {
        self.require_invariant(f)?;
        let b = match generator {
            Some(g) => {
                self.check_generator(g)?;
                g.clone()
            }
            None => self.generator(),
        };
        let mut coeffs = Vec::new();
        let mut rest = f.clone();
        while !rest.is_zero() {
            let a = rest.eval_z_zero();
            let w = &rest - &a;
            coeffs.push(a);
            if w.is_zero() {
                break;
            }
            rest = w.exact_div(&b)?.ok_or_else(|| {
                Error::InternalDivisibilityFailure(format!("{b} does not divide {w}"))
            })?;
        }
        Ok(Decomposition {
            generator: b,
            coeffs,
        })
    }

    /// The quotients `(F − F(x, 0)) / p_k` for `k < m`.
    pub fn lemma1_witnesses(&self, f: &MPoly) -> Result<Vec<MPoly>> {
        self.require_invariant(f)?;
        let w = f - &f.eval_z_zero();
        self.orbit()
            .iter()
            .enumerate()
            .map(|(k, p)| {
                w.exact_div(p)?.ok_or_else(|| {
                    Error::InternalDivisibilityFailure(format!("p_{k} = {p} does not divide {w}"))
                })
            })
            .collect()
    }

    /// Checks the two top-coefficient identities of `TF = F` for a nonzero
    /// `F` of positive z-degree; `None` otherwise.
    pub fn leading_relations(&self, f: &MPoly) -> Option<LeadingRelations> {
        let d = u32::try_from(f.degree_in_z()).ok().filter(|&d| d >= 1)?;
        let cs = f.z_coefficients();
        let u = &cs[d as usize];
        let v = &cs[d as usize - 1];
        let q_d = self.q.pow(d);
        let q_d1 = self.ctx.constant(self.q.pow(d - 1));
        let d_q = self.ctx.from_rational(Rational::from_integer(d.into()));
        let lhs = &q_d1 * &(&(&(&d_q * u) * &self.r) + v);
        Some(LeadingRelations {
            degree: d,
            q_power_is_one: q_d.is_one(),
            second_coefficient_holds: &lhs == v,
        })
    }
}

/// `F = Σ coeffs[j] · generator^j`, coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub generator: MPoly,
    pub coeffs: Vec<MPoly>,
}

impl Decomposition {
    /// `Σ coeffs[j]·generator^j` by Horner's rule.
    pub fn expand(&self) -> MPoly {
        expand(&self.coeffs, &self.generator)
    }
}

/// `Σ coeffs[j]·b^j`.
pub fn expand(coeffs: &[MPoly], b: &MPoly) -> MPoly {
    coeffs
        .iter()
        .rev()
        .fold(b.context().zero(), |acc, c| &(&acc * b) + c)
}
