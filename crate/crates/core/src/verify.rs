//! Verification suites: deterministic batteries of exact checks over the
//! classical identities and the invariance machinery.
//!
//! Random instances come from a ChaCha stream seeded by the caller, so a
//! given `(suite, bounds)` pair always produces the same report.

use std::fmt;
use std::time::{Duration, Instant};

use num::integer::gcd;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{CycloField, CycloNum};
use crate::classical::{self, E3Expansion};
use crate::error::Result;
use crate::expr::parse;
use crate::invariance::{expand, AdequateMap};
use crate::poly::{Context, MPoly, Monomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Granville,
    Cauchy,
    Catalan,
    Roundtrip,
    Lemmas,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Cauchy,
        Suite::Granville,
        Suite::Catalan,
        Suite::Roundtrip,
        Suite::Lemmas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Granville => "granville",
            Suite::Cauchy => "cauchy",
            Suite::Catalan => "catalan",
            Suite::Roundtrip => "roundtrip",
            Suite::Lemmas => "lemmas",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// Suite parameters.
#[derive(Debug, Clone)]
pub struct Bounds {
    /// Largest prime for the prime-indexed suites; `None` means 31 for the
    /// Cauchy suite and 19 for the trivariate suite.
    pub max_p: Option<u64>,
    pub catalan_exponents: Vec<u64>,
    pub cases: usize,
    pub invariants_per_map: usize,
    pub seed: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_p: None,
            catalan_exponents: vec![5, 7, 9, 11, 13, 15],
            cases: 200,
            invariants_per_map: 20,
            seed: 42,
        }
    }
}

/// One line of a report. Informational checks record evidence for open
/// claims and never fail a suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub informational: bool,
    pub detail: Option<String>,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match (self.passed, self.informational) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (true, true) => "INFO holds",
            (false, true) => "INFO fails",
        };
        write!(f, "[{tag}] {}", self.label)?;
        if let Some(d) = &self.detail {
            write!(f, ": {d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.informational)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed && !c.informational)
    }
}

#[derive(Default)]
struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn check(&mut self, label: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            label: label.into(),
            passed,
            informational: false,
            detail: None,
        });
    }

    fn info(&mut self, label: impl Into<String>, passed: bool, detail: Option<String>) {
        self.checks.push(Check {
            label: label.into(),
            passed,
            informational: true,
            detail,
        });
    }

    /// Records a fallible step; errors become failed checks with the message.
    fn step<T>(&mut self, label: impl Into<String>, r: Result<T>) -> Option<T> {
        let label = label.into();
        match r {
            Ok(v) => {
                self.check(label, true);
                Some(v)
            }
            Err(e) => {
                self.checks.push(Check {
                    label,
                    passed: false,
                    informational: false,
                    detail: Some(e.to_string()),
                });
                None
            }
        }
    }
}

pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi)
        .filter(|&p| classical::check_prime(p).is_ok())
        .collect()
}

pub fn run(suite: Suite, bounds: &Bounds) -> SuiteReport {
    let start = Instant::now();
    let mut rec = Recorder::default();
    match suite {
        Suite::Cauchy => cauchy(&mut rec, bounds.max_p.unwrap_or(31)),
        Suite::Granville => granville(&mut rec, bounds.max_p.unwrap_or(19)),
        Suite::Catalan => catalan(&mut rec, &bounds.catalan_exponents),
        Suite::Roundtrip => roundtrip(&mut rec, bounds.cases, bounds.seed),
        Suite::Lemmas => lemmas(&mut rec, bounds.invariants_per_map, bounds.seed),
    }
    SuiteReport {
        suite,
        checks: rec.checks,
        elapsed: start.elapsed(),
    }
}

fn cauchy(rec: &mut Recorder, max_p: u64) {
    for p in primes_between(5, max_p) {
        // cauchy_factorization verifies degree and integrality itself
        let Some(fac) = rec.step(
            format!("p = {p}: K_p = p t (t+1) (t^2+t+1)^e C_p"),
            classical::cauchy_factorization(p),
        ) else {
            continue;
        };
        let e_ok = fac.e == if p % 6 == 1 { 2 } else { 1 };
        rec.check(format!("p = {p}: e = {} matches p mod 6", fac.e), e_ok);
        rec.check(
            format!("p = {p}: deg C_p = {}", p - 3 - 2 * u64::from(fac.e)),
            fac.cauchy.degree_in_z() == p as i64 - 3 - 2 * i64::from(fac.e)
                && fac.cauchy.has_integer_coefficients(),
        );
        let by_division = rec.step(
            format!("p = {p}: E2 = F_p / (p x y (x+y)) = (x^2+xy+y^2)^e C_p(x,y)"),
            classical::e2_by_division(p),
        );
        let closed = classical::e2_closed_form(p);
        if let (Some(d), Ok(c)) = (&by_division, &closed) {
            rec.check(
                format!("p = {p}: E2 closed form equals the quotient"),
                d == c,
            );
        } else if let Err(e) = closed {
            rec.step::<()>(format!("p = {p}: E2 closed form"), Err(e));
        }
        rec.step(
            format!("p = {p}: F_p(t y, y) = y^p K_p(t)"),
            classical::dehomogenization_holds(p).and_then(|ok| {
                ok.then_some(()).ok_or_else(|| {
                    crate::Error::VerificationFailed("dehomogenization differs".into())
                })
            }),
        );
    }
}

fn e3_identities(rec: &mut Recorder, p: u64, exp: &E3Expansion) {
    let report = classical::xy_identity(exp);
    rec.check(
        format!("p = {p}: a_n + xy a_(n-1) = (x+y)^(p-3)"),
        report.holds(),
    );
    for m in 0..exp.n as usize {
        if let Ok(r) = classical::conjecture_report(exp, m) {
            rec.info(
                format!("p = {p}, m = {m}: a_(n-m) + xy a_(n-m-1) = a_(n-m)^(1) (x+y)^(p-2m-3)"),
                r.identity.holds(),
                Some(format!("a_(n-m)^(1) = {}", r.leading)),
            );
        }
    }
    let obs = classical::coefficient_observations(exp);
    rec.info(
        format!("p = {p}: a_(n-1)^(1) = a_n^(2)"),
        obs.first_holds(),
        Some(format!("{} vs {}", obs.a_n_minus_1_first, obs.a_n_second)),
    );
    rec.info(
        format!("p = {p}: a_n^(2) = (p-3)/2"),
        obs.second_holds(),
        Some(format!("{} vs {}", obs.a_n_second, obs.half_p_minus_3)),
    );
}

fn granville(rec: &mut Recorder, max_p: u64) {
    for p in primes_between(5, max_p) {
        // e3_by_division checks integrality, S3 symmetry, invariance and E3(z=0) = E2
        let Some(e3) = rec.step(
            format!("p = {p}: E3 integral, symmetric, invariant, E3(x,y,0) = E2"),
            classical::e3_by_division(p),
        ) else {
            continue;
        };
        rec.step(
            format!("p = {p}: alternative sum for E3 agrees"),
            classical::e3_alternative(p),
        );
        let Some(exp) = rec.step(
            format!(
                "p = {p}: E3 = sum a_j b^(n-j), n = {}, a_0 = 1, a_n = E2",
                (p - 3) / 2
            ),
            classical::e3_expansion(p),
        ) else {
            continue;
        };
        rec.check(
            format!("p = {p}: expansion reproduces E3"),
            exp.expand() == e3,
        );
        if p == 7 {
            let a1 = parse("2*x^2 + 3*x*y + 2*y^2", &Context::xyz()).unwrap();
            rec.check("p = 7: a_1 = 2x^2 + 3xy + 2y^2", exp.coeffs[1] == a1);
        }
        e3_identities(rec, p, &exp);
    }
}

fn catalan(rec: &mut Recorder, exponents: &[u64]) {
    for &n in exponents {
        let r = classical::catalan_check(n);
        let holds = r.as_ref().is_ok_and(|r| r.holds());
        match r {
            Ok(_) => rec.check(format!("n = {n}: Catalan identity"), holds),
            Err(e) => {
                rec.step::<()>(format!("n = {n}: Catalan identity"), Err(e));
            }
        }
    }
}

// ---- random instances ----

const X_NAMES: [&str; 3] = ["x", "y", "u"];

/// Context with `n` x-variables plus `z` over ℚ(ζ_M).
pub fn random_context(n: usize, m: u32) -> Context {
    let mut names: Vec<&str> = X_NAMES[..n].to_vec();
    names.push("z");
    Context::new(&names, CycloField::new(m).expect("m >= 1")).expect("valid names")
}

fn random_scalar<R: Rng>(rng: &mut R, field: &CycloField) -> CycloNum {
    let coeffs = (0..field.degree())
        .map(|i| {
            if i == 0 || rng.random_bool(0.3) {
                crate::arith::rat(rng.random_range(-3..=3))
            } else {
                crate::arith::rat(0)
            }
        })
        .collect();
    field.element(coeffs)
}

/// Random polynomial free of `z` with total degree ≤ `max_deg` and at most
/// `max_terms` terms.
pub fn random_x_poly<R: Rng>(rng: &mut R, ctx: &Context, max_deg: u32, max_terms: usize) -> MPoly {
    let n = ctx.slots() - 1;
    let terms = rng.random_range(1..=max_terms);
    let mut acc = ctx.zero();
    for _ in 0..terms {
        let mut e = vec![0u32; n + 1];
        let deg = rng.random_range(0..=max_deg);
        for _ in 0..deg {
            e[rng.random_range(0..n)] += 1;
        }
        acc = &acc + &ctx.term(Monomial::new(e), random_scalar(rng, ctx.field()));
    }
    acc
}

/// A random m-adequate map over ℚ(ζ_m) with `m ∈ {1, 2, 3, 4, 6}`, one to
/// three x-variables and `deg r ≤ 2`.
pub fn random_adequate_map<R: Rng>(rng: &mut R) -> AdequateMap {
    let m = [1u32, 2, 3, 4, 6][rng.random_range(0..5)];
    let n = rng.random_range(1..=3);
    let ctx = random_context(n, m);
    if m == 1 {
        return AdequateMap::identity(&ctx);
    }
    let units: Vec<u32> = (1..m).filter(|&j| gcd(j, m) == 1).collect();
    let q = ctx
        .field()
        .generator()
        .pow(units[rng.random_range(0..units.len())]);
    let r = if rng.random_bool(0.2) {
        ctx.zero()
    } else {
        random_x_poly(rng, &ctx, 2, 2)
    };
    AdequateMap::new(&ctx, q, r).expect("q is a primitive m-th root of unity")
}

/// Coefficients `G₀..G_d` (`d ≤ max_deg`, each free of `z`, `G_d ≠ 0`).
pub fn random_coefficients<R: Rng>(rng: &mut R, ctx: &Context, max_deg: usize) -> Vec<MPoly> {
    let d = rng.random_range(0..=max_deg);
    let mut coeffs: Vec<MPoly> = (0..=d)
        .map(|_| {
            if rng.random_bool(0.2) {
                ctx.zero()
            } else {
                random_x_poly(rng, ctx, 2, 2)
            }
        })
        .collect();
    while coeffs[d].is_zero() {
        coeffs[d] = random_x_poly(rng, ctx, 2, 2);
    }
    coeffs
}

/// A random invariant of `map`, as its coefficient list and expansion.
pub fn random_invariant<R: Rng>(
    rng: &mut R,
    map: &AdequateMap,
    max_deg: usize,
) -> (Vec<MPoly>, MPoly) {
    let coeffs = random_coefficients(rng, map.context(), max_deg);
    let f = expand(&coeffs, &map.generator());
    (coeffs, f)
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn roundtrip(rec: &mut Recorder, cases: usize, seed: u64) {
    let mut rng = seeded_rng(seed);
    let mut ok = 0;
    for i in 0..cases {
        let map = random_adequate_map(&mut rng);
        let (coeffs, f) = random_invariant(&mut rng, &map, 4);
        let back = map.decompose(&f, None);
        let passed = back.as_ref().is_ok_and(|d| d.coeffs == coeffs);
        if passed {
            ok += 1;
        } else {
            rec.checks.push(Check {
                label: format!(
                    "case {i}: m = {}, map z -> {}",
                    map.order(),
                    map.polynomial()
                ),
                passed: false,
                informational: false,
                detail: Some(match back {
                    Ok(d) => format!("got {} coefficients back", d.coeffs.len()),
                    Err(e) => e.to_string(),
                }),
            });
        }
    }
    rec.check(
        format!("decompose(expand(G)) = G: {ok}/{cases}"),
        ok == cases,
    );
}

/// The fixed maps exercised by the lemma suite, as `(field index, z-image)`
/// over `x, y, z`.
pub const LEMMA_MAPS: [(u32, &str); 9] = [
    (1, "z"),
    (1, "-(x+y+z)"),
    (1, "-z"),
    (3, "w*z"),
    (3, "w*z + x"),
    (3, "-w*z + y"),
    (4, "w*z"),
    (4, "w*z + x^2 - y"),
    (6, "w*z + x*y"),
];

pub fn lemma_map(m: u32, image: &str) -> AdequateMap {
    let ctx = Context::new(&["x", "y", "z"], CycloField::new(m).unwrap()).unwrap();
    AdequateMap::from_polynomial(&parse(image, &ctx).unwrap()).unwrap()
}

fn lemmas(rec: &mut Recorder, per_map: usize, seed: u64) {
    let mut rng = seeded_rng(seed);
    for (field, image) in LEMMA_MAPS {
        let map = lemma_map(field, image);
        let m = map.order();
        let ctx = map.context().clone();
        let tag = format!("z -> {image} (M = {field}, m = {m})");

        rec.check(
            format!("{tag}: p_m = z (closed form and by substitution)"),
            map.iterate(m) == ctx.z() && map.iterate_by_substitution(m) == ctx.z(),
        );
        let b = map.generator();
        rec.check(
            format!("{tag}: b invariant with degree_in_z(b) = m"),
            map.is_invariant(&b) && b.degree_in_z() == i64::from(m),
        );

        let mut quotients_ok = 0;
        let mut relations_ok = 0;
        for _ in 0..per_map {
            let (_, f) = random_invariant(&mut rng, &map, 3);
            let w = &f - &f.eval_z_zero();
            let ok = map
                .lemma1_witnesses(&f)
                .is_ok_and(|qs| qs.iter().zip(map.orbit()).all(|(q, p)| q * &p == w));
            quotients_ok += usize::from(ok);
            let rel = map.leading_relations(&f);
            relations_ok +=
                usize::from(rel.is_none_or(|r| r.q_power_is_one && r.second_coefficient_holds));
        }
        rec.check(
            format!("{tag}: (F - F(x,0)) / p_k exact for every k for {quotients_ok}/{per_map} invariants"),
            quotients_ok == per_map,
        );
        rec.check(
            format!(
                "{tag}: top-coefficient relations hold for {relations_ok}/{per_map} invariants"
            ),
            relations_ok == per_map,
        );

        let witnesses = map.coprimality_report();
        let expect_nonzero = !map.r().is_zero();
        rec.check(
            format!(
                "{tag}: {} coprimality witnesses all {}",
                witnesses.len(),
                if expect_nonzero { "nonzero" } else { "zero" }
            ),
            witnesses
                .iter()
                .all(|w| w.witness.is_zero() != expect_nonzero),
        );

        if map.r().is_zero() && m > 1 {
            let z = ctx.z();
            let in_zm = random_x_poly(&mut rng, &ctx, 2, 2)
                + &random_x_poly(&mut rng, &ctx, 2, 2) * &z.pow(m)
                + &random_x_poly(&mut rng, &ctx, 1, 2) * &z.pow(2 * m);
            rec.check(
                format!("{tag}: polynomial in z^m is invariant"),
                map.is_invariant(&in_zm),
            );
            let k = rng.random_range(1..m);
            let stray = &in_zm + &z.pow(m + k);
            rec.check(
                format!(
                    "{tag}: exponent {} (not a multiple of m) is rejected",
                    m + k
                ),
                !map.is_invariant(&stray),
            );
        }
    }
}
