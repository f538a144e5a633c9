use std::fmt::Write;

use serde_json::{json, Value};

use polyinv::classical;
use polyinv::invariance::{classify_map, AdequateMap, Classification};
use polyinv::verify::{self, Bounds, Suite};
use polyinv::{format, parse, Context, CycloField, Error, MPoly};

use crate::args::{Cli, Command, Selection};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A mathematical check failed or the input is not invariant.
    Failed,
    Usage,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::Usage => "usage_error",
        }
    }
}

pub struct Outcome {
    pub command: &'static str,
    pub status: Status,
    pub data: Value,
    pub text: String,
    pub diagnostic: Option<String>,
}

impl Outcome {
    fn ok(command: &'static str, data: Value, text: String) -> Self {
        Outcome {
            command,
            status: Status::Ok,
            data,
            text,
            diagnostic: None,
        }
    }

    fn usage(command: &'static str, msg: impl Into<String>) -> Self {
        let msg = msg.into();
        Outcome {
            command,
            status: Status::Usage,
            data: json!({ "error": msg }),
            text: String::new(),
            diagnostic: Some(msg),
        }
    }

    fn failed(command: &'static str, data: Value, text: String, msg: impl Into<String>) -> Self {
        Outcome {
            command,
            status: Status::Failed,
            data,
            text,
            diagnostic: Some(msg.into()),
        }
    }

    /// Library errors split into usage errors (bad input) and verification
    /// failures (mathematics).
    fn from_error(command: &'static str, e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::InvalidContext(_)
            | Error::InvalidFieldIndex(_)
            | Error::InvalidPrime(_)
            | Error::InvalidOddExponent(_)
            | Error::IndexOutOfRange { .. }
            | Error::ContextMismatch => Self::usage(command, e.to_string()),
            _ => Self::failed(
                command,
                json!({ "error": e.to_string() }),
                String::new(),
                e.to_string(),
            ),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Usage => 2,
        }
    }
}

pub fn dispatch(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Classify { map } => {
            with_context("classify", &g.vars, g.field, |ctx| classify(ctx, map))
        }
        Command::Decompose {
            map,
            poly,
            generator,
        } => with_context("decompose", &g.vars, g.field, |ctx| {
            decompose(ctx, map, poly, generator.as_deref())
        }),
        Command::Fermat { p, with_e3 } => fermat(*p, *with_e3),
        Command::Catalan { n } => catalan(*n),
        Command::Suite {
            selection,
            max_p,
            cases,
            seed,
        } => suite(
            *selection,
            &Bounds {
                max_p: *max_p,
                cases: *cases,
                seed: *seed,
                ..Bounds::default()
            },
        ),
    }
}

fn with_context(
    command: &'static str,
    vars: &[String],
    field: u32,
    body: impl FnOnce(&Context) -> Result<Outcome, Error>,
) -> Outcome {
    if vars.last().map(String::as_str) != Some("z") {
        return Outcome::usage(command, "--vars must end with `z`");
    }
    let ctx = match CycloField::new(field).and_then(|f| Context::new(vars, f)) {
        Ok(ctx) => ctx,
        Err(e) => return Outcome::usage(command, e.to_string()),
    };
    body(&ctx).unwrap_or_else(|e| Outcome::from_error(command, e))
}

fn strings(polys: &[MPoly]) -> Vec<String> {
    polys.iter().map(format).collect()
}

fn adequate_details(map: &AdequateMap, text: &mut String) -> Value {
    let orbit = map.orbit();
    let b = map.generator();
    let report = map.coprimality_report();
    writeln!(text, "m = {}", map.order()).unwrap();
    writeln!(text, "q = {}", map.q()).unwrap();
    writeln!(text, "r = {}", map.r()).unwrap();
    for (k, p) in orbit.iter().enumerate() {
        writeln!(text, "p_{k} = {p}").unwrap();
    }
    writeln!(text, "b = {b}").unwrap();
    for w in &report {
        writeln!(
            text,
            "resultant(p_{}, p_{}) = {} ({})",
            w.j,
            w.k,
            w.witness,
            if w.witness.is_zero() {
                "common factor"
            } else {
                "coprime"
            }
        )
        .unwrap();
    }
    json!({
        "m": map.order(),
        "q": map.q().to_string(),
        "r": format(map.r()),
        "orbit": strings(&orbit),
        "generator": format(&b),
        "coprimality": report.iter().map(|w| json!({
            "j": w.j,
            "k": w.k,
            "witness": format(&w.witness),
            "coprime": !w.witness.is_zero(),
        })).collect::<Vec<_>>(),
    })
}

fn classify(ctx: &Context, map_src: &str) -> Result<Outcome, Error> {
    let p = parse(map_src, ctx)?;
    let class = classify_map(&p);
    let mut text = String::new();
    writeln!(text, "map: z -> {p}").unwrap();
    writeln!(text, "classification: {}", class.name()).unwrap();
    writeln!(text, "reason: {}", class.explanation()).unwrap();
    let mut data = json!({
        "map": format(&p),
        "variant": class.name(),
        "explanation": class.explanation(),
        "nonconstant_invariants": class.has_nonconstant_invariants(),
    });
    let extra = match &class {
        Classification::Identity => adequate_details(&AdequateMap::identity(ctx), &mut text),
        Classification::Adequate(map) => adequate_details(map, &mut text),
        Classification::NonlinearInZ { degree } => json!({ "degree_in_z": degree }),
        Classification::UnitNotRootOfUnity { q } => json!({ "q": q.to_string() }),
        Classification::TranslationLike { r } => json!({ "r": format(r) }),
        Classification::NonconstantLeading { leading } => json!({ "leading": format(leading) }),
    };
    if let (Value::Object(d), Value::Object(e)) = (&mut data, extra) {
        d.extend(e);
    }
    Ok(Outcome::ok("classify", data, text))
}

fn decompose(
    ctx: &Context,
    map_src: &str,
    poly_src: &str,
    generator_src: Option<&str>,
) -> Result<Outcome, Error> {
    let p = parse(map_src, ctx)?;
    let f = parse(poly_src, ctx)?;
    let generator = generator_src.map(|g| parse(g, ctx)).transpose()?;
    let map = AdequateMap::from_polynomial(&p)?;
    let dec = match map.decompose(&f, generator.as_ref()) {
        Ok(d) => d,
        Err(Error::NotInvariant(why)) => {
            let data = json!({
                "map": format(&p),
                "poly": format(&f),
                "image": format(&map.apply(&f)?),
                "reason": why,
            });
            let text = format!("not invariant under z -> {p}\nT(F) = {}\n", map.apply(&f)?);
            return Ok(Outcome::failed(
                "decompose",
                data,
                text,
                format!("not invariant: {why}"),
            ));
        }
        Err(e) => return Err(e),
    };
    let verified = dec.expand() == f;
    let mut text = String::new();
    writeln!(text, "map: z -> {p} (m = {})", map.order()).unwrap();
    writeln!(text, "b = {}", dec.generator).unwrap();
    for (j, c) in dec.coeffs.iter().enumerate() {
        writeln!(text, "G_{j} = {c}").unwrap();
    }
    writeln!(
        text,
        "check: sum G_j b^j {} F",
        if verified { "==" } else { "!=" }
    )
    .unwrap();
    let data = json!({
        "map": format(&p),
        "m": map.order(),
        "poly": format(&f),
        "generator": format(&dec.generator),
        "indexing": "coefficients[j] multiplies generator^j",
        "coefficients": strings(&dec.coeffs),
        "verified": verified,
    });
    if verified {
        Ok(Outcome::ok("decompose", data, text))
    } else {
        Ok(Outcome::failed(
            "decompose",
            data,
            text,
            "expansion does not reproduce the input",
        ))
    }
}

fn fermat(p: u64, with_e3: bool) -> Outcome {
    let run = || -> Result<Outcome, Error> {
        let fac = classical::cauchy_factorization(p)?;
        let e2 = classical::e2_by_division(p)?;
        let exp = classical::e3_expansion(p)?;
        let xy = classical::xy_identity(&exp);
        let obs = classical::coefficient_observations(&exp);
        let conj: Vec<_> = (0..exp.n as usize)
            .map(|m| classical::conjecture_report(&exp, m))
            .collect::<Result<_, _>>()?;

        let mut text = String::new();
        writeln!(text, "p = {p}, e = {}", fac.e).unwrap();
        writeln!(text, "C_p(t) = {}", fac.cauchy).unwrap();
        writeln!(text, "E2 = {e2}").unwrap();
        let e3 = with_e3.then(|| exp.expand());
        if let Some(e3) = &e3 {
            writeln!(text, "E3 = {e3}").unwrap();
        }
        writeln!(
            text,
            "E3 = sum_j a_j b^(n-j), b = z*(x + y + z), n = {}",
            exp.n
        )
        .unwrap();
        for (j, a) in exp.coeffs.iter().enumerate() {
            writeln!(text, "  a_{j} = {a}").unwrap();
        }
        writeln!(
            text,
            "a_n + x*y*a_(n-1) = (x + y)^{}: {}",
            p - 3,
            if xy.holds() { "holds" } else { "fails" }
        )
        .unwrap();
        for r in &conj {
            writeln!(
                text,
                "m = {}: a_(n-m) + x*y*a_(n-m-1) = {}*(x + y)^{}: {}",
                r.m_index,
                r.leading,
                p as usize - 2 * r.m_index - 3,
                if r.identity.holds() { "holds" } else { "fails" }
            )
            .unwrap();
        }
        writeln!(
            text,
            "a_(n-1)^(1) = {}, a_n^(2) = {}, (p-3)/2 = {}",
            obs.a_n_minus_1_first, obs.a_n_second, obs.half_p_minus_3
        )
        .unwrap();

        let mut data = json!({
            "p": p,
            "e": fac.e,
            "cauchy": format(&fac.cauchy),
            "e2": format(&e2),
        });
        if let (Some(e3), Value::Object(d)) = (&e3, &mut data) {
            d.insert("e3".into(), format(e3).into());
        }
        if let Value::Object(d) = &mut data {
            d.insert(
                "expansion".into(),
                json!({
                    "generator": "z*(x + y + z)",
                    "n": exp.n,
                    "indexing": "coefficients[j] = a_j multiplies b^(n-j)",
                    "coefficients": strings(&exp.coeffs),
                }),
            );
            d.insert(
                "xy_identity".into(),
                json!({
                    "holds": xy.holds(),
                    "lhs": format(&xy.lhs),
                    "rhs": format(&xy.rhs),
                }),
            );
            d.insert(
                "conjecture".into(),
                conj.iter()
                    .map(|r| {
                        json!({
                            "m_index": r.m_index,
                            "leading": r.leading.to_string(),
                            "holds": r.identity.holds(),
                        })
                    })
                    .collect::<Vec<_>>()
                    .into(),
            );
            d.insert(
                "observations".into(),
                json!({
                    "a_n_minus_1_first": obs.a_n_minus_1_first.to_string(),
                    "a_n_second": obs.a_n_second.to_string(),
                    "half_p_minus_3": obs.half_p_minus_3.to_string(),
                    "first_holds": obs.first_holds(),
                    "second_holds": obs.second_holds(),
                }),
            );
        }
        Ok(Outcome::ok("fermat", data, text))
    };
    run().unwrap_or_else(|e| Outcome::from_error("fermat", e))
}

fn catalan(n: u64) -> Outcome {
    match classical::catalan_check(n) {
        Ok(r) => {
            let equal = r.holds();
            let data = json!({
                "n": n,
                "lhs": format(&r.lhs),
                "rhs": format(&r.rhs),
                "equal": equal,
            });
            let text = format!(
                "n = {n}\nlhs = {}\nrhs = {}\n{}\n",
                r.lhs,
                r.rhs,
                if equal { "equal" } else { "unequal" }
            );
            if equal {
                Outcome::ok("catalan", data, text)
            } else {
                Outcome::failed("catalan", data, text, "Catalan identity fails")
            }
        }
        Err(e) => Outcome::from_error("catalan", e),
    }
}

fn suite(selection: Selection, bounds: &Bounds) -> Outcome {
    let suites: Vec<Suite> = match selection {
        Selection::All => Suite::ALL.to_vec(),
        Selection::Granville => vec![Suite::Granville],
        Selection::Cauchy => vec![Suite::Cauchy],
        Selection::Catalan => vec![Suite::Catalan],
        Selection::Roundtrip => vec![Suite::Roundtrip],
        Selection::Lemmas => vec![Suite::Lemmas],
    };
    let mut text = String::new();
    let mut reports = Vec::new();
    let mut all_passed = true;
    for s in suites {
        let r = verify::run(s, bounds);
        all_passed &= r.passed();
        writeln!(text, "== suite {} ==", s.name()).unwrap();
        for c in &r.checks {
            writeln!(text, "{c}").unwrap();
        }
        writeln!(
            text,
            "suite {}: {} ({} checks, {:.2?})",
            s.name(),
            if r.passed() { "PASS" } else { "FAIL" },
            r.checks.len(),
            r.elapsed
        )
        .unwrap();
        reports.push(json!({
            "name": s.name(),
            "passed": r.passed(),
            "checks": r.checks.iter().map(|c| json!({
                "label": c.label,
                "passed": c.passed,
                "informational": c.informational,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        }));
    }
    writeln!(
        text,
        "overall: {}",
        if all_passed { "PASS" } else { "FAIL" }
    )
    .unwrap();
    let data = json!({
        "seed": bounds.seed,
        "cases": bounds.cases,
        "max_p": bounds.max_p,
        "passed": all_passed,
        "suites": reports,
    });
    if all_passed {
        Outcome::ok("suite", data, text)
    } else {
        Outcome::failed("suite", data, text, "one or more checks failed")
    }
}
