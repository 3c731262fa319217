//! Command-line front end. [`run`] parses arguments, executes a command
//! and renders the report, so the binary is a thin wrapper.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::accessory::{
    existence_polynomial_r4, gauss_operator, generic_fiber_counts, grid_search, nonempty_check,
    DEFAULT_BUDGET,
};
use crate::algebra::{
    roots_over, AlgebraicRatFunc, Extension, Field, FieldKind, GaloisField, Poly, PrimeField,
    RatFuncField,
};
use crate::deformation::{
    dwork_check, extract_datum, DeformationDatum, LocalInvariant, PointKind, Signature,
};
use crate::error::{Error, Result};
use crate::operators::{format_point, FuchsianOperator};
use crate::pcurvature::{classify, CurvatureClass};

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Parser, Debug)]
#[command(
    name = "pcurv",
    version,
    about = "p-curvature of second-order Fuchsian operators"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Maximal number of parameter values scanned by a search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify one normalized operator.
    Classify(ClassifyArgs),
    /// Existence polynomials or an exhaustive scan of accessory parameters.
    Search(SearchArgs),
    /// Look for a witness of nonemptiness in the logarithmic case.
    Nonempty(NonemptyArgs),
    /// Numerical invariants of a signature.
    Dimension(DimensionArgs),
    /// Reproduce a worked example.
    Example {
        #[arg(value_enum)]
        name: ExampleName,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExampleName {
    Gauss,
    P7,
    P13,
}

#[derive(Args, Debug, Serialize)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub p: u64,
    /// Exponents alpha_1..alpha_r, the last one at infinity.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Vec<u64>,
    /// Finite singularities; `L` is a transcendental parameter.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub sing: Vec<String>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub beta: Vec<String>,
    /// Degree residue in p2; derived from the exponents when omitted.
    #[arg(long)]
    pub d: Option<u64>,
    /// Value substituted for `L`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Work over F_{p^k}; elements are polynomials in `t`.
    #[arg(long)]
    pub ext: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
pub struct SearchArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Vec<u64>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub sing: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub ext: Option<usize>,
    /// Target solution degree for existence polynomials.
    #[arg(long)]
    pub degree: Option<usize>,
    /// Existence polynomials over F_p(L) (r = 4).
    #[arg(long)]
    pub generic_lambda: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct NonemptyArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub n: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct DimensionArgs {
    #[arg(long)]
    pub p: u64,
    /// Comma-separated `a:nu` pairs: singularities (infinity last), then spikes.
    #[arg(long, value_delimiter = ',')]
    pub signature: Vec<String>,
    #[arg(long)]
    pub d: Option<u64>,
    /// Number of singularities; otherwise entries with sigma = 1 mod p are spikes.
    #[arg(long)]
    pub r: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: String,
    pub config: Value,
    pub results: Value,
    pub diagnostics: Vec<String>,
}

/// Exit code, standard output and standard error of one invocation.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli).and_then(|r| render(&r, cli.format)) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::BadArity { .. }
        | Error::InvalidPrime(_)
        | Error::InvalidSignature(_)
        | Error::DuplicateSingularity(_)
        | Error::ExponentMismatch { .. } => 2,
        _ => 3,
    }
}

pub fn execute(cli: &Cli) -> Result<Report> {
    let (command, config, (results, diagnostics)) = match &cli.command {
        Command::Classify(a) => ("classify", to_value(a), cmd_classify(a)?),
        Command::Search(a) => ("search", to_value(a), cmd_search(a, cli.budget)?),
        Command::Nonempty(a) => ("nonempty", to_value(a), cmd_nonempty(a, cli.budget)?),
        Command::Dimension(a) => ("dimension", to_value(a), cmd_dimension(a)?),
        Command::Example { name } => ("example", json!({ "name": name }), cmd_example(*name)?),
    };
    let mut config = config;
    if let Value::Object(m) = &mut config {
        m.insert("budget".into(), json!(cli.budget));
    }
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        command: command.into(),
        config,
        results,
        diagnostics,
    })
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("plain data serializes")
}

pub fn render(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(report).map_err(|e| Error::Parse(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let tree = to_value(report);
            let mut rows = Vec::new();
            flatten("", &tree, &mut rows);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"])
                .map_err(|e| Error::Parse(e.to_string()))?;
            for (k, v) in rows {
                w.write_record([k, v])
                    .map_err(|e| Error::Parse(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::Parse(e.to_string()))?)
                .map_err(|e| Error::Parse(e.to_string()))
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&key(k), x, out)),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, x)| flatten(&key(&i.to_string()), x, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// Integer coefficients of a polynomial such as `3-2*L+L^2` in `var`.
pub fn parse_poly_ints(s: &str, var: &str) -> Result<Vec<i64>> {
    let err = || Error::Parse(format!("cannot read `{s}` as a polynomial in {var}"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(err());
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, c) in t.chars().enumerate() {
        if (c == '+' || c == '-') && i > 0 && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    terms.push(cur);
    let mut coeffs: Vec<i64> = Vec::new();
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, term.strip_prefix('+').unwrap_or(&term)),
        };
        let (coef, power) = match body.find(var) {
            None => (body.parse::<i64>().map_err(|_| err())?, 0usize),
            Some(pos) => {
                let c = body[..pos].trim_end_matches('*');
                let c = if c.is_empty() {
                    1
                } else {
                    c.parse::<i64>().map_err(|_| err())?
                };
                let rest = &body[pos + var.len()..];
                let e = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .and_then(|x| x.parse::<usize>().ok())
                        .ok_or_else(err)?
                };
                (c, e)
            }
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0);
        }
        coeffs[power] += sign * coef;
    }
    Ok(coeffs)
}

/// A field with a text syntax for its elements.
trait Parseable: Field {
    fn parse(&self, s: &str) -> Result<Self::Elem>;
}

impl Parseable for PrimeField {
    fn parse(&self, s: &str) -> Result<u64> {
        let c = parse_poly_ints(s, "L")?;
        if c.len() > 1 {
            return Err(Error::Parse(format!("`{s}` involves L; pass --lambda")));
        }
        Ok(self.reduce(c[0]))
    }
}

impl Parseable for RatFuncField {
    fn parse(&self, s: &str) -> Result<Self::Elem> {
        Ok(self.from_poly_ints(&parse_poly_ints(s, "L")?))
    }
}

impl Parseable for GaloisField {
    fn parse(&self, s: &str) -> Result<Self::Elem> {
        let c = parse_poly_ints(s, "t")?;
        Ok(self.from_poly(&Poly::from_ints(self.base(), &c)))
    }
}

/// JSON for a field element: an integer for prime fields, else a string.
fn elem<F: Field>(f: &F, a: &F::Elem) -> Value {
    match f.kind() {
        FieldKind::Prime { .. } => json!(f.as_prime(a)),
        _ => json!(f.format(a)),
    }
}

fn poly_json<F: Field>(p: &Poly<F>, var: &str) -> Value {
    json!({
        "degree": p.degree(),
        "coefficients": p.coeffs().iter().map(|c| elem(p.field(), c)).collect::<Vec<_>>(),
        "text": p.format_with(var),
    })
}

fn resolve_sing(sing: &[String], lambda: &Option<String>) -> Vec<String> {
    let sing: Vec<String> = if sing.is_empty() {
        vec!["0".into(), "1".into(), "L".into()]
    } else {
        sing.to_vec()
    };
    match lambda {
        Some(v) => sing
            .into_iter()
            .map(|s| if s.trim() == "L" { v.clone() } else { s })
            .collect(),
        None => sing,
    }
}

fn mentions_l(xs: &[String]) -> bool {
    xs.iter().any(|s| s.contains('L'))
}

fn cmd_classify(a: &ClassifyArgs) -> Result<(Value, Vec<String>)> {
    let sing = resolve_sing(&a.sing, &a.lambda);
    if a.alpha.len() != sing.len() + 1 {
        return Err(Error::BadArity {
            what: "alpha",
            expected: sing.len() + 1,
            got: a.alpha.len(),
        });
    }
    let r = a.alpha.len();
    if r >= 3 && a.beta.len() != r - 3 {
        return Err(Error::BadArity {
            what: "beta",
            expected: r - 3,
            got: a.beta.len(),
        });
    }
    let d = match a.d {
        Some(d) => d,
        None => crate::accessory::riemann_degree(a.p, &a.alpha)?,
    };
    if let Some(k) = a.ext {
        classify_in(&Extension::galois(a.p, k)?, &sing, &a.alpha, &a.beta, d)
    } else if mentions_l(&sing) || mentions_l(&a.beta) {
        classify_in(&RatFuncField::new(a.p, "L")?, &sing, &a.alpha, &a.beta, d)
    } else {
        classify_in(&PrimeField::new(a.p)?, &sing, &a.alpha, &a.beta, d)
    }
}

fn classify_in<F: Parseable>(
    f: &F,
    sing: &[String],
    alpha: &[u64],
    beta: &[String],
    d: u64,
) -> Result<(Value, Vec<String>)> {
    let sing = sing
        .iter()
        .map(|s| f.parse(s))
        .collect::<Result<Vec<_>>>()?;
    let beta = beta
        .iter()
        .map(|s| f.parse(s))
        .collect::<Result<Vec<_>>>()?;
    let l = FuchsianOperator::make_normalized(f.clone(), sing, alpha, beta, d)?;
    classification_json(&l)
}

/// JSON view of the classification of `l`, with the extracted datum when the p-curvature is nilpotent nonzero.
pub fn classification_json<F: Field>(l: &FuchsianOperator<F>) -> Result<(Value, Vec<String>)> {
    let f = l.field();
    let rep = classify(l)?;
    let mut diagnostics = Vec::new();
    let mut out = Map::new();
    out.insert("field".into(), json!(f.kind().to_string()));
    out.insert("class".into(), json!(rep.class));
    if let Some(reason) = &rep.reason {
        out.insert("reason".into(), json!(reason));
    }
    if let Some(ex) = &rep.exponents {
        let ex: Vec<Value> = ex
            .iter()
            .map(|e| json!({ "point": format_point(f, &e.point), "alpha": e.alpha, "alpha_prime": e.alpha_prime, "t": e.t }))
            .collect();
        out.insert("exponents".into(), json!(ex));
    }
    if let Some(s) = &rep.solutions {
        out.insert("search_bound".into(), json!(s.search_bound));
        out.insert("rank_mod_p_powers".into(), json!(s.rank_mod_p_powers));
        out.insert(
            "minimal_solution".into(),
            s.minimal.as_ref().map(|(u, _)| poly_json(u, "x")).into(),
        );
        out.insert(
            "second_solution".into(),
            s.second.as_ref().map(|(u, _)| poly_json(u, "x")).into(),
        );
    }
    if rep.class == CurvatureClass::NilpotentNonzero {
        let u = rep
            .solutions
            .as_ref()
            .and_then(|s| s.minimal.clone())
            .unwrap()
            .0;
        let datum = match extract_datum(l, &u) {
            Err(e @ Error::UMeetsSingularity(_)) => {
                diagnostics.push(format!("no datum: {e}"));
                out.insert("datum".into(), Value::Null);
                return Ok((Value::Object(out), diagnostics));
            }
            other => other?,
        };
        let dw = dwork_check(l, &datum)?;
        let (mut dj, mut diag) = datum_json(&datum);
        dj.insert("dwork".into(), to_value(&dw));
        out.insert("datum".into(), Value::Object(dj));
        diagnostics.append(&mut diag);
    }
    Ok((Value::Object(out), diagnostics))
}

fn datum_json<F: Field>(datum: &DeformationDatum<F>) -> (Map<String, Value>, Vec<String>) {
    let f = &datum.field;
    let p = datum.p;
    let points: Vec<Value> = datum
        .critical_points
        .iter()
        .map(|c| {
            json!({
                "location": c.location.format(f),
                "kind": c.kind,
                "a": c.inv.a,
                "nu": c.inv.nu,
                "sigma": c.inv.sigma_string(p),
                "n_x": c.n_x,
                "n_x_ord": c.n_x_ord,
                "m": c.inv.m(p),
                "h": c.inv.h(p),
                "epsilon": c.inv.epsilon(p),
            })
        })
        .collect();
    let sig = datum.signature();
    let mut m = Map::new();
    m.insert("signature".into(), json!(datum.sigma_strings()));
    m.insert("critical_points".into(), json!(points));
    m.insert("d".into(), json!(datum.d));
    m.insert("n".into(), json!(datum.strength_n));
    m.insert("spikes".into(), json!(datum.spike_count()));
    m.insert("eps_pm1".into(), elem(f, &datum.eps_pm1));
    m.insert("u".into(), poly_json(&datum.u, "x"));
    m.insert("q".into(), poly_json(&datum.q, "x"));
    let mut diagnostics = datum.diagnostics.clone();
    let (sj, mut sd) = signature_json(&sig);
    diagnostics.append(&mut sd);
    m.insert("invariants".into(), sj);
    (m, diagnostics)
}

/// JSON view of a signature: invariants, validation and dimension.
pub fn signature_json(sig: &Signature) -> (Value, Vec<String>) {
    let mut diagnostics = Vec::new();
    let mut m = Map::new();
    m.insert("p".into(), json!(sig.p));
    m.insert("r".into(), json!(sig.r()));
    m.insert("d".into(), json!(sig.d));
    let sigmas: Vec<String> = sig
        .singular
        .iter()
        .chain(&sig.spikes)
        .map(|i| i.sigma_string(sig.p))
        .collect();
    m.insert("sigma".into(), json!(sigmas));
    m.insert("strength".into(), sig.strength().ok().into());
    let violations: Vec<String> = sig
        .validate()
        .into_iter()
        .map(|v| format!("{}: {}", v.constraint, v.detail))
        .collect();
    m.insert("violations".into(), json!(violations));
    m.insert("kummer".into(), to_value(&sig.kummer_exponents()));
    m.insert("epsilon".into(), json!(sig.epsilon_invariants()));
    match sig.log_space_dim() {
        Ok((dim, n)) => {
            m.insert("log_space_dim".into(), json!(dim));
            m.insert("N".into(), json!(n));
        }
        Err(e) => diagnostics.push(format!("log_space_dim: {e}")),
    }
    match sig.deformation_dimension() {
        Ok(d) => {
            if !d.readings_differ.is_empty() {
                diagnostics.push(format!(
                    "epsilon with 0 <= j <= nu differs at points {:?} (dimension {} instead of {})",
                    d.readings_differ, d.dim_literal, d.dim
                ));
            }
            m.insert("dimension".into(), to_value(&d));
        }
        Err(e) => diagnostics.push(format!("deformation_dimension: {e}")),
    }
    (Value::Object(m), diagnostics)
}

fn cmd_search(a: &SearchArgs, budget: u64) -> Result<(Value, Vec<String>)> {
    if let Some(r) = a.r {
        if r != a.alpha.len() {
            return Err(Error::BadArity {
                what: "alpha",
                expected: r,
                got: a.alpha.len(),
            });
        }
    }
    if a.generic_lambda {
        if a.alpha.len() != 4 {
            return Err(Error::BadArity {
                what: "alpha",
                expected: 4,
                got: a.alpha.len(),
            });
        }
        let degrees: Vec<usize> = match a.degree {
            Some(n) => vec![n],
            None => {
                let res = crate::accessory::degree_residues(a.p, &a.alpha)?;
                (0..a.p as usize)
                    .filter(|n| res.contains(&(*n as u64 % a.p)))
                    .collect()
            }
        };
        let mut out = Vec::new();
        for n in degrees {
            out.push(existence_json(a.p, &a.alpha, n)?);
        }
        return Ok((
            json!({ "singularities": ["0", "1", "L", "inf"], "existence": out }),
            Vec::new(),
        ));
    }
    let sing = resolve_sing(&a.sing, &a.lambda);
    if a.alpha.len() != sing.len() + 1 {
        return Err(Error::BadArity {
            what: "alpha",
            expected: sing.len() + 1,
            got: a.alpha.len(),
        });
    }
    let rep = match a.ext {
        Some(k) => {
            let f = Extension::galois(a.p, k)?;
            let s = sing
                .iter()
                .map(|x| f.parse(x))
                .collect::<Result<Vec<_>>>()?;
            grid_search(&f, &a.alpha, &s, budget)?
        }
        None => {
            let f = PrimeField::new(a.p)?;
            let s = sing
                .iter()
                .map(|x| f.parse(x))
                .collect::<Result<Vec<_>>>()?;
            grid_search(&f, &a.alpha, &s, budget)?
        }
    };
    let diagnostics = rep.wall_notes.clone();
    Ok((to_value(&rep), diagnostics))
}

fn existence_json(p: u64, alpha: &[u64], n: usize) -> Result<Value> {
    let e = existence_polynomial_r4(p, alpha, n)?;
    let f = e.field().clone();
    let roots = if e.is_zero() {
        Vec::new()
    } else {
        roots_over(&f, &e)?
    };
    let mut rest = e.clone();
    for b in &roots {
        rest = rest.div_exact(&Poly::linear(&f, b)).unwrap();
    }
    Ok(json!({
        "degree": n,
        "polynomial": poly_json(&e, "b"),
        "roots_in_base": roots.iter().map(|b| f.format(b)).collect::<Vec<_>>(),
        "remaining_factor_degree": rest.deg0(),
    }))
}

fn cmd_nonempty(a: &NonemptyArgs, budget: u64) -> Result<(Value, Vec<String>)> {
    let rep = nonempty_check(a.p, a.r, a.n, budget)?;
    Ok((to_value(&rep), rep.notes.clone()))
}

pub fn parse_signature(
    p: u64,
    entries: &[String],
    r: Option<usize>,
    d: Option<u64>,
) -> Result<Signature> {
    PrimeField::new(p)?;
    let mut invs = Vec::new();
    for e in entries {
        let (a, nu) = e
            .split_once(':')
            .and_then(|(a, n)| Some((a.trim().parse::<u64>().ok()?, n.trim().parse::<u64>().ok()?)))
            .ok_or_else(|| Error::Parse(format!("signature entry `{e}` is not a:nu")))?;
        if a >= p - 1 {
            return Err(Error::InvalidSignature(format!(
                "a = {a} must be below p - 1"
            )));
        }
        invs.push(LocalInvariant::new(a, nu));
    }
    let (singular, spikes): (Vec<_>, Vec<_>) = match r {
        Some(r) if r <= invs.len() => {
            let spikes = invs.split_off(r);
            (invs, spikes)
        }
        Some(r) => {
            return Err(Error::BadArity {
                what: "signature",
                expected: r,
                got: invs.len(),
            })
        }
        None => {
            let split = invs
                .iter()
                .rposition(|i| !i.is_spike_like(p))
                .map_or(0, |k| k + 1);
            let spikes = invs.split_off(split);
            (invs, spikes)
        }
    };
    match d {
        Some(d) => Ok(Signature {
            p,
            singular,
            spikes,
            d,
        }),
        None => Signature::with_derived_d(p, singular, spikes),
    }
}

fn cmd_dimension(a: &DimensionArgs) -> Result<(Value, Vec<String>)> {
    let sig = parse_signature(a.p, &a.signature, a.r, a.d)?;
    let (v, diag) = signature_json(&sig);
    let kinds: Vec<PointKind> = sig
        .all_points()
        .into_iter()
        .map(|(k, _)| k)
        .filter(|k| *k != PointKind::Supersingular)
        .collect();
    let mut v = v;
    if let Value::Object(m) = &mut v {
        m.insert("kinds".into(), to_value(&kinds));
    }
    Ok((v, diag))
}

fn binomial_mod(n: u64, k: u64, p: u64) -> u64 {
    let f = PrimeField::new(p).unwrap();
    let mut num = 1;
    let mut den = 1;
    for i in 0..k {
        num = f.mul(&num, &f.reduce((n - i) as i64));
        den = f.mul(&den, &f.reduce((i + 1) as i64));
    }
    f.mul(&num, &f.inv(&den).unwrap())
}

/// `sum_{i <= (p-1)/2} binom(m, i)^2 t^i` over F_p.
pub fn binomial_square_sum(p: u64, m: u64) -> Poly<PrimeField> {
    let f = PrimeField::new(p).unwrap();
    let c: Vec<u64> = (0..=(p - 1) / 2)
        .map(|i| f.pow(&binomial_mod(m, i, p), 2))
        .collect();
    Poly::new(f, c)
}

fn example_gauss() -> Result<(Value, Vec<String>)> {
    let mut ops = Vec::new();
    let mut diagnostics = Vec::new();
    for p in [5u64, 7, 13] {
        let l = gauss_operator(p)?;
        let (mut v, mut d) = classification_json(&l)?;
        diagnostics.append(&mut d);
        let u = classify(&l)?.solutions.and_then(|s| s.minimal).unwrap().0;
        let hasse = binomial_square_sum(p, (p - 1) / 2);
        let variant = binomial_square_sum(p, p - 1);
        if variant != u {
            diagnostics.push(format!(
                "p = {p}: sum binom(p-1, i)^2 t^i = {} is not the solution {}",
                variant.format_with("t"),
                u.format_with("t")
            ));
        }
        if let Value::Object(m) = &mut v {
            m.insert("p".into(), json!(p));
            m.insert("hasse_matches".into(), json!(hasse == u));
            m.insert("hasse".into(), poly_json(&hasse, "t"));
        }
        ops.push(v);
    }
    Ok((json!({ "operators": ops }), diagnostics))
}

fn algebraic(p: u64, coeffs: &[&[i64]]) -> Result<AlgebraicRatFunc> {
    let base = RatFuncField::new(p, "L")?;
    let c = coeffs.iter().map(|c| base.from_poly_ints(c)).collect();
    Extension::new(base.clone(), Poly::new(base, c).monic(), "b")
}

fn family_operator<F: Field>(
    f: &F,
    lambda: F::Elem,
    alpha: &[u64],
    beta: F::Elem,
    d: u64,
) -> Result<FuchsianOperator<F>> {
    FuchsianOperator::make_normalized(
        f.clone(),
        vec![f.zero(), f.one(), lambda],
        alpha,
        vec![beta],
        d,
    )
}

fn example_p7() -> Result<(Value, Vec<String>)> {
    let alpha = [5u64, 5, 5, 5];
    let mut diagnostics = Vec::new();
    let existence = vec![existence_json(7, &alpha, 2)?, existence_json(7, &alpha, 4)?];
    let f = RatFuncField::new(7, "L")?;
    let mut roots = Vec::new();
    for b in roots_over(&f, &existence_polynomial_r4(7, &alpha, 2)?)? {
        let l = family_operator(&f, f.gen(), &alpha, b.clone(), 2)?;
        let (mut v, mut d) = classification_json(&l)?;
        diagnostics.append(&mut d);
        if let Value::Object(m) = &mut v {
            m.insert("beta".into(), json!(f.format(&b)));
        }
        roots.push(v);
    }
    let conic = algebraic(7, &[&[1, 3, 1], &[1, 1], &[5]])?;
    let l = family_operator(&conic, conic.embed(&f.gen()), &alpha, conic.gen(), 2)?;
    let (zero, mut d) = classification_json(&l)?;
    diagnostics.append(&mut d);
    let fiber = generic_fiber_counts(7, 2, &alpha, 3)?;
    Ok((
        json!({
            "alpha": alpha,
            "existence": existence,
            "degree_2_roots": roots,
            "degree_4_locus": zero,
            "fiber": fiber,
        }),
        diagnostics,
    ))
}

fn example_p13() -> Result<(Value, Vec<String>)> {
    let alpha = [11u64, 11, 11, 10];
    let mut diagnostics = Vec::new();
    let existence = vec![
        existence_json(13, &alpha, 1)?,
        existence_json(13, &alpha, 4)?,
    ];
    let base = RatFuncField::new(13, "L")?;
    let mut families = Vec::new();
    for (coeffs, d) in [
        (&[&[0, 1][..], &[7, 7], &[1]][..], 1u64),
        (&[&[1, 9, 9, 1][..], &[2, 4, 2], &[8, 8], &[2]][..], 4),
    ] {
        let f = algebraic(13, coeffs)?;
        let alpha_d = if d == 1 { alpha } else { [11, 11, 11, 3] };
        let l = family_operator(&f, f.embed(&base.gen()), &alpha_d, f.gen(), d)?;
        let (mut v, mut dg) = classification_json(&l)?;
        diagnostics.append(&mut dg);
        if let Value::Object(m) = &mut v {
            m.insert("alpha".into(), json!(alpha_d));
        }
        families.push(v);
    }
    let fiber = generic_fiber_counts(13, 2, &alpha, 3)?;
    Ok((
        json!({ "alpha": alpha, "existence": existence, "families": families, "fiber": fiber }),
        diagnostics,
    ))
}

fn cmd_example(name: ExampleName) -> Result<(Value, Vec<String>)> {
    match name {
        ExampleName::Gauss => example_gauss(),
        ExampleName::P7 => example_p7(),
        ExampleName::P13 => example_p13(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_syntax() {
        assert_eq!(parse_poly_ints("3-2*L+L^2", "L").unwrap(), vec![3, -2, 1]);
        assert_eq!(parse_poly_ints("-L", "L").unwrap(), vec![0, -1]);
        assert_eq!(parse_poly_ints("2t", "t").unwrap(), vec![0, 2]);
        assert!(parse_poly_ints("x+1", "L").is_err());
    }

    #[test]
    fn signature_kinds() {
        let e: Vec<String> = "2:0,2:0,2:0,3:0,1:2".split(',').map(String::from).collect();
        let s = parse_signature(13, &e, None, None).unwrap();
        assert_eq!((s.singular.len(), s.spikes.len(), s.d), (4, 1, 1));
    }
}
