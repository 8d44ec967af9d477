//! Command-line front end.
//!
//! Every subcommand can print JSON (`--json`); the text output is rendered
//! from the same JSON value so the two never disagree. Exit codes: `0` for
//! success or an exact answer, `2` for an interval or an inconclusive search,
//! `1` for errors.

pub mod cache;
pub mod identities;
pub mod json;
pub mod parse;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::binform::BinaryForm;
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, FieldDescriptor, FieldElement};
use crate::oracle::{brute_force_min_length_q, expand_raw_terms, SearchBudget};
use crate::special::{cabinet, gamma_square_search, gamma_witness, length_over_field};
use crate::sylvester::SearchOptions;

use cache::{cache_key, parse_key, ResultCache};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "binlength", version, about = "Exact lengths of binary forms as sums of powers of linear forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Height bound for kernel and witness searches.
    #[arg(long, global = true, default_value_t = 64)]
    pub height: u64,
    /// JSON-lines result cache (off unless given).
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,
    /// Recompute a random tenth of the cache and compare before running.
    #[arg(long, global = true, requires = "cache")]
    pub audit: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct FormInput {
    /// Form as a sum of monomials, e.g. `3x^5-20x^3y^2+10xy^4`.
    #[arg(long, allow_hyphen_values = true)]
    pub form: Option<String>,
    /// Raw coefficients of `x^d, x^(d-1) y, ..., y^d`, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
}

impl FormInput {
    pub fn parse(&self) -> Result<BinaryForm> {
        match (&self.form, &self.coeffs) {
            (Some(t), _) => parse::parse_form(t),
            (None, Some(c)) => parse::parse_coeffs(c),
            (None, None) => Err(Error::Parse("one of --form or --coeffs is required".into())),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Length over one field, with bounds and provenance.
    Length {
        #[command(flatten)]
        input: FormInput,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// A certified representation realizing the upper bound.
    Represent {
        #[command(flatten)]
        input: FormInput,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Lengths over several fields, checked against the structural rules.
    Cabinet {
        #[command(flatten)]
        input: FormInput,
        /// Comma-separated list; `Q(sqrt -2)` style entries may contain spaces.
        #[arg(long, default_value = "Q,Q(i),R,C")]
        fields: String,
    },
    /// Expand a representation stored as JSON and compare with its target.
    Verify {
        #[arg(long, value_name = "FILE")]
        repr: PathBuf,
    },
    /// Brute-force search for a short rational representation.
    Oracle {
        #[command(flatten)]
        input: FormInput,
        #[arg(long, default_value_t = 4)]
        max_r: usize,
    },
    /// Search `(m, n)` making the quartic discriminant `Gamma` a square.
    Gamma {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, default_value_t = 200)]
        bound: u64,
    },
    /// Check the built-in corpus of explicit identities.
    #[command(name = "paper-identities", visible_alias = "identities")]
    Identities,
}

/// Parse `args` (including the program name) and run, writing to `out`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((value, code)) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&value).expect("json") + "\n"
            } else {
                render_text(&cli.command, &value)
            };
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "error": e.to_string() }));
            } else {
                let _ = writeln!(out, "error: {e}");
            }
            EXIT_ERROR
        }
    }
}

/// Entry point used by the binary.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run_with(std::env::args_os(), &mut lock)
}

fn parse_field(text: &str) -> Result<FieldDescriptor> {
    text.trim().parse()
}

/// Split a field list on commas that are not inside parentheses.
pub fn parse_field_list(text: &str) -> Result<Vec<FieldDescriptor>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(parse_field(&cur)?);
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(parse_field(&cur)?);
    }
    if out.is_empty() {
        return Err(Error::Parse("empty field list".into()));
    }
    Ok(out)
}

fn length_code(v: &Value) -> i32 {
    if v["length"]["exact"].as_bool() == Some(true) {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    }
}

fn compute_length(f: &BinaryForm, field: FieldDescriptor, height: u64) -> Result<Value> {
    let res = length_over_field(f, field, &SearchOptions::with_height(height))?;
    Ok(json::length_result(f, &res))
}

/// Recompute a sample of cached entries; any disagreement is an error.
pub fn audit_cache(c: &ResultCache, seed: u64) -> Result<usize> {
    let sample = c.audit_sample(&mut StdRng::seed_from_u64(seed));
    for key in &sample {
        let (f, field, height) = parse_key(key)?;
        let fresh = compute_length(&f, field, height)?;
        if Some(&fresh) != c.get(key) {
            return Err(Error::InvariantViolation(format!("cache entry '{key}' differs from a fresh computation")));
        }
    }
    Ok(sample.len())
}

fn cached_length(cli: &Cli, f: &BinaryForm, field: FieldDescriptor) -> Result<Value> {
    let Some(path) = &cli.cache else {
        return compute_length(f, field, cli.height);
    };
    let mut c = ResultCache::open(path)?;
    if cli.audit {
        let seed = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0);
        audit_cache(&c, seed)?;
    }
    let key = cache_key(f, field, cli.height);
    if let Some(v) = c.get(&key) {
        return Ok(v.clone());
    }
    let v = compute_length(f, field, cli.height)?;
    c.insert(key, v.clone())?;
    Ok(v)
}

fn dispatch(cli: &Cli) -> Result<(Value, i32)> {
    match &cli.command {
        Command::Length { input, field } => {
            let v = cached_length(cli, &input.parse()?, parse_field(field)?)?;
            let code = length_code(&v);
            Ok((v, code))
        }
        Command::Represent { input, field } => {
            let f = input.parse()?;
            let v = cached_length(cli, &f, parse_field(field)?)?;
            let Some(rep) = v.get("representation") else {
                return Ok((json!({ "form": v["form"], "field": v["field"], "representation": null }), EXIT_INCONCLUSIVE));
            };
            let verified = verify_terms(&f, rep, "1")?;
            let out = json!({
                "form": v["form"],
                "field": v["field"],
                "length": v["length"],
                "representation": rep,
                "representation_field": v["representation_field"],
                "verified": verified,
            });
            let code = length_code(&v);
            Ok((out, code))
        }
        Command::Cabinet { input, fields } => {
            let f = input.parse()?;
            let fields = parse_field_list(fields)?;
            let c = cabinet(&f, &fields, &SearchOptions::with_height(cli.height))?;
            let exact = c.entries.iter().all(|(_, r)| r.is_exact());
            Ok((json::cabinet(&f, &c), if exact { EXIT_OK } else { EXIT_INCONCLUSIVE }))
        }
        Command::Verify { repr } => {
            let text = std::fs::read_to_string(repr)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let out = verify_document(&v)?;
            let code = if out["matches"].as_bool() == Some(true) { EXIT_OK } else { EXIT_ERROR };
            Ok((out, code))
        }
        Command::Oracle { input, max_r } => {
            let f = input.parse()?;
            let budget = SearchBudget::new(cli.height, *max_r)?;
            let found = brute_force_min_length_q(&f, budget)?;
            let mut out = json!({
                "form": json::form(&f),
                "budget": { "height": cli.height, "max_r": max_r },
            });
            let code = match found {
                Some((r, rep)) => {
                    out["found"] = json!(r);
                    out["representation"] = json::representation(&rep);
                    EXIT_OK
                }
                None => {
                    out["found"] = Value::Null;
                    EXIT_INCONCLUSIVE
                }
            };
            Ok((out, code))
        }
        Command::Gamma { a, b, bound } => {
            let mut out = json!({ "a": a, "b": b, "bound": bound });
            let code = match gamma_square_search(*a, *b, *bound)? {
                Some((m, n, root)) => {
                    out["square"] = json!({ "m": m, "n": n, "root": root.to_string() });
                    out["representation"] = match gamma_witness(*a, *b, m, n)? {
                        Some(rep) => json::representation(&rep),
                        None => Value::Null,
                    };
                    EXIT_OK
                }
                None => {
                    out["square"] = Value::Null;
                    EXIT_INCONCLUSIVE
                }
            };
            Ok((out, code))
        }
        Command::Identities => {
            let report = identities::run_identity_suite();
            let failed = report.iter().filter(|r| !r.passed).count();
            let rows: Vec<Value> = report
                .iter()
                .map(|r| json!({ "id": r.id, "description": r.description, "passed": r.passed, "error": r.error }))
                .collect();
            let out = json!({ "total": report.len(), "failed": failed, "records": rows });
            Ok((out, if failed == 0 { EXIT_OK } else { EXIT_ERROR }))
        }
    }
}

fn parse_target(v: &Value) -> Result<BinaryForm> {
    match v {
        Value::String(s) => parse::parse_form(s),
        Value::Object(m) => {
            let raw = m
                .get("raw")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("form object needs a \"raw\" array".into()))?;
            let raw = raw
                .iter()
                .map(|c| match c {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) => parse_rational(&n.to_string()),
                    other => Err(Error::Parse(format!("bad coefficient {other}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            BinaryForm::from_raw(raw)
        }
        other => Err(Error::Parse(format!("bad form {other}"))),
    }
}

fn parse_terms(v: &Value) -> Result<Vec<(FieldElement, FieldElement, FieldElement)>> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("representation must be an array".into()))?;
    arr.iter()
        .map(|t| {
            let get = |k: &str| {
                t.get(k)
                    .ok_or_else(|| Error::Parse(format!("summand needs \"{k}\"")))
                    .and_then(json::parse_element)
            };
            Ok((get("lambda")?, get("alpha")?, get("beta")?))
        })
        .collect()
}

/// `true` when the summands expand to `scale * target`.
fn verify_terms(target: &BinaryForm, terms: &Value, scale: &str) -> Result<bool> {
    let scale = parse_rational(scale)?;
    let got = expand_raw_terms(&parse_terms(terms)?, target.degree())?;
    Ok(got
        .iter()
        .zip(target.raw())
        .all(|(g, c)| *g == FieldElement::rational(c * &scale)))
}

/// Check a document `{"form": ..., "representation": [...], "scale": "p/q"?}`.
/// `target` and `terms` are accepted as synonyms.
pub fn verify_document(v: &Value) -> Result<Value> {
    let form = v
        .get("form")
        .or_else(|| v.get("target"))
        .ok_or_else(|| Error::Parse("document needs \"form\"".into()))?;
    let terms = v
        .get("representation")
        .or_else(|| v.get("terms"))
        .ok_or_else(|| Error::Parse("document needs \"representation\"".into()))?;
    let scale = match v.get("scale") {
        None => "1".to_string(),
        Some(Value::String(s)) => s.clone(),
        Some(Value::Number(n)) => n.to_string(),
        Some(other) => return Err(Error::Parse(format!("bad scale {other}"))),
    };
    let target = parse_target(form)?;
    let n = parse_terms(terms)?.len();
    let matches = verify_terms(&target, terms, &scale)?;
    Ok(json!({
        "form": json::form(&target),
        "scale": format_rational(&parse_rational(&scale)?),
        "summands": n,
        "matches": matches,
    }))
}

fn element_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.strip_suffix("/1").unwrap_or(s).to_string(),
        Value::Object(m) => {
            let a = element_text(&m["a"]);
            let b = element_text(&m["b"]);
            let g = match m["d"].as_i64() {
                Some(-1) => "i".to_string(),
                Some(d) => format!("sqrt({d})"),
                None => "?".to_string(),
            };
            format!("({a} + {b}*{g})")
        }
        other => other.to_string(),
    }
}

fn representation_text(rep: &Value, d: u64) -> String {
    let mut s = String::new();
    for t in rep.as_array().into_iter().flatten() {
        s += &format!(
            "  {} * ({} x + {} y)^{d}\n",
            element_text(&t["lambda"]),
            element_text(&t["alpha"]),
            element_text(&t["beta"])
        );
    }
    s
}

fn length_text(v: &Value) -> String {
    let l = &v["length"];
    let (lo, hi) = (l["lower"].as_u64().unwrap_or(0), l["upper"].as_u64().unwrap_or(0));
    let d = v["form"]["degree"].as_u64().unwrap_or(0);
    let mut s = format!("form: {}\nfield: {}\n", v["form"]["text"].as_str().unwrap_or(""), v["field"].as_str().unwrap_or(""));
    if lo == hi {
        s += &format!("length: {lo} (exact)\n");
    } else {
        s += &format!("length: between {lo} and {hi}\n");
    }
    s += &format!(
        "lower bound: {}\nupper bound: {}\n",
        l["provenance"]["lower"].as_str().unwrap_or(""),
        l["provenance"]["upper"].as_str().unwrap_or("")
    );
    if let Some(h) = v.get("sylvester_form") {
        s += &format!("sylvester form: {}\n", h["h"]["text"].as_str().unwrap_or(""));
    }
    if let Some(t) = v.get("tau") {
        s += &format!("tau: {t}\n");
    }
    if let Some(t) = v.get("sigma") {
        s += &format!("sigma: {t}\n");
    }
    if let Some(rep) = v.get("representation") {
        s += &format!("representation over {}:\n", v["representation_field"].as_str().unwrap_or(""));
        s += &representation_text(rep, d);
    }
    s
}

fn render_text(cmd: &Command, v: &Value) -> String {
    match cmd {
        Command::Length { .. } => length_text(v),
        Command::Represent { .. } => {
            let d = v["form"]["degree"].as_u64().unwrap_or(0);
            match v.get("representation").filter(|r| !r.is_null()) {
                Some(rep) => format!(
                    "form: {}\nrepresentation over {} ({} terms, verified: {}):\n{}",
                    v["form"]["text"].as_str().unwrap_or(""),
                    v["representation_field"].as_str().unwrap_or(""),
                    rep.as_array().map_or(0, Vec::len),
                    v["verified"],
                    representation_text(rep, d)
                ),
                None => format!("no representation found over {}\n", v["field"].as_str().unwrap_or("")),
            }
        }
        Command::Cabinet { .. } => {
            let mut s = format!(
                "form: {}\ncomplex length: {}\n",
                v["form"]["text"].as_str().unwrap_or(""),
                v["complex_length"]
            );
            for e in v["entries"].as_array().into_iter().flatten() {
                let (lo, hi) = (&e["length"]["lower"], &e["length"]["upper"]);
                let val = if lo == hi { lo.to_string() } else { format!("{lo}..{hi}") };
                s += &format!("  {:<12} {val}\n", e["field"].as_str().unwrap_or(""));
            }
            s + &format!("lengths: {}\n", v["summary"])
        }
        Command::Verify { .. } => format!(
            "form: {}\nsummands: {}\nscale: {}\nmatches: {}\n",
            v["form"]["text"].as_str().unwrap_or(""),
            v["summands"],
            element_text(&v["scale"]),
            v["matches"]
        ),
        Command::Oracle { .. } => {
            let d = v["form"]["degree"].as_u64().unwrap_or(0);
            match v["found"].as_u64() {
                Some(r) => format!(
                    "found {r} summands within height {}:\n{}",
                    v["budget"]["height"],
                    representation_text(&v["representation"], d)
                ),
                None => format!(
                    "nothing within height {} and {} summands\n",
                    v["budget"]["height"], v["budget"]["max_r"]
                ),
            }
        }
        Command::Gamma { .. } => match v["square"].as_object() {
            Some(sq) => {
                let mut s = format!(
                    "Gamma({}, {}, {}, {}) = {}^2\n",
                    v["a"], v["b"], sq["m"], sq["n"], sq["root"].as_str().unwrap_or("")
                );
                if !v["representation"].is_null() {
                    s += "length-3 representation:\n";
                    s += &representation_text(&v["representation"], 4);
                }
                s
            }
            None => format!("no square with 0 <= m <= n <= {}\n", v["bound"]),
        },
        Command::Identities => {
            let mut s = String::new();
            for r in v["records"].as_array().into_iter().flatten() {
                let mark = if r["passed"].as_bool() == Some(true) { "PASS" } else { "FAIL" };
                s += &format!("{mark} {}\n", r["id"].as_str().unwrap_or(""));
            }
            s + &format!("{} records, {} failed\n", v["total"], v["failed"])
        }
    }
}
