//! Arrangement documents, command dispatch and JSON/text reports for the
//! `hypermotive` binary.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arrangement::{Arrangement, LinearForm};
use crate::combinatorics::subsets_up_to;
use crate::error::{Error, Result};
use crate::exterior::{graded_rank, graded_rank_rational, nbc_basis, os_generators};
use crate::motive::{module_basis, poincare_polynomial, tate_twists};
use crate::ring::{subset_label, CohomologyElement, CohomologyRing, Equality};
use crate::scalar::Field;
use crate::units::UnitElement;
use crate::verify::relation_suite;

/// One hyperplane `constant + sum coeffs[i] x_i`, scalars as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneDocument {
    pub constant: String,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementDocument {
    pub field: String,
    pub dimension: usize,
    pub hyperplanes: Vec<HyperplaneDocument>,
    /// 1-based permutation applied before any computation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
}

impl ArrangementDocument {
    pub fn from_json(text: &str) -> Result<ArrangementDocument> {
        serde_json::from_str(text).map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_arrangement(arr: &Arrangement) -> ArrangementDocument {
        ArrangementDocument {
            field: arr.field().to_string(),
            dimension: arr.dimension(),
            hyperplanes: arr
                .hyperplanes()
                .iter()
                .map(|h| HyperplaneDocument {
                    constant: h.defining.constant.to_string(),
                    coeffs: h.defining.coeffs.iter().map(|c| c.to_string()).collect(),
                })
                .collect(),
            order: None,
        }
    }

    /// Builds the arrangement, optionally over another backend, then applies the order.
    pub fn build(&self, backend: Option<&Field>, order: Option<&[usize]>) -> Result<Arrangement> {
        let field = match backend {
            Some(f) => f.clone(),
            None => Field::from_str(&self.field).map_err(|e| Error::parse("field", e.to_string()))?,
        };
        let geometry = if field == Field::Formal { Field::Rationals } else { field.clone() };
        let mut forms = Vec::with_capacity(self.hyperplanes.len());
        for (k, h) in self.hyperplanes.iter().enumerate() {
            if h.coeffs.len() != self.dimension {
                return Err(Error::parse(
                    format!("hyperplanes[{k}].coeffs"),
                    format!("expected {} coefficients, found {}", self.dimension, h.coeffs.len()),
                ));
            }
            let constant = geometry
                .parse_scalar(&h.constant)
                .map_err(|e| Error::parse(format!("hyperplanes[{k}].constant"), e.to_string()))?;
            let coeffs = h
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    geometry
                        .parse_scalar(c)
                        .map_err(|e| Error::parse(format!("hyperplanes[{k}].coeffs[{i}]"), e.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            forms.push(LinearForm::new(constant, coeffs));
        }
        let arr = Arrangement::new(field, self.dimension, forms)?;
        match order.or(self.order.as_deref()) {
            Some(perm) => {
                let zero_based = perm
                    .iter()
                    .map(|&i| i.checked_sub(1).ok_or_else(|| Error::parse("order", "indices are 1-based")))
                    .collect::<Result<Vec<_>>>()?;
                arr.permuted(&zero_based)
            }
            None => Ok(arr),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Info,
    Twists,
    Rank,
    Basis,
    Os,
    Reduce,
    Multiply,
    TameSymbol,
    Verify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Info => "info",
            Command::Twists => "twists",
            Command::Rank => "rank",
            Command::Basis => "basis",
            Command::Os => "os",
            Command::Reduce => "reduce",
            Command::Multiply => "multiply",
            Command::TameSymbol => "tame-symbol",
            Command::Verify => "verify",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Command> {
        <Command as ValueEnum>::from_str(s, true).map_err(|_| Error::parse("command", format!("unknown command {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Command-line interface.
#[derive(Clone, Debug, Parser)]
#[command(name = "hypermotive", version, about = "Cohomology of hyperplane arrangement complements")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Arrangement document (JSON); stdin when omitted.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Comma-separated 1-based permutation of the hyperplanes.
    #[arg(long)]
    pub order: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Field backend overriding the document: `q`, `fp:<p>` or `formal`.
    #[arg(long)]
    pub backend: Option<String>,
    /// Comma-separated unit expressions such as `h1,-1*h2,2*h1^2*h3^-1`.
    #[arg(long)]
    pub word: Option<String>,
    /// Right factor for `multiply`.
    #[arg(long)]
    pub right: Option<String>,
}

/// Options shared by the binary and foreign callers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub order: Option<Vec<usize>>,
    pub seed: u64,
    pub trials: usize,
    pub backend: Option<Field>,
    pub word: Option<String>,
    pub right: Option<String>,
}

impl Cli {
    pub fn options(&self) -> Result<Options> {
        let order = match &self.order {
            Some(text) => Some(parse_order(text)?),
            None => None,
        };
        let backend = match &self.backend {
            Some(text) => Some(Field::from_str(text).map_err(|e| Error::parse("--backend", e.to_string()))?),
            None => None,
        };
        Ok(Options {
            order,
            seed: self.seed,
            trials: self.trials,
            backend,
            word: self.word.clone(),
            right: self.right.clone(),
        })
    }
}

pub fn parse_order(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::parse("--order", format!("not an index: {t:?}"))))
        .collect()
}

/// Splits a word like `[h1, -1*h2]` into unit expressions.
pub fn parse_word(text: &str, arr: &Arrangement) -> Result<Vec<UnitElement>> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    inner.split(',').map(|t| UnitElement::parse(t.trim(), arr)).collect()
}

/// Result of running a command: the JSON report and whether a cross-check failed.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub value: Value,
    pub mismatch: bool,
}

fn cross_check(name: &str, agrees: bool) -> Value {
    json!({"check": name, "ran": true, "agrees": agrees})
}

fn twists_json(arr: &Arrangement) -> Value {
    let t = tate_twists(arr);
    Value::Object(t.counts.iter().map(|(n, m)| (n.to_string(), json!(m))).collect())
}

fn element_json(x: &CohomologyElement) -> Value {
    json!(x.to_map())
}

fn labels(sets: &[Vec<usize>]) -> Vec<String> {
    sets.iter().map(|s| subset_label(s)).collect()
}

fn word_required<'a>(word: &'a Option<String>, flag: &str) -> Result<&'a str> {
    word.as_deref().ok_or_else(|| Error::precondition(format!("{flag} is required for this command")))
}

/// Runs `command` on `doc`. Errors are parse or precondition failures.
pub fn execute(command: Command, doc: &ArrangementDocument, opts: &Options) -> Result<Report> {
    let arr = doc.build(opts.backend.as_ref(), opts.order.as_deref())?;
    let mut mismatch = false;
    let mut body = serde_json::Map::new();
    let mut checks = Vec::new();
    let algorithm;
    match command {
        Command::Info => {
            algorithm = "exact row reduction";
            let flats: Vec<Value> = subsets_up_to(arr.len(), arr.dimension() + 1)
                .into_iter()
                .filter(|s| !s.is_empty())
                .map(|s| {
                    let f = arr.flat_of(&s);
                    json!({"indices": s.iter().map(|i| i + 1).collect::<Vec<_>>(), "empty": f.is_empty(), "codim": f.codim})
                })
                .collect();
            let circuits: Vec<Value> = arr
                .circuits()
                .iter()
                .map(|c| {
                    json!({
                        "indices": c.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
                        "scalars": c.scalars.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                        "constant": c.constant,
                    })
                })
                .collect();
            body.insert("hyperplanes".into(), json!(arr.hyperplanes().iter().map(|h| h.to_string()).collect::<Vec<_>>()));
            body.insert("normal_crossing".into(), json!(arr.is_normal_crossing()));
            body.insert("flats".into(), json!(flats));
            body.insert("circuits".into(), json!(circuits));
        }
        Command::Twists | Command::Rank | Command::Basis => {
            algorithm = "deletion-restriction recursion";
            let g = graded_rank(&arr);
            let poincare = poincare_polynomial(&arr);
            let agrees = poincare == g.trimmed();
            checks.push(cross_check("exterior quotient ranks (smith normal form)", agrees));
            mismatch |= !agrees;
            match command {
                Command::Twists => {
                    body.insert("twists".into(), twists_json(&arr));
                    body.insert("poincare".into(), json!(poincare));
                }
                Command::Rank => {
                    body.insert("rank".into(), json!(module_basis(&arr).len()));
                    body.insert("poincare".into(), json!(poincare));
                    body.insert(
                        "cross_check".into(),
                        json!(if agrees { "os-ranks agree" } else { "os-ranks disagree" }),
                    );
                }
                _ => {
                    let basis = module_basis(&arr);
                    let same = basis == nbc_basis(&arr);
                    checks.push(cross_check("no-broken-circuit monomials", same));
                    mismatch |= !same;
                    body.insert("basis".into(), json!(labels(&basis)));
                }
            }
        }
        Command::Os => {
            algorithm = "smith normal form over the integers";
            let g = graded_rank(&arr);
            let rational = graded_rank_rational(&arr);
            let agrees = rational == g.ranks;
            checks.push(cross_check("row reduction over the rationals", agrees));
            mismatch |= !agrees;
            let nbc = nbc_basis(&arr);
            let count = nbc.len() == g.total();
            checks.push(cross_check("no-broken-circuit count", count));
            mismatch |= !count;
            body.insert("ranks".into(), json!(g.ranks));
            body.insert(
                "elementary_divisors".into(),
                json!(g.elementary_divisors.iter().map(|d| d.iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()),
            );
            body.insert("free".into(), json!(g.is_free()));
            body.insert("generators".into(), json!(os_generators(&arr).iter().map(|e| e.render()).collect::<Vec<_>>()));
            body.insert("nbc_basis".into(), json!(labels(&nbc)));
        }
        Command::Reduce | Command::Multiply => {
            algorithm = "circuit rewriting to the module basis";
            let ring = CohomologyRing::new(&arr)?;
            let left = parse_word(word_required(&opts.word, "--word")?, &arr)?;
            let x = if command == Command::Reduce {
                ring.reduce_word(&left)?
            } else {
                let right = parse_word(word_required(&opts.right, "--right")?, &arr)?;
                let a = ring.reduce_word(&left)?;
                let b = ring.reduce_word(&right)?;
                body.insert("left".into(), element_json(&a));
                body.insert("right".into(), element_json(&b));
                let x = ring.multiply(&a, &b)?;
                let whole: Vec<UnitElement> = left.iter().chain(&right).cloned().collect();
                let agrees = ring.equals(&x, &ring.reduce_word(&whole)?)? != Equality::NotEqual;
                checks.push(cross_check("reduction of the concatenated word", agrees));
                mismatch |= !agrees;
                x
            };
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let words: Vec<_> = x.terms().map(|(s, c)| (c.clone(), s.clone())).collect();
            let mut stable = true;
            for _ in 0..3 {
                let again = ring.reduce_words_randomly(&words, &mut rng);
                stable &= ring.equals(&again, &x)? != Equality::NotEqual;
            }
            checks.push(cross_check("re-reduction under random circuit choices", stable));
            mismatch |= !stable;
            body.insert("word".into(), json!(left.iter().map(UnitElement::render).collect::<Vec<_>>()));
            body.insert("basis".into(), element_json(&x));
            body.insert("a0".into(), json!(ring.a0_projection(&x)?.render()));
        }
        Command::TameSymbol => {
            algorithm = "degree-one coefficients of top-degree basis monomials";
            let ring = CohomologyRing::new(&arr)?;
            let units = parse_word(word_required(&opts.word, "--word")?, &arr)?;
            let out = ring.tame_symbol(&units)?;
            body.insert(
                "symbols".into(),
                json!(out.iter().map(|(u, s)| json!({"unit": u.to_string(), "subset": subset_label(s)})).collect::<Vec<_>>()),
            );
        }
        Command::Verify => {
            algorithm = "seeded randomized relation suite";
            let ring = CohomologyRing::new(&arr)?;
            let report = relation_suite(&ring, opts.seed, opts.trials)?;
            mismatch |= report.failures > 0;
            let v = serde_json::to_value(&report).expect("report serializes");
            if let Value::Object(m) = v {
                body.extend(m);
            }
        }
    }
    body.insert("command".into(), json!(command.name()));
    body.insert("arrangement".into(), json!(arr.to_string()));
    body.insert("provenance".into(), json!({"algorithm": algorithm, "cross_checks": checks}));
    Ok(Report {
        value: Value::Object(body),
        mismatch,
    })
}

/// Renders a report as `key: value` lines.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(m) = value {
        for (k, v) in m {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k}: {shown}\n"));
        }
    }
    out
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report.value).expect("json")),
        Format::Text => render_text(&report.value),
    }
}

/// Exit status: 0 success, 2 parse or precondition failure, 3 cross-check mismatch.
pub fn exit_code(result: &Result<Report>) -> i32 {
    match result {
        Ok(r) if r.mismatch => 3,
        Ok(_) => 0,
        Err(_) => 2,
    }
}

/// Entry point of the binary; returns (stdout, stderr, exit code).
pub fn run(cli: &Cli) -> (String, String, i32) {
    let result = (|| {
        let text = match &cli.input {
            Some(path) => std::fs::read_to_string(path).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?,
            None => {
                let mut s = String::new();
                std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| Error::parse("stdin", e.to_string()))?;
                s
            }
        };
        let doc = ArrangementDocument::from_json(&text)?;
        execute(cli.command, &doc, &cli.options()?)
    })();
    let code = exit_code(&result);
    match result {
        Ok(report) => (render(&report, cli.format), String::new(), code),
        Err(e) => {
            let err = json!({"error": e.to_string(), "kind": error_kind(&e)});
            (String::new(), format!("{}\n", err), code)
        }
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } | Error::InvalidField(_) => "parse",
        _ => "precondition",
    }
}
