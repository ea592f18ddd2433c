//! Command-line front end.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ptwishart_core::engine::{self, term_table};
use ptwishart_core::laws::{self, LawSpec};
use ptwishart_core::{Case, Dims, ExactValue, Label, Regime, RegimeLimit, Word};

use crate::report::{self, Table};
use crate::selftest;
use crate::sim;

/// Environment variable holding the default worker thread count.
pub const THREADS_ENV: &str = "PTWISHART_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SELFTEST: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => 1,
        }
    }

    /// `{"error": {"kind": ..., "message": ...}}`.
    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } })
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "ptwishart", version, about = "Mixed moments of partially transposed Wishart matrices")]
struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CaseArg {
    Complex,
    Real,
}

impl From<CaseArg> for Case {
    fn from(c: CaseArg) -> Case {
        match c {
            CaseArg::Complex => Case::Complex,
            CaseArg::Real => Case::Real,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RegimeArg {
    Both,
    D1Fixed,
    D2Fixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LawArg {
    Mp,
    Semicircle,
    Bn,
    Even,
    FreeDifference,
}

#[derive(Args, Debug)]
struct DimsArgs {
    #[arg(long)]
    d1: u64,
    #[arg(long)]
    d2: u64,
    #[arg(long)]
    p: u64,
}

#[derive(Args, Debug)]
struct LimitArgs {
    #[arg(long, value_enum, default_value_t = RegimeArg::Both)]
    regime: RegimeArg,
    /// Limit of p/(d1 d2), e.g. `1/2` or `0.5`.
    #[arg(long)]
    c: String,
    /// The fixed dimension in the d1-fixed and d2-fixed regimes.
    #[arg(long)]
    d: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum CommandArgs {
    /// Exact finite-dimensional mixed moment.
    Exact {
        #[arg(long, value_enum, default_value_t = CaseArg::Complex)]
        case: CaseArg,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        dims: DimsArgs,
    },
    /// Limit of a mixed moment in one of the three regimes.
    Limit {
        #[arg(long, value_enum, default_value_t = CaseArg::Complex)]
        case: CaseArg,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        limit: LimitArgs,
    },
    /// Mixed free cumulants of the limit family.
    Freeness {
        #[arg(long, value_enum, default_value_t = CaseArg::Complex)]
        case: CaseArg,
        /// Letters to combine; defaults to `w,l,r,t` (complex) or `w,r` (real).
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[command(flatten)]
        limit: LimitArgs,
    },
    /// Cumulant and moment tables of a limit law, optionally with density samples.
    Laws {
        #[arg(long, value_enum)]
        law: LawArg,
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        c_plus: Option<String>,
        #[arg(long)]
        c_minus: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Number of equally spaced density samples over the support.
        #[arg(long)]
        density_points: Option<usize>,
    },
    /// Monte Carlo estimate with its exact reference.
    Mc {
        #[arg(long, value_enum, default_value_t = CaseArg::Complex)]
        case: CaseArg,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        dims: DimsArgs,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The d1 = 2 block experiment.
    Blocks {
        #[arg(long, default_value = "1/2")]
        c: String,
        #[arg(long, default_value_t = 256)]
        d2: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the bundled invariant checks.
    Selftest,
}

/// A validated command.
#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Exact { case: Case, word: Word, dims: Dims },
    Limit { case: Case, word: Word, limit: RegimeLimit },
    Freeness { case: Case, alphabet: Vec<Label>, max_n: usize, limit: RegimeLimit },
    Laws { law: LawSpec, max_n: usize, density_points: Option<usize> },
    Mc { case: Case, word: Word, dims: Dims, samples: usize, seed: u64 },
    Blocks { c: ExactValue, d2: usize, samples: usize, seed: u64 },
    Selftest,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Exact { .. } => "exact",
            Command::Limit { .. } => "limit",
            Command::Freeness { .. } => "freeness",
            Command::Laws { .. } => "laws",
            Command::Mc { .. } => "mc",
            Command::Blocks { .. } => "blocks",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub out: Option<PathBuf>,
}

/// Comma-separated tokens from `{w, l, r, t}`, case-insensitive.
pub fn parse_word(text: &str) -> Result<Word, CliError> {
    text.parse::<Word>().map_err(usage)
}

fn parse_positive(name: &str, text: &str) -> Result<ExactValue, CliError> {
    let v: ExactValue = text.parse().map_err(usage)?;
    if !v.is_positive() {
        return Err(CliError::Usage(format!("--{name} must be positive, got {text}")));
    }
    Ok(v)
}

fn required<T>(name: &str, v: Option<T>) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{name} is required here")))
}

fn dims_from(a: &DimsArgs) -> Result<Dims, CliError> {
    Dims::new(a.d1, a.d2, a.p).map_err(usage)
}

fn limit_from(a: &LimitArgs) -> Result<RegimeLimit, CliError> {
    let c = parse_positive("c", &a.c)?;
    let regime = match a.regime {
        RegimeArg::Both => Regime::BothGrow,
        RegimeArg::D1Fixed => Regime::D1Fixed(required("d", a.d)?),
        RegimeArg::D2Fixed => Regime::D2Fixed(required("d", a.d)?),
    };
    RegimeLimit::new(regime, c).map_err(usage)
}

fn real_check(case: Case, word: &Word) -> Result<(), CliError> {
    if case == Case::Real {
        word.real_epsilons().map_err(usage)?;
    }
    Ok(())
}

/// Why argument parsing stopped.
#[derive(Debug)]
pub enum ArgsOutcome {
    /// `--help` or `--version` text, to be printed with exit status 0.
    Info(String),
    Invalid(CliError),
}

impl RunConfig {
    /// Parse command-line arguments (including the program name).
    pub fn from_args<I, T>(args: I) -> Result<RunConfig, ArgsOutcome>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        use clap::error::ErrorKind;
        let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ArgsOutcome::Info(e.to_string()),
            _ => ArgsOutcome::Invalid(CliError::Usage(e.to_string().trim().to_string())),
        })?;
        let command = build_command(cli.command).map_err(ArgsOutcome::Invalid)?;
        Ok(RunConfig {
            command,
            format: cli.format,
            out: cli.out,
        })
    }
}

fn build_command(args: CommandArgs) -> Result<Command, CliError> {
    Ok(match args {
        CommandArgs::Exact { case, word, dims } => {
            let word = parse_word(&word)?;
            real_check(case.into(), &word)?;
            Command::Exact { case: case.into(), word, dims: dims_from(&dims)? }
        }
        CommandArgs::Limit { case, word, limit } => {
            let word = parse_word(&word)?;
            real_check(case.into(), &word)?;
            Command::Limit { case: case.into(), word, limit: limit_from(&limit)? }
        }
        CommandArgs::Freeness { case, alphabet, max_n, limit } => {
            let case: Case = case.into();
            let default = if case == Case::Real { "w,r" } else { "w,l,r,t" };
            let alphabet = parse_word(alphabet.as_deref().unwrap_or(default))?;
            real_check(case, &alphabet)?;
            if !(2..=engine_cap()).contains(&max_n) {
                return Err(CliError::Usage(format!(
                    "--max-n must lie in 2..={}, got {max_n}",
                    engine_cap()
                )));
            }
            Command::Freeness {
                case,
                alphabet: alphabet.letters().to_vec(),
                max_n,
                limit: limit_from(&limit)?,
            }
        }
        CommandArgs::Laws { law, c, d, c_plus, c_minus, max_n, density_points } => {
            if max_n == 0 {
                return Err(CliError::Usage("--max-n must be at least 1".into()));
            }
            let c = || -> Result<ExactValue, CliError> { parse_positive("c", &required("c", c.clone())?) };
            let spec = match law {
                LawArg::Mp => LawSpec::marchenko_pastur(c()?),
                LawArg::Semicircle => LawSpec::shifted_semicircle(c()?),
                LawArg::Bn => LawSpec::bn_law(required("d", d)?, c()?),
                LawArg::Even => LawSpec::even_law_2c(c()?),
                LawArg::FreeDifference => LawSpec::mp_free_difference(
                    parse_positive("c-plus", &required("c-plus", c_plus)?)?,
                    required("c-minus", c_minus)?.parse().map_err(usage)?,
                ),
            }
            .map_err(usage)?;
            if density_points.is_some() && laws::support(&spec).is_err() {
                return Err(CliError::Usage(format!("no closed-form density for {}", spec.kind())));
            }
            if density_points == Some(0) {
                return Err(CliError::Usage("--density-points must be positive".into()));
            }
            Command::Laws { law: spec, max_n, density_points }
        }
        CommandArgs::Mc { case, word, dims, samples, seed } => {
            let word = parse_word(&word)?;
            real_check(case.into(), &word)?;
            if samples < 2 {
                return Err(CliError::Usage(format!("--samples must be at least 2, got {samples}")));
            }
            Command::Mc { case: case.into(), word, dims: dims_from(&dims)?, samples, seed }
        }
        CommandArgs::Blocks { c, d2, samples, seed } => {
            if samples < 2 {
                return Err(CliError::Usage(format!("--samples must be at least 2, got {samples}")));
            }
            Command::Blocks { c: parse_positive("c", &c)?, d2, samples, seed }
        }
        CommandArgs::Selftest => Command::Selftest,
    })
}

fn engine_cap() -> usize {
    ptwishart_core::nc::PERM_CAP
}

/// An emitted document and the process exit status.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub document: Value,
    pub table: Table,
    pub status: i32,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => report::to_json_text(&self.document),
            Format::Csv => self.table.to_csv(),
        }
    }
}

fn case_name(case: Case) -> &'static str {
    match case {
        Case::Complex => "complex",
        Case::Real => "real",
    }
}

/// Execute a validated command.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let mut doc = report::object();
    report::insert(&mut doc, "command", json!(config.command.name()));
    let (table, status) = match &config.command {
        Command::Exact { case, word, dims } => {
            let v = engine::exact_moment(*case, word, dims).map_err(usage)?;
            report::insert(&mut doc, "case", json!(case_name(*case)));
            report::insert(&mut doc, "word", report::word(word));
            report::insert(&mut doc, "dims", report::dims(dims));
            report::insert(&mut doc, "value", report::exact(&v));
            let mut t = Table::new(&["word", "d1", "d2", "p", "num", "den", "decimal"]);
            let mut row = vec![word.to_string(), dims.d1().to_string(), dims.d2().to_string(), dims.p().to_string()];
            row.extend(report::exact_cells(&v));
            t.push(row);
            (t, EXIT_OK)
        }
        Command::Limit { case, word, limit } => {
            let table = term_table(*case, word).map_err(usage)?;
            let v = table.limit(limit);
            let poly = table.limit_polynomial(limit.regime());
            report::insert(&mut doc, "case", json!(case_name(*case)));
            report::insert(&mut doc, "word", report::word(word));
            report::insert(&mut doc, "limit", report::regime_limit(limit));
            report::insert(&mut doc, "value", report::exact(&v));
            report::insert(
                &mut doc,
                "polynomial_in_c",
                Value::Array(poly.iter().map(report::exact).collect()),
            );
            let mut t = Table::new(&["word", "num", "den", "decimal"]);
            let mut row = vec![word.to_string()];
            row.extend(report::exact_cells(&v));
            t.push(row);
            (t, EXIT_OK)
        }
        Command::Freeness { case, alphabet, max_n, limit } => {
            let r = engine::freeness_report(*case, alphabet, *max_n, limit).map_err(usage)?;
            report::insert(&mut doc, "case", json!(case_name(*case)));
            report::insert(
                &mut doc,
                "alphabet",
                json!(r.alphabet.iter().map(|l| l.name()).collect::<Vec<_>>()),
            );
            report::insert(&mut doc, "max_n", json!(max_n));
            report::insert(&mut doc, "limit", report::regime_limit(limit));
            report::insert(&mut doc, "all_vanish", json!(r.all_vanish()));
            let nonzero: Vec<Value> = r
                .nonzero()
                .map(|e| json!({ "word": e.word.to_string(), "cumulant": report::exact(&e.cumulant) }))
                .collect();
            report::insert(&mut doc, "nonzero", Value::Array(nonzero));
            let entries: Vec<Value> = r
                .entries
                .iter()
                .map(|e| json!({ "word": e.word.to_string(), "cumulant": report::exact(&e.cumulant) }))
                .collect();
            report::insert(&mut doc, "entries", Value::Array(entries));
            let mut t = Table::new(&["word", "num", "den", "decimal"]);
            for e in &r.entries {
                let mut row = vec![e.word.to_string()];
                row.extend(report::exact_cells(&e.cumulant));
                t.push(row);
            }
            (t, EXIT_OK)
        }
        Command::Laws { law, max_n, density_points } => run_laws(&mut doc, law, *max_n, *density_points)?,
        Command::Mc { case, word, dims, samples, seed } => {
            let est = sim::estimate_word_moment(word, dims, *case, *samples, *seed).map_err(usage)?;
            let reference = engine::exact_moment(*case, word, dims).ok();
            let z = reference.as_ref().map(|r| est.z_score(r.to_f64()));
            report::insert(&mut doc, "case", json!(case_name(*case)));
            report::insert(&mut doc, "word", report::word(word));
            report::insert(&mut doc, "dims", report::dims(dims));
            report::insert(&mut doc, "samples", json!(samples));
            report::insert(&mut doc, "seed", json!(seed));
            report::insert(&mut doc, "mean", report::float(est.mean));
            report::insert(&mut doc, "stderr", report::float(est.stderr));
            report::insert(&mut doc, "exact", reference.as_ref().map_or(Value::Null, report::exact));
            report::insert(&mut doc, "z", z.map_or(Value::Null, report::float));
            let mut t = Table::new(&["word", "samples", "seed", "mean", "stderr", "exact", "z"]);
            t.push(vec![
                word.to_string(),
                samples.to_string(),
                seed.to_string(),
                est.mean.to_string(),
                est.stderr.to_string(),
                reference.map_or(String::new(), |r| r.to_string()),
                z.map_or(String::new(), |z| z.to_string()),
            ]);
            (t, EXIT_OK)
        }
        Command::Blocks { c, d2, samples, seed } => {
            let rec = sim::block_experiment(c, *d2, *samples, *seed).map_err(usage)?;
            report::insert(&mut doc, "c", report::exact(c));
            report::insert(&mut doc, "d2", json!(rec.d2));
            report::insert(&mut doc, "p", json!(rec.p));
            report::insert(&mut doc, "samples", json!(rec.samples));
            report::insert(&mut doc, "seed", json!(rec.seed));
            let mut est = report::object();
            let mut t = Table::new(&["quantity", "mean", "stderr", "limit"]);
            for (q, s) in &rec.estimates {
                let limit = q.limit(c);
                let mut entry = report::stats(s);
                report::insert(&mut entry, "limit", report::exact(&limit));
                report::insert(&mut est, &q.name(), entry);
                t.push(vec![q.name(), s.mean.to_string(), s.stderr.to_string(), limit.to_string()]);
            }
            report::insert(&mut doc, "estimates", est);
            (t, EXIT_OK)
        }
        Command::Selftest => {
            let checks = selftest::run_all();
            let passed = checks.iter().all(|c| c.passed);
            let mut t = Table::new(&["check", "passed", "detail"]);
            let list: Vec<Value> = checks
                .iter()
                .map(|c| {
                    t.push(vec![c.name.to_string(), c.passed.to_string(), c.detail.clone()]);
                    json!({ "name": c.name, "passed": c.passed, "detail": c.detail })
                })
                .collect();
            report::insert(&mut doc, "checks", Value::Array(list));
            report::insert(&mut doc, "passed", json!(passed));
            (t, if passed { EXIT_OK } else { EXIT_SELFTEST })
        }
    };
    Ok(Outcome { document: doc, table, status })
}

fn law_json(law: &LawSpec) -> Value {
    match law {
        LawSpec::MarchenkoPastur { c } | LawSpec::ShiftedSemicircle { c } | LawSpec::EvenLaw2c { c } => {
            json!({ "kind": law.kind(), "c": report::exact(c) })
        }
        LawSpec::BnLaw { d, c } => json!({ "kind": law.kind(), "d": d, "c": report::exact(c) }),
        LawSpec::MpFreeDifference { c_plus, c_minus } => json!({
            "kind": law.kind(),
            "c_plus": report::exact(c_plus),
            "c_minus": report::exact(c_minus),
        }),
    }
}

fn run_laws(
    doc: &mut Value,
    law: &LawSpec,
    max_n: usize,
    density_points: Option<usize>,
) -> Result<(Table, i32), CliError> {
    let kappa = laws::cumulants(law, max_n).map_err(usage)?;
    let moment_order = max_n.min(engine_cap());
    let moments = laws::law_moments(law, moment_order).map_err(usage)?;
    report::insert(doc, "law", law_json(law));
    report::insert(doc, "max_n", json!(max_n));
    report::insert(
        doc,
        "cumulants",
        Value::Array(kappa.as_slice().iter().map(report::exact).collect()),
    );
    report::insert(
        doc,
        "moments",
        Value::Array(moments.as_slice().iter().map(report::exact).collect()),
    );
    if let Some(points) = density_points {
        let (a, b, atom) = laws::support(law).map_err(usage)?;
        let lo = a.max(0.0).min(b);
        let samples: Vec<laws::DensitySample> = (0..points)
            .map(|i| {
                let t = if points == 1 { 0.5 * (lo + b) } else { lo + (b - lo) * i as f64 / (points - 1) as f64 };
                laws::density(law, t).expect("support() succeeded")
            })
            .collect();
        report::insert(
            doc,
            "density",
            json!({
                "a": report::float(a),
                "b": report::float(b),
                "atom": report::float(atom),
                "samples": samples.iter().map(|s| json!([report::float(s.t), report::float(s.density)])).collect::<Vec<_>>(),
            }),
        );
        let mut t = Table::new(&["t", "density"]);
        for s in &samples {
            t.push(vec![s.t.to_string(), s.density.to_string()]);
        }
        return Ok((t, EXIT_OK));
    }
    let mut t = Table::new(&["n", "cumulant", "moment"]);
    for n in 1..=max_n {
        t.push(vec![
            n.to_string(),
            kappa.get(n).to_string(),
            if n <= moment_order { moments.get(n).to_string() } else { String::new() },
        ]);
    }
    Ok((t, EXIT_OK))
}

/// Configure the rayon pool from [`THREADS_ENV`] if set.
pub fn init_threads() -> Result<(), CliError> {
    let Ok(text) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = text
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {text:?}")))?;
    if n == 0 {
        return Err(CliError::Usage(format!("{THREADS_ENV} must be positive")));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

/// Full program: parse, run, write. Returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let fail = |e: CliError| {
        eprintln!("{}", serde_json::to_string(&e.to_json()).expect("serialisable"));
        e.exit_code()
    };
    let config = match RunConfig::from_args(args) {
        Ok(c) => c,
        Err(ArgsOutcome::Info(text)) => {
            print!("{text}");
            return EXIT_OK;
        }
        Err(ArgsOutcome::Invalid(e)) => return fail(e),
    };
    if let Err(e) = init_threads() {
        return fail(e);
    }
    let outcome = match run(&config) {
        Ok(o) => o,
        Err(e) => return fail(e),
    };
    let text = outcome.render(config.format);
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                return fail(CliError::Io(format!("{}: {e}", path.display())));
            }
        }
        None => print!("{text}"),
    }
    outcome.status
}
