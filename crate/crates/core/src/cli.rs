//! The `splitstat` experiment runner.
//!
//! Every option can be given on the command line or in a `key = value`
//! config file (`--config`); command-line values win. Reports are JSON
//! (default) or CSV with `#` metadata lines, and are never overwritten
//! without `--force`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{fiber_frequency, CertifiedFamily, FamilySpec, FiberReport, Subfamily, DEFAULT_CERTIFIER_BUDGET};
use crate::fp_poly::{enumerate_class_counts, FieldPolynomial, MAX_MODULUS};
use crate::primes::{is_prime_small, sieve_primes, PrimeTable};
use crate::split_types::{
    class_count, class_size, closed_form_quadratic_constant, closed_form_second_order, delta, empirical_second_order,
    enumerate_types, parity, splits_in_alternating, ExactRational, Parity, SplittingType,
};
use crate::statistics::{
    chebotarev_mean_from, index_prime_average, ks_distance, normal_cdf, ramified_average, regime_bound,
    report_from_profile, CenteredMoment, FamilyProfile, FamilySummary, PrimeAverage, DEFAULT_K_MAX,
};
use crate::VERSION;

#[derive(Parser, Debug)]
#[command(name = "splitstat", version, about = "Splitting-type statistics of integer polynomial families")]
struct Cli {
    #[command(subcommand)]
    experiment: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact class counts, densities and second-order constants for one prime
    Counts(Options),
    /// Frequency of a congruence fiber in the certified family
    Fibers(Options),
    /// Family mean of π_{f,r}(x) against the exact finite-prime reference
    Chebotarev(Options),
    /// Centered moments of π_{f,r}(x) − δ(r)π(x)
    Moments(Options),
    /// Normalized statistic, its moments and KS distance to the normal law
    Clt(Options),
    /// Average number of primes up to a bound dividing the discriminant
    Ramified(Options),
    /// Average number of primes up to a bound dividing the index
    Index(Options),
    /// Which even classes of S_n split in A_n
    Ansplit(Options),
}

#[derive(Args, Debug, Clone, Default)]
struct Options {
    /// key = value file supplying any of the options below
    #[arg(long)]
    config: Option<PathBuf>,
    /// Polynomial degree
    #[arg(long)]
    n: Option<String>,
    /// Coefficient bound N (decimal, any size)
    #[arg(long)]
    height: Option<String>,
    /// exhaustive | sampled
    #[arg(long)]
    mode: Option<String>,
    /// Number of draws in sampled mode
    #[arg(long)]
    sample_size: Option<String>,
    /// Seed of the sampled stream
    #[arg(long)]
    seed: Option<String>,
    /// Prime cutoff x for π_{f,r}(x)
    #[arg(long)]
    x: Option<String>,
    /// Prime for the counts experiment
    #[arg(long)]
    prime: Option<String>,
    /// Lower end of the prime range for the second-order coefficient
    #[arg(long)]
    p_min: Option<String>,
    /// Upper end of the prime range for the second-order coefficient
    #[arg(long)]
    p_max: Option<String>,
    /// Bound for the ramified and index prime counts
    #[arg(long)]
    prime_bound: Option<String>,
    /// Splitting type as comma-separated multiplicities r_1,…,r_n
    #[arg(long = "r", alias = "type")]
    r: Option<String>,
    /// Highest moment order reported
    #[arg(long)]
    k_max: Option<String>,
    /// Number of primes scanned by the S_n certifier
    #[arg(long)]
    budget: Option<String>,
    /// sn | sn-or-an
    #[arg(long)]
    subfamily: Option<String>,
    /// Fiber target p:c_0,…,c_{n−1} (monic, leading 1 implied); repeatable
    #[arg(long)]
    target: Vec<String>,
    /// Report path; the report goes to stdout when absent
    #[arg(long)]
    output: Option<PathBuf>,
    /// json | csv
    #[arg(long)]
    format: Option<String>,
    /// Worker threads (default 1)
    #[arg(long)]
    workers: Option<String>,
    /// Overwrite existing report files
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Fully resolved and validated options, embedded in every report.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub experiment: &'static str,
    pub n: usize,
    #[serde(serialize_with = "as_string_opt")]
    pub height: Option<BigInt>,
    pub mode: Option<&'static str>,
    pub sample_size: Option<u64>,
    pub seed: u64,
    pub x: Option<f64>,
    pub prime: Option<u64>,
    pub p_min: u64,
    pub p_max: u64,
    pub prime_bound: Option<u64>,
    pub r: Option<SplittingType>,
    pub k_max: u32,
    pub budget: usize,
    pub subfamily: Subfamily,
    pub targets: Vec<String>,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub workers: usize,
    pub force: bool,
}

fn as_string_opt<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.collect_str(b),
        None => s.serialize_none(),
    }
}

#[derive(Serialize)]
struct ShardPlan {
    workers: usize,
    partition: &'static str,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    version: &'static str,
    experiment: &'static str,
    config: &'a ExperimentConfig,
    shard_plan: ShardPlan,
    family: Option<FamilySummary>,
    result: T,
}

/// Parses arguments, runs the experiment and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(summary) => {
            println!("{summary}");
            0
        }
        Err(e) => {
            eprintln!("splitstat: {e}");
            e.exit_code()
        }
    }
}

fn run(cli: Cli) -> Result<String> {
    let (name, opts) = match cli.experiment {
        Command::Counts(o) => ("counts", o),
        Command::Fibers(o) => ("fibers", o),
        Command::Chebotarev(o) => ("chebotarev", o),
        Command::Moments(o) => ("moments", o),
        Command::Clt(o) => ("clt", o),
        Command::Ramified(o) => ("ramified", o),
        Command::Index(o) => ("index", o),
        Command::Ansplit(o) => ("ansplit", o),
    };
    let config = resolve(name, opts)?;
    if let Some(path) = &config.output {
        for p in output_paths(&config, path) {
            if p.exists() && !config.force {
                return Err(Error::config("output", format!("{} exists; pass --force to overwrite", p.display())));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::config("workers", e.to_string()))?;
    let outcome = pool.install(|| execute(&config))?;
    match &config.output {
        Some(path) => {
            for (p, body) in output_paths(&config, path).into_iter().zip(&outcome.documents) {
                std::fs::write(p, body)?;
            }
        }
        None => {
            for body in &outcome.documents {
                print!("{body}");
            }
        }
    }
    Ok(outcome.summary)
}

/// The main report path, plus the CLT sample file for `clt` in CSV format.
fn output_paths(config: &ExperimentConfig, path: &Path) -> Vec<PathBuf> {
    let mut out = vec![path.to_path_buf()];
    if config.experiment == "clt" && config.format == Format::Csv {
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        out.push(path.with_file_name(format!("{stem}.sample.csv")));
    }
    out
}

// ---- option resolution ----

struct Raw {
    values: BTreeMap<&'static str, String>,
    targets: Vec<String>,
    output: Option<PathBuf>,
    force: bool,
}

const KEYS: [&str; 17] = [
    "n",
    "height",
    "mode",
    "sample_size",
    "seed",
    "x",
    "prime",
    "p_min",
    "p_max",
    "prime_bound",
    "r",
    "k_max",
    "budget",
    "subfamily",
    "format",
    "workers",
    "target",
];

fn read_config_file(path: &Path) -> Result<Raw> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config("config", format!("cannot read {}: {e}", path.display())))?;
    let mut raw = Raw { values: BTreeMap::new(), targets: Vec::new(), output: None, force: false };
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::config("config", format!("line {}: expected key = value", i + 1)))?;
        let key = key.trim().replace('-', "_");
        let value = value.trim().to_string();
        match key.as_str() {
            "output" => raw.output = Some(PathBuf::from(value)),
            "force" => {
                raw.force =
                    parse_bool(&value).ok_or_else(|| Error::config("force", format!("{value:?} is not a boolean")))?
            }
            "target" => raw.targets.extend(value.split(';').map(|t| t.trim().to_string())),
            other => {
                let k = KEYS
                    .iter()
                    .find(|k| **k == other)
                    .ok_or_else(|| Error::config("config", format!("line {}: unknown key {other:?}", i + 1)))?;
                raw.values.insert(k, value);
            }
        }
    }
    Ok(raw)
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "true" | "yes" | "1" => Some(true),
        "false" | "no" | "0" => Some(false),
        _ => None,
    }
}

fn merge(opts: Options) -> Result<Raw> {
    let mut raw = match &opts.config {
        Some(p) => read_config_file(p)?,
        None => Raw { values: BTreeMap::new(), targets: Vec::new(), output: None, force: false },
    };
    let cli_values = [
        ("n", opts.n),
        ("height", opts.height),
        ("mode", opts.mode),
        ("sample_size", opts.sample_size),
        ("seed", opts.seed),
        ("x", opts.x),
        ("prime", opts.prime),
        ("p_min", opts.p_min),
        ("p_max", opts.p_max),
        ("prime_bound", opts.prime_bound),
        ("r", opts.r),
        ("k_max", opts.k_max),
        ("budget", opts.budget),
        ("subfamily", opts.subfamily),
        ("format", opts.format),
        ("workers", opts.workers),
    ];
    for (k, v) in cli_values {
        if let Some(v) = v {
            raw.values.insert(k, v);
        }
    }
    if !opts.target.is_empty() {
        raw.targets = opts.target;
    }
    if opts.output.is_some() {
        raw.output = opts.output;
    }
    raw.force |= opts.force;
    Ok(raw)
}

impl Raw {
    fn get<T: FromStr>(&self, field: &'static str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.values
            .get(field)
            .map(|v| v.parse::<T>().map_err(|e| Error::config(field, format!("{v:?}: {e}"))))
            .transpose()
    }

    fn require<T: FromStr>(&self, field: &'static str, experiment: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        self.get(field)?.ok_or_else(|| Error::config(field, format!("required by the {experiment} experiment")))
    }
}

fn parse_real(raw: &Raw, field: &'static str) -> Result<Option<f64>> {
    match raw.get::<f64>(field)? {
        Some(v) if !v.is_finite() || v < 0.0 => Err(Error::config(field, format!("{v} is not a nonnegative number"))),
        other => Ok(other),
    }
}

fn resolve(experiment: &'static str, opts: Options) -> Result<ExperimentConfig> {
    let raw = merge(opts)?;
    let n: usize = raw.require("n", experiment)?;
    if n == 0 || n > crate::split_types::MAX_ENUMERATED_DEGREE {
        return Err(Error::config("n", format!("{n} is outside 1..={}", crate::split_types::MAX_ENUMERATED_DEGREE)));
    }
    let family_experiment = matches!(experiment, "fibers" | "chebotarev" | "moments" | "clt" | "ramified" | "index");
    let height: Option<BigInt> = if family_experiment {
        let h: BigInt = raw.require("height", experiment)?;
        if h < BigInt::from(0) {
            return Err(Error::config("height", format!("{h} is negative")));
        }
        Some(h)
    } else {
        raw.get("height")?
    };
    let sample_size: Option<u64> = raw.get("sample_size")?;
    let mode = match raw.values.get("mode").map(String::as_str) {
        None | Some("exhaustive") => "exhaustive",
        Some("sampled") => "sampled",
        Some(other) => return Err(Error::config("mode", format!("{other:?} is not exhaustive or sampled"))),
    };
    if family_experiment && mode == "sampled" && sample_size.unwrap_or(0) == 0 {
        return Err(Error::config("sample_size", "sampled mode needs a positive sample size"));
    }
    let seed: u64 = raw.get("seed")?.unwrap_or(0);
    let x = parse_real(&raw, "x")?;
    if matches!(experiment, "chebotarev" | "moments" | "clt") && x.is_none() {
        return Err(Error::config("x", format!("required by the {experiment} experiment")));
    }
    let prime: Option<u64> = raw.get("prime")?;
    if experiment == "counts" {
        let p = prime.ok_or_else(|| Error::config("prime", "required by the counts experiment"))?;
        if !is_prime_small(p) || p >= MAX_MODULUS {
            return Err(Error::config("prime", format!("{p} is not a prime below 2^31")));
        }
    }
    let p_min: u64 = raw.get("p_min")?.unwrap_or(101);
    let p_max: u64 = raw.get("p_max")?.unwrap_or(199);
    if p_min > p_max {
        return Err(Error::config("p_max", format!("{p_max} is below p_min = {p_min}")));
    }
    let prime_bound: Option<u64> = raw.get("prime_bound")?;
    if matches!(experiment, "ramified" | "index") {
        match prime_bound {
            None => return Err(Error::config("prime_bound", format!("required by the {experiment} experiment"))),
            Some(b) if b < 2 => return Err(Error::config("prime_bound", format!("{b} is below 2"))),
            _ => {}
        }
    }
    let r = match raw.values.get("r") {
        None => None,
        Some(s) => {
            let t: SplittingType = s.parse().map_err(|e: Error| Error::config("r", e.to_string()))?;
            if t.degree() != n {
                return Err(Error::config("r", format!("{t} has Σ i·r_i = {}, not n = {n}", t.degree())));
            }
            Some(t)
        }
    };
    if matches!(experiment, "moments" | "clt") && r.is_none() {
        return Err(Error::config("r", format!("required by the {experiment} experiment")));
    }
    let k_max: u32 = raw.get("k_max")?.unwrap_or(DEFAULT_K_MAX);
    if k_max == 0 || k_max > 12 {
        return Err(Error::config("k_max", format!("{k_max} is outside 1..=12")));
    }
    let budget: usize = raw.get("budget")?.unwrap_or(DEFAULT_CERTIFIER_BUDGET);
    if budget == 0 {
        return Err(Error::config("budget", "must be at least 1"));
    }
    let subfamily = match raw.values.get("subfamily").map(String::as_str) {
        None | Some("sn") => Subfamily::Symmetric,
        Some("sn-or-an") => Subfamily::SymmetricOrAlternating,
        Some(other) => return Err(Error::config("subfamily", format!("{other:?} is not sn or sn-or-an"))),
    };
    if experiment == "fibers" && raw.targets.is_empty() {
        return Err(Error::config("target", "required by the fibers experiment"));
    }
    let format = match raw.values.get("format").map(String::as_str) {
        None | Some("json") => Format::Json,
        Some("csv") => Format::Csv,
        Some(other) => return Err(Error::config("format", format!("{other:?} is not json or csv"))),
    };
    let workers: usize = raw.get("workers")?.unwrap_or(1);
    if workers == 0 {
        return Err(Error::config("workers", "must be at least 1"));
    }
    Ok(ExperimentConfig {
        experiment,
        n,
        height,
        mode: family_experiment.then_some(mode),
        sample_size: if mode == "sampled" { sample_size } else { None },
        seed,
        x,
        prime,
        p_min,
        p_max,
        prime_bound,
        r,
        k_max,
        budget,
        subfamily,
        targets: raw.targets,
        output: raw.output,
        format,
        workers,
        force: raw.force,
    })
}

// ---- execution ----

struct Outcome {
    documents: Vec<String>,
    summary: String,
}

fn family_spec(config: &ExperimentConfig) -> FamilySpec {
    let height = config.height.clone().expect("validated");
    let spec = match config.mode {
        Some("sampled") => FamilySpec::sampled(config.n, height, config.sample_size.expect("validated"), config.seed),
        _ => FamilySpec::exhaustive(config.n, height),
    };
    spec.with_certifier_budget(config.budget)
}

fn build_family(config: &ExperimentConfig) -> Result<CertifiedFamily> {
    CertifiedFamily::build(&family_spec(config), config.subfamily)
}

fn prime_table(x: f64) -> Result<PrimeTable> {
    sieve_primes(x.floor() as u64)
}

fn warn_regime(config: &ExperimentConfig) {
    if let (Some(x), Some(h)) = (config.x, &config.height) {
        if let Some(limit) = regime_bound(h) {
            if x > limit {
                eprintln!(
                    "splitstat: warning: x = {x} exceeds N^(1/log log N) = {limit:.1}; outside the stated range of the normal limit"
                );
            }
        }
    }
}

fn shard_plan(config: &ExperimentConfig) -> ShardPlan {
    ShardPlan { workers: config.workers, partition: "family index ranges; per-member results merged in index order" }
}

fn json_document<T: Serialize>(config: &ExperimentConfig, family: Option<FamilySummary>, result: T) -> Result<String> {
    let env = Envelope {
        version: VERSION,
        experiment: config.experiment,
        config,
        shard_plan: shard_plan(config),
        family,
        result,
    };
    let mut s = serde_json::to_string_pretty(&env)?;
    s.push('\n');
    Ok(s)
}

/// CSV body preceded by `#` lines carrying the version, config and shard plan.
fn csv_document(config: &ExperimentConfig, header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "# splitstat {VERSION}").unwrap();
    writeln!(out, "# config: {}", serde_json::to_string(config)?).unwrap();
    writeln!(out, "# shard_plan: {}", serde_json::to_string(&shard_plan(config))?).unwrap();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    out.push_str(&String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.into_error()))?).expect("csv is utf-8"));
    Ok(out)
}

fn summary_line(experiment: &str, family: Option<&FamilySummary>, headline: String) -> String {
    match family {
        Some(f) => format!("{experiment}: family_size={} excluded={} {headline}", f.total, f.excluded),
        None => format!("{experiment}: family_size=n/a excluded=n/a {headline}"),
    }
}

fn execute(config: &ExperimentConfig) -> Result<Outcome> {
    match config.experiment {
        "counts" => run_counts(config),
        "fibers" => run_fibers(config),
        "chebotarev" => run_chebotarev(config),
        "moments" => run_moments(config),
        "clt" => run_clt(config),
        "ramified" | "index" => run_prime_average(config),
        "ansplit" => run_ansplit(config),
        other => Err(Error::Internal(format!("unknown experiment {other}"))),
    }
}

#[derive(Serialize)]
struct CountRow {
    r: SplittingType,
    delta: ExactRational,
    #[serde(serialize_with = "as_string")]
    class_size: BigInt,
    #[serde(serialize_with = "as_string")]
    class_count: BigInt,
    enumerated: Option<u64>,
    closed_form_second_order: ExactRational,
    closed_form_quadratic_constant: ExactRational,
    empirical_second_order: ExactRational,
}

fn as_string<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn run_counts(config: &ExperimentConfig) -> Result<Outcome> {
    let p = config.prime.expect("validated");
    let census = enumerate_class_counts(p, config.n).ok();
    let mut rows = Vec::new();
    for r in enumerate_types(config.n)? {
        rows.push(CountRow {
            delta: delta(&r),
            class_size: class_size(&r)?,
            class_count: class_count(&r, p),
            enumerated: census.as_ref().map(|c| c.by_type[&r]),
            closed_form_second_order: closed_form_second_order(&r),
            closed_form_quadratic_constant: closed_form_quadratic_constant(r.count(2)),
            empirical_second_order: empirical_second_order(&r, config.p_min, config.p_max)?,
            r,
        });
    }
    let disagreements = rows.iter().filter(|r| r.closed_form_second_order != r.empirical_second_order).count();
    let headline = format!(
        "types={} second_order_disagreements={disagreements} non_squarefree={}",
        rows.len(),
        census.as_ref().map_or("n/a".to_string(), |c| c.non_squarefree.to_string())
    );
    let doc = match config.format {
        Format::Json => json_document(config, None, &rows)?,
        Format::Csv => csv_document(
            config,
            &[
                "r",
                "delta",
                "class_size",
                "class_count",
                "enumerated",
                "closed_form_second_order",
                "closed_form_quadratic_constant",
                "empirical_second_order",
            ],
            &rows
                .iter()
                .map(|row| {
                    vec![
                        row.r.to_string(),
                        row.delta.to_string(),
                        row.class_size.to_string(),
                        row.class_count.to_string(),
                        row.enumerated.map_or(String::new(), |e| e.to_string()),
                        row.closed_form_second_order.to_string(),
                        row.closed_form_quadratic_constant.to_string(),
                        row.empirical_second_order.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
    };
    Ok(Outcome { documents: vec![doc], summary: summary_line("counts", None, headline) })
}

fn parse_target(n: usize, s: &str) -> Result<(u64, FieldPolynomial)> {
    let bad = |reason: String| Error::config("target", format!("{s:?}: {reason}"));
    let (p, coeffs) = s.split_once(':').ok_or_else(|| bad("expected p:c_0,…,c_{n−1}".into()))?;
    let p: u64 = p.trim().parse().map_err(|e| bad(format!("{e}")))?;
    if !is_prime_small(p) || p >= MAX_MODULUS {
        return Err(bad(format!("{p} is not a prime below 2^31")));
    }
    let mut c = coeffs
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| bad(format!("{e}"))))
        .collect::<Result<Vec<_>>>()?;
    if c.len() != n {
        return Err(bad(format!("expected {n} coefficients, got {}", c.len())));
    }
    c.push(1);
    Ok((p, FieldPolynomial::from_i64(p, &c)))
}

#[derive(Serialize)]
struct FiberResult {
    targets: Vec<String>,
    #[serde(flatten)]
    report: FiberReport,
}

fn run_fibers(config: &ExperimentConfig) -> Result<Outcome> {
    let targets = config.targets.iter().map(|t| parse_target(config.n, t)).collect::<Result<Vec<_>>>()?;
    let spec = family_spec(config);
    spec.validate()?;
    let family = CertifiedFamily::build(&spec, config.subfamily)?;
    let report = fiber_frequency(&family, &spec.height, &targets)?;
    let summary = FamilySummary::of(&family);
    let headline = format!("empirical={} reference={}", report.empirical, report.reference);
    let doc = match config.format {
        Format::Json => json_document(
            config,
            Some(summary.clone()),
            FiberResult { targets: config.targets.clone(), report: report.clone() },
        )?,
        Format::Csv => csv_document(
            config,
            &["targets", "empirical", "reference", "hits", "members", "excluded"],
            &[vec![
                config.targets.join(";"),
                report.empirical.to_string(),
                report.reference.to_string(),
                report.hits.to_string(),
                report.members.to_string(),
                report.excluded.to_string(),
            ]],
        )?,
    };
    Ok(Outcome { documents: vec![doc], summary: summary_line("fibers", Some(&summary), headline) })
}

#[derive(Serialize)]
struct ChebotarevRow {
    r: SplittingType,
    empirical_mean: f64,
    reference: f64,
    delta_pi: f64,
    deviation_over_pi: f64,
}

fn run_chebotarev(config: &ExperimentConfig) -> Result<Outcome> {
    warn_regime(config);
    let x = config.x.expect("validated");
    let table = prime_table(x)?;
    let family = build_family(config)?;
    let profile = FamilyProfile::compute(&family, &[x], &table)?;
    let pi = profile.prime_count(x)? as f64;
    let types = match &config.r {
        Some(r) => vec![r.clone()],
        None => enumerate_types(config.n)?,
    };
    let rows = types
        .into_iter()
        .map(|r| {
            let m = chebotarev_mean_from(&profile, &r, x, &table)?;
            Ok(ChebotarevRow {
                delta_pi: delta(&r).to_f64() * pi,
                deviation_over_pi: if pi > 0.0 { (m.empirical - m.reference) / pi } else { 0.0 },
                empirical_mean: m.empirical,
                reference: m.reference,
                r,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let worst = rows.iter().fold(0.0f64, |w, r| w.max(r.deviation_over_pi.abs()));
    let summary = FamilySummary::of(&family);
    let doc = match config.format {
        Format::Json => json_document(config, Some(summary.clone()), &rows)?,
        Format::Csv => csv_document(
            config,
            &["r", "empirical_mean", "reference", "delta_pi", "deviation_over_pi"],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.r.to_string(),
                        r.empirical_mean.to_string(),
                        r.reference.to_string(),
                        r.delta_pi.to_string(),
                        r.deviation_over_pi.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
    };
    Ok(Outcome {
        documents: vec![doc],
        summary: summary_line("chebotarev", Some(&summary), format!("max_deviation_over_pi={worst}")),
    })
}

fn run_moments(config: &ExperimentConfig) -> Result<Outcome> {
    warn_regime(config);
    let x = config.x.expect("validated");
    let r = config.r.clone().expect("validated");
    let table = prime_table(x)?;
    let family = build_family(config)?;
    let profile = FamilyProfile::compute(&family, &[x], &table)?;
    let rows: Vec<CenteredMoment> =
        (1..=config.k_max).map(|k| profile.centered_moment(&r, x, k)).collect::<Result<_>>()?;
    let summary = FamilySummary::of(&family);
    let headline = rows.iter().find(|m| m.k == 2).map_or(String::new(), |m| format!("normalized_m2={}", m.normalized));
    let doc = match config.format {
        Format::Json => json_document(config, Some(summary.clone()), &rows)?,
        Format::Csv => csv_document(
            config,
            &["k", "moment", "reference", "band", "normalized"],
            &rows
                .iter()
                .map(|m| {
                    vec![
                        m.k.to_string(),
                        m.moment.to_string(),
                        m.reference.to_string(),
                        m.band.map_or(String::new(), |b| b.to_string()),
                        m.normalized.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
    };
    Ok(Outcome { documents: vec![doc], summary: summary_line("moments", Some(&summary), headline) })
}

fn run_clt(config: &ExperimentConfig) -> Result<Outcome> {
    warn_regime(config);
    let x = config.x.expect("validated");
    let r = config.r.clone().expect("validated");
    let table = prime_table(x)?;
    let family = build_family(config)?;
    let profile = FamilyProfile::compute(&family, &[x], &table)?;
    let report = report_from_profile(&family, &profile, &r, x, &table, config.k_max)?;
    debug_assert_eq!(report.ks_distance, ks_distance(&report.clt_sample, normal_cdf));
    let headline = format!("ks_distance={}", report.ks_distance);
    let summary = summary_line("clt", Some(&report.family), headline);
    let documents = match config.format {
        Format::Json => vec![json_document(config, None, &report)?],
        Format::Csv => {
            let mut types = Vec::new();
            report.write_types_csv(&mut types)?;
            let mut sample = Vec::new();
            report.write_sample_csv(&mut sample)?;
            let meta = csv_document(config, &[], &[])?;
            let meta = meta.lines().take(3).map(|l| format!("{l}\n")).collect::<String>();
            let mut moments = String::from("\n# moments\n");
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["k", "moment", "reference", "band", "normalized"])?;
            for m in &report.moments {
                w.write_record([
                    m.k.to_string(),
                    m.moment.to_string(),
                    m.reference.to_string(),
                    m.band.map_or(String::new(), |b| b.to_string()),
                    m.normalized.to_string(),
                ])?;
            }
            moments.push_str(std::str::from_utf8(&w.into_inner().map_err(|e| Error::Io(e.into_error()))?).unwrap());
            let ks = format!("\n# ks_distance: {}\n", report.ks_distance);
            vec![
                format!("{meta}{}{moments}{ks}", String::from_utf8(types).unwrap()),
                format!("{meta}{}", String::from_utf8(sample).unwrap()),
            ]
        }
    };
    Ok(Outcome { documents, summary })
}

fn run_prime_average(config: &ExperimentConfig) -> Result<Outcome> {
    let bound = config.prime_bound.expect("validated");
    let family = build_family(config)?;
    let result: PrimeAverage = if config.experiment == "ramified" {
        ramified_average(&family, bound)?
    } else {
        index_prime_average(&family, bound)?
    };
    let summary = FamilySummary::of(&family);
    let headline = format!("average={} reference={}", result.average, result.reference);
    let doc = match config.format {
        Format::Json => json_document(config, Some(summary.clone()), &result)?,
        Format::Csv => csv_document(
            config,
            &["bound", "average", "reference", "members", "excluded"],
            &[vec![
                result.bound.to_string(),
                result.average.to_string(),
                result.reference.to_string(),
                result.members.to_string(),
                result.excluded.to_string(),
            ]],
        )?,
    };
    Ok(Outcome { documents: vec![doc], summary: summary_line(config.experiment, Some(&summary), headline) })
}

#[derive(Serialize)]
struct AnRow {
    r: SplittingType,
    parity: Parity,
    /// `None` for odd classes, which do not lie in A_n.
    splits_in_alternating: Option<bool>,
}

fn run_ansplit(config: &ExperimentConfig) -> Result<Outcome> {
    let rows = enumerate_types(config.n)?
        .into_iter()
        .map(|r| {
            let par = parity(&r);
            let splits = match par {
                Parity::Even => Some(splits_in_alternating(&r)?),
                Parity::Odd => None,
            };
            Ok(AnRow { r, parity: par, splits_in_alternating: splits })
        })
        .collect::<Result<Vec<_>>>()?;
    let split = rows.iter().filter(|r| r.splits_in_alternating == Some(true)).count();
    let doc = match config.format {
        Format::Json => json_document(config, None, &rows)?,
        Format::Csv => csv_document(
            config,
            &["r", "parity", "splits_in_alternating"],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        r.r.to_string(),
                        format!("{:?}", r.parity).to_lowercase(),
                        r.splits_in_alternating.map_or(String::new(), |b| b.to_string()),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
    };
    Ok(Outcome { documents: vec![doc], summary: summary_line("ansplit", None, format!("split_classes={split}")) })
}
