//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a computation or verification failure, 2 a usage
//! error, 3 a corpus that cannot be loaded.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::corpus::{
    load_corpus, load_corpus_from, scaled_seeds, verify_all, verify_chuquet, Corpus, Report,
    Section, Status,
};
use crate::engine::{
    is_optimal_lower, is_optimal_upper, refine_raw, RefinePolicy, StopRule, Termination, Trace,
    DEFAULT_ROW_CAP,
};
use crate::error::Error;
use crate::oracle::fundamental_pell;
use crate::rational::{
    parse_radicand, remainder, to_mixed, upper_error, FractionText, Radicand, RawFraction,
    Rational,
};
use crate::seeds::{heron_bounds, integer_bounds, Bracket, SeedPair};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CORPUS: i32 = 3;

/// Environment variable naming an alternative corpus file.
pub const CORPUS_ENV: &str = "CORPUS_PATH";

#[derive(Debug, Parser)]
#[command(
    name = "ortega",
    version,
    about = "Exact mediant approximations of square roots"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bracket a square root and refine the bracket by mediants.
    Approx(ApproxArgs),
    /// Recompute every value in the table corpus.
    Verify(VerifyArgs),
    /// Fundamental solution of p^2 - n q^2 = 1 and the mediant run that finds it.
    Pell {
        /// Positive non-square integer.
        n: String,
    },
    /// Print and check Chuquet's table of roots.
    Chuquet(CorpusArgs),
    /// Derive sqrt(c^2/m) seeds from an approximation of sqrt(m) and refine them.
    ScaleDerive(ScaleArgs),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    #[default]
    Reduce,
    Raw,
}

impl From<PolicyArg> for RefinePolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Reduce => RefinePolicy::Reduce,
            PolicyArg::Raw => RefinePolicy::KeepRaw,
        }
    }
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Corpus file to use instead of the built-in one.
    #[arg(long, value_name = "PATH")]
    pub corpus: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    /// Non-negative rational, e.g. `80`, `16/3` or `127+3/11`.
    #[arg(allow_hyphen_values = true)]
    pub radicand: String,
    /// heron | integer | scaled C M | custom LOWER UPPER
    #[arg(long, num_args = 1..=3, value_name = "KIND", default_value = "heron")]
    pub seeds: Vec<String>,
    #[arg(long, value_enum, default_value_t)]
    pub policy: PolicyArg,
    /// optimal | optimal-after FRAC | target FRAC | rows K | exact
    #[arg(long, num_args = 1..=2, value_name = "RULE", default_value = "optimal")]
    pub stop: Vec<String>,
    #[command(flatten)]
    pub corpus: CorpusArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Check a single section: section2 | traces | chuquet | appendix3
    #[arg(long, value_name = "SECTION")]
    pub only: Option<String>,
    #[command(flatten)]
    pub corpus: CorpusArgs,
}

#[derive(Debug, Args)]
pub struct ScaleArgs {
    /// Scale factor.
    #[arg(default_value = "100")]
    pub c: String,
    /// Radicand whose root is scaled.
    #[arg(default_value = "5")]
    pub m: String,
    #[arg(long, value_enum, default_value_t = PolicyArg::Raw)]
    pub policy: PolicyArg,
    #[arg(long, num_args = 1..=2, value_name = "RULE", default_value = "optimal")]
    pub stop: Vec<String>,
    #[command(flatten)]
    pub corpus: CorpusArgs,
}

/// How the starting bracket is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeedChoice {
    Heron,
    Integer,
    Scaled { c: Rational, m: Radicand },
    Custom { lower: FractionText, upper: FractionText },
}

/// Validated `approx` options.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliConfig {
    pub radicand: Radicand,
    pub seeds: SeedChoice,
    pub policy: RefinePolicy,
    pub stop: StopRule,
    pub format: Format,
    pub corpus: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Computation(String),
    Corpus(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Computation(_) => EXIT_FAILURE,
            Failure::Corpus(_) => EXIT_CORPUS,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Computation(m) | Failure::Corpus(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::NegativeRadicand(_) | Error::InvalidStopRule(_) => {
                Failure::Usage(e.to_string())
            }
            Error::Corpus { .. } | Error::Io { .. } => Failure::Corpus(e.to_string()),
            _ => Failure::Computation(e.to_string()),
        }
    }
}

type CliResult = std::result::Result<i32, Failure>;

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Approx(args) => config_from(&args).and_then(|c| cmd_approx(&c, out)),
        Command::Verify(args) => cmd_verify(&args, out),
        Command::Pell { n } => cmd_pell(&n, out),
        Command::Chuquet(args) => cmd_chuquet(&args, out),
        Command::ScaleDerive(args) => cmd_scale_derive(&args, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::Computation(format!("write failed: {e}"))
}

fn parse_value(text: &str) -> std::result::Result<Rational, Failure> {
    text.parse::<Rational>()
        .map_err(|e| usage(format!("'{text}': {e}")))
}

fn parse_stop(words: &[String]) -> std::result::Result<StopRule, Failure> {
    let words: Vec<&str> = words.iter().map(String::as_str).collect();
    match words.as_slice() {
        ["optimal"] => Ok(StopRule::FirstOptimalUpper),
        ["optimal-after", v] => Ok(StopRule::FirstOptimalUpperAfter(parse_value(v)?)),
        ["target", v] => Ok(StopRule::TargetValue(parse_value(v)?)),
        ["rows", k] => match k.parse::<usize>() {
            Ok(k) if k > 0 => Ok(StopRule::MaxRows(k)),
            _ => Err(usage(format!("--stop rows needs a positive count, got '{k}'"))),
        },
        ["exact"] => Ok(StopRule::ExactHit),
        _ => Err(usage(format!(
            "--stop expects optimal | optimal-after FRAC | target FRAC | rows K | exact, got '{}'",
            words.join(" ")
        ))),
    }
}

fn parse_seeds(words: &[String]) -> std::result::Result<SeedChoice, Failure> {
    let words: Vec<&str> = words.iter().map(String::as_str).collect();
    match words.as_slice() {
        ["heron"] => Ok(SeedChoice::Heron),
        ["integer"] => Ok(SeedChoice::Integer),
        ["scaled", c, m] => Ok(SeedChoice::Scaled {
            c: parse_value(c)?,
            m: parse_radicand(m).map_err(|e| usage(format!("'{m}': {e}")))?,
        }),
        ["custom", l, u] => Ok(SeedChoice::Custom {
            lower: l.parse().map_err(|e| usage(format!("'{l}': {e}")))?,
            upper: u.parse().map_err(|e| usage(format!("'{u}': {e}")))?,
        }),
        _ => Err(usage(format!(
            "--seeds expects heron | integer | scaled C M | custom LOWER UPPER, got '{}'",
            words.join(" ")
        ))),
    }
}

/// Validates every `approx` flag before anything is computed.
pub fn approx_config(args: &ApproxArgs) -> Result<CliConfig, String> {
    config_from(args).map_err(|f| f.message().to_string())
}

fn config_from(args: &ApproxArgs) -> std::result::Result<CliConfig, Failure> {
    Ok(CliConfig {
        radicand: parse_radicand(&args.radicand)
            .map_err(|e| usage(format!("radicand '{}': {e}", args.radicand)))?,
        seeds: parse_seeds(&args.seeds)?,
        policy: args.policy.into(),
        stop: parse_stop(&args.stop)?,
        format: args.corpus.format,
        corpus: args.corpus.corpus.clone(),
    })
}

fn load(path: Option<&Path>) -> std::result::Result<Corpus, Failure> {
    let env = std::env::var_os(CORPUS_ENV).map(PathBuf::from);
    let loaded = match path.map(Path::to_path_buf).or(env) {
        Some(p) => load_corpus_from(&p),
        None => load_corpus(),
    };
    loaded.map_err(|e| Failure::Corpus(e.to_string()))
}

fn stop_text(stop: &StopRule) -> String {
    match stop {
        StopRule::FirstOptimalUpper => "first optimal upper bound".into(),
        StopRule::FirstOptimalUpperAfter(v) => format!("first optimal upper bound from {v} on"),
        StopRule::TargetValue(v) => format!("value {v}"),
        StopRule::MaxRows(k) => format!("{k} rows"),
        StopRule::ExactHit => "exact root".into(),
    }
}

fn optimal_word(optimal: bool) -> &'static str {
    if optimal {
        "optimal"
    } else {
        "not optimal"
    }
}

/// Iteration table, one row per line, columns padded to a common width.
fn render_trace(trace: &Trace, format: Format) -> String {
    if format == Format::Csv {
        return format!("index,lower,upper,upper_error\n{}", trace.to_delimited(','));
    }
    let mut cells = vec![[
        "row".to_string(),
        "lower".to_string(),
        "upper".to_string(),
        "upper error".to_string(),
    ]];
    for row in &trace.rows {
        cells.push([
            row.index.to_string(),
            row.lower.mixed_text(),
            row.upper.mixed_text(),
            row.upper_error.to_fraction_text(),
        ]);
    }
    let width = |i: usize| cells.iter().map(|c| c[i].len()).max().unwrap_or(0);
    let (w0, w1, w2) = (width(0), width(1), width(2));
    let mut out = String::new();
    for c in &cells {
        out.push_str(&format!(
            "{:>w0$}  {:<w1$}  {:<w2$}  {}\n",
            c[0], c[1], c[2], c[3]
        ));
    }
    out
}

fn render_summary(trace: &Trace) -> String {
    let n = &trace.radicand;
    let last = trace.last();
    let lower = last.lower.value();
    let upper = last.upper.value();
    let mut out = format!(
        "final: {} < sqrt({n}) < {}\n",
        last.lower.mixed_text(),
        last.upper.mixed_text()
    );
    out.push_str(&format!(
        "remainder n - lower^2 = {} ({}); upper^2 - n = {} ({})\n",
        remainder(&lower, n),
        optimal_word(is_optimal_lower(&lower, n)),
        upper_error(&upper, n),
        optimal_word(is_optimal_upper(&upper, n))
    ));
    out.push_str(&match &trace.termination {
        Termination::StopRuleMet => format!("stopped at: {}\n", stop_text(&trace.stop)),
        Termination::ExactRootFound(r) => format!("exact: {r}\n"),
        Termination::Incomplete => format!(
            "incomplete: {DEFAULT_ROW_CAP} rows without reaching {}\n",
            stop_text(&trace.stop)
        ),
    });
    out
}

fn seed_pair(config: &CliConfig) -> std::result::Result<(RawFraction, RawFraction), Failure> {
    let n = &config.radicand;
    let pair = |p: SeedPair| (p.lower.to_raw(), p.upper.to_raw());
    match &config.seeds {
        SeedChoice::Heron => match heron_bounds(n)? {
            Bracket::Pair(p) => Ok(pair(p)),
            Bracket::Exact(_) => unreachable!("exact roots are handled before seeding"),
        },
        SeedChoice::Integer => Ok(pair(integer_bounds(n).pair().expect("not a square"))),
        SeedChoice::Scaled { c, m } => {
            let corpus = load(config.corpus.as_deref())?;
            let scaled = scaled_seeds(&corpus, c, m)?;
            if &scaled.target != n {
                return Err(Failure::Computation(format!(
                    "invalid seeds: scaling by {c} over {m} brackets sqrt({}), not sqrt({n})",
                    scaled.target
                )));
            }
            Ok(pair(scaled.pair))
        }
        SeedChoice::Custom { lower, upper } => {
            SeedPair::new(lower.value(), upper.value(), crate::seeds::SeedOrigin::Custom, n)?;
            Ok((lower.raw(), upper.raw()))
        }
    }
}

/// `approx`: the iteration table and a summary of the final bracket.
fn cmd_approx(config: &CliConfig, out: &mut dyn Write) -> CliResult {
    if let Some(root) = config.radicand.exact_root() {
        writeln!(out, "exact: {root}").map_err(io_failure)?;
        return Ok(EXIT_OK);
    }
    let (lower, upper) = seed_pair(config)?;
    let trace = refine_raw(
        &config.radicand,
        lower,
        upper,
        config.policy,
        config.stop.clone(),
        DEFAULT_ROW_CAP,
    )?;
    let mut text = render_trace(&trace, config.format);
    if config.format == Format::Table {
        text.push_str(&render_summary(&trace));
    }
    out.write_all(text.as_bytes()).map_err(io_failure)?;
    Ok(EXIT_OK)
}

/// `verify`: exit 1 when anything disagrees that is not a recorded erratum.
fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult {
    let section = args
        .only
        .as_deref()
        .map(str::parse::<Section>)
        .transpose()
        .map_err(usage)?;
    let corpus = load(args.corpus.corpus.as_deref())?;
    let report = match section {
        Some(s) => verify_all(&corpus).section(s),
        None => verify_all(&corpus),
    };
    write_report(&report, args.corpus.format, out)
}

fn write_report(report: &Report, format: Format, out: &mut dyn Write) -> CliResult {
    let text = match format {
        Format::Table => report.render_text(),
        Format::Csv => report.render_csv(),
    };
    out.write_all(text.as_bytes()).map_err(io_failure)?;
    Ok(if report.is_clean() { EXIT_OK } else { EXIT_FAILURE })
}

/// `pell`: the fundamental solution and where mediation from `(a, a+1)` meets it.
fn cmd_pell(text: &str, out: &mut dyn Write) -> CliResult {
    let n = parse_radicand(text).map_err(|e| usage(format!("'{text}': {e}")))?;
    if !n.is_integer() {
        return Err(Error::NotNonSquareInteger(n.to_string()).into());
    }
    if let Some(root) = n.exact_root() {
        return Err(Error::PerfectSquare {
            radicand: n.to_string(),
            root: root.to_string(),
        }
        .into());
    }
    let sol = fundamental_pell(n.numer())?;
    let value = sol.value();
    let (whole, frac) = to_mixed(&value);
    let seeds = integer_bounds(&n).pair().expect("not a square");
    let trace = refine_raw(
        &n,
        seeds.lower.to_raw(),
        seeds.upper.to_raw(),
        RefinePolicy::Reduce,
        StopRule::FirstOptimalUpper,
        DEFAULT_ROW_CAP,
    )?;

    let mut text = format!(
        "{}/{} = {whole}+{frac}, error {}\n",
        sol.p,
        sol.q,
        upper_error(&value, &n)
    );
    text.push_str(&format!("(p, q) = ({}, {})\n", sol.p, sol.q));
    let found = (trace.termination == Termination::StopRuleMet).then(|| trace.last());
    let bracket = format!("({}, {})", seeds.lower, seeds.upper);
    match found {
        Some(row) => text.push_str(&format!(
            "first optimal upper from {bracket}: {} at row {}\n",
            row.upper.mixed_text(),
            row.index
        )),
        None => text.push_str(&format!(
            "first optimal upper from {bracket}: not within {DEFAULT_ROW_CAP} rows\n"
        )),
    }
    let lower = trace
        .rows
        .iter()
        .find(|r| is_optimal_lower(&r.lower.value(), &n));
    match lower {
        Some(row) => text.push_str(&format!(
            "first optimal lower from {bracket}: {} at row {}\n",
            row.lower.mixed_text(),
            row.index
        )),
        None => text.push_str(&format!(
            "first optimal lower from {bracket}: none up to row {}\n",
            trace.last().index
        )),
    }
    out.write_all(text.as_bytes()).map_err(io_failure)?;

    let agrees = found.is_some_and(|r| r.upper.value() == value);
    Ok(if agrees { EXIT_OK } else { EXIT_FAILURE })
}

/// `chuquet`: the table with recomputed errors, then the check summary.
fn cmd_chuquet(args: &CorpusArgs, out: &mut dyn Write) -> CliResult {
    let corpus = load(args.corpus.as_deref())?;
    let report = verify_chuquet(&corpus);
    if args.format == Format::Csv {
        return write_report(&report, Format::Csv, out);
    }
    let errors: Vec<&Status> = report
        .findings
        .iter()
        .filter(|f| f.check.starts_with("error"))
        .map(|f| &f.status)
        .collect();
    let mut rows = vec![[
        "n".to_string(),
        "side".to_string(),
        "approximation".to_string(),
        "printed error".to_string(),
        "x^2 - n".to_string(),
        "status".to_string(),
    ]];
    for (entry, status) in corpus.chuquet.iter().zip(errors) {
        rows.push([
            entry.n.to_string(),
            entry.side.to_string(),
            entry.approx.to_string(),
            entry.stated_error.to_string(),
            upper_error(&entry.approx.value(), &entry.radicand).to_string(),
            status.to_string(),
        ]);
    }
    let w: Vec<usize> = (0..6)
        .map(|i| rows.iter().map(|r| r[i].len()).max().unwrap_or(0))
        .collect();
    let mut text = String::new();
    for r in &rows {
        text.push_str(&format!(
            "{:>w0$}  {:<w1$}  {:<w2$}  {:<w3$}  {:<w4$}  {}\n",
            r[0],
            r[1],
            r[2],
            r[3],
            r[4],
            r[5],
            w0 = w[0],
            w1 = w[1],
            w2 = w[2],
            w3 = w[3],
            w4 = w[4]
        ));
    }
    text.push('\n');
    out.write_all(text.as_bytes()).map_err(io_failure)?;
    write_report(&report, Format::Table, out)
}

/// `scale-derive`: seeds for `sqrt(c^2/m)` from an upper root of `m`, then the run.
fn cmd_scale_derive(args: &ScaleArgs, out: &mut dyn Write) -> CliResult {
    let c = parse_value(&args.c)?;
    let m = parse_radicand(&args.m).map_err(|e| usage(format!("'{}': {e}", args.m)))?;
    let stop = parse_stop(&args.stop)?;
    let corpus = load(args.corpus.corpus.as_deref())?;
    let scaled = scaled_seeds(&corpus, &c, &m)?;
    let n = &scaled.target;
    let (whole, frac) = to_mixed(&scaled.pair.lower);

    let trace = refine_raw(
        n,
        scaled.pair.lower.to_raw(),
        scaled.pair.upper.to_raw(),
        args.policy.into(),
        stop,
        DEFAULT_ROW_CAP,
    )?;

    let mut text = String::new();
    if args.corpus.format == Format::Table {
        let origin = if scaled.from_chuquet {
            "Chuquet"
        } else {
            "first optimal upper from integer seeds"
        };
        text.push_str(&format!(
            "source: sqrt({m}) < {} ({origin})\n",
            scaled.source.value.to_raw().mixed_text()
        ));
        text.push_str(&format!(
            "lower:  sqrt({n}) = {c}/sqrt({m}) > {c}/({}) = {}\n",
            scaled.source.value.to_raw().mixed_text(),
            scaled.pair.lower.to_raw().mixed_text()
        ));
        text.push_str(&format!(
            "upper:  {whole}+{}/{} = {} > sqrt({n})\n",
            frac.numer(),
            frac.denom() - 1u32,
            scaled.pair.upper.to_raw().mixed_text()
        ));
        text.push('\n');
    }
    text.push_str(&render_trace(&trace, args.corpus.format));
    if args.corpus.format == Format::Table {
        text.push_str(&render_summary(&trace));
    }
    out.write_all(text.as_bytes()).map_err(io_failure)?;
    Ok(EXIT_OK)
}
