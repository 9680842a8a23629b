//! Command-line interface: evaluation, tables, identity verification,
//! convergence traces and the batch suite.
//!
//! Exit codes: 0 = all checks passed, 1 = a mathematical check failed,
//! 2 = usage, parse or domain error.

use clap::{Parser, Subcommand, ValueEnum};
use degenexp::exact::{
    bell_degenerate, degen_exp_exact, format_rat, gen_falling_factorial, parse_rat, rat_int,
    rat_to_f64, Rat, StirlingTable,
};
use degenexp::identities::{
    converge_trace, default_grid, parse_suite_config, run_suite, verify, CaseConfig, IdentityCase,
    IdentityReport, Mode, SuiteSummary,
};
use degenexp::numeric;
use degenexp::series::{degen_exp_series, tail_value_terminating};
use num::{One, Zero};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "degenexp",
    version,
    about = "Exact and numeric computation around degenerate exponentials, degenerate Stirling numbers and truncated-exponential tail sums"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvalWhat {
    /// Degenerate exponential e_lambda^x(y)
    Exp,
    /// Partial sum of its series up to degree n
    ExpPartial,
    /// Tail T_n(y): the series minus its degree-n partial sum
    Tail,
    /// Degenerate hyperbolic cosine at y
    Cosh,
    /// Degenerate Bell polynomial phi_{n,lambda}(x)
    Bell,
    /// Generalized falling factorial (x)_{n,lambda}
    Fallfact,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    /// Classical Stirling numbers of the second kind
    Stirling2,
    /// Degenerate Stirling numbers of the second kind (needs --lambda)
    Stirling2Deg,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one quantity; exact results print as "p/q", numeric as decimals
    Eval {
        #[arg(long, value_enum)]
        what: EvalWhat,
        /// Rational "p/q" or integer
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 1000)]
        max_terms: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Emit a Stirling triangle row by row
    Table {
        #[arg(long, value_enum)]
        kind: TableKind,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long)]
        nmax: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Check one identity in exact and/or numeric mode
    Verify {
        #[arg(long)]
        identity: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Tail argument (default 1)
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// exact|numeric|both (default both)
        #[arg(long)]
        mode: Option<String>,
        /// Truncation order for exact univariate checks (default 32)
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        order_x: Option<usize>,
        #[arg(long)]
        order_y: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        max_terms: Option<usize>,
        /// JSON case file supplying the same keys as the flags;
        /// explicit flags override file values
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Stream outer partial sums of an identity as CSV for plotting
    Converge {
        #[arg(long)]
        identity: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 20)]
        terms: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 1000)]
        max_terms: usize,
    },
    /// Run the default verification grid (or a config file) and report JSON
    Suite {
        /// JSON file: {"cases": [{"identity": ..., "lambda": ..., ...}]}
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// Errors that map to exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl<T: std::fmt::Display> From<T> for UsageError {
    fn from(e: T) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, UsageError> {
    match cli.command {
        Command::Eval {
            what,
            lambda,
            x,
            y,
            n,
            tol,
            max_terms,
            format,
        } => cmd_eval(what, &lambda, x, y, n, tol, max_terms, format),
        Command::Table {
            kind,
            lambda,
            nmax,
            format,
        } => cmd_table(kind, lambda, nmax, format),
        Command::Verify {
            identity,
            lambda,
            y,
            x,
            p,
            k,
            mode,
            order,
            order_x,
            order_y,
            tol,
            max_terms,
            config,
            format,
        } => {
            // Start from the config file (if any) and overlay every flag
            // the user passed, so flags override file values; the merged
            // document goes through the one case parser.
            let mut doc = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
                    let v: serde_json::Value = serde_json::from_str(&text)
                        .map_err(|e| UsageError(format!("config parse error: {e}")))?;
                    if !v.is_object() {
                        return Err(UsageError("verify config must be a JSON object".into()));
                    }
                    v
                }
                None => serde_json::json!({}),
            };
            let mut set = |key: &str, v: Option<serde_json::Value>| {
                if let Some(v) = v {
                    doc[key] = v;
                }
            };
            set("identity", identity.map(Into::into));
            set("lambda", lambda.map(Into::into));
            set("y", y.map(Into::into));
            set("x", x.map(Into::into));
            set("p", p.map(Into::into));
            set("k", k.map(Into::into));
            set("mode", mode.map(Into::into));
            set("order", order.map(Into::into));
            set("order_x", order_x.map(Into::into));
            set("order_y", order_y.map(Into::into));
            set("tol", tol.map(Into::into));
            set("max_terms", max_terms.map(Into::into));
            let case_config: CaseConfig = serde_json::from_value(doc)
                .map_err(|e| UsageError(format!("invalid case: {e}")))?;
            let case = case_config.into_case().map_err(UsageError)?;
            cmd_verify(&case, format)
        }
        Command::Converge {
            identity,
            lambda,
            y,
            x,
            p,
            k,
            terms,
            tol,
            max_terms,
        } => {
            let case = build_case(&identity, &lambda, &y, x, p, k, tol, max_terms)?;
            cmd_converge(&case, terms)
        }
        Command::Suite { config, format } => cmd_suite(config, format),
    }
}

#[allow(clippy::too_many_arguments)]
fn build_case(
    identity: &str,
    lambda: &str,
    y: &str,
    x: Option<String>,
    p: Option<usize>,
    k: Option<usize>,
    tol: f64,
    max_terms: usize,
) -> Result<IdentityCase, UsageError> {
    let id = identity.parse().map_err(UsageError)?;
    let mut case = IdentityCase::new(id, parse_rat(lambda)?)
        .y(parse_rat(y)?)
        .mode(Mode::Numeric)
        .tol(tol)
        .max_terms(max_terms);
    if let Some(x) = x {
        case = case.x(parse_rat(&x)?);
    }
    if let Some(p) = p {
        case = case.p(p);
    }
    if let Some(k) = k {
        case = case.k(k);
    }
    Ok(case)
}

fn require<T>(v: Option<T>, flag: &str, what: &str) -> Result<T, UsageError> {
    v.ok_or_else(|| UsageError(format!("--{flag} is required for --what {what}")))
}

fn parse_opt_rat(v: Option<String>, flag: &str, what: &str) -> Result<Rat, UsageError> {
    let s = require(v, flag, what)?;
    Ok(parse_rat(&s)?)
}

enum EvalOutcome {
    Exact(Rat),
    ExactSeries(Rat, Vec<String>),
    Numeric(f64),
    NumericSum(numeric::SumResult),
}

#[allow(clippy::too_many_arguments)]
fn cmd_eval(
    what: EvalWhat,
    lambda: &str,
    x: Option<String>,
    y: Option<String>,
    n: Option<usize>,
    tol: f64,
    max_terms: usize,
    format: Format,
) -> Result<bool, UsageError> {
    if format == Format::Csv {
        return Err(UsageError("eval supports --format text|json".into()));
    }
    let lambda = parse_rat(lambda)?;
    let lf = rat_to_f64(&lambda);

    let outcome = match what {
        EvalWhat::Exp => {
            let xr = match x {
                Some(s) => parse_rat(&s)?,
                None => Rat::one(),
            };
            let yr = parse_opt_rat(y, "y", "exp")?;
            match degen_exp_exact(&xr, &lambda, &yr)? {
                Some(v) => EvalOutcome::Exact(v),
                None => {
                    EvalOutcome::Numeric(numeric::degen_exp(rat_to_f64(&xr), lf, rat_to_f64(&yr))?)
                }
            }
        }
        EvalWhat::ExpPartial => {
            let xr = match x {
                Some(s) => parse_rat(&s)?,
                None => Rat::one(),
            };
            let yr = parse_opt_rat(y, "y", "exp-partial")?;
            let n = require(n, "n", "exp-partial")?;
            let series = degen_exp_series(&xr, &lambda, n);
            EvalOutcome::ExactSeries(series.eval(&yr), series.to_pq_strings())
        }
        EvalWhat::Tail => {
            let yr = parse_opt_rat(y, "y", "tail")?;
            let n = require(n, "n", "tail")?;
            match tail_value_terminating(&lambda, &yr, n) {
                Some(v) => EvalOutcome::Exact(v),
                None => {
                    EvalOutcome::NumericSum(numeric::tail(lf, rat_to_f64(&yr), n, tol, max_terms)?)
                }
            }
        }
        EvalWhat::Cosh => {
            let yr = parse_opt_rat(y, "y", "cosh")?;
            let plus = degen_exp_exact(&Rat::one(), &lambda, &yr)?;
            let minus = degen_exp_exact(&Rat::one(), &lambda, &(-yr.clone()))?;
            match (plus, minus) {
                (Some(a), Some(b)) => EvalOutcome::Exact((a + b) / rat_int(2)),
                _ => EvalOutcome::Numeric(numeric::cosh_deg(lf, rat_to_f64(&yr))?),
            }
        }
        EvalWhat::Bell => {
            let xr = parse_opt_rat(x, "x", "bell")?;
            let n = require(n, "n", "bell")?;
            EvalOutcome::Exact(bell_degenerate(n, &lambda, &xr))
        }
        EvalWhat::Fallfact => {
            let xr = parse_opt_rat(x, "x", "fallfact")?;
            let n = require(n, "n", "fallfact")?;
            EvalOutcome::Exact(gen_falling_factorial(&xr, n, &lambda))
        }
    };

    match (format, outcome) {
        (Format::Text, EvalOutcome::Exact(v)) => println!("{}", format_rat(&v)),
        (Format::Text, EvalOutcome::ExactSeries(v, _)) => println!("{}", format_rat(&v)),
        (Format::Text, EvalOutcome::Numeric(v)) => println!("{v}"),
        (Format::Text, EvalOutcome::NumericSum(s)) => println!(
            "{} tail_bound={:e} terms_used={}",
            s.value, s.tail_bound, s.terms_used
        ),
        (Format::Json, EvalOutcome::Exact(v)) => {
            println!("{}", serde_json::json!({ "value": format_rat(&v) }))
        }
        (Format::Json, EvalOutcome::ExactSeries(v, coeffs)) => println!(
            "{}",
            serde_json::json!({ "value": format_rat(&v), "coefficients": coeffs })
        ),
        (Format::Json, EvalOutcome::Numeric(v)) => {
            println!("{}", serde_json::json!({ "value": v }))
        }
        (Format::Json, EvalOutcome::NumericSum(s)) => println!("{}", serde_json::json!(s)),
        (Format::Csv, _) => unreachable!("rejected above"),
    }
    Ok(true)
}

fn cmd_table(
    kind: TableKind,
    lambda: Option<String>,
    nmax: usize,
    format: Format,
) -> Result<bool, UsageError> {
    let lambda = match kind {
        TableKind::Stirling2 => Rat::zero(),
        TableKind::Stirling2Deg => {
            let s = lambda.ok_or_else(|| {
                UsageError("--lambda is required for --kind stirling2-deg".into())
            })?;
            parse_rat(&s)?
        }
    };
    let table = StirlingTable::new(lambda.clone(), nmax);
    match format {
        Format::Csv => {
            println!("n,k,value");
            for n in 0..=nmax {
                for k in 0..=n {
                    println!("{n},{k},{}", format_rat(&table.entry(n, k)));
                }
            }
        }
        Format::Json => {
            let mut entries = Vec::new();
            for n in 0..=nmax {
                for k in 0..=n {
                    entries.push(serde_json::json!({
                        "n": n, "k": k, "value": format_rat(&table.entry(n, k))
                    }));
                }
            }
            let kind_name = match kind {
                TableKind::Stirling2 => "stirling2",
                TableKind::Stirling2Deg => "stirling2-deg",
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::json!({
                    "kind": kind_name,
                    "lambda": format_rat(&lambda),
                    "n_max": nmax,
                    "entries": entries,
                }))
                .expect("table serializes")
            );
        }
        Format::Text => return Err(UsageError("table supports --format csv|json".into())),
    }
    Ok(true)
}

fn cmd_verify(case: &IdentityCase, format: Format) -> Result<bool, UsageError> {
    let report = verify(case)?;
    match format {
        Format::Text => print_report_text(&report),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
        Format::Csv => return Err(UsageError("verify supports --format text|json".into())),
    }
    Ok(report.passed)
}

fn print_report_text(report: &IdentityReport) {
    println!("identity: {}", report.identity_id);
    let params: Vec<String> = report
        .params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    println!("params: {}", params.join(" "));
    println!("mode: {}", report.mode);
    for r in &report.results {
        let mut line = format!("[{}] residual={}", r.mode, r.residual);
        if let Some(order) = r.order {
            line.push_str(&format!(" order={order}"));
        }
        if let Some(t) = r.terms_used {
            line.push_str(&format!(" terms_used={t}"));
        }
        if let (Some(lhs), Some(rhs)) = (&r.lhs, &r.rhs) {
            if lhs.is_number() || lhs.is_string() {
                line.push_str(&format!(" lhs={lhs} rhs={rhs}"));
            }
        }
        line.push_str(&format!(" passed={}", r.passed));
        println!("{line}");
    }
    if !report.notes.is_empty() {
        println!("notes: {}", report.notes);
    }
    println!("passed: {}", report.passed);
}

fn cmd_converge(case: &IdentityCase, terms: usize) -> Result<bool, UsageError> {
    let rows = converge_trace(case, terms)?;
    println!("m,partial_sum,target,abs_error");
    for row in rows {
        println!(
            "{},{},{},{}",
            row.m, row.partial_sum, row.target, row.abs_error
        );
    }
    Ok(true)
}

fn cmd_suite(config: Option<PathBuf>, format: Format) -> Result<bool, UsageError> {
    if format != Format::Json {
        return Err(UsageError("suite supports --format json".into()));
    }
    let cases = match config {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
            parse_suite_config(&text).map_err(UsageError)?
        }
        None => default_grid(),
    };
    let started = std::time::Instant::now();
    let reports = run_suite(&cases);
    let elapsed_ms = started.elapsed().as_millis() as u64;
    let summary = SuiteSummary::from_reports(reports);
    let all_passed = summary.all_passed;
    let mut doc = serde_json::to_value(&summary).expect("summary serializes");
    // Wall clock goes in a metadata field only, so payloads stay
    // byte-comparable across runs.
    doc["meta"] = serde_json::json!({ "elapsed_ms": elapsed_ms });
    println!(
        "{}",
        serde_json::to_string_pretty(&doc).expect("summary serializes")
    );
    Ok(all_passed)
}
