//! `qgamma` — evaluate the q-gamma function family, run verification
//! sweeps over parameter grids, and study q -> 1 limits.
//!
//! Machine-readable CSV/JSON goes to stdout (or `--out`); human summaries
//! and timing go to stderr. Exit codes: 0 all checks passed, 1 at least one
//! verification violation, 2 usage or domain error.

mod grid;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use qgamma::sweeps::{self, Suite, SuiteOptions};
use qgamma::{classical, dilog, gamma, lcm, moak};
use qgamma::{EvalConfig, QContext};

use grid::GridSpec;
use output::{render, write_output, Format, Record};

#[derive(Parser)]
#[command(
    name = "qgamma",
    version,
    about = "q-gamma function family: evaluation, verification sweeps, and classical-limit studies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at a point or over a grid
    Eval(EvalArgs),
    /// Run a verification suite; exits 1 if any check fails
    Verify(VerifyArgs),
    /// Evaluate a function along a q-sequence approaching 1 against its
    /// classical target
    Limit(LimitArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Relative series tolerance (default 1e-14)
    #[arg(long)]
    tol: Option<f64>,
    /// Series term cap (default 1000000)
    #[arg(long)]
    max_terms: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CommonArgs {
    fn eval_config(&self) -> EvalConfig {
        let mut cfg = EvalConfig::default();
        if let Some(tol) = self.tol {
            cfg.rel_tol = tol;
        }
        if let Some(mt) = self.max_terms {
            cfg.max_terms = mt;
        }
        cfg
    }
}

const EVAL_FUNCTIONS: &[&str] = &[
    "log-qgamma",
    "qdigamma",
    "qdigamma-deriv",
    "li2",
    "moak-I",
    "moak-expansion",
    "cq",
    "log-f",
    "phi",
    "dlogf",
];

#[derive(Args)]
struct EvalArgs {
    /// One of: log-qgamma, qdigamma, qdigamma-deriv, li2, moak-I,
    /// moak-expansion, cq, log-f, phi, dlogf
    function: String,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    x: Option<f64>,
    /// Argument of phi
    #[arg(long)]
    y: Option<f64>,
    /// Argument of li2
    #[arg(long)]
    z: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    /// Derivative order m for qdigamma-deriv
    #[arg(long, default_value_t = 1)]
    order: u32,
    /// Correction terms K for moak-expansion
    #[arg(long, default_value_t = 3)]
    terms: usize,
    /// Grid over the function's principal variable: start:stop:count[:log]
    #[arg(long)]
    grid: Option<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: thm-2.1, thm-2.2, thm-2.3, lemma-2.1, cor-3.1, cor-3.2,
    /// cor-3.3, cor-3.4, cor-3.5, stirling, gurland, all
    suite: String,
    /// Override alpha for the theorem suites
    #[arg(long)]
    alpha: Option<f64>,
    /// Override beta for the theorem suites
    #[arg(long)]
    beta: Option<f64>,
    /// Restrict the q grid to a single value
    #[arg(long)]
    q: Option<f64>,
    /// Scaled sign tolerance for the certificates (default 1e-12)
    #[arg(long)]
    sign_tol: Option<f64>,
    /// Highest certified derivative order (default 6)
    #[arg(long)]
    max_order: Option<u32>,
    /// Upper n for the stirling suite (default 1000)
    #[arg(long)]
    n: Option<u64>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct LimitArgs {
    /// One of: log-qgamma, qdigamma, cq, li2-over-logq
    function: String,
    #[arg(long)]
    x: Option<f64>,
    /// Comma-separated q values approaching 1 from one side
    #[arg(long, value_delimiter = ',', required = true)]
    q: Vec<f64>,
    #[command(flatten)]
    common: CommonArgs,
}

struct CliError(String);

impl From<qgamma::Error> for CliError {
    fn from(e: qgamma::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<String> for CliError {
    fn from(s: String) -> Self {
        CliError(s)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError(format!("io error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = match cli.command {
        Command::Eval(args) => run_eval(args),
        Command::Verify(args) => run_verify(args),
        Command::Limit(args) => run_limit(args),
    };
    match result {
        Ok(code) => {
            eprintln!("completed in {:.3}s", started.elapsed().as_secs_f64());
            code
        }
        Err(e) => {
            eprintln!("error: {}", e.0);
            ExitCode::from(2)
        }
    }
}

fn require(v: Option<f64>, flag: &str, function: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError(format!("{function} needs {flag}")))
}

/// The variable a `--grid` ranges over for each eval function.
fn principal_variable(function: &str) -> &'static str {
    match function {
        "li2" => "z",
        "phi" => "y",
        "cq" => "q",
        _ => "x",
    }
}

fn eval_points(args: &EvalArgs) -> Result<Vec<f64>, CliError> {
    if let Some(spec) = &args.grid {
        return Ok(GridSpec::parse(spec)?.points());
    }
    let function = args.function.as_str();
    let v = match principal_variable(function) {
        "z" => require(args.z, "--z", function)?,
        "y" => require(args.y, "--y", function)?,
        "q" => require(args.q, "--q", function)?,
        _ => require(args.x, "--x", function)?,
    };
    Ok(vec![v])
}

fn at_point<T>(r: qgamma::Result<T>, function: &str, var: &str, v: f64) -> Result<T, CliError> {
    r.map_err(|e| CliError(format!("{function} at {var}={v}: {e}")))
}

fn run_eval(args: EvalArgs) -> Result<ExitCode, CliError> {
    let function = args.function.as_str();
    if !EVAL_FUNCTIONS.contains(&function) {
        return Err(CliError(format!(
            "unknown function `{function}`; expected one of {}",
            EVAL_FUNCTIONS.join(", ")
        )));
    }
    let cfg = args.common.eval_config();
    let points = eval_points(&args)?;
    let var = principal_variable(function);
    let mut records = Vec::with_capacity(points.len());

    for &p in &points {
        let record = match function {
            "log-qgamma" | "qdigamma" => {
                let q = require(args.q, "--q", function)?;
                let ctx = QContext::new(q)?;
                let (value, terms) = at_point(
                    if function == "log-qgamma" {
                        gamma::log_qgamma_with_terms(&ctx, p, &cfg)
                    } else {
                        gamma::qdigamma_with_terms(&ctx, p, &cfg)
                    },
                    function,
                    var,
                    p,
                )?;
                Record::new()
                    .push_f64("q", q)
                    .push_f64("x", p)
                    .push_f64("value", value)
                    .push_int("terms_used", terms as u64)
            }
            "qdigamma-deriv" => {
                let q = require(args.q, "--q", function)?;
                let ctx = QContext::new(q)?;
                let (value, terms) = at_point(
                    gamma::qdigamma_deriv_with_terms(&ctx, p, args.order, &cfg),
                    function,
                    var,
                    p,
                )?;
                Record::new()
                    .push_f64("q", q)
                    .push_f64("x", p)
                    .push_int("order", args.order as u64)
                    .push_f64("value", value)
                    .push_int("terms_used", terms as u64)
            }
            "li2" => {
                let (value, terms) = at_point(dilog::li2_with_terms(p, &cfg), function, var, p)?;
                Record::new()
                    .push_f64("z", p)
                    .push_f64("value", value)
                    .push_int("terms_used", terms as u64)
            }
            "moak-I" => {
                let q = require(args.q, "--q", function)?;
                let ctx = QContext::new(q)?;
                let value = at_point(gamma::moak_i(&ctx, p), function, var, p)?;
                Record::new()
                    .push_f64("q", q)
                    .push_f64("x", p)
                    .push_f64("value", value)
                    .push_int("terms_used", 0)
            }
            "moak-expansion" => {
                let q = require(args.q, "--q", function)?;
                let ctx = QContext::new(q)?;
                let value = at_point(
                    moak::moak_expansion(&ctx, p, args.terms, &cfg),
                    function,
                    var,
                    p,
                )?;
                Record::new()
                    .push_f64("q", q)
                    .push_f64("x", p)
                    .push_int("terms", args.terms as u64)
                    .push_f64("value", value)
                    .push_int("terms_used", 0)
            }
            "cq" => {
                let ctx = at_point(QContext::new(p), function, var, p)?;
                let value = at_point(moak::cq_constant(&ctx, &cfg), function, var, p)?;
                Record::new()
                    .push_f64("q", p)
                    .push_f64("value", value)
                    .push_int("terms_used", 0)
            }
            "log-f" | "dlogf" => {
                let q = require(args.q, "--q", function)?;
                let alpha = require(args.alpha, "--alpha", function)?;
                let beta = require(args.beta, "--beta", function)?;
                let ctx = QContext::new(q)?;
                let params = lcm::LcmParams::new(alpha, beta)?;
                let value = at_point(
                    if function == "log-f" {
                        lcm::log_f(&params, &ctx, p, &cfg)
                    } else {
                        lcm::dlogf(&params, &ctx, p, &cfg)
                    },
                    function,
                    var,
                    p,
                )?;
                Record::new()
                    .push_f64("alpha", alpha)
                    .push_f64("beta", beta)
                    .push_f64("q", q)
                    .push_f64("x", p)
                    .push_f64("value", value)
                    .push_int("terms_used", 0)
            }
            "phi" => {
                let alpha = require(args.alpha, "--alpha", function)?;
                let beta = require(args.beta, "--beta", function)?;
                let params = lcm::LcmParams::new(alpha, beta)?;
                let value = at_point(lcm::phi(p, &params), function, var, p)?;
                Record::new()
                    .push_f64("alpha", alpha)
                    .push_f64("beta", beta)
                    .push_f64("y", p)
                    .push_f64("value", value)
                    .push_int("terms_used", 0)
            }
            _ => unreachable!(),
        };
        records.push(record);
    }

    eprintln!("eval {function}: {} point(s)", records.len());
    write_output(&render(&records, args.common.format), &args.common.out)?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::all().to_vec()
    } else {
        match Suite::from_name(&args.suite) {
            Some(s) => vec![s],
            None => {
                return Err(CliError(format!(
                    "unknown suite `{}`; expected thm-2.1, thm-2.2, thm-2.3, \
                     lemma-2.1, cor-3.1, cor-3.2, cor-3.3, cor-3.4, cor-3.5, \
                     stirling, gurland, all",
                    args.suite
                )))
            }
        }
    };

    let defaults = SuiteOptions::default();
    let opts = SuiteOptions {
        alpha: args.alpha,
        beta: args.beta,
        q: args.q,
        sign_tol: args.sign_tol.unwrap_or(defaults.sign_tol),
        max_order: args.max_order.unwrap_or(defaults.max_order),
        stirling_n_max: args.n.unwrap_or(defaults.stirling_n_max),
        cfg: args.common.eval_config(),
    };

    let mut records = Vec::new();
    let mut failed_total = 0usize;
    let mut checks_total = 0usize;
    for suite in suites {
        let report = sweeps::run_suite(suite, &opts)?;
        eprintln!(
            "verify {}: {} checks, {} failed, max violation {:.3e}",
            report.suite,
            report.checks.len(),
            report.failed,
            report.max_violation
        );
        checks_total += report.checks.len();
        failed_total += report.failed;
        for c in &report.checks {
            records.push(
                Record::new()
                    .push_str("suite", c.suite)
                    .push_str("check", &c.check)
                    .push_opt_f64("q", c.q)
                    .push_opt_f64("x", c.x)
                    .push_opt_int("n", c.order.map(u64::from))
                    .push_f64("value", c.value)
                    .push_bool("pass", c.pass),
            );
        }
    }
    eprintln!("total: {checks_total} checks, {failed_total} failed");

    write_output(&render(&records, args.common.format), &args.common.out)?;
    Ok(if failed_total > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

const LIMIT_FUNCTIONS: &[&str] = &["log-qgamma", "qdigamma", "cq", "li2-over-logq"];

fn validate_q_sequence(qs: &[f64]) -> Result<(), CliError> {
    if qs.is_empty() {
        return Err(CliError("limit needs at least one q".into()));
    }
    if qs.iter().any(|&q| !q.is_finite() || q <= 0.0) {
        return Err(CliError("every q must be positive and finite".into()));
    }
    if qs.contains(&1.0) {
        return Err(CliError("the q sequence must not touch 1".into()));
    }
    let below = qs[0] < 1.0;
    if qs.iter().any(|&q| (q < 1.0) != below) {
        return Err(CliError("the q sequence must stay on one side of 1".into()));
    }
    let monotone = if below {
        qs.windows(2).all(|w| w[0] < w[1])
    } else {
        qs.windows(2).all(|w| w[0] > w[1])
    };
    if !monotone {
        return Err(CliError(
            "the q sequence must approach 1 strictly monotonically".into(),
        ));
    }
    Ok(())
}

fn run_limit(args: LimitArgs) -> Result<ExitCode, CliError> {
    let function = args.function.as_str();
    if !LIMIT_FUNCTIONS.contains(&function) {
        return Err(CliError(format!(
            "unknown limit function `{function}`; expected one of {}",
            LIMIT_FUNCTIONS.join(", ")
        )));
    }
    validate_q_sequence(&args.q)?;
    let cfg = args.common.eval_config();

    let needs_x = function != "cq";
    let x = if needs_x {
        Some(require(args.x, "--x", function)?)
    } else {
        None
    };
    let target = match function {
        "log-qgamma" => classical::ln_gamma(x.unwrap())?,
        "qdigamma" => classical::digamma(x.unwrap())?,
        "cq" => 0.5 * (2.0 * std::f64::consts::PI).ln(),
        "li2-over-logq" => -x.unwrap(),
        _ => unreachable!(),
    };

    let mut records = Vec::new();
    let mut errors = Vec::new();
    for &q in &args.q {
        let ctx = QContext::new(q)?;
        let value = match function {
            "log-qgamma" => gamma::log_qgamma(&ctx, x.unwrap(), &cfg)?,
            "qdigamma" => gamma::qdigamma(&ctx, x.unwrap(), &cfg)?,
            "cq" => moak::cq_constant(&ctx, &cfg)?,
            // 1 - q^x formed through expm1, valid on either side of 1.
            "li2-over-logq" => dilog::li2(-f64::exp_m1(x.unwrap() * ctx.log_q), &cfg)? / ctx.log_q,
            _ => unreachable!(),
        };
        let error = (value - target).abs();
        errors.push(error);
        let mut r = Record::new().push_f64("q", q);
        if let Some(xv) = x {
            r = r.push_f64("x", xv);
        }
        records.push(
            r.push_f64("value", value)
                .push_f64("target", target)
                .push_f64("error", error),
        );
    }

    let monotone = errors.windows(2).all(|w| w[1] < w[0]);
    if monotone {
        eprintln!("limit {function}: error decays monotonically toward the classical target");
    } else {
        eprintln!("limit {function}: WARNING - error decay is not monotone");
    }

    write_output(&render(&records, args.common.format), &args.common.out)?;
    Ok(ExitCode::SUCCESS)
}
