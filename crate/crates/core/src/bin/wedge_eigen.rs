//! Command-line surface for the eigenvalue-bound pipeline: reference
//! table reproduction, single-domain bounds, verification suites, and
//! the Brownian-pursuit Monte Carlo.

use std::f64::consts::PI;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use wedge_eigen::bound::{
    bound_from_moment, oracle_agreement, payne_weinberger_bound, shoot_lambda_hyp, BoundReport,
};
use wedge_eigen::error::Error;
use wedge_eigen::fd::{sector_equality_reports, theorem_suite};
use wedge_eigen::lab::{check_desiderata, isoperimetric_suite, szego_suite, DesiderataReport};
use wedge_eigen::pursuit::{simulate, PursuitConfig, PursuitStats};
use wedge_eigen::star::{
    hat_tetra, hat_tetra_moment_closed_form, load_radius_csv, sector, tetra_triangle,
};
use wedge_eigen::Wedge;

const SCHEMA_VERSION: u32 = 1;

/// Reference first eigenvalue of the tetrahedral triangle from the
/// literature; not computed by this tool.
const LAMBDA_T_REFERENCE: f64 = 5.1590;

#[derive(Parser)]
#[command(
    name = "wedge-eigen",
    about = "Eigenvalue lower bounds for domains in a spherical wedge",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce the reference table of domains, moments, and bounds (α = 3/2).
    Table1(Table1Args),
    /// Compute the eigenvalue lower bound for one domain.
    Bound(BoundArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Monte Carlo simulation of Brownian pursuit on the line.
    Pursuit(PursuitArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// Aligned human-readable table.
    Table,
    /// Comma-separated values with a header row.
    Csv,
    /// JSON with a schema_version field.
    Json,
}

#[derive(Args)]
struct Table1Args {
    /// Pipeline tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct BoundArgs {
    /// Domain spec: sector:<r>, tetra, hattetra, or file:<path>
    /// (radius CSV with "theta,r" rows covering [0, pi/alpha]).
    #[arg(long)]
    domain: String,
    /// Wedge parameter α > 1 (required for sector: and file: domains;
    /// tetra and hattetra fix α = 3/2).
    #[arg(long)]
    alpha: Option<f64>,
    /// Pipeline tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Szego,
    Isoperimetric,
    Theorem,
    Desiderata,
    Oracles,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Trial count for the randomized suites (szego, isoperimetric,
    /// theorem); theorem defaults to 20 when unset.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct PursuitArgs {
    /// Number of pursuers (≥ 1).
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 10_000)]
    paths: usize,
    /// Euler–Maruyama step size.
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    /// Time horizon; paths alive at tmax are censored.
    #[arg(long, default_value_t = 50.0)]
    tmax: f64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the survival curve as CSV (columns t,survivors,p_hat).
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure modes mapped onto the exit-code contract:
/// 0 success, 1 numeric/suite failure, 2 usage error.
enum CliError {
    Usage(String),
    Numeric(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Ingestion { .. } => CliError::Usage(e.to_string()),
            other => CliError::Numeric(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse(); // clap exits with code 2 on bad flags
    let result = match cli.command {
        Command::Table1(a) => cmd_table1(&a),
        Command::Bound(a) => cmd_bound(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Pursuit(a) => cmd_pursuit(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

// ---------------------------------------------------------------- table1

#[derive(Serialize)]
struct Table1Row {
    domain: String,
    /// None encodes an infinite moment (whole-wedge row).
    moment: Option<f64>,
    r_star: f64,
    lambda_star: f64,
    /// λ₁ of the domain itself, where known.
    lambda_domain: Option<f64>,
    /// Provenance of the λ₁ column: "equality" for sectors and the whole
    /// wedge, "[RT]" for the external reference, "?" when unknown.
    note: String,
}

#[derive(Serialize)]
struct Table1Report {
    schema_version: u32,
    alpha: f64,
    rows: Vec<Table1Row>,
}

fn cmd_table1(args: &Table1Args) -> Result<(), CliError> {
    let tol = check_tol(args.tol)?;
    let wedge = Wedge::new(1.5).expect("3/2 > 1");
    let delta = (-1.0 / 3.0f64.sqrt()).acos();
    let eps = (-1.0f64 / 3.0).acos();

    let mut rows = Vec::new();

    // Whole wedge: infinite moment, r* = π, λ = α(α+1).
    let lam_w = shoot_lambda_hyp(PI, &wedge, tol)?;
    rows.push(Table1Row {
        domain: "W".into(),
        moment: None,
        r_star: PI,
        lambda_star: lam_w,
        lambda_domain: Some(lam_w),
        note: "equality".into(),
    });

    // Sectors are the equality case of the bound: the pipeline must
    // return r* = r, so λ₁(S(r*)) = λ₁(G) exactly. The final radius is
    // generic (no closed form) to exercise the identity off the special
    // values.
    for r in [PI / 2.0, delta, eps, 1.2] {
        let rep = payne_weinberger_bound(&sector(r, wedge)?, tol)?;
        rows.push(Table1Row {
            domain: format!("S({r:.8})"),
            moment: Some(rep.moment),
            r_star: rep.r_star,
            lambda_star: rep.lambda_star,
            lambda_domain: Some(rep.lambda_star),
            note: "equality".into(),
        });
    }

    let rep = payne_weinberger_bound(&tetra_triangle(), tol)?;
    rows.push(Table1Row {
        domain: "T".into(),
        moment: Some(rep.moment),
        r_star: rep.r_star,
        lambda_star: rep.lambda_star,
        lambda_domain: Some(LAMBDA_T_REFERENCE),
        note: "[RT]".into(),
    });

    let (_, coeffs) = hat_tetra(tol)?;
    let rep = bound_from_moment(hat_tetra_moment_closed_form(&coeffs), &wedge, "hatT", tol)?;
    rows.push(Table1Row {
        domain: "hatT".into(),
        moment: Some(rep.moment),
        r_star: rep.r_star,
        lambda_star: rep.lambda_star,
        lambda_domain: None,
        note: "?".into(),
    });

    let report = Table1Report {
        schema_version: SCHEMA_VERSION,
        alpha: 1.5,
        rows,
    };
    match args.format {
        Format::Json => println!("{}", to_json(&report)),
        Format::Csv => {
            println!("domain,moment,r_star,lambda_star,lambda_domain,note");
            for r in &report.rows {
                println!(
                    "{},{},{:.8},{:.8},{},{}",
                    r.domain,
                    r.moment.map_or("inf".into(), |m| format!("{m:.8}")),
                    r.r_star,
                    r.lambda_star,
                    r.lambda_domain.map_or("?".into(), |l| format!("{l:.8}")),
                    r.note
                );
            }
        }
        Format::Table => {
            println!(
                "{:<14} {:>12} {:>12} {:>14} {:>16}",
                "G", "I(G)", "r*", "lambda1(S(r*))", "lambda1(G)"
            );
            for r in &report.rows {
                let moment = r.moment.map_or("inf".into(), |m| format!("{m:.8}"));
                let lam_g = match r.lambda_domain {
                    Some(l) if r.note == "[RT]" => format!("{l:.4} [RT]"),
                    Some(l) => format!("{l:.8}"),
                    None => "?".into(),
                };
                println!(
                    "{:<14} {:>12} {:>12.8} {:>14.8} {:>16}",
                    r.domain, moment, r.r_star, r.lambda_star, lam_g
                );
            }
        }
    }
    Ok(())
}

// ----------------------------------------------------------------- bound

#[derive(Serialize)]
struct BoundEnvelope {
    schema_version: u32,
    report: BoundReport,
}

fn cmd_bound(args: &BoundArgs) -> Result<(), CliError> {
    let tol = check_tol(args.tol)?;
    let report = resolve_domain_and_bound(&args.domain, args.alpha, tol)?;
    match args.format {
        Format::Json => println!(
            "{}",
            to_json(&BoundEnvelope {
                schema_version: SCHEMA_VERSION,
                report
            })
        ),
        Format::Csv => {
            println!("label,alpha,moment,r_star,lambda_star,shoot_residual");
            println!(
                "{},{},{:.12},{:.12},{:.12},{:e}",
                report.label,
                report.alpha,
                report.moment,
                report.r_star,
                report.lambda_star,
                report.residuals.shoot_residual
            );
        }
        Format::Table => {
            println!("domain:         {}", report.label);
            println!("alpha:          {}", report.alpha);
            println!("moment I(G):    {:.12}", report.moment);
            println!("r*:             {:.12}", report.r_star);
            println!("lambda*:        {:.12}", report.lambda_star);
            println!("shoot residual: {:e}", report.residuals.shoot_residual);
        }
    }
    Ok(())
}

fn resolve_domain_and_bound(
    spec: &str,
    alpha: Option<f64>,
    tol: f64,
) -> Result<BoundReport, CliError> {
    let need_alpha = || -> Result<Wedge, CliError> {
        let a = alpha.ok_or_else(|| {
            CliError::Usage(format!("--alpha is required for --domain {spec}"))
        })?;
        Wedge::new(a).map_err(|e| CliError::Usage(e.to_string()))
    };
    let fixed_alpha_ok = || -> Result<(), CliError> {
        match alpha {
            None => Ok(()),
            Some(a) if a == 1.5 => Ok(()),
            Some(a) => Err(CliError::Usage(format!(
                "--domain {spec} fixes alpha = 1.5, got --alpha {a}"
            ))),
        }
    };

    if let Some(r_text) = spec.strip_prefix("sector:") {
        let r: f64 = r_text
            .parse()
            .map_err(|e| CliError::Usage(format!("bad sector radius {r_text:?}: {e}")))?;
        let wedge = need_alpha()?;
        let dom = sector(r, wedge).map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(payne_weinberger_bound(&dom, tol)?);
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let wedge = need_alpha()?;
        let dom = load_radius_csv(std::path::Path::new(path), wedge)?;
        return Ok(payne_weinberger_bound(&dom, tol)?);
    }
    match spec {
        "tetra" => {
            fixed_alpha_ok()?;
            Ok(payne_weinberger_bound(&tetra_triangle(), tol)?)
        }
        "hattetra" => {
            fixed_alpha_ok()?;
            let (_, coeffs) = hat_tetra(tol)?;
            let wedge = Wedge::new(1.5).expect("3/2 > 1");
            Ok(bound_from_moment(
                hat_tetra_moment_closed_form(&coeffs),
                &wedge,
                "hatT",
                tol,
            )?)
        }
        other => Err(CliError::Usage(format!(
            "unknown --domain {other:?}; expected sector:<r>, tetra, hattetra, or file:<path>"
        ))),
    }
}

// ---------------------------------------------------------------- verify

#[derive(Serialize)]
struct VerifySummary {
    schema_version: u32,
    seed: u64,
    suites: Vec<SuiteOutcome>,
    ok: bool,
}

#[derive(Serialize)]
struct SuiteOutcome {
    suite: String,
    ok: bool,
    detail: serde_json::Value,
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let mut outcomes = Vec::new();
    let suites: Vec<Suite> = match args.suite {
        Suite::All => vec![
            Suite::Szego,
            Suite::Isoperimetric,
            Suite::Theorem,
            Suite::Desiderata,
            Suite::Oracles,
        ],
        s => vec![s],
    };
    for suite in suites {
        outcomes.push(run_suite(suite, args)?);
    }
    let all_ok = outcomes.iter().all(|o| o.ok);
    let summary = VerifySummary {
        schema_version: SCHEMA_VERSION,
        seed: args.seed,
        suites: outcomes,
        ok: all_ok,
    };
    match args.format {
        Format::Json => println!("{}", to_json(&summary)),
        Format::Csv => {
            println!("suite,ok");
            for o in &summary.suites {
                println!("{},{}", o.suite, o.ok);
            }
        }
        Format::Table => {
            for o in &summary.suites {
                println!("{:<14} {}", o.suite, if o.ok { "PASS" } else { "FAIL" });
            }
        }
    }
    if all_ok {
        Ok(())
    } else {
        Err(CliError::Numeric("one or more suites failed".into()))
    }
}

fn run_suite(suite: Suite, args: &VerifyArgs) -> Result<SuiteOutcome, CliError> {
    let trials = args.trials.unwrap_or(100);
    Ok(match suite {
        Suite::Szego => {
            let res = szego_suite(args.seed, trials, 1e-8)?;
            suite_outcome("szego", res.ok(), &res)
        }
        Suite::Isoperimetric => {
            let res = isoperimetric_suite(args.seed, trials, 1e-8)?;
            suite_outcome("isoperimetric", res.ok(), &res)
        }
        Suite::Theorem => {
            let trials = args.trials.unwrap_or(20);
            let mut reports = theorem_suite(args.seed, trials, 48, 48, 1e-9)?;
            reports.extend(sector_equality_reports(48, 48, 1e-9)?);
            let equality_ok = reports
                .iter()
                .filter(|r| r.label.starts_with("S("))
                .all(|r| r.margin.abs() <= 1.5 * r.error_estimate);
            let ok = reports.iter().all(|r| !r.violated) && equality_ok;
            suite_outcome("theorem", ok, &reports)
        }
        Suite::Desiderata => {
            let mut reports: Vec<DesiderataReport> = Vec::new();
            for alpha in [1.01, 1.5, 2.0, 5.0] {
                let w = Wedge::new(alpha).expect("alphas > 1");
                reports.push(check_desiderata(&w, 1000)?);
            }
            let ok = reports
                .iter()
                .all(|r| r.max_equality_rel_err < 1e-10 && r.inequality_ok);
            suite_outcome("desiderata", ok, &reports)
        }
        Suite::Oracles => {
            let cells = oracle_agreement(1e-9)?;
            let ok = cells.iter().all(|c| c.delta <= 1e-7);
            suite_outcome("oracles", ok, &cells)
        }
        Suite::All => unreachable!("expanded by the caller"),
    })
}

fn suite_outcome<T: Serialize>(name: &str, ok: bool, detail: &T) -> SuiteOutcome {
    SuiteOutcome {
        suite: name.into(),
        ok,
        detail: serde_json::to_value(detail).expect("suite reports serialize"),
    }
}

// --------------------------------------------------------------- pursuit

#[derive(Serialize)]
struct PursuitSummary {
    schema_version: u32,
    n_pursuers: usize,
    paths: usize,
    dt: f64,
    t_max: f64,
    seed: u64,
    tail_exponent: f64,
    tail_stderr: f64,
    fit_points: usize,
    censored_fraction: f64,
}

fn cmd_pursuit(args: &PursuitArgs) -> Result<(), CliError> {
    if args.n < 1 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let mut cfg = PursuitConfig::new(args.n, args.paths, args.seed)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    cfg.dt = args.dt;
    cfg.t_max = args.tmax;
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let stats = simulate(&cfg)?;
    if let Some(path) = &args.out {
        write_survival_csv(path, &stats)?;
    }
    let summary = PursuitSummary {
        schema_version: SCHEMA_VERSION,
        n_pursuers: cfg.n_pursuers,
        paths: cfg.paths,
        dt: cfg.dt,
        t_max: cfg.t_max,
        seed: cfg.seed,
        tail_exponent: stats.tail_exponent,
        tail_stderr: stats.tail_stderr,
        fit_points: stats.fit_points,
        censored_fraction: stats.censored_fraction,
    };
    match args.format {
        Format::Json => println!("{}", to_json(&summary)),
        Format::Csv => {
            println!("n,paths,dt,tmax,seed,tail_exponent,tail_stderr,fit_points,censored_fraction");
            println!(
                "{},{},{},{},{},{:.6},{:.6},{},{:.6}",
                summary.n_pursuers,
                summary.paths,
                summary.dt,
                summary.t_max,
                summary.seed,
                summary.tail_exponent,
                summary.tail_stderr,
                summary.fit_points,
                summary.censored_fraction
            );
        }
        Format::Table => {
            println!("pursuers:          {}", summary.n_pursuers);
            println!("paths:             {}", summary.paths);
            println!("fitted exponent:   {:.6} +- {:.6}", summary.tail_exponent, summary.tail_stderr);
            println!("fit points:        {}", summary.fit_points);
            println!("censored fraction: {:.6}", summary.censored_fraction);
        }
    }
    Ok(())
}

fn write_survival_csv(path: &std::path::Path, stats: &PursuitStats) -> Result<(), CliError> {
    let mut f = std::fs::File::create(path)
        .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))?;
    let mut body = String::from("t,survivors,p_hat\n");
    for (t, s, p) in &stats.survival_curve {
        body.push_str(&format!("{t:.8},{s},{p:.8}\n"));
    }
    f.write_all(body.as_bytes())
        .map_err(|e| CliError::Numeric(format!("write failed: {e}")))?;
    Ok(())
}

// --------------------------------------------------------------- helpers

fn check_tol(tol: f64) -> Result<f64, CliError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(CliError::Usage(format!("--tol must be positive, got {tol}")))
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}
