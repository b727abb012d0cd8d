//! `germlab` command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! usage and input errors (including non-isolated and non-convenient germs
//! where those are required).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use germlab::milnor;
use germlab::newton;
use germlab::oracle::{self, OracleDim};
use germlab::parse::parse_poly;
use germlab::report::{self, AnalysisOptions, Checks, InvariantReport, Status, Verdict};
use germlab::sectional::{self, SectionPlan};
use germlab::{GermError, Polynomial};
use rayon::prelude::*;

#[derive(Parser, Debug)]
#[command(
    name = "germlab",
    version,
    about = "Exact invariants of isolated hypersurface singularities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Milnor/Tjurina numbers, the filtration profile and all bound checks.
    Invariants(GermArgs),
    /// Newton polyhedron volumes and the Newton number.
    Newton(GermArgs),
    /// Sectional Milnor numbers and the multiplicity bounds.
    Sectional(GermArgs),
    /// Runs the selected checks over a corpus file.
    Verify(VerifyArgs),
    /// Brute-force quotient dimensions by truncated linear algebra.
    Oracle(GermArgs),
}

#[derive(Args, Debug, Clone)]
struct SamplingArgs {
    /// Seed for the random plane sections.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random sections drawn per dimension.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    /// Plane entries are drawn from [-B, B] \ {0}.
    #[arg(long = "coeff-bound", default_value_t = 20, value_parser = clap::value_parser!(i64).range(1..))]
    coeff_bound: i64,
    /// Check groups: comma-separated algebra, newton, sectional, all.
    #[arg(long, default_value = "all")]
    checks: String,
}

impl SamplingArgs {
    fn options(&self) -> Result<AnalysisOptions, GermError> {
        Ok(AnalysisOptions {
            checks: Checks::parse(&self.checks)?,
            plan: SectionPlan {
                samples: self.samples as usize,
                seed: self.seed,
                coeff_bound: self.coeff_bound,
            },
            powers: Vec::new(),
        })
    }
}

#[derive(Args, Debug)]
struct GermArgs {
    /// Comma-separated variable names, e.g. x,y,z.
    #[arg(long, value_delimiter = ',', required = true)]
    vars: Vec<String>,
    /// Polynomial, e.g. "x^3 + y^2".
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Emit JSON instead of a table.
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    sampling: SamplingArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// JSON-lines corpus file.
    #[arg(long)]
    corpus: PathBuf,
    /// Emit a JSON array of reports instead of the table.
    #[arg(long)]
    json: bool,
    /// Parallel workers.
    #[arg(long, default_value_t = default_jobs(), value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    #[command(flatten)]
    sampling: SamplingArgs,
}

fn default_jobs() -> u64 {
    std::thread::available_parallelism().map_or(1, |n| n.get() as u64)
}

/// Outcome of a subcommand: text for stdout and the exit code.
struct Outcome {
    stdout: String,
    code: u8,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<GermError> for Failure {
    fn from(e: GermError) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Invariants(a) => cmd_invariants(&a),
        Command::Newton(a) => cmd_newton(&a),
        Command::Sectional(a) => cmd_sectional(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Oracle(a) => cmd_oracle(&a),
    };
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn parse_germ(a: &GermArgs) -> Result<Polynomial, Failure> {
    Ok(parse_poly(&a.poly, &a.vars)?)
}

/// Replaces a 0-based axis index by the variable's name.
fn describe_error(e: &GermError, vars: &[String]) -> String {
    match e {
        GermError::NotConvenient { axis } => format!(
            "support is not convenient: no pure power of `{}`",
            vars.get(*axis).map_or("?", String::as_str)
        ),
        other => other.to_string(),
    }
}

fn cmd_invariants(a: &GermArgs) -> Result<Outcome, Failure> {
    let f = parse_germ(a)?;
    let opts = a.sampling.options()?;
    let r = report::analyze(&a.poly, &f, &opts)?;
    let failures = r.failures();
    let stdout = if a.json {
        format!("{}\n", r.to_json())
    } else {
        report_table(&r, &failures)
    };
    let code = match r.status {
        Status::Ok if failures.is_empty() => 0,
        Status::Ok => 1,
        Status::Smooth => 0,
        Status::NotIsolated | Status::InputError => 2,
    };
    if code == 2 {
        if let Some(msg) = &r.message {
            eprintln!("error: {msg}");
        }
    }
    Ok(Outcome { stdout, code })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn report_table(r: &InvariantReport, failures: &[String]) -> String {
    let mut s = String::new();
    let mut row = |k: &str, v: String| {
        let _ = writeln!(s, "{k:<22} {v}");
    };
    row("germ", r.name.clone());
    row("status", r.status.as_str().into());
    row("n", r.n.to_string());
    if let Some(m) = r.m {
        row("multiplicity m", m.to_string());
    }
    if let (Some(mu), Some(tau)) = (r.mu, r.tau) {
        row("mu", mu.to_string());
        row("tau", tau.to_string());
    }
    if let Some(ratio) = &r.ratio {
        row("mu/tau", ratio.clone());
    }
    if let Some(d) = &r.filtration_dims {
        row("filtration d_i", format!("{d:?}"));
    }
    if let Some(ok) = r.theorem_ok {
        row("mu <= n*tau", yes_no(ok).into());
    }
    if let Some(ok) = r.equality_case {
        row("ker f = (f^(n-1))", yes_no(ok).into());
    }
    if let Some(ok) = r.bs_holds {
        row("f^n in J_f", yes_no(ok).into());
    }
    if let Some(checks) = &r.f_pow_checks {
        for (k, ok) in checks {
            row(&format!("f^{k} in J_f"), yes_no(*ok).into());
        }
    }
    if let Some(ok) = r.saito_membership {
        row("f in J_f", yes_no(ok).into());
    }
    if let Some(nw) = &r.newton {
        row("convenient", yes_no(nw.convenient).into());
        if let Some(nu) = nw.nu {
            row("nu", nu.to_string());
        }
        if let Some(ok) = nw.mu_ge_nu {
            row("mu >= nu", yes_no(ok).into());
        }
        if let Some(ok) = nw.tau_ge_nu_over_n {
            row("tau >= nu/n", yes_no(ok).into());
        }
    }
    if let Some(sec) = &r.sectional {
        row("mu^i", format!("{:?}", sec.mu_i));
        row("log-convex", yes_no(sec.log_convex).into());
        row("mu >= (m-1)^n", yes_no(sec.mu_ge_pow).into());
        row("tau >= (m-1)^n/n", yes_no(sec.tau_ge_pow_over_n).into());
        row("tau > (m-1)^n/n", yes_no(sec.tau_gt_pow_over_n).into());
    }
    if let Some(msg) = &r.message {
        row("message", msg.clone());
    }
    for f in failures {
        row("FAILED", f.clone());
    }
    s
}

fn cmd_newton(a: &GermArgs) -> Result<Outcome, Failure> {
    let f = parse_germ(a)?;
    if let Err(e) = newton::newton_number(&f) {
        return Err(Failure::Input(describe_error(&e, &a.vars)));
    }
    let data = newton::newton_data(&f)?;
    let mu = milnor::milnor_number(&f)?;
    let tau = milnor::tjurina_number(&f)?;
    let k = newton::kushnirenko_report(&f, mu, tau)?;
    let volumes: serde_json::Map<String, serde_json::Value> = data
        .volumes
        .iter()
        .map(|(q, v)| (q.to_string(), report::ratio_string(v).into()))
        .collect();
    let ok = k.mu_ge_nu && k.tau_ge_nu_over_n;
    let stdout = if a.json {
        let v = serde_json::json!({
            "volumes": volumes,
            "nu": k.nu,
            "mu": mu,
            "tau": tau,
            "mu_ge_nu": k.mu_ge_nu,
            "mu_eq_nu": k.mu_eq_nu,
            "tau_ge_nu_over_n": k.tau_ge_nu_over_n,
        });
        format!("{v}\n")
    } else {
        let mut s = String::new();
        for (q, v) in &data.volumes {
            let _ = writeln!(s, "V_{q:<20} {}", report::ratio_string(v));
        }
        let _ = writeln!(s, "{:<22} {}", "nu", k.nu);
        let _ = writeln!(s, "{:<22} {}", "mu", mu);
        let _ = writeln!(s, "{:<22} {}", "tau", tau);
        let _ = writeln!(s, "{:<22} {}", "mu >= nu", yes_no(k.mu_ge_nu));
        let _ = writeln!(s, "{:<22} {}", "mu = nu", yes_no(k.mu_eq_nu));
        let _ = writeln!(s, "{:<22} {}", "tau >= nu/n", yes_no(k.tau_ge_nu_over_n));
        s
    };
    Ok(Outcome {
        stdout,
        code: if ok { 0 } else { 1 },
    })
}

fn cmd_sectional(a: &GermArgs) -> Result<Outcome, Failure> {
    let f = parse_germ(a)?;
    let opts = a.sampling.options()?;
    let mu = milnor::milnor_number(&f)?;
    let tau = milnor::tjurina_number(&f)?;
    let profile = sectional::sectional_profile(&f, &opts.plan)?;
    let bounds = sectional::multiplicity_bounds(&f, mu, tau)?;
    let ok = profile.log_convex && bounds.mu_ge && bounds.tau_ge;
    let stdout = if a.json {
        let v = serde_json::json!({
            "m": profile.m,
            "mu": mu,
            "tau": tau,
            "mu_i": profile.mu_i,
            "log_convex": profile.log_convex,
            "mu_ge_pow": bounds.mu_ge,
            "tau_ge_pow_over_n": bounds.tau_ge,
            "tau_gt_pow_over_n": bounds.tau_gt,
        });
        format!("{v}\n")
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "{:<22} {}", "m", profile.m);
        let _ = writeln!(s, "{:<22} {:?}", "mu^i", profile.mu_i);
        let _ = writeln!(s, "{:<22} {}", "log-convex", yes_no(profile.log_convex));
        let _ = writeln!(s, "{:<22} {}", "mu >= (m-1)^n", yes_no(bounds.mu_ge));
        let _ = writeln!(s, "{:<22} {}", "tau >= (m-1)^n/n", yes_no(bounds.tau_ge));
        let _ = writeln!(s, "{:<22} {}", "tau > (m-1)^n/n", yes_no(bounds.tau_gt));
        s
    };
    Ok(Outcome {
        stdout,
        code: if ok { 0 } else { 1 },
    })
}

fn cmd_oracle(a: &GermArgs) -> Result<Outcome, Failure> {
    let f = parse_germ(a)?;
    let show = |d: OracleDim| match d {
        OracleDim::Finite(v) => v.to_string(),
        OracleDim::InfiniteSuspected => "infinite (suspected)".into(),
    };
    let mu = oracle::oracle_milnor(&f)?;
    let tau = oracle::oracle_tjurina(&f)?;
    let stdout = if a.json {
        let val = |d: OracleDim| match d {
            OracleDim::Finite(v) => serde_json::Value::from(v),
            OracleDim::InfiniteSuspected => serde_json::Value::Null,
        };
        format!(
            "{}\n",
            serde_json::json!({ "mu": val(mu), "tau": val(tau) })
        )
    } else {
        format!("{:<22} {}\n{:<22} {}\n", "mu", show(mu), "tau", show(tau))
    };
    Ok(Outcome { stdout, code: 0 })
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, Failure> {
    let specs = report::read_corpus(&a.corpus)?;
    let opts = a.sampling.options()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs as usize)
        .build()
        .map_err(|e| Failure::Internal(e.to_string()))?;
    // collect() on an indexed parallel iterator keeps file order
    let verdicts: Vec<Result<Verdict, GermError>> = pool.install(|| {
        specs
            .par_iter()
            .map(|s| report::verify_spec(s, &opts))
            .collect()
    });
    let mut passed = 0;
    let mut failed = 0;
    let mut internal = Vec::new();
    let mut s = String::new();
    let mut reports = Vec::new();
    for (spec, v) in specs.iter().zip(verdicts) {
        match v {
            Ok(v) if v.passed() => {
                passed += 1;
                if !a.json {
                    let _ = writeln!(s, "PASS {}{}", spec.name, summary(&v));
                    for note in &v.notes {
                        let _ = writeln!(s, "     note: {note}");
                    }
                }
                reports.push(v.report);
            }
            Ok(v) => {
                failed += 1;
                if !a.json {
                    let _ = writeln!(s, "FAIL {}: {}", spec.name, v.failures.join("; "));
                }
                reports.push(v.report);
            }
            Err(e) => {
                failed += 1;
                if !a.json {
                    let _ = writeln!(s, "FAIL {}: {e}", spec.name);
                }
                internal.push(format!("{}: {e}", spec.name));
            }
        }
    }
    if a.json {
        let json = serde_json::to_string(&reports).expect("reports serialize");
        let _ = writeln!(s, "{json}");
    } else {
        let germs = if specs.len() == 1 { "germ" } else { "germs" };
        let _ = writeln!(
            s,
            "{} {germs}: {passed} passed, {failed} failed",
            specs.len()
        );
    }
    for e in &internal {
        eprintln!("internal error: {e}");
    }
    Ok(Outcome {
        stdout: s,
        code: if failed == 0 { 0 } else { 1 },
    })
}

fn summary(v: &Verdict) -> String {
    match (v.report.mu, v.report.tau, &v.report.ratio) {
        (Some(mu), Some(tau), Some(r)) => format!(" (mu={mu} tau={tau} mu/tau={r})"),
        _ => String::new(),
    }
}
