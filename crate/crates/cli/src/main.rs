//! Command line front end: load a context from a JSON config, run the
//! verification suites against it, evaluate expressions, or print a
//! summary of what was loaded.
//!
//! Exit codes: 0 when everything asked for passed, 1 when a suite reports
//! a violated identity, 2 for invalid input (unreadable or malformed
//! config, failed context validation, unknown suite, malformed or
//! ill-typed expression).

mod eval;
mod expr;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hopf_currents::algebra::{basis_vec, show_terms};
use hopf_currents::{
    parse_context, run_suite, Context, Error, Group, GroupElement, Representation, Result, Scalar,
    SuiteConfig, SuiteReport, SUITES,
};

#[derive(Parser)]
#[command(
    name = "hopfcur",
    about = "Verification and evaluation for group-indexed current algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites against a configured context.
    Check(CheckArgs),
    /// Evaluate an expression and print its canonical form.
    Eval(EvalArgs),
    /// Summarize a configured context and its validation checks.
    Describe(DescribeArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Context description, as JSON.
    #[arg(long)]
    config: String,
    /// Suite to run; repeatable. All suites when omitted.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Master seed for the generated cases.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random cases per suite.
    #[arg(long, default_value_t = 500)]
    cases: u32,
    /// Emit the reports as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EvalArgs {
    /// Context description, as JSON.
    #[arg(long)]
    config: String,
    /// Expression to evaluate.
    #[arg(long)]
    expr: String,
}

#[derive(Args)]
struct DescribeArgs {
    /// Context description, as JSON.
    #[arg(long)]
    config: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check(args) => run_check(args),
        Command::Eval(args) => run_eval(args),
        Command::Describe(args) => run_describe(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Read, parse, build and validate a context; any failure is an error so
/// that nothing downstream runs on an unsound context.
fn load(path: &str) -> Result<(Context, Vec<GroupElement>)> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {path}: {e}")))?;
    let (ctx, samples) = parse_context(&text)?;
    let report = ctx.validate(if samples.is_empty() { None } else { Some(&samples) });
    if !report.passed() {
        let mut lines = vec![format!("{} failed validation", report.subject)];
        for c in report.checks.iter().filter(|c| !c.passed) {
            lines.push(format!("  {}: {}", c.name, c.detail));
        }
        return Err(Error::Validation(lines.join("\n")));
    }
    Ok((ctx, samples))
}

fn run_check(args: &CheckArgs) -> Result<ExitCode> {
    let (ctx, _) = load(&args.config)?;
    let cfg = SuiteConfig { seed: args.seed, cases: args.cases };
    let names: Vec<&str> = if args.suites.is_empty() {
        SUITES.to_vec()
    } else {
        args.suites.iter().map(String::as_str).collect()
    };
    let mut reports = Vec::with_capacity(names.len());
    for name in names {
        reports.push(run_suite(&ctx, name, &cfg)?);
    }
    if args.json {
        let text = serde_json::to_string_pretty(&reports)
            .map_err(|e| Error::Invalid(format!("serializing reports: {e}")))?;
        println!("{text}");
    } else {
        print_reports(&reports);
    }
    let failed = reports.iter().any(|r| !r.passed());
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn print_reports(reports: &[SuiteReport]) {
    for r in reports {
        let verdict = if r.passed() { "ok  " } else { "FAIL" };
        println!(
            "{verdict} {} on {}: {} checks over {} cases, {} failures ({} ms)",
            r.suite,
            r.context,
            r.checks,
            r.cases,
            r.failures.len(),
            r.wall_ms
        );
        for note in &r.notes {
            println!("     note: {note}");
        }
        for f in &r.failures {
            println!("     violated: {}", f.law);
            for input in &f.inputs {
                println!("       input: {input}");
            }
            if !f.detail.is_empty() {
                println!("       {}", f.detail);
            }
        }
    }
    let bad = reports.iter().filter(|r| !r.passed()).count();
    if bad == 0 {
        println!("all {} suites passed", reports.len());
    } else {
        println!("{bad} of {} suites failed", reports.len());
    }
}

fn run_eval(args: &EvalArgs) -> Result<ExitCode> {
    let (ctx, _) = load(&args.config)?;
    let ast = expr::parse(&args.expr)?;
    let value = eval::evaluate(&ctx, &ast)?;
    println!("{}", value.render(&ctx));
    Ok(ExitCode::SUCCESS)
}

fn run_describe(args: &DescribeArgs) -> Result<ExitCode> {
    let (ctx, samples) = load(&args.config)?;
    let alg = ctx.algebra();
    let dim = ctx.dim();
    println!("context {}", ctx.label());
    println!("  algebra: dimension {dim}, basis {}", alg.names().join(", "));
    let mut printed = 0usize;
    for i in 0..dim as u8 {
        for j in (i + 1)..dim as u8 {
            let value = alg.bracket(&basis_vec(dim, i), &basis_vec(dim, j))?;
            if value.iter().all(Scalar::is_zero) {
                continue;
            }
            let shown = show_terms(
                value
                    .iter()
                    .enumerate()
                    .map(|(k, c)| (alg.name_of(k as u8).to_string(), c.clone())),
            );
            println!("    [{}, {}] = {shown}", alg.name_of(i), alg.name_of(j));
            printed += 1;
        }
    }
    if printed == 0 {
        println!("    all brackets vanish");
    }
    let gdesc = match ctx.group() {
        Group::Cayley { table, .. } => format!("multiplication table of order {}", table.len()),
        Group::Permutation { degree } => {
            let order: usize = (1..=*degree).product();
            format!("permutations of {degree} symbols (order {order})")
        }
        Group::Matrix { size } => format!("invertible {size}x{size} rational matrices"),
    };
    println!("  group: {gdesc}");
    let rdesc = match ctx.rep() {
        Representation::Trivial => "trivial".to_string(),
        Representation::Conjugation { .. } => "conjugation through a matrix realization".to_string(),
        Representation::Table { entries } => format!("explicit table with {} entries", entries.len()),
    };
    println!("  action: {rdesc}");
    let report = ctx.validate(if samples.is_empty() { None } else { Some(&samples) });
    println!("  validation ({} samples beyond the defaults):", samples.len());
    for c in &report.checks {
        println!("    {} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
    }
    println!("  suites: {}", SUITES.join(", "));
    Ok(ExitCode::SUCCESS)
}
