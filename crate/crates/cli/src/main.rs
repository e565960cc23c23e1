//! `qzx`: derive, verify, take limits of, and export q-disentanglement formulas.
//!
//! Exit status: 0 when everything requested succeeded or passed, 1 when a
//! verification check failed or a pole was hit, 2 for usage and configuration errors.

mod verify;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qzx_core::disentangler::printed::literature_report;
use qzx_core::disentangler::{check_order, classical_limit, derive, transform_variant, Target};
use qzx_core::export::{render_latex, render_text, ExportDocument, Provenance};
use qzx_core::{Error, Factorization, Variant, DEFAULT_ORDER, MAX_ORDER};

#[derive(Parser)]
#[command(name = "qzx", version, about = "q-Zassenhaus and q-BCH formulas, derived exactly")]
struct Cli {
    /// Lower the largest accepted truncation order (hard limit 10).
    #[arg(long, global = true, env = "QZX_ORDER_CAP", value_name = "N")]
    order_cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive a factorization and print or save it.
    Derive(DeriveArgs),
    /// Check derived factorizations symbolically and/or numerically.
    Verify(verify::VerifyArgs),
    /// Take the q -> 1 limit of a factorization.
    Limit(LimitArgs),
    /// Compare the solver against the closed forms quoted in the literature.
    Report(ReportArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Escalating,
    Uniform,
    Qbch,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Escalating => Variant::Escalating,
            VariantArg::Uniform => Variant::Uniform,
            VariantArg::Qbch => Variant::Qbch,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Jackson,
    ELower,
    EUpper,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DeriveArgs {
    #[arg(long, value_enum)]
    variant: VariantArg,
    /// Truncation order N: factors or terms through x^N.
    #[arg(long)]
    order: Option<usize>,
    /// Exponential convention of the emitted factors.
    #[arg(long, value_enum, default_value = "jackson")]
    convention: ConventionArg,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct LimitArgs {
    /// Derive this variant first (ignored with --input).
    #[arg(long, value_enum, required_unless_present = "input")]
    variant: Option<VariantArg>,
    #[arg(long, conflicts_with = "input")]
    order: Option<usize>,
    /// A previously exported JSON document.
    #[arg(long, short)]
    input: Option<PathBuf>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ReportArgs {
    /// Emit the comparisons as JSON.
    #[arg(long)]
    json: bool,
}

/// Errors carry their exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::PoleAtPoint { .. } | Error::PoleAtGrade { .. } => Failure::Check(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

pub type CmdResult<T = ()> = Result<T, Failure>;

/// Effective order cap: the hard limit, optionally lowered.
fn order_cap(requested: Option<usize>) -> CmdResult<usize> {
    match requested {
        None => Ok(MAX_ORDER),
        Some(c) if (2..=MAX_ORDER).contains(&c) => Ok(c),
        Some(c) => Err(Failure::Usage(format!(
            "order cap {c} is invalid: it may only be lowered, to a value in 2..={MAX_ORDER}"
        ))),
    }
}

/// Resolves `--order` against the cap; the default order is clipped to the cap.
pub fn resolve_order(order: Option<usize>, cap: usize) -> CmdResult<usize> {
    let n = order.unwrap_or(DEFAULT_ORDER.min(cap));
    check_order(n, cap).map_err(|_| Failure::Usage(format!("order {n} is out of range 2..={cap} (the order cap is {cap})")))?;
    Ok(n)
}

fn provenance(pairs: &[(&str, String)]) -> Provenance {
    Provenance::now(pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect::<BTreeMap<_, _>>())
}

fn emit(f: &Factorization, out: &Output, prov: Provenance) -> CmdResult {
    let mut text = match out.format {
        Format::Text => render_text(f),
        Format::Latex => render_latex(f),
        Format::Json => ExportDocument::from_factorization(f, prov).to_json(),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    write_out(&text, out.output.as_deref())
}

fn write_out(text: &str, path: Option<&Path>) -> CmdResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_derive(args: &DeriveArgs, cap: usize) -> CmdResult {
    let n = resolve_order(args.order, cap)?;
    let variant = Variant::from(args.variant);
    let f = derive(variant, n)?;
    let f = match args.convention {
        ConventionArg::Jackson => f,
        ConventionArg::ELower => transform_variant(&f, Target::LowerE)?,
        ConventionArg::EUpper => transform_variant(&f, Target::UpperE)?,
    };
    let prov = provenance(&[
        ("command", "derive".into()),
        ("variant", variant.to_string()),
        ("order", n.to_string()),
        ("convention", f.convention.to_string()),
    ]);
    emit(&f, &args.out, prov)
}

fn cmd_limit(args: &LimitArgs, cap: usize) -> CmdResult {
    let (source, f) = match &args.input {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let f = ExportDocument::from_json(&text)?.to_factorization()?;
            check_order(f.order, cap).map_err(|_| {
                Failure::Usage(format!("input order {} is out of range: it must lie in 2..={cap}", f.order))
            })?;
            (path.display().to_string(), f)
        }
        None => {
            let variant = Variant::from(args.variant.expect("required unless --input"));
            let n = resolve_order(args.order, cap)?;
            (format!("derive {variant} {n}"), derive(variant, n)?)
        }
    };
    let lim = classical_limit(&f)?;
    let prov = provenance(&[("command", "limit".into()), ("source", source)]);
    emit(&lim, &args.out, prov)
}

fn cmd_report(args: &ReportArgs) -> CmdResult {
    let report = literature_report()?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        return Ok(());
    }
    for c in &report {
        let status = if c.agrees { "agrees" } else { "DIFFERS" };
        println!("{status:8} {:15} grade {}  {}", c.variant, c.grade, c.label);
        if !c.agrees {
            for t in &c.difference {
                println!("         derived - printed: {}  ({})/({})", t.word, t.num, t.den);
            }
        }
        if let Some(note) = &c.note {
            println!("         {note}");
        }
    }
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    let cap = order_cap(cli.order_cap)?;
    match &cli.command {
        Command::Derive(a) => cmd_derive(a, cap),
        Command::Verify(a) => verify::cmd_verify(a, cap),
        Command::Limit(a) => cmd_limit(a, cap),
        Command::Report(a) => cmd_report(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(m)) => {
            eprintln!("qzx: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("qzx: {m}");
            ExitCode::from(2)
        }
    }
}
