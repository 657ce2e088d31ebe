//! Subcommand handlers and exit-code mapping.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cyclonum_core::characters::CharacterMethod;
use cyclonum_core::consistency::{inapplicability, MethodFamily, SweepConfig};
use cyclonum_core::digraph::{self, DigraphEvaluator, VertexOrdering};
use cyclonum_core::oracle::{count_by_coset, count_by_norm, full_table, TableMethod};
use cyclonum_core::{
    build_context, closed_forms, prime_ell, rank, CycloParams, Error, ExtensionContext, Limits,
};

use crate::config::parse_config;
use crate::record::{
    twelve_digits, ContextInfo, MethodResult, OutputRecord, Request, Skipped, SweepRecord,
    SCHEMA_VERSION,
};
use crate::sweep::{first_counterexample, run_parallel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_INAPPLICABLE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_DISAGREEMENT: i32 = 4;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INTERNAL: i32 = 70;

/// Environment variable overriding the `q^r` enumeration cap.
pub const CAP_VAR: &str = "CYCLONUM_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "cyclonum",
    version,
    about = "Exact cyclotomic numbers of order q-1 over F_{q^r}"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one cell (a, b).
    Compute(ComputeArgs),
    /// Evaluate every cell.
    Table(TableArgs),
    /// Write the rank matrix C^(a,b) or the digraph adjacency matrix.
    ExportMatrix(ExportArgs),
    /// Run the cross-method consistency sweep.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(short = 'p')]
    pub p: u32,
    /// q = p^n.
    #[arg(short = 'n', default_value_t = 1)]
    pub n: u32,
    /// Extension degree of F_{q^r} over F_q.
    #[arg(short = 'r')]
    pub r: u32,
    /// Choose ω with ω^k equal to this value (an integer for n = 1, a
    /// logarithm to the canonical subfield generator otherwise).
    #[arg(long)]
    pub norm_target: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Oracle,
    Rank,
    Chars,
    Digraph,
    Ell,
    Closed,
    All,
}

impl MethodArg {
    fn name(self) -> &'static str {
        match self {
            MethodArg::All => "all",
            other => other.family().expect("single method").name(),
        }
    }

    fn family(self) -> Option<MethodFamily> {
        Some(match self {
            MethodArg::Oracle => MethodFamily::Oracle,
            MethodArg::Rank => MethodFamily::Rank,
            MethodArg::Chars => MethodFamily::Chars,
            MethodArg::Digraph => MethodFamily::Digraph,
            MethodArg::Ell => MethodFamily::Ell,
            MethodArg::Closed => MethodFamily::Closed,
            MethodArg::All => return None,
        })
    }
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(short = 'a')]
    pub a: u64,
    #[arg(short = 'b')]
    pub b: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    pub method: MethodArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Oracle)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WhichMatrix {
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "A", alias = "a")]
    A,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderingArg {
    Canonical,
    Natural,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, value_enum)]
    pub which: WhichMatrix,
    #[arg(short = 'a', default_value_t = 0)]
    pub a: u64,
    #[arg(short = 'b', default_value_t = 0)]
    pub b: u64,
    /// Vertex numbering for the adjacency matrix.
    #[arg(long, value_enum, default_value_t = OrderingArg::Canonical)]
    pub ordering: OrderingArg,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Sweep configuration; the default grid when omitted.
    pub config: Option<PathBuf>,
    /// Write the full JSON report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// A failed command: exit code plus message for standard error.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::MethodInapplicable { .. } => EXIT_INAPPLICABLE,
            Error::SizeCapExceeded { .. } | Error::PrecisionBudgetExceeded { .. } => EXIT_CAP,
            Error::TheoremViolation { .. }
            | Error::RoundingResidualTooLarge { .. }
            | Error::NonIntegerLeadingTerm => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Failure::usage(err.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(cli, &mut out) {
        Ok(code) => code,
        Err(fail) => {
            let _ = out.flush();
            eprintln!("error: {}", fail.message);
            fail.code
        }
    }
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Outcome {
    let limits = limits_from_env()?;
    match cli.command {
        Command::Compute(args) => compute(&args, &limits, out),
        Command::Table(args) => table(&args, &limits, out),
        Command::ExportMatrix(args) => export_matrix(&args, &limits, out),
        Command::Verify(args) => verify(&args, &limits, out),
    }
}

fn limits_from_env() -> Result<Limits, Failure> {
    let mut limits = Limits::default();
    if let Ok(raw) = std::env::var(CAP_VAR) {
        match raw.trim().parse::<u64>() {
            Ok(cap) if cap > 0 => limits.enumeration = cap,
            _ => {
                return Err(Failure::usage(format!(
                    "{} must be a positive integer, got `{}`",
                    CAP_VAR, raw
                )))
            }
        }
    }
    Ok(limits)
}

fn context(field: &FieldArgs, limits: &Limits) -> Result<ExtensionContext, Failure> {
    Ok(build_context(
        field.p,
        field.n,
        field.r,
        field.norm_target,
        limits,
    )?)
}

/// Values of one method family on the given cells.
fn evaluate(
    ctx: &ExtensionContext,
    family: MethodFamily,
    cells: &[CycloParams],
    limits: &Limits,
) -> Result<Vec<MethodResultRaw>, Error> {
    let whole = cells.len() as u64 == ctx.e() * ctx.e();
    let per_cell = |f: &dyn Fn(CycloParams) -> Result<u64, Error>| {
        cells
            .iter()
            .map(|&c| f(c))
            .collect::<Result<Vec<u64>, Error>>()
    };
    Ok(match family {
        MethodFamily::Oracle => {
            if whole {
                let coset = full_table(ctx, TableMethod::Coset)?;
                let norm = full_table(ctx, TableMethod::Norm)?;
                vec![
                    MethodResultRaw::new(
                        "oracle-coset",
                        cells.iter().map(|&c| coset.get(c)).collect(),
                    ),
                    MethodResultRaw::new(
                        "oracle-norm",
                        cells.iter().map(|&c| norm.get(c)).collect(),
                    ),
                ]
            } else {
                vec![
                    MethodResultRaw::new(
                        "oracle-coset",
                        cells.iter().map(|&c| count_by_coset(ctx, c)).collect(),
                    ),
                    MethodResultRaw::new(
                        "oracle-norm",
                        cells.iter().map(|&c| count_by_norm(ctx, c)).collect(),
                    ),
                ]
            }
        }
        MethodFamily::Rank => vec![MethodResultRaw::new(
            "rank",
            per_cell(&|c| rank::cyclotomic_by_rank(ctx, c, limits.rank))?,
        )],
        MethodFamily::Chars => {
            let method = CharacterMethod::new(ctx, limits.precision_budget)?;
            let values = per_cell(&|c| method.value(c))?;
            let mut raw = MethodResultRaw::new("chars", values);
            if cells.len() == 1 {
                let split = method.decompose(cells[0]);
                raw.main_term = Some(format!(
                    "{}/{}",
                    split.main_numerator, split.main_denominator
                ));
                raw.error_term = Some(twelve_digits(split.error));
            }
            vec![raw]
        }
        MethodFamily::Digraph => {
            let graph = digraph::build_graph(ctx, VertexOrdering::Canonical)?;
            let values = if ctx.q() == 2 {
                per_cell(&|c| digraph::cyclotomic_by_digraph(ctx, &graph, c))?
            } else {
                let walker = DigraphEvaluator::new(ctx, &graph)?;
                per_cell(&|c| walker.value(c))?
            };
            vec![MethodResultRaw::new("digraph", values)]
        }
        MethodFamily::Ell => vec![MethodResultRaw::new(
            "ell",
            per_cell(&|c| prime_ell::cyclotomic_by_ell(ctx, c, limits).map(|d| d.total))?,
        )],
        MethodFamily::Closed => vec![MethodResultRaw::new(
            "closed",
            per_cell(&|c| closed_forms::closed_value(ctx, c))?,
        )],
    })
}

struct MethodResultRaw {
    method: &'static str,
    values: Vec<u64>,
    main_term: Option<String>,
    error_term: Option<String>,
}

impl MethodResultRaw {
    fn new(method: &'static str, values: Vec<u64>) -> Self {
        MethodResultRaw {
            method,
            values,
            main_term: None,
            error_term: None,
        }
    }
}

/// Runs the requested method, or every applicable one for `all`.
fn evaluate_request(
    ctx: &ExtensionContext,
    method: MethodArg,
    cells: &[CycloParams],
    limits: &Limits,
) -> Result<(Vec<MethodResultRaw>, Vec<Skipped>), Failure> {
    match method.family() {
        Some(family) => Ok((evaluate(ctx, family, cells, limits)?, Vec::new())),
        None => {
            let mut results = Vec::new();
            let mut skipped = Vec::new();
            for family in MethodFamily::ALL {
                match inapplicability(ctx, limits, family) {
                    Some(reason) => skipped.push(Skipped {
                        method: family.name().to_string(),
                        reason,
                    }),
                    None => results.extend(evaluate(ctx, family, cells, limits)?),
                }
            }
            Ok((results, skipped))
        }
    }
}

fn agree(results: &[MethodResultRaw]) -> bool {
    results.windows(2).all(|w| w[0].values == w[1].values)
}

fn write_json(out: &mut dyn Write, value: &impl serde::Serialize) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(io::Error::other)?;
    writeln!(out)
}

fn compute(args: &ComputeArgs, limits: &Limits, out: &mut dyn Write) -> Outcome {
    let start = Instant::now();
    let ctx = context(&args.field, limits)?;
    let cell = CycloParams::new(&ctx, args.a, args.b)?;
    let (results, skipped) = evaluate_request(&ctx, args.method, &[cell], limits)?;
    let consistent = agree(&results);
    let record = OutputRecord {
        schema_version: SCHEMA_VERSION,
        context: ContextInfo::of(&ctx),
        request: Request {
            command: "compute".into(),
            a: Some(args.a),
            b: Some(args.b),
            method: args.method.name().into(),
            norm_target: args.field.norm_target,
        },
        results: results
            .into_iter()
            .map(|r| MethodResult {
                main_term: r.main_term,
                error_term: r.error_term,
                ..MethodResult::value(r.method, r.values[0])
            })
            .collect(),
        skipped,
        timing_ms: start.elapsed().as_millis() as u64,
    };
    write_json(out, &record)?;
    if !consistent {
        return Err(Failure {
            code: EXIT_DISAGREEMENT,
            message: "methods disagree".into(),
        });
    }
    Ok(EXIT_OK)
}

fn emit(output: &Option<PathBuf>, out: &mut dyn Write, text: &str) -> io::Result<()> {
    match output {
        Some(path) => fs::write(path, text),
        None => out.write_all(text.as_bytes()),
    }
}

fn table(args: &TableArgs, limits: &Limits, out: &mut dyn Write) -> Outcome {
    let start = Instant::now();
    let ctx = context(&args.field, limits)?;
    let cells: Vec<CycloParams> = CycloParams::all(&ctx).collect();
    let (results, skipped) = evaluate_request(&ctx, args.method, &cells, limits)?;
    let e = ctx.e() as usize;
    let consistent = agree(&results);
    let text = match args.format {
        TableFormat::Csv => {
            if !consistent {
                return Err(Failure {
                    code: EXIT_DISAGREEMENT,
                    message: "methods disagree; use --format json to see every table".into(),
                });
            }
            let mut text = String::new();
            let header: Vec<String> = (0..e).map(|b| format!("b={}", b)).collect();
            text.push_str(&header.join(","));
            text.push('\n');
            for row in results[0].values.chunks(e) {
                let row: Vec<String> = row.iter().map(u64::to_string).collect();
                text.push_str(&row.join(","));
                text.push('\n');
            }
            text
        }
        TableFormat::Json => {
            let record = OutputRecord {
                schema_version: SCHEMA_VERSION,
                context: ContextInfo::of(&ctx),
                request: Request {
                    command: "table".into(),
                    a: None,
                    b: None,
                    method: args.method.name().into(),
                    norm_target: args.field.norm_target,
                },
                results: results
                    .iter()
                    .map(|r| {
                        MethodResult::table(
                            r.method,
                            r.values.chunks(e).map(<[u64]>::to_vec).collect(),
                        )
                    })
                    .collect(),
                skipped,
                timing_ms: start.elapsed().as_millis() as u64,
            };
            let mut text = serde_json::to_string_pretty(&record).map_err(io::Error::other)?;
            text.push('\n');
            text
        }
    };
    emit(&args.output, out, &text)?;
    if !consistent {
        return Err(Failure {
            code: EXIT_DISAGREEMENT,
            message: "methods disagree".into(),
        });
    }
    Ok(EXIT_OK)
}

fn export_matrix(args: &ExportArgs, limits: &Limits, out: &mut dyn Write) -> Outcome {
    let ctx = context(&args.field, limits)?;
    let text = match args.which {
        WhichMatrix::C => {
            let cell = CycloParams::new(&ctx, args.a, args.b)?;
            let matrix = rank::build_matrix(&ctx, cell, limits.rank)?;
            let mut text = format!(
                "# C a={} b={} p={} n={} r={} size={} entries=base-p-encoding\n",
                args.a,
                args.b,
                ctx.p(),
                ctx.n(),
                ctx.r(),
                matrix.size()
            );
            for row in matrix.rows() {
                let row: Vec<String> = row.iter().map(|x| x.encoding().to_string()).collect();
                text.push_str(&row.join(" "));
                text.push('\n');
            }
            text
        }
        WhichMatrix::A => {
            let ordering = match args.ordering {
                OrderingArg::Canonical => VertexOrdering::Canonical,
                OrderingArg::Natural => VertexOrdering::Natural,
            };
            digraph::build_graph(&ctx, ordering)?.adjacency_text()
        }
    };
    emit(&args.output, out, &text)?;
    Ok(EXIT_OK)
}

fn verify(args: &VerifyArgs, limits: &Limits, out: &mut dyn Write) -> Outcome {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {}", path.display(), e)))?;
            parse_config(&text).map_err(|e| Failure::usage(format!("{}: {}", path.display(), e)))?
        }
        None => SweepConfig::default_grid(),
    };
    if std::env::var(CAP_VAR).is_ok() {
        config.limits.enumeration = limits.enumeration;
    }
    let reports = run_parallel(&config);
    let record = SweepRecord::of(&reports);
    for ctx in &record.contexts {
        writeln!(
            out,
            "p={} n={} r={} q={} cells={} methods={} {}",
            ctx.p,
            ctx.n,
            ctx.r,
            ctx.q,
            ctx.cells.len(),
            ctx.methods.join(","),
            if ctx.passed { "PASS" } else { "FAIL" }
        )?;
    }
    let s = &record.summary;
    writeln!(
        out,
        "contexts={} cells={} disagreements={} failed={}",
        s.contexts, s.cells, s.disagreements, s.failed_contexts
    )?;
    if let Some(path) = &args.report {
        let mut text = serde_json::to_string_pretty(&record).map_err(io::Error::other)?;
        text.push('\n');
        fs::write(path, text)?;
    }
    match first_counterexample(&reports) {
        Some(example) => {
            writeln!(out, "counterexample: {}", example)?;
            Ok(EXIT_COUNTEREXAMPLE)
        }
        None => Ok(EXIT_OK),
    }
}
