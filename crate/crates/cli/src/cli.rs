//! Argument parsing and subcommand dispatch.
//!
//! Exit codes: 0 success, 1 invalid input, 2 resource cap exceeded,
//! 3 oracle mismatch in `check`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use omega_core::ilp::{Solver, DEFAULT_NODE_LIMIT};
use omega_core::omega::{omega_element, omega_global, Mode, OmegaConfig, SeedCuts, DEFAULT_ITERATION_CAP};
use omega_core::oracle::{omega_oracle_capped, DEFAULT_BOX_CAP};
use omega_core::{Error, Semigroup};
use rayon::prelude::*;
use serde_json::json;

use crate::bench::{mode_disagreements, run_bench_with, summary_lines, BenchConfig, CsvSink};
use crate::render::trace_table;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "omega", version, about = "Exact omega-primality of numerical semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute omega(S, n) for one generator or all of them.
    Omega(OmegaArgs),
    /// Brute-force omega(S, s) for any element s of S.
    Oracle(OracleArgs),
    /// Compare the solver against the brute-force oracle.
    Check(CheckArgs),
    /// Run a seeded random battery and write CSV records.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct SemigroupArgs {
    /// Generators as `6,10,14,27` or a JSON array `[6,10,14,27]`.
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_generators)]
    gens: Vec<i64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Improved,
    Baseline,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BenchModeArg {
    Improved,
    Baseline,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeedCutsArg {
    Best,
    All,
}

#[derive(Args, Debug)]
struct SolverArgs {
    #[arg(long, value_enum, default_value = "improved")]
    mode: ModeArg,
    #[arg(long = "seed-cuts", value_enum, default_value = "best")]
    seed_cuts: SeedCutsArg,
    #[arg(long = "iteration-cap", default_value_t = DEFAULT_ITERATION_CAP)]
    iteration_cap: usize,
    #[arg(long = "node-limit", default_value_t = DEFAULT_NODE_LIMIT)]
    node_limit: u64,
}

impl SolverArgs {
    fn config(&self) -> OmegaConfig {
        OmegaConfig {
            mode: match self.mode {
                ModeArg::Improved => Mode::Improved,
                ModeArg::Baseline => Mode::Baseline,
            },
            seed_cuts: match self.seed_cuts {
                SeedCutsArg::Best => SeedCuts::Best,
                SeedCutsArg::All => SeedCuts::All,
            },
            iteration_cap: self.iteration_cap,
            solver: Solver::with_node_limit(self.node_limit),
        }
    }
}

#[derive(Args, Debug)]
struct OmegaArgs {
    #[command(flatten)]
    semigroup: SemigroupArgs,
    /// Generator value n_j; omit for all generators.
    #[arg(long)]
    element: Option<i64>,
    /// Print omega(S, n_j) for every generator as well as omega(S).
    #[arg(long)]
    all: bool,
    #[command(flatten)]
    solver: SolverArgs,
    /// Print the per-iteration table.
    #[arg(long)]
    trace: bool,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[command(flatten)]
    semigroup: SemigroupArgs,
    /// Any element s of S.
    #[arg(long)]
    element: i64,
    #[arg(long = "box-cap", default_value_t = DEFAULT_BOX_CAP)]
    box_cap: u128,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    semigroup: SemigroupArgs,
    /// Generator to check; all generators when omitted.
    #[arg(long, conflicts_with = "all")]
    element: Option<i64>,
    /// Check every generator (the default).
    #[arg(long)]
    all: bool,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long = "box-cap", default_value_t = DEFAULT_BOX_CAP)]
    box_cap: u128,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, default_value_t = 5)]
    p: usize,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 100)]
    min: i64,
    #[arg(long, default_value_t = 2000)]
    max: i64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value = "both")]
    mode: BenchModeArg,
    #[arg(long = "seed-cuts", value_enum, default_value = "best")]
    seed_cuts: SeedCutsArg,
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn parse_generators(raw: &str) -> Result<i64, String> {
    raw.trim()
        .parse::<i64>()
        .map_err(|e| format!("invalid generator `{raw}`: {e}"))
}

/// Accepts `6,10,14,27` (split by clap) or a JSON array.
fn expand_json_lists(args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let mut out = Vec::with_capacity(args.len());
    let mut iter = args.into_iter().peekable();
    while let Some(arg) = iter.next() {
        let is_gens = arg == "--gens";
        out.push(arg);
        if is_gens {
            if let Some(value) = iter.next() {
                let text = value.to_string_lossy();
                if text.trim_start().starts_with('[') {
                    let list: Vec<i64> =
                        serde_json::from_str(&text).map_err(|e| format!("invalid JSON generator list: {e}"))?;
                    let joined = list.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
                    out.push(joined.into());
                } else {
                    out.push(value);
                }
            }
        }
    }
    Ok(out)
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: if e.is_resource_limit() { EXIT_RESOURCE } else { EXIT_INVALID },
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self {
            code: EXIT_INVALID,
            message: e.to_string(),
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Self {
            code: EXIT_INVALID,
            message: e.to_string(),
        }
    }
}

fn build_semigroup(args: &SemigroupArgs) -> Result<Semigroup, Failure> {
    Ok(Semigroup::from_generators(&args.gens)?)
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run<I, A>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString>,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let argv = match expand_json_lists(argv) {
        Ok(a) => a,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            return EXIT_INVALID;
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Omega(args) => cmd_omega(&args, out),
        Command::Oracle(args) => cmd_oracle(&args, out),
        Command::Check(args) => cmd_check(&args, out),
        Command::Bench(args) => cmd_bench(&args, out, err),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn cmd_omega(args: &OmegaArgs, out: &mut impl Write) -> Result<i32, Failure> {
    let semigroup = build_semigroup(&args.semigroup)?;
    let config = args.solver.config();

    if let Some(element) = args.element {
        let j = semigroup.index_of(element)?;
        let trace = omega_element(&semigroup, j, &config)?;
        if args.json {
            writeln!(out, "{}", serde_json::to_string_pretty(&trace).expect("serializable"))?;
        } else {
            if args.trace {
                write!(out, "{}", trace_table(&trace))?;
            }
            writeln!(out, "{}", trace.omega)?;
        }
        return Ok(EXIT_OK);
    }

    let result = omega_global(&semigroup, &config, args.jobs)?;
    if args.json {
        let body = json!({
            "generators": result.generators,
            "values": result.values,
            "omega": result.omega,
            "traces": result.traces,
            "elapsed_ms": result.elapsed_ms,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&body).expect("serializable"))?;
        return Ok(EXIT_OK);
    }
    if args.trace {
        for trace in &result.traces {
            write!(out, "{}", trace_table(trace))?;
        }
    }
    if args.all {
        for (n, w) in result.generators.iter().zip(&result.values) {
            writeln!(out, "omega(S, {n}) = {w}")?;
        }
        writeln!(out, "omega(S) = {}", result.omega)?;
    } else {
        writeln!(out, "{}", result.omega)?;
    }
    Ok(EXIT_OK)
}

fn cmd_oracle(args: &OracleArgs, out: &mut impl Write) -> Result<i32, Failure> {
    let semigroup = build_semigroup(&args.semigroup)?;
    let value = omega_oracle_capped(&semigroup, args.element, args.box_cap)?;
    writeln!(out, "{value}")?;
    Ok(EXIT_OK)
}

fn cmd_check(args: &CheckArgs, out: &mut impl Write) -> Result<i32, Failure> {
    let semigroup = build_semigroup(&args.semigroup)?;
    let config = args.solver.config();
    let indices: Vec<usize> = match args.element {
        Some(e) => vec![semigroup.index_of(e)?],
        None => (0..semigroup.embedding_dimension()).collect(),
    };
    let compare = |j: usize| -> Result<(i64, i64, i64), Error> {
        let n = semigroup.generators()[j];
        let solver = omega_element(&semigroup, j, &config)?.omega;
        let oracle = omega_oracle_capped(&semigroup, n, args.box_cap)?;
        Ok((n, solver, oracle))
    };
    let rows: Vec<(i64, i64, i64)> = if args.jobs > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs)
            .build()
            .map_err(|e| Failure {
                code: EXIT_INVALID,
                message: e.to_string(),
            })?
            .install(|| indices.par_iter().map(|&j| compare(j)).collect::<Result<_, _>>())?
    } else {
        indices.iter().map(|&j| compare(j)).collect::<Result<_, _>>()?
    };
    let mut mismatches = 0;
    for (n, solver, oracle) in rows {
        let verdict = if solver == oracle { "ok" } else { "MISMATCH" };
        mismatches += usize::from(solver != oracle);
        writeln!(out, "omega(S, {n}): solver = {solver}, oracle = {oracle} {verdict}")?;
    }
    Ok(if mismatches == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_bench(args: &BenchArgs, out: &mut impl Write, err: &mut impl Write) -> Result<i32, Failure> {
    let modes = match args.mode {
        BenchModeArg::Improved => vec![Mode::Improved],
        BenchModeArg::Baseline => vec![Mode::Baseline],
        BenchModeArg::Both => vec![Mode::Improved, Mode::Baseline],
    };
    if args.p < 2 || args.min < 1 || args.min >= args.max {
        return Err(Failure {
            code: EXIT_INVALID,
            message: format!(
                "need p >= 2 and 1 <= min < max, got p={}, min={}, max={}",
                args.p, args.min, args.max
            ),
        });
    }
    let config = BenchConfig {
        p: args.p,
        count: args.count,
        min: args.min,
        max: args.max,
        seed: args.seed,
        modes: modes.clone(),
        jobs: args.jobs,
        omega: OmegaConfig {
            seed_cuts: match args.seed_cuts {
                SeedCutsArg::Best => SeedCuts::Best,
                SeedCutsArg::All => SeedCuts::All,
            },
            ..OmegaConfig::default()
        },
    };

    let records = match &args.out {
        Some(path) => {
            let mut sink = CsvSink::new(File::create(path)?)?;
            let mut write_error = None;
            let records = run_bench_with(&config, |r| {
                if let Err(e) = sink.write(r) {
                    write_error.get_or_insert(e);
                }
            });
            if let Some(e) = write_error {
                return Err(e.into());
            }
            records
        }
        None => {
            let mut sink = CsvSink::new(Vec::new())?;
            let records = run_bench_with(&config, |r| {
                let _ = sink.write(r);
            });
            out.write_all(&sink.into_inner())?;
            records
        }
    };

    for line in summary_lines(&records, &modes) {
        writeln!(err, "{line}")?;
    }
    let disagreements = mode_disagreements(&records);
    if !disagreements.is_empty() {
        writeln!(err, "mode disagreement on instances {disagreements:?}")?;
        return Ok(EXIT_MISMATCH);
    }
    let code = if records.iter().any(|r| r.error.as_ref().is_some_and(|e| e.resource_limit)) {
        EXIT_RESOURCE
    } else {
        EXIT_OK
    };
    Ok(code)
}
