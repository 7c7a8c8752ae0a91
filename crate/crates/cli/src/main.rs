//! Command-line front end: type checking, evaluation on a chosen machine,
//! differential runs across all three, and corpus generation.
//!
//! Exit codes: 0 success, 1 syntax/type/generation errors, 2 machine
//! disagreement, 3 fuel exhaustion.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use stlc_machines::print::{term_string, value_string, value_string_verbose};
use stlc_machines::{
    check_source, evaluate_krivine_traced, evaluate_refocus_traced, evaluate_smallstep_traced,
    generate_terms, parse_type, run_diff, Closed, Env, EvalError, GenConfig, SourceError, Span,
    StepLog, Term, Ty, Value, DEFAULT_FUEL,
};

#[derive(Parser)]
#[command(
    name = "stlc",
    version,
    about = "Simply typed lambda calculus workbench: check, evaluate, and cross-test three equivalent evaluators"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and type check a term; print its type.
    Check {
        /// A file path or a term written directly on the command line.
        input: String,
    },
    /// Evaluate a closed term to its value on one machine.
    Eval {
        #[arg(long, value_enum)]
        machine: MachineArg,
        /// Contraction budget.
        #[arg(long, default_value_t = DEFAULT_FUEL, value_parser = clap::value_parser!(u64).range(1..))]
        fuel: u64,
        /// Write the step log as JSON to this path.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Record the full machine state at every step (printed to stdout
        /// unless --trace is given).
        #[arg(long)]
        verbose_trace: bool,
        /// Print captured environments recursively.
        #[arg(long)]
        verbose: bool,
        input: String,
    },
    /// Run all three machines and compare values and step logs.
    Diff {
        #[arg(long, default_value_t = DEFAULT_FUEL, value_parser = clap::value_parser!(u64).range(1..))]
        fuel: u64,
        /// Generate the input corpus instead of reading files.
        #[arg(long)]
        fuzz: bool,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        /// Goal type for generated terms.
        #[arg(long, default_value = "o -> o")]
        goal: String,
        /// Term files, one term per file (ignored with --fuzz).
        files: Vec<PathBuf>,
    },
    /// Generate random well-typed closed terms.
    Fuzz {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, default_value = "o -> o")]
        goal: String,
        /// Write terms to DIR/term_<index>.lam instead of stdout.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MachineArg {
    Smallstep,
    Refocus,
    Krivine,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Check { input } => cmd_check(&input),
        Cmd::Eval {
            machine,
            fuel,
            trace,
            verbose_trace,
            verbose,
            input,
        } => cmd_eval(
            machine,
            fuel,
            trace.as_deref(),
            verbose_trace,
            verbose,
            &input,
        ),
        Cmd::Diff {
            fuel,
            fuzz,
            seed,
            count,
            depth,
            goal,
            files,
        } => cmd_diff(fuel, fuzz, seed, count, depth, &goal, &files),
        Cmd::Fuzz {
            seed,
            count,
            depth,
            goal,
            emit,
        } => cmd_fuzz(seed, count, depth, &goal, emit.as_deref()),
    };
    ExitCode::from(code)
}

/// Reads the contents of `input` if it names a file, otherwise treats it as
/// a term written inline.
fn read_input(input: &str) -> Result<String, String> {
    if Path::new(input).is_file() {
        fs::read_to_string(input).map_err(|e| format!("cannot read {input}: {e}"))
    } else {
        Ok(input.to_string())
    }
}

/// Renders a span-carrying diagnostic with the offending line and a caret.
fn render_diagnostic(src: &str, message: &str, span: Span) -> String {
    let start = span.start.min(src.len());
    let line_start = src[..start].rfind('\n').map_or(0, |i| i + 1);
    let line_end = src[start..].find('\n').map_or(src.len(), |i| start + i);
    let line_no = src[..start].matches('\n').count() + 1;
    let col = start - line_start + 1;
    let line = &src[line_start..line_end];
    let width = span
        .end
        .saturating_sub(span.start)
        .max(1)
        .min(line.len().saturating_sub(col - 1).max(1));
    format!(
        "error: {message}\n --> line {line_no}, column {col}\n  |\n  | {line}\n  | {pad}{carets}",
        pad = " ".repeat(col - 1),
        carets = "^".repeat(width),
    )
}

fn check_input(input: &str) -> Result<Term, u8> {
    let src = read_input(input).map_err(|e| {
        eprintln!("error: {e}");
        1u8
    })?;
    let src = src.trim_end();
    check_source(src).map_err(|e: SourceError| {
        eprintln!("{}", render_diagnostic(src, &e.to_string(), e.span()));
        1u8
    })
}

fn cmd_check(input: &str) -> u8 {
    match check_input(input) {
        Ok(term) => {
            println!("{}", term.ty());
            0
        }
        Err(code) => code,
    }
}

fn run_machine(
    machine: MachineArg,
    term: &Term,
    fuel: u64,
    verbose_trace: bool,
) -> Result<(Value, StepLog), EvalError> {
    match machine {
        MachineArg::Smallstep => evaluate_smallstep_traced(
            &Closed::closure(term.clone(), Env::nil()),
            fuel,
            verbose_trace,
        ),
        MachineArg::Refocus => evaluate_refocus_traced(
            &Closed::closure(term.clone(), Env::nil()),
            fuel,
            verbose_trace,
        ),
        MachineArg::Krivine => evaluate_krivine_traced(term, fuel, verbose_trace),
    }
}

fn write_trace(log: &StepLog, trace: Option<&Path>, verbose_trace: bool) -> u8 {
    match trace {
        Some(path) => {
            if let Err(e) = fs::write(path, log.to_json_string() + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 1;
            }
            0
        }
        None => {
            if verbose_trace {
                println!("{}", log.to_json_string());
            }
            0
        }
    }
}

fn cmd_eval(
    machine: MachineArg,
    fuel: u64,
    trace: Option<&Path>,
    verbose_trace: bool,
    verbose: bool,
    input: &str,
) -> u8 {
    let term = match check_input(input) {
        Ok(term) => term,
        Err(code) => return code,
    };
    match run_machine(machine, &term, fuel, verbose_trace) {
        Ok((value, log)) => {
            if verbose {
                println!("{}", value_string_verbose(&value));
            } else {
                println!("{}", value_string(&value));
            }
            println!("steps: {}", log.fuel_used);
            write_trace(&log, trace, verbose_trace)
        }
        Err(EvalError::FuelExhausted { fuel, log }) => {
            eprintln!("error: fuel exhausted after {fuel} steps");
            let _ = write_trace(&log, trace, verbose_trace);
            3
        }
        Err(EvalError::ZeroFuel) => {
            // Unreachable behind the clap range, kept for completeness.
            eprintln!("error: fuel budget must be positive");
            2
        }
    }
}

fn parse_goal(goal: &str) -> Result<Ty, u8> {
    parse_type(goal).map_err(|e| {
        eprintln!("{}", render_diagnostic(goal, &e.to_string(), e.span));
        1u8
    })
}

fn generate_corpus(seed: u64, count: usize, depth: usize, goal: &str) -> Result<Vec<Term>, u8> {
    let goal_type = parse_goal(goal)?;
    if count == 0 || depth == 0 {
        eprintln!("error: --count and --depth must be at least 1");
        return Err(1);
    }
    generate_terms(&GenConfig::new(seed, depth, goal_type, count)).map_err(|e| {
        eprintln!("error: {e}");
        1u8
    })
}

fn cmd_diff(
    fuel: u64,
    fuzz: bool,
    seed: u64,
    count: usize,
    depth: usize,
    goal: &str,
    files: &[PathBuf],
) -> u8 {
    let terms = if fuzz {
        match generate_corpus(seed, count, depth, goal) {
            Ok(terms) => terms,
            Err(code) => return code,
        }
    } else {
        if files.is_empty() {
            eprintln!("error: pass term files or use --fuzz");
            return 1;
        }
        let mut terms = Vec::with_capacity(files.len());
        for file in files {
            match check_input(&file.display().to_string()) {
                Ok(term) => terms.push(term),
                Err(code) => return code,
            }
        }
        terms
    };
    let report = run_diff(&terms, fuel);
    println!("{}", report.to_json_string());
    eprintln!("{} of {} terms agree", report.passed, report.entries.len());
    let disagreement = report.entries.iter().any(|e| !e.agree && e.error.is_none());
    if disagreement {
        2
    } else if report.any_fuel_exhausted() {
        3
    } else {
        0
    }
}

fn cmd_fuzz(seed: u64, count: usize, depth: usize, goal: &str, emit: Option<&Path>) -> u8 {
    let terms = match generate_corpus(seed, count, depth, goal) {
        Ok(terms) => terms,
        Err(code) => return code,
    };
    match emit {
        Some(dir) => {
            if let Err(e) = fs::create_dir_all(dir) {
                eprintln!("error: cannot create {}: {e}", dir.display());
                return 1;
            }
            for (i, term) in terms.iter().enumerate() {
                let path = dir.join(format!("term_{i}.lam"));
                if let Err(e) = fs::write(&path, term_string(term, false) + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 1;
                }
            }
            eprintln!("wrote {} terms to {}", terms.len(), dir.display());
        }
        None => {
            for term in &terms {
                println!("{}", term_string(term, false));
            }
        }
    }
    0
}
