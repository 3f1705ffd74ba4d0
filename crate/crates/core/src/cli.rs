//! Command-line front end. Reports are JSON on stdout; diagnostics go to stderr.
//!
//! Exit codes: 0 definite result, 2 bad input, 3 undecided verdict, 4 no TCP
//! solution found.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::budget::{Budget, Tolerances};
use crate::classes::{self, ClassId, Status};
use crate::error::{Error, Result};
use crate::spectra;
use crate::tcp::{self, TcpInstance};
use crate::tensor::Tensor;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;
pub const EXIT_NO_SOLUTION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "tcpkit", version, about = "Structured tensor classes and tensor complementarity problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide membership of the tensor in a class.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        class: String,
    },
    /// Print the first failure witness for a class, or null.
    Witness {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        class: String,
    },
    /// Real H- and Z-eigenpairs.
    Eig {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = KindArg::Both)]
        kind: KindArg,
    },
    /// Solve TCP(q, A).
    Solve {
        #[command(flatten)]
        common: Common,
        /// Comma-separated entries of q.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// List the whole solution set instead of one solution.
        #[arg(long)]
        enumerate: bool,
    },
    /// Classify against every class and check the verdicts for consistency.
    Audit {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    H,
    Z,
    Both,
}

#[derive(Debug, Args)]
struct Common {
    /// Tensor file (JSON).
    #[arg(long)]
    tensor: PathBuf,
    #[arg(long = "budget-starts", visible_alias = "budget", default_value_t = 32)]
    budget_starts: usize,
    #[arg(long = "budget-iters", default_value_t = 200)]
    budget_iters: usize,
    #[arg(long = "time-ms")]
    time_ms: Option<u64>,
    #[arg(long, env = "TCPKIT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Tolerance override KEY=VALUE with KEY one of margin, tcp, eig, dedup.
    #[arg(long = "tol", value_name = "KEY=VAL")]
    tol: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Classify,
    Witness,
    Eig,
    Solve,
    Audit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EigKind {
    H,
    Z,
    Both,
}

/// A fully validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub tensor_path: PathBuf,
    pub command: CommandKind,
    pub class: Option<ClassId>,
    pub q: Option<Vec<f64>>,
    pub enumerate: bool,
    pub eig_kind: EigKind,
    pub budget: Budget,
}

/// Result of a CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn parse_q(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| Error::Input(format!("bad q entry {s:?}: {e}"))))
        .collect()
}

fn budget_from(common: &Common) -> Result<Budget> {
    let mut tol = Tolerances::default();
    for kv in &common.tol {
        let (k, v) = kv.split_once('=').ok_or_else(|| Error::Input(format!("--tol expects KEY=VAL, got {kv:?}")))?;
        let v: f64 = v.trim().parse().map_err(|e| Error::Input(format!("bad tolerance value {v:?}: {e}")))?;
        tol.set(k.trim(), v)?;
    }
    let budget = Budget {
        max_starts: common.budget_starts,
        max_iters: common.budget_iters,
        time_ms: common.time_ms,
        seed: common.seed,
        threads: common.threads,
        tol,
    };
    budget.validate()?;
    Ok(budget)
}

fn into_config(cli: Cli) -> Result<RunConfig> {
    let base = |common: &Common, command| -> Result<RunConfig> {
        Ok(RunConfig {
            tensor_path: common.tensor.clone(),
            command,
            class: None,
            q: None,
            enumerate: false,
            eig_kind: EigKind::Both,
            budget: budget_from(common)?,
        })
    };
    Ok(match cli.command {
        Command::Classify { common, class } => {
            RunConfig { class: Some(class.parse()?), ..base(&common, CommandKind::Classify)? }
        }
        Command::Witness { common, class } => {
            RunConfig { class: Some(class.parse()?), ..base(&common, CommandKind::Witness)? }
        }
        Command::Eig { common, kind } => {
            let eig_kind = match kind {
                KindArg::H => EigKind::H,
                KindArg::Z => EigKind::Z,
                KindArg::Both => EigKind::Both,
            };
            RunConfig { eig_kind, ..base(&common, CommandKind::Eig)? }
        }
        Command::Solve { common, q, enumerate } => {
            RunConfig { q: Some(parse_q(&q)?), enumerate, ..base(&common, CommandKind::Solve)? }
        }
        Command::Audit { common } => base(&common, CommandKind::Audit)?,
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

/// Runs a validated configuration, returning the exit code and the report.
pub fn execute(config: &RunConfig) -> Result<(i32, Value)> {
    let a = crate::io::read_tensor(&config.tensor_path)?;
    let budget = &config.budget;
    let (code, result) = match config.command {
        CommandKind::Classify => {
            let v = classes::classify(&a, config.class.expect("class"), budget)?;
            let code = if v.status == Status::Unknown { EXIT_UNKNOWN } else { EXIT_OK };
            (code, to_value(&v))
        }
        CommandKind::Witness => {
            let class = config.class.expect("class");
            let w = classes::witness_search(&a, class, budget)?;
            let code = if w.is_none() && a.dim() > 2 { EXIT_UNKNOWN } else { EXIT_OK };
            (code, to_value(&w))
        }
        CommandKind::Eig => {
            let mut pairs = Vec::new();
            if config.eig_kind != EigKind::Z {
                pairs.extend(spectra::h_eigenpairs(&a, budget)?);
            }
            if config.eig_kind != EigKind::H {
                pairs.extend(spectra::z_eigenpairs(&a, budget)?);
            }
            (EXIT_OK, to_value(&pairs))
        }
        CommandKind::Solve => solve_report(&a, config)?,
        CommandKind::Audit => (EXIT_OK, audit_report(&a, budget)?),
    };
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": config.command,
        "seed": budget.seed,
        "budget": budget,
        "result": result,
    });
    Ok((code, report))
}

fn solve_report(a: &Tensor, config: &RunConfig) -> Result<(i32, Value)> {
    let budget = &config.budget;
    let inst = TcpInstance::new(a.clone(), config.q.clone().expect("q"))?;
    let bound = tcp::boundedness_report(&inst, budget)?;
    let mut diagnostics = json!({
        "r0_verdict": bound.r0,
        "bound": bound.max_norm,
        "conclusion": bound.conclusion,
    });
    let solutions = if config.enumerate {
        let en = tcp::enumerate_solutions(&inst, budget)?;
        diagnostics["enumeration_method"] = json!(en.method);
        diagnostics["enumeration_complete"] = json!(en.complete);
        en.solutions
    } else {
        let out = tcp::solve(&inst, budget)?;
        diagnostics["diverged"] = json!(out.diverged);
        if let Some(trace) = &out.divergence_trace {
            diagnostics["divergence_trace"] = to_value(trace);
            diagnostics["er_witness_from_trace"] = to_value(&tcp::extract_er_witness(trace, a).ok().flatten());
        }
        out.solution.into_iter().collect()
    };
    let code = if solutions.is_empty() { EXIT_NO_SOLUTION } else { EXIT_OK };
    Ok((code, json!({ "solutions": solutions, "diagnostics": diagnostics })))
}

fn audit_report(a: &Tensor, budget: &Budget) -> Result<Value> {
    let mut verdicts = BTreeMap::new();
    for class in ClassId::ALL {
        verdicts.insert(class, classes::classify(a, class, budget)?);
    }
    let implications = classes::implication_audit(a, &verdicts);
    let heredity = classes::heredity_violations(a, verdicts[&ClassId::ER].status, budget)?;
    let table: BTreeMap<&str, Status> = verdicts.iter().map(|(c, v)| (c.name(), v.status)).collect();
    let verdicts: BTreeMap<&str, _> = verdicts.iter().map(|(c, v)| (c.name(), v)).collect();
    Ok(json!({
        "table": table,
        "verdicts": verdicts,
        "implication_violations": implications,
        "heredity_violations": heredity,
    }))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let result = into_config(cli).and_then(|config| execute(&config));
    match result {
        Ok((code, report)) => {
            let mut stdout = serde_json::to_string_pretty(&report).expect("report serializes");
            stdout.push('\n');
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("tcpkit: {e}\n") },
    }
}
