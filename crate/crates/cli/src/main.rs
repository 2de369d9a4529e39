use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use topomarkov::cf_tree::{gamma, periodic_value};
use topomarkov::cohn::{index, trace_map};
use topomarkov::topograph::DEFAULT_MAX_DEPTH;
use topomarkov::verify::{run_suite, Suite, SuiteConfig};
use topomarkov::{
    build_tree_export, cf_eval, cohn_at, left_companion, locate, markov_cf, markov_triple_at, mu,
    Error, Fraction, TreeKind, TreeLimits,
};

/// Depth cap used when no flag or environment override is given.
const DEFAULT_DEPTH_CAP: usize = 12;

#[derive(Parser)]
#[command(
    name = "topomarkov",
    version,
    about = "Markov numbers, Cohn matrices and continued fractions on the Conway topograph"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Markov fraction mu(t), its tree path and Markov number
    Mu(Point),
    /// Markov triple of the regions meeting at t
    Triple(Point),
    /// Cohn matrix C_t(a), its index and trace/3
    Cohn {
        #[command(flatten)]
        point: Point,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        a: i64,
    },
    /// Continued fraction of 2 + mu(t), its periodic value or a left companion
    Cf {
        #[command(flatten)]
        point: Point,
        /// Print the purely periodic expansion and its exact value
        #[arg(long, conflicts_with = "companion")]
        periodic: bool,
        /// Print the left companion for the given power m >= 1
        #[arg(long, value_name = "M")]
        companion: Option<usize>,
    },
    /// Enumerate a tree and export it
    Tree {
        kind: TreeKind,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Family parameter for the cohn tree
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Output file; standard output when absent
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Run invariant suites
    Verify {
        /// Suites to run; all when absent
        #[arg(long = "suite", value_name = "SUITE")]
        suites: Vec<Suite>,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Family parameters for thm31
        #[arg(long = "a", value_name = "A", allow_hyphen_values = true)]
        a_values: Vec<i64>,
        /// Largest companion power
        #[arg(long, default_value_t = 8)]
        max_power: u32,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        run: RunOpts,
    },
}

#[derive(Args)]
struct Point {
    /// Coordinate "p/q" (or "n") in [0, 1]
    t: Fraction,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RunOpts {
    /// Enumerate tree levels in parallel; output is identical
    #[arg(long)]
    parallel: bool,
    /// Largest depth accepted
    #[arg(long, env = "TOPOMARKOV_MAX_DEPTH", default_value_t = DEFAULT_DEPTH_CAP)]
    max_depth: usize,
}

impl RunOpts {
    fn limits(&self) -> Result<TreeLimits, Failure> {
        if self.max_depth > DEFAULT_MAX_DEPTH {
            return Err(Failure::Usage(format!(
                "--max-depth {} exceeds the hard cap of {DEFAULT_MAX_DEPTH}",
                self.max_depth
            )));
        }
        Ok(TreeLimits {
            max_depth: self.max_depth,
            parallel: self.parallel,
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

enum Failure {
    /// Bad input: exit code 2.
    Usage(String),
    /// I/O error or failed verification: exit code 1.
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
    }
}

fn path_of(t: &Fraction) -> Option<String> {
    locate(t).ok().map(|p| p.to_string())
}

fn emit(json: bool, value: Value, text: String) -> Result<(), Failure> {
    let out = if json {
        serde_json::to_string_pretty(&value).expect("serializable") + "\n"
    } else {
        text
    };
    io::stdout()
        .write_all(out.as_bytes())
        .map_err(|e| Failure::Run(e.to_string()))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Mu(Point { t, json }) => {
            let m = mu(&t)?;
            let path = path_of(&t);
            let q = m.denom().to_string();
            emit(
                json,
                json!({ "t": t, "mu": m, "path": path, "markov_number": q }),
                format!(
                    "mu({t}) = {m}\npath: {}\nmarkov number: {q}\n",
                    path.as_deref().unwrap_or("(seed)")
                ),
            )
        }
        Command::Triple(Point { t, json }) => {
            let path = locate(&t)?;
            let triple = markov_triple_at(&path)?;
            emit(
                json,
                json!({ "t": t, "path": path, "triple": triple }),
                format!("{triple}\npath: {path}\n"),
            )
        }
        Command::Cohn {
            point: Point { t, json },
            a,
        } => {
            let c = cohn_at(&t, a)?;
            let idx = index(&c)?;
            let m3 = trace_map(&c)?;
            emit(
                json,
                json!({
                    "t": t,
                    "a": a,
                    "matrix": c.matrix(),
                    "index": idx,
                    "trace_map": m3.to_string(),
                }),
                format!("{c}\nindex: {idx}\ntrace/3: {m3}\n"),
            )
        }
        Command::Cf {
            point: Point { t, json },
            periodic,
            companion,
        } => {
            let word = markov_cf(&t)?;
            if let Some(m) = companion {
                let value = left_companion(&t, m)?;
                emit(
                    json,
                    json!({ "t": t, "word": word.to_string(), "m": m, "companion": value }),
                    format!("gamma_{m}^-({t}) = {value}\n"),
                )
            } else if periodic {
                let x = periodic_value(&word)?;
                let g = gamma(&mu(&t)?)?;
                if !x.value_eq(&g) {
                    return Err(Failure::Run(format!("periodic value {x} differs from {g}")));
                }
                emit(
                    json,
                    json!({ "t": t, "word": word.periodic().to_string(), "value": x, "display": x.to_string() }),
                    format!("{} = {x}\n", word.periodic()),
                )
            } else {
                let value = cf_eval(&word);
                emit(
                    json,
                    json!({ "t": t, "word": word.to_string(), "value": value }),
                    format!("{word} = {value}\n"),
                )
            }
        }
        Command::Tree {
            kind,
            depth,
            a,
            format,
            out,
            run,
        } => {
            let limits = run.limits()?;
            let a = match kind {
                TreeKind::Cohn => Some(a.unwrap_or(0)),
                _ if a.is_some() => {
                    return Err(Failure::Usage(format!(
                        "--a only applies to the cohn tree, not {kind}"
                    )))
                }
                _ => None,
            };
            let export = build_tree_export(kind, depth, a, limits)?;
            let body = match format {
                Format::Json => export.to_json()?,
                Format::Csv => export.to_csv()?,
                Format::Dot => export.to_dot(),
            };
            match out {
                Some(path) => fs::write(&path, body)
                    .map_err(|e| Failure::Run(format!("cannot write {}: {e}", path.display()))),
                None => io::stdout()
                    .write_all(body.as_bytes())
                    .map_err(|e| Failure::Run(e.to_string())),
            }
        }
        Command::Verify {
            suites,
            depth,
            a_values,
            max_power,
            json,
            run,
        } => {
            let limits = run.limits()?;
            let suites = if suites.is_empty() {
                Suite::ALL.to_vec()
            } else {
                suites
            };
            let mut config = SuiteConfig {
                depth,
                max_power,
                limits,
                ..SuiteConfig::default()
            };
            if !a_values.is_empty() {
                config.a_values = a_values;
            }
            let mut reports = Vec::with_capacity(suites.len());
            for suite in suites {
                reports.push(run_suite(suite, &config)?);
            }
            let all_pass = reports.iter().all(|r| r.passed);
            let text: String = reports.iter().map(|r| r.to_string()).collect();
            emit(json, json!(reports), text)?;
            if all_pass {
                Ok(())
            } else {
                Err(Failure::Run(String::new()))
            }
        }
    }
}
