//! `formalize`: list, check, evaluate, self-test and serve exercises.
//!
//! Exit codes: 0 success or a correct answer, 1 graded but not correct,
//! 2 rejected input, 3 usage or I/O error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use formalize_core::grid::{eval_extension, GridCoord, DEFAULT_DEPTH_CAP};
use formalize_core::logic::{parse, Dialect};
use formalize_core::store::{load_pack, selftest, Exercise, ExercisePack};
use formalize_core::{Category, Rejection};
use formalize_service::{check_exercise, Catalog, CheckResponse, Cors};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_CORRECT: i32 = 1;
pub const EXIT_REJECTED: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "formalize",
    version,
    about = "Grade first-order formalization exercises"
)]
struct Cli {
    /// Print the service JSON schema instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Exercise pack file to use instead of the builtin packs; repeatable.
    #[arg(long = "pack", value_name = "PATH", global = true)]
    packs: Vec<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List exercise ids and types.
    List,
    /// Grade a formula against an exercise.
    Check {
        #[arg(long)]
        exercise: String,
        #[arg(long)]
        formula: String,
    },
    /// Print the squares a grid formula defines.
    EvalGrid {
        #[arg(long)]
        formula: String,
        /// Take marked squares and depth cap from this grid exercise.
        #[arg(long)]
        exercise: Option<String>,
    },
    /// Re-grade every stored solution.
    Selftest,
    /// Run the HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        /// Allowed browser origin, or `*` for any.
        #[arg(long)]
        cors: Option<String>,
    },
}

struct Failure(i32, String);

type Outcome = Result<i32, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn load(paths: &[PathBuf]) -> Result<Vec<ExercisePack>, Failure> {
    if paths.is_empty() {
        return Ok(formalize_core::builtin_packs());
    }
    paths
        .iter()
        .map(|p| load_pack(p).map_err(|e| usage(e.to_string())))
        .collect()
}

fn catalog(paths: &[PathBuf]) -> Result<Catalog, Failure> {
    Catalog::new(load(paths)?).map_err(|e| usage(e.to_string()))
}

fn json_line(out: &mut dyn Write, value: &impl serde::Serialize) -> std::io::Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string(value).expect("serializable")
    )
}

fn exit_for(category: Category) -> i32 {
    match category {
        Category::Correct => EXIT_OK,
        Category::Rejected => EXIT_REJECTED,
        _ => EXIT_NOT_CORRECT,
    }
}

fn list(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let catalog = catalog(&cli.packs)?;
    if cli.json {
        json_line(out, &catalog.summaries()).map_err(io)?;
    } else {
        for ex in catalog.exercises() {
            writeln!(out, "{}\t{}", ex.id(), ex.kind()).map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

fn write_response(out: &mut dyn Write, r: &CheckResponse) -> std::io::Result<()> {
    writeln!(out, "category: {}", r.category)?;
    writeln!(out, "message: {}", r.message)?;
    if let Some(reason) = &r.reason {
        writeln!(out, "reason: {}", reason.kind)?;
        if let Some(offset) = reason.offset {
            writeln!(out, "offset: {offset}")?;
        }
    }
    if let Some(c) = &r.coloring {
        writeln!(
            out,
            "green: {}  red: {}  yellow: {}",
            c.green.len(),
            c.red.len(),
            c.yellow.len()
        )?;
        write!(out, "{}", c.render())?;
    }
    Ok(())
}

fn check(cli: &Cli, id: &str, formula: &str, out: &mut dyn Write) -> Outcome {
    let catalog = catalog(&cli.packs)?;
    let ex = catalog
        .get(id)
        .ok_or_else(|| usage(format!("unknown exercise {id:?}")))?;
    let response = check_exercise(ex, formula);
    if cli.json {
        json_line(out, &response).map_err(io)?;
    } else {
        write_response(out, &response).map_err(io)?;
    }
    Ok(exit_for(response.category))
}

fn eval_grid(cli: &Cli, formula: &str, exercise: Option<&str>, out: &mut dyn Write) -> Outcome {
    let (constants, depth_cap) = match exercise {
        None => (
            BTreeMap::from([('u', GridCoord::CENTER)]),
            DEFAULT_DEPTH_CAP,
        ),
        Some(id) => {
            let catalog = catalog(&cli.packs)?;
            match catalog.get(id) {
                Some(Exercise::Grid(g)) => (g.constants.clone(), g.depth_cap),
                Some(_) => return Err(usage(format!("{id:?} is not a grid exercise"))),
                None => return Err(usage(format!("unknown exercise {id:?}"))),
            }
        }
    };
    let rejected = |r: Rejection| Failure(EXIT_REJECTED, format!("{}: {r}", r.kind()));
    let f = parse(formula, Dialect::Grid).map_err(|e| rejected(Rejection::Parse(e)))?;
    let free: std::collections::BTreeSet<char> = f
        .free_symbols()
        .into_iter()
        .filter(|c| !constants.contains_key(c))
        .collect();
    if free.len() != 1 {
        return Err(rejected(Rejection::FreeVariableCount { found: free }));
    }
    let var = *free.first().expect("one variable");
    if let Some(name) = f
        .bound_variables()
        .into_iter()
        .find(|v| constants.contains_key(v))
    {
        return Err(rejected(Rejection::ConstantShadow { name }));
    }
    let set = eval_extension(&constants, &f, var, depth_cap).map_err(|e| match e {
        formalize_core::grid::EvalError::DepthCapExceeded { depth, cap } => {
            rejected(Rejection::DepthCapExceeded { depth, cap })
        }
        other => usage(other.to_string()),
    })?;
    json_line(out, &set).map_err(io)?;
    Ok(EXIT_OK)
}

fn run_selftest(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let reports: Vec<_> = load(&cli.packs)?.iter().map(selftest).collect();
    if cli.json {
        json_line(out, &reports).map_err(io)?;
    } else {
        for report in &reports {
            for e in &report.entries {
                if e.passed {
                    writeln!(out, "PASS {}", e.id).map_err(io)?;
                } else {
                    writeln!(out, "FAIL {}: {}", e.id, e.failures.join("; ")).map_err(io)?;
                }
            }
        }
    }
    Ok(if reports.iter().all(|r| r.passed()) {
        EXIT_OK
    } else {
        EXIT_NOT_CORRECT
    })
}

fn serve(cli: &Cli, host: IpAddr, port: u16, cors: Option<&str>, out: &mut dyn Write) -> Outcome {
    let catalog = Arc::new(catalog(&cli.packs)?);
    let addr = SocketAddr::new(host, port);
    let runtime = tokio::runtime::Runtime::new().map_err(io)?;
    writeln!(out, "listening on http://{addr}").map_err(io)?;
    out.flush().map_err(io)?;
    runtime
        .block_on(formalize_service::serve(addr, catalog, &Cors::parse(cors)))
        .map_err(io)?;
    Ok(EXIT_OK)
}

fn io(e: std::io::Error) -> Failure {
    usage(e.to_string())
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = match &cli.command {
        Command::List => list(&cli, out),
        Command::Check { exercise, formula } => check(&cli, exercise, formula, out),
        Command::EvalGrid { formula, exercise } => {
            eval_grid(&cli, formula, exercise.as_deref(), out)
        }
        Command::Selftest => run_selftest(&cli, out),
        Command::Serve { port, host, cors } => serve(&cli, *host, *port, cors.as_deref(), out),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "{msg}");
            code
        }
    }
}
