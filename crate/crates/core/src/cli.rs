//! Command-line driver: `check`, `flatten`, `graph` and `dump` over a `.tpc` file.

use crate::elaborator::{elaborate, ElabError, Elaboration};
use crate::error::Error;
use crate::kernel::Name;
use crate::syntax::parse_module;
use clap::{Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "tpc", version, about = "Elaborate and flatten theory presentation combinators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the output to this file instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse, type-check and elaborate every definition.
    Check { input: PathBuf },
    /// Print the canonical flattened presentation of one definition.
    Flatten {
        input: PathBuf,
        #[arg(long)]
        target: String,
    },
    /// Print the theory graph.
    Graph {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// Print every definition with its type and denotations.
    Dump { input: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Text,
}

/// Exit status: 0 success, 1 user error, 2 internal invariant violation.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USER: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

struct Failure {
    code: i32,
    report: String,
}

impl Failure {
    fn user(report: String) -> Failure {
        Failure { code: EXIT_USER, report }
    }
}

fn status_of(e: &Error) -> i32 {
    if matches!(e, Error::Internal(_)) {
        EXIT_INTERNAL
    } else {
        EXIT_USER
    }
}

fn report(file: &Path, e: &Error) -> Failure {
    let loc = match e.pos() {
        Some(p) => format!("{}:{p}", file.display()),
        None => file.display().to_string(),
    };
    Failure { code: status_of(e), report: format!("{loc}: error[{}]: {e}", e.code()) }
}

fn report_elab(file: &Path, e: &ElabError) -> Failure {
    let pos = e.error.pos().unwrap_or(e.pos);
    Failure { code: status_of(&e.error), report: format!("{}:{pos}: error[{}]: {e}", file.display(), e.error.code()) }
}

fn load(file: &Path) -> Result<Elaboration, Failure> {
    let src =
        std::fs::read_to_string(file).map_err(|e| Failure::user(format!("{}: error[Io]: {e}", file.display())))?;
    let module = parse_module(&src).map_err(|e| report(file, &e))?;
    elaborate(&module).map_err(|e| report_elab(file, &e))
}

fn check_collation() -> Result<(), Failure> {
    match std::env::var("TPC_COLLATION") {
        Ok(v) if v != "codepoint" => {
            Err(Failure::user(format!("error[Config]: TPC_COLLATION must be `codepoint`, found `{v}`")))
        }
        _ => Ok(()),
    }
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    check_collation()?;
    match &cli.command {
        Command::Check { input } => {
            let el = load(input)?;
            Ok(format!("ok: {} definitions\n", el.env.len()))
        }
        Command::Flatten { input, target } => {
            let el = load(input)?;
            el.flatten(&Name::new(target.as_str())).map_err(|e| report(input, &e))
        }
        Command::Graph { input, format } => {
            let el = load(input)?;
            Ok(match format {
                GraphFormat::Dot => el.graph.to_dot(),
                GraphFormat::Text => el.graph.to_text(),
            })
        }
        Command::Dump { input } => Ok(load(input)?.dump()),
    }
}

/// Runs the CLI with explicit output streams and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USER } else { EXIT_OK };
        }
    };
    let text = match execute(&cli) {
        Ok(t) => t,
        Err(f) => {
            let _ = writeln!(err, "{}", f.report);
            return f.code;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text.as_bytes()).map_err(|e| format!("{}: error[Io]: {e}", path.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| format!("error[Io]: {e}")),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(msg) => {
            let _ = writeln!(err, "{msg}");
            EXIT_USER
        }
    }
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
