//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use leelp_core::lp::{Arithmetic, Method};

use crate::cache::TableCache;
use crate::dump::{dump_text, lee_number_dump};
use crate::error::{CliError, CliResult, EXIT_OK, EXIT_USAGE};
use crate::format::read_generator;
use crate::report::bound;
use crate::search::search;
use crate::table::{compute_table, TableFormat};
use crate::verify::verify_code;

#[derive(Debug, Parser)]
#[command(name = "leelp", version, about = "Linear programming bounds for Lee-metric codes")]
pub struct Cli {
    /// Ignore the table cache directory even if LEELP_CACHE_DIR is set.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Theorem1,
    Refined,
    DualRefined,
    Compact,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Theorem1 => vec![Method::Theorem1],
            MethodArg::Refined => vec![Method::Refined],
            MethodArg::DualRefined => vec![Method::DualRefined],
            MethodArg::Compact => vec![Method::Compact],
            MethodArg::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ArithmeticArg {
    Exact,
    Float,
}

impl From<ArithmeticArg> for Arithmetic {
    fn from(a: ArithmeticArg) -> Arithmetic {
        match a {
            ArithmeticArg::Exact => Arithmetic::Exact,
            ArithmeticArg::Float => Arithmetic::Float,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormatArg {
    Csv,
    Json,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DumpFormatArg {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Upper bound on the size of a code with minimum Lee distance d.
    Bound {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value = "compact")]
        method: MethodArg,
        /// Defaults to exact for compact, float otherwise.
        #[arg(long, value_enum)]
        arithmetic: Option<ArithmeticArg>,
        #[arg(long)]
        json: bool,
    },
    /// Grid of k-bounds over ranges of n and d.
    Table {
        #[arg(long)]
        q: u32,
        /// `a..b` (inclusive), `a-b`, or a comma list.
        #[arg(long, value_parser = parse_range)]
        n: Vec<Vec<u32>>,
        #[arg(long, value_parser = parse_range)]
        d: Vec<Vec<u32>>,
        #[arg(long, value_enum, default_value = "compact")]
        method: MethodArg,
        #[arg(long, value_enum)]
        arithmetic: Option<ArithmeticArg>,
        #[arg(long, value_enum, default_value = "md")]
        format: TableFormatArg,
    },
    /// Distance, distribution checks and LP feasibility of a generator matrix.
    Verify {
        file: PathBuf,
        /// Claimed minimum distance.
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Lee-number table and compact orbit matrix.
    Leenumbers {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: DumpFormatArg,
    },
    /// Seeded random search for a linear code reaching distance d.
    Search {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Accepts `a..b`, `a..=b`, `a-b` (all inclusive), `a` or `a,b,c`.
pub fn parse_range(text: &str) -> Result<Vec<u32>, String> {
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| format!("not a number: {s:?}"));
    let mut out = Vec::new();
    for part in text.split(',') {
        let bounds = part
            .split_once("..=")
            .or_else(|| part.split_once(".."))
            .or_else(|| part.split_once('-'));
        match bounds {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    Ok(out)
}

fn flatten(v: Vec<Vec<u32>>) -> Vec<u32> {
    let mut out: Vec<u32> = v.into_iter().flatten().collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn single_method(m: MethodArg) -> CliResult<Method> {
    match m.methods()[..] {
        [one] => Ok(one),
        _ => Err(CliError::Usage("this command takes a single method".into())),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    let cache = if cli.no_cache { TableCache::disabled() } else { TableCache::from_env() };
    match cli.command {
        Command::Bound { q, n, d, method, arithmetic, json } => {
            let arithmetic = arithmetic.map(Arithmetic::from);
            let reports =
                method.methods().into_iter().map(|m| bound(q, n, d, m, arithmetic, &cache)).collect::<CliResult<Vec<_>>>()?;
            let text = match (json, method) {
                (true, MethodArg::All) => serde_json::to_string_pretty(&reports)? + "\n",
                (true, _) => serde_json::to_string_pretty(&reports[0])? + "\n",
                (false, _) => reports.iter().map(|r| r.to_text()).collect(),
            };
            emit(out, &text)
        }
        Command::Table { q, n, d, method, arithmetic, format } => {
            let n_values: Vec<usize> = flatten(n).into_iter().map(|x| x as usize).collect();
            let doc = compute_table(q, &n_values, &flatten(d), single_method(method)?, arithmetic.map(Into::into), &cache)?;
            let format = match format {
                TableFormatArg::Csv => TableFormat::Csv,
                TableFormatArg::Json => TableFormat::Json,
                TableFormatArg::Md => TableFormat::Markdown,
            };
            emit(out, &doc.render(format)?)
        }
        Command::Verify { file, d, json } => {
            let g = read_generator(&file)?;
            let report = verify_code(&g, d, &cache)?;
            let text = if json { serde_json::to_string_pretty(&report)? + "\n" } else { report.to_text() };
            emit(out, &text)
        }
        Command::Leenumbers { q, n, format } => {
            let text = match format {
                DumpFormatArg::Text => dump_text(q, n, &cache)?,
                DumpFormatArg::Json => serde_json::to_string(&lee_number_dump(q, n, &cache)?)? + "\n",
            };
            emit(out, &text)
        }
        Command::Search { q, n, k, d, trials, seed, json } => {
            let report = search(q, n, k, d, trials, seed)?;
            let text = if json { serde_json::to_string_pretty(&report)? + "\n" } else { report.to_text() };
            emit(out, &text)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Errors go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "leelp: {e}");
            e.exit_code()
        }
    }
}
