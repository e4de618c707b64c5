//! Command-line front end for `machin-core`.
//!
//! [`run_cli`] parses arguments, runs one subcommand and writes either an
//! aligned text table or JSON. Exit codes: 0 success, 1 computation error,
//! 2 usage error.

pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use machin_core::engine::{EngineConfig, DEFAULT_K0_DIVISOR};
use machin_core::numeric::{PrecisionContext, DEFAULT_GUARD_BITS};
use machin_core::Error;

use report::Report;

/// Environment variable selecting the default output format.
pub const FORMAT_ENV: &str = "MACHIN_FORMAT";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "machin",
    version,
    about = "Two-term Machin-like formulas and a digit-doubling pi iteration"
)]
pub struct Cli {
    /// Target precision in bits (subcommand default when omitted).
    #[arg(long, global = true)]
    pub bits: Option<u32>,

    /// Extra working bits on top of --bits.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD_BITS)]
    pub guard_bits: u32,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Output format; overrides MACHIN_FORMAT.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Iterate the doubling engine and tabulate k and correct digits.
    Run {
        #[arg(long, default_value_t = 12)]
        iterations: u64,
        /// Start from alpha_k at this k (taken from the radicals).
        #[arg(long)]
        seed_k: Option<u64>,
        /// d in k0 = floor((2 - 1/d) k).
        #[arg(long, default_value_t = DEFAULT_K0_DIVISOR)]
        divisor: u64,
    },
    /// Print pi to COUNT certified decimals.
    Digits {
        #[arg(long)]
        count: usize,
    },
    /// Table of alpha_k for k = 2..=MAX_K.
    Alpha {
        #[arg(long, default_value_t = 25)]
        max_k: u64,
        /// Use the nested-radical oracle instead of the bits of 1/pi.
        #[arg(long)]
        oracle: bool,
    },
    /// The closing constant beta_k of the two-term formula.
    Beta {
        #[arg(long)]
        k: u64,
    },
    /// Two-term formula for k, optionally split into integer terms.
    Formula {
        #[arg(long)]
        k: u64,
        /// Number of integer splits of the closing term.
        #[arg(long)]
        terms: Option<usize>,
        /// Replace an integer closing term by N terms.
        #[arg(long)]
        terminal: Option<usize>,
    },
    /// Binary expansion of 1/pi read off the parities of alpha_k.
    BinaryRecip {
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
    },
    /// Digits of pi from the truncated tangent kernel, n = 1..=N_MAX.
    TanBench {
        #[arg(long, default_value_t = 7323)]
        k: u64,
        #[arg(long, default_value_t = 100)]
        sigma: u64,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// Check the named formulas against pi.
    Verify,
}

fn ctx_for(cli: &Cli, default_bits: u32) -> Result<PrecisionContext, Error> {
    PrecisionContext::with_guard(cli.bits.unwrap_or(default_bits), cli.guard_bits)
}

fn format_of(cli: &Cli) -> OutputFormat {
    if cli.json {
        return OutputFormat::Json;
    }
    if let Some(f) = cli.format {
        return f;
    }
    match std::env::var(FORMAT_ENV)
        .ok()
        .as_deref()
        .map(str::to_ascii_lowercase)
        .as_deref()
    {
        Some("json") => OutputFormat::Json,
        _ => OutputFormat::Text,
    }
}

/// Runs the parsed command; `Ok(false)` means it ran but a check failed.
pub fn execute(cli: &Cli) -> Result<(Report, bool), Error> {
    let report = match &cli.command {
        Command::Run {
            iterations,
            seed_k,
            divisor,
        } => {
            let mut config = EngineConfig {
                divisor: *divisor,
                guard_bits: cli.guard_bits,
                ..EngineConfig::default()
            };
            if let Some(k) = seed_k {
                config.seed_k = *k;
                config.seed_alpha = None;
            }
            report::run(*iterations, config)?
        }
        Command::Digits { count } => report::digits(*count)?,
        Command::Alpha { max_k, oracle } => report::alpha(*max_k, *oracle, cli.bits)?,
        Command::Beta { k } => report::beta(*k)?,
        Command::Formula { k, terms, terminal } => report::formula(*k, *terms, *terminal, &ctx_for(cli, 1024)?)?,
        Command::BinaryRecip { k } => report::binary_recip(k)?,
        Command::TanBench { k, sigma, n_max } => report::tan_bench(*k, *sigma, *n_max, &ctx_for(cli, 3072)?)?,
        Command::Verify => return report::verify(&ctx_for(cli, 1024)?),
    };
    Ok((report, true))
}

fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => format!("{}\n", report.text),
        OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(&report.json).unwrap()),
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let (report, ok) = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 1;
        }
    };
    let body = render(&report, format_of(&cli));
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &body).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 1;
    }
    if !ok {
        let _ = writeln!(stderr, "error: verification failed");
        return 1;
    }
    0
}
