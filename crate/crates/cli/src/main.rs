use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ringlab::error::{CliError, EXIT_INPUT};
use ringlab::{emit_report, parse_spec, run_command, Command, Format, RunOptions};
use ringlab_core::limits::{DEFAULT_ENUMERATION_CAP, DEFAULT_ORDER_CAP, DEFAULT_SEARCH_BUDGET};
use ringlab_core::Limits;

#[derive(Parser)]
#[command(name = "ringlab", version, about = "Finite ring extensions: ideals, radicals, primes")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// Spec file to read.
    specfile: PathBuf,
    /// Restrict the command to one declared object.
    #[arg(long)]
    object: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Largest order any constructed ring may have.
    #[arg(long, env = "RINGLAB_ORDER_CAP", default_value_t = DEFAULT_ORDER_CAP)]
    order_cap: usize,
    /// Largest order whose ideal lattice is enumerated.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    enumeration_cap: usize,
    /// Node budget for each homomorphism search.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    search_budget: u64,
    /// Fill in `elapsed_ms` (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build every declaration and report axiom violations.
    Check(Common),
    /// Jacobson radicals.
    Radical(Common),
    /// Upper nil radicals.
    Nilradical(Common),
    /// Ideal lists.
    Ideals {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        left: bool,
        #[arg(long)]
        prime: bool,
        #[arg(long)]
        maximal: bool,
        /// Retraction used to label prime ideals: a declared map or `auto`.
        #[arg(long)]
        phi: Option<String>,
    },
    /// Describe every ideal of each extension by its (A, Z, J, phi) tuple.
    Decompose {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        left: bool,
    },
    /// Classify prime and maximal ideals through a retraction.
    Classify {
        #[command(flatten)]
        common: Common,
        /// A declared map, or `auto` (the default) for the first retraction found.
        #[arg(long)]
        phi: Option<String>,
    },
    /// Run verification suites on the document and the built-in catalog.
    VerifyTheorems {
        #[command(flatten)]
        common: Common,
        /// One of rad, nil, ideal-correspondence, nil-ideals, semiprime,
        /// prime, classification, psi, left. Default: all.
        #[arg(long)]
        suite: Option<String>,
    },
}

fn split(cmd: Cmd) -> (Common, Command) {
    match cmd {
        Cmd::Check(c) => (c, Command::Check),
        Cmd::Radical(c) => (c, Command::Radical),
        Cmd::Nilradical(c) => (c, Command::Nilradical),
        Cmd::Ideals {
            common,
            left,
            prime,
            maximal,
            phi,
        } => (
            common,
            Command::Ideals {
                left,
                prime,
                maximal,
                phi,
            },
        ),
        Cmd::Decompose { common, left } => (common, Command::Decompose { left }),
        Cmd::Classify { common, phi } => (common, Command::Classify { phi }),
        Cmd::VerifyTheorems { common, suite } => (common, Command::VerifyTheorems { suite }),
    }
}

fn run(common: Common, cmd: Command) -> Result<i32, CliError> {
    let path = common.specfile.display().to_string();
    let text = std::fs::read_to_string(&common.specfile).map_err(|e| CliError::Io {
        path: path.clone(),
        message: e.to_string(),
    })?;
    let doc = parse_spec(&text)?;
    let opts = RunOptions {
        object: common.object,
        limits: Limits {
            order_cap: common.order_cap,
            enumeration_cap: common.enumeration_cap,
            search_budget: common.search_budget,
        },
        timing: common.timing,
        source: path,
    };
    let outcome = run_command(&doc, &cmd, &opts)?;
    let bytes = emit_report(&outcome.report, common.format);
    let mut out = std::io::stdout().lock();
    out.write_all(&bytes)
        .and_then(|_| out.flush())
        .map_err(|e| CliError::Io {
            path: "stdout".into(),
            message: e.to_string(),
        })?;
    Ok(outcome.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            return ExitCode::from(code as u8);
        }
    };
    let (common, cmd) = split(cli.command);
    match run(common, cmd) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
