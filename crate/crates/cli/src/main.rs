use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::Failure;

/// Realizations, weight adjacency matrices and equivalence tests for
/// convolutional codes over finite fields.
#[derive(Parser, Debug)]
#[command(name = "convequiv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension, degree, row degrees, Forney indices and reducedness of an encoder.
    Analyze {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print a state-space realization of an encoder.
    Realize {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Form::Controller)]
        form: Form,
        #[arg(long)]
        json: bool,
    },
    /// Weight adjacency matrix of the controller form (or of a given system).
    Wam {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        /// Also print the enumerator of length-N paths from and to the zero state.
        #[arg(long, value_name = "N")]
        truncate: Option<usize>,
        #[arg(long, default_value_t = convequiv::wam::DEFAULT_MAX_STATES)]
        max_states: usize,
    },
    /// Decide monomial equivalence of two codes.
    Equiv {
        lhs: PathBuf,
        rhs: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        /// Only the identity field automorphism.
        #[arg(long)]
        no_automorphisms: bool,
        #[arg(long)]
        json: bool,
        /// Include wall-clock timings (output is then no longer byte-stable).
        #[arg(long)]
        timings: bool,
        #[arg(long, default_value_t = convequiv::wam::DEFAULT_MAX_STATES)]
        max_states: usize,
        #[arg(long, default_value_t = convequiv::equivalence::DEFAULT_MAX_SEARCH)]
        max_search: u128,
    },
    /// Run the built-in worked examples and a seeded cross-validation.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sampled pairs in the cross-validation.
        #[arg(long, default_value_t = 20)]
        pairs: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Form {
    Controller,
    Canonical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Wam,
    Both,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    let result = match cli.command {
        Command::Analyze { path, json } => commands::analyze(&path, json),
        Command::Realize { path, form, json } => commands::realize(&path, form, json),
        Command::Wam {
            path,
            json,
            truncate,
            max_states,
        } => commands::wam(&path, json, truncate, max_states),
        Command::Equiv {
            lhs,
            rhs,
            method,
            no_automorphisms,
            json,
            timings,
            max_states,
            max_search,
        } => {
            let opts = convequiv::equivalence::SearchOptions {
                automorphisms: !no_automorphisms,
                max_search,
                max_states,
            };
            commands::equiv(&lhs, &rhs, method, &opts, json, timings)
        }
        Command::Selftest { seed, pairs, json } => commands::selftest(seed, pairs, json),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(Failure { message, code }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
