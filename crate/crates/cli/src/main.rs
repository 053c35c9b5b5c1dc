//! `periodic-motif`: canonical forms, covers, bounds and diagram search from
//! the command line.
//!
//! Exit status: 0 success, 1 negative verdict (not equivalent, inadmissible),
//! 2 unknown (a budget ran out), 3 input error.

mod budget;
mod input;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use periodic_motif::Error;

use budget::Budget;

#[derive(Parser)]
#[command(name = "periodic-motif", version, about = "Motifs of periodic tangles: links, covers and torus diagrams")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical form of a link or descriptor, or the canonical hash of a diagram
    Canon { input: String },
    /// Preimage under the cover given by a sublattice, e.g. "[[2,0],[0,1]]"
    Lift {
        input: String,
        #[arg(long)]
        lattice: String,
    },
    /// Apply an admissible twist given as an integer matrix
    Twist {
        input: String,
        #[arg(long)]
        matrix: String,
    },
    /// Decide whether two links, descriptors or diagrams are equivalent
    Equiv {
        a: String,
        b: String,
        /// Largest cover degree tried for links, or the move depth for diagrams
        #[arg(long)]
        bound: Option<u64>,
        /// Allow a twist of the first diagram before searching
        #[arg(long)]
        twists: bool,
    },
    /// Minimal motif of a link or descriptor
    Minimal { input: String },
    /// Bound on the degree of a finite cover from a descriptor
    Bound { input: String },
    /// All sublattices of Z^dim with the given index
    Lattices { dim: usize, index: i64 },
    /// Validity and invariants of a diagram
    Invariants { input: String },
    /// Graphviz rendering of a diagram
    Dot { input: String },
    /// Whether a Seifert symbol can be a JSJ piece in an ambient manifold
    Admissible {
        symbol: String,
        #[arg(long)]
        ambient: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Canon { .. } => "canon",
            Command::Lift { .. } => "lift",
            Command::Twist { .. } => "twist",
            Command::Equiv { .. } => "equiv",
            Command::Minimal { .. } => "minimal",
            Command::Bound { .. } => "bound",
            Command::Lattices { .. } => "lattices",
            Command::Invariants { .. } => "invariants",
            Command::Dot { .. } => "dot",
            Command::Admissible { .. } => "admissible",
        }
    }
}

fn run(command: &Command, budget: &Budget) -> periodic_motif::Result<report::Report> {
    match command {
        Command::Canon { input } => report::canon(input),
        Command::Lift { input, lattice } => report::lift(input, lattice),
        Command::Twist { input, matrix } => report::twist(input, matrix),
        Command::Equiv { a, b, bound, twists } => report::equiv(a, b, *bound, *twists, budget),
        Command::Minimal { input } => report::minimal(input),
        Command::Bound { input } => report::bound(input),
        Command::Lattices { dim, index } => report::lattices(*dim, *index),
        Command::Invariants { input } => report::invariants(input),
        Command::Dot { input } => report::dot(input),
        Command::Admissible { symbol, ambient } => report::admissible(symbol, ambient),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let name = cli.command.name();
    let outcome = Budget::from_env().and_then(|b| run(&cli.command, &b));
    match outcome {
        Ok(r) => {
            match cli.format {
                Format::Text => println!("{}", r.text),
                Format::Json => {
                    let mut json = r.json;
                    json["command"] = name.into();
                    println!("{}", serde_json::to_string_pretty(&json).expect("values serialize"));
                }
            }
            ExitCode::from(r.status.code())
        }
        Err(e) => {
            let code = match e {
                Error::NotAdmissible(_) => 1,
                _ => 3,
            };
            match cli.format {
                Format::Text => eprintln!("periodic-motif {name}: {e}"),
                Format::Json => {
                    let json = report::error_json(name, &e);
                    println!("{}", serde_json::to_string_pretty(&json).expect("values serialize"));
                }
            }
            ExitCode::from(code)
        }
    }
}
