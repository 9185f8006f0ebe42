//! Command-line front end: graph generation, brute-force Max-Cut, numeric
//! relaxation values, exact certificates, recognizers and test batteries.

mod certify;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "elliptope", version, about = "Exact Max-Cut relaxation certificates")]
struct Cli {
    /// Emit one JSON document instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Relative tolerance of the numeric solver.
    #[arg(long, global = true, env = "ELLIPTOPE_TOL", default_value_t = elliptope::sdp::DEFAULT_TOL)]
    tol: f64,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = elliptope::sdp::DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Build a graph and print it as an edge list.
    Gen(GenArgs),
    /// Brute-force maximum cut.
    Maxcut {
        graph: String,
        /// List every optimal partition.
        #[arg(long)]
        all_cuts: bool,
    },
    /// Numeric value of the relaxation.
    Phi { graph: String },
    /// Compare the relaxation value with the maximum cut.
    Exactness { graph: String },
    /// Build and verify an exact primal/dual certificate.
    Certify {
        graph: String,
        #[arg(long, value_enum)]
        method: Method,
        /// JSON file describing the structure the method needs.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Print Y, X and the verification report.
        #[arg(long)]
        dump: bool,
    },
    /// Complement-core recognizer.
    Recognize { graph: String },
    /// Exactness of a complete multipartite graph.
    Kpartite {
        #[arg(value_delimiter = ',')]
        parts: Vec<usize>,
    },
    /// Complete multipartite instance for an Exact Sum input.
    Hardness {
        #[arg(value_delimiter = ',')]
        parts: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Emit::Report)]
        emit: Emit,
    },
    /// Check a split decomposition witness.
    VerifyDecomp {
        graph: String,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Replay one of the two weighted K4 examples.
    Counterexample {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
    },
    /// Run a named battery (or `all`).
    Suite { name: String },
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: GenFamily,
}

#[derive(Subcommand)]
enum GenFamily {
    Join { a: String, b: String },
    Lex { a: String, b: String },
    Split {
        graph: String,
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<usize>,
    },
    Kpartite {
        #[arg(value_delimiter = ',')]
        parts: Vec<usize>,
    },
    Wcomplete {
        #[arg(value_delimiter = ',')]
        masses: Vec<String>,
    },
    Cycle { n: usize },
    Path { n: usize },
    Complete { n: usize },
    Edgeless { n: usize },
    Complement { graph: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    JoinBalanced,
    JoinUnbalanced,
    Nondominating,
    Lex,
    SplitLift,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Report,
    Graph,
}

/// Result of one verb: the document, its text rendering and whether it is a
/// semantic negative.
pub struct Outcome {
    pub doc: serde_json::Value,
    pub text: String,
    pub negative: bool,
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let opts = commands::Options {
        tol: cli.tol,
        seed: cli.seed,
    };
    match &cli.verb {
        Verb::Gen(args) => commands::generate(&args.family),
        Verb::Maxcut { graph, all_cuts } => commands::maxcut(graph, *all_cuts),
        Verb::Phi { graph } => commands::phi(graph, &opts),
        Verb::Exactness { graph } => commands::exactness(graph, &opts),
        Verb::Certify {
            graph,
            method,
            witness,
            dump,
        } => certify::run(graph, *method, witness.as_deref(), *dump),
        Verb::Recognize { graph } => commands::recognize(graph),
        Verb::Kpartite { parts } => commands::kpartite(parts),
        Verb::Hardness { parts, emit } => commands::hardness(parts, *emit == Emit::Graph),
        Verb::VerifyDecomp { graph, witness } => commands::verify_decomp(graph, witness),
        Verb::Counterexample { which } => commands::counterexample(*which),
        Verb::Suite { name } => commands::suite(name, &opts),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        eprintln!("error: --tol must be a positive number");
        return ExitCode::from(1);
    }
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.doc).expect("JSON values serialize"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.negative { 2 } else { 0 })
        }
        Err(e) => {
            if cli.json {
                let doc = serde_json::json!({ "error": format!("{e:#}") });
                println!("{}", serde_json::to_string_pretty(&doc).expect("JSON values serialize"));
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(1)
        }
    }
}
