//! `holant`: command-line front end for exact Holant evaluation, gadget
//! checks, interpolation, classification and certificates.

mod commands;
mod config;
mod schema;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use commands::Report;
use config::{Format, Mode, Overrides, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "holant", version, about = "Exact Holant sums, gadget calculus and dichotomy classification")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// TOML configuration file; flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Scalar mode.
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,
    /// Comparison tolerance in float mode.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Maximum number of assignments a brute-force sum may enumerate.
    #[arg(long, global = true)]
    cap: Option<u128>,
    /// Worker threads.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    /// Random seed for seeded suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Print the documented JSON schemas and exit.
    #[arg(long)]
    schema: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a closed signature grid.
    Eval {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long, default_value = "auto", value_parser = ["auto", "brute", "equality", "gp", "affine-z3", "hadamard-k4"])]
        method: String,
        /// Also evaluate by brute force and fail on disagreement.
        #[arg(long)]
        compare: bool,
        /// Fail with exit code 2 unless the result equals this value.
        #[arg(long, allow_hyphen_values = true)]
        expect: Option<String>,
    },
    /// Compare a gadget's closed form with its brute-force signature.
    Gadget {
        name: String,
        #[arg(long)]
        kappa: usize,
        #[arg(long, allow_hyphen_values = true)]
        abc: String,
        /// First binary signature ⟨x, y⟩.
        #[arg(long, allow_hyphen_values = true)]
        xy: Option<String>,
        /// Second binary signature, for the anti-gadget.
        #[arg(long, allow_hyphen_values = true)]
        xy2: Option<String>,
    },
    /// Decide tractability of ⟨a, b, c⟩.
    Classify {
        #[arg(long)]
        kappa: usize,
        #[arg(long, allow_hyphen_values = true)]
        abc: String,
    },
    /// Edge-coloring counts.
    Color {
        #[command(subcommand)]
        action: ColorCommand,
    },
    /// Evaluate the Tutte polynomial.
    Tutte {
        #[arg(long)]
        graph: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Fail with exit code 2 unless the result equals this value.
        #[arg(long, allow_hyphen_values = true)]
        expect: Option<String>,
    },
    /// Print the medial graph.
    Medial {
        #[arg(long)]
        graph: String,
        /// Include the alternating orientation.
        #[arg(long)]
        directed: bool,
    },
    /// Interpolation constructions.
    Interp {
        #[command(subcommand)]
        action: InterpCommand,
    },
    /// Run a certificate suite.
    Certify {
        #[arg(long, value_parser = ["p-solutions", "dedekind", "identities", "lattice", "fixtures", "roots"])]
        suite: String,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Check every gadget closed form on seeded random inputs.
    VerifyFormulas {
        #[arg(long)]
        kappa: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ColorCommand {
    /// Count edge κ-colorings.
    Count {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        kappa: usize,
        /// Fail with exit code 2 unless the result equals this value.
        #[arg(long, allow_hyphen_values = true)]
        expect: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum InterpCommand {
    /// Interpolate the edge-coloring count through the medial graph.
    DemoColoring {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        kappa: usize,
    },
    /// Recurrence matrix of a construction.
    Matrix {
        /// `coloring`, `alternate`, `weave`, or a construction JSON file.
        #[arg(long)]
        construction: String,
        #[arg(long)]
        kappa: Option<usize>,
        /// Succinct type of the iterated signature.
        #[arg(long)]
        space: Option<String>,
    },
}

fn dispatch(cfg: &RunConfig, cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Eval { grid, method, compare, expect } => commands::eval(cfg, grid, method, *compare, expect.as_deref()),
        Command::Gadget { name, kappa, abc, xy, xy2 } => {
            let bins: Vec<String> = xy.iter().chain(xy2).cloned().collect();
            commands::gadget(cfg, name, *kappa, abc, &bins)
        }
        Command::Classify { kappa, abc } => commands::classify(cfg, *kappa, abc),
        Command::Color { action: ColorCommand::Count { graph, kappa, expect } } => {
            commands::color_count(cfg, graph, *kappa, expect.as_deref())
        }
        Command::Tutte { graph, x, y, expect } => commands::tutte(cfg, graph, x, y, expect.as_deref()),
        Command::Medial { graph, directed } => commands::medial(graph, *directed),
        Command::Interp { action: InterpCommand::DemoColoring { graph, kappa } } => commands::interp_demo(graph, *kappa),
        Command::Interp { action: InterpCommand::Matrix { construction, kappa, space } } => {
            commands::interp_matrix(cfg, construction, *kappa, space.as_deref())
        }
        Command::Certify { suite, bound } => commands::certify(suite, *bound),
        Command::VerifyFormulas { kappa, trials } => commands::verify(cfg, *kappa, *trials),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let g = &cli.global;
    if g.schema {
        let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(&schema::all())?);
        return Ok(ExitCode::SUCCESS);
    }
    let Some(cmd) = &cli.command else {
        anyhow::bail!("no subcommand given; see `holant --help`");
    };
    let overrides = Overrides {
        mode: g.mode,
        tol: g.tol,
        cap: g.cap,
        workers: g.workers,
        format: if g.json { Some(Format::Json) } else { g.format },
        seed: g.seed,
    };
    let cfg = RunConfig::load(g.config.as_deref(), &overrides)?;
    if let Some(w) = cfg.workers {
        rayon::ThreadPoolBuilder::new().num_threads(w).build_global()?;
    }
    let report = dispatch(&cfg, cmd)?;
    let text = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&report.record())?,
        Format::Human => report.human,
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    Ok(if report.mismatch { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
