//! `pseudotri`: rigidity checks, labelings and pseudo-triangulation drawings
//! for plane graph documents.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pseudotri::io::{Method, RunConfig, WeightChoice};
use rayon::prelude::*;

use commands::{Failure, Output};

#[derive(Parser, Debug)]
#[command(name = "pseudotri", version, about = "Pointed pseudo-triangulations of plane Laman graphs")]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    /// Worker threads for batches of inputs.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Write one output file per input into this directory instead of stdout.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ConfigArgs {
    /// Seed for generation and random weights; PSEUDOTRI_SEED overrides it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Weights::Unit)]
    weights: Weights,
    /// Bound on the equilibrium residual of the Tutte solve.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tolerance: f64,
    /// Solve the Tutte system in exact rational arithmetic.
    #[arg(long, global = true)]
    exact: bool,
    /// Largest graph for the exponential subgraph checks.
    #[arg(long, global = true, default_value_t = 16)]
    n_limit: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Weights {
    Unit,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EmbedMethod {
    Tutte,
    Henneberg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Laman,
    Circuit,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rigidity class of each graph; fails unless it is Laman.
    Check { inputs: Vec<PathBuf> },
    /// A plane Henneberg sequence building each graph.
    Henneberg { inputs: Vec<PathBuf> },
    /// Assign a combinatorial pseudo-triangulation labeling.
    Cpt {
        /// Vertex to leave non-pointed (circuits only).
        #[arg(long)]
        nonpointed: Option<usize>,
        inputs: Vec<PathBuf>,
    },
    /// Label if needed, then stretch through the directed Tutte embedding.
    Stretch { inputs: Vec<PathBuf> },
    /// Straight-line pointed pseudo-triangulation by either method.
    Embed {
        #[arg(long, value_enum, default_value_t = EmbedMethod::Tutte)]
        method: EmbedMethod,
        inputs: Vec<PathBuf>,
    },
    /// Geometric report on a document with coordinates.
    Verify { inputs: Vec<PathBuf> },
    /// Generate a random plane Laman graph or circuit.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Kind::Laman)]
        kind: Kind,
    },
    /// Draw a document with coordinates as SVG.
    Svg { inputs: Vec<PathBuf> },
}

impl Command {
    fn inputs(&self) -> &[PathBuf] {
        match self {
            Command::Check { inputs }
            | Command::Henneberg { inputs }
            | Command::Cpt { inputs, .. }
            | Command::Stretch { inputs }
            | Command::Embed { inputs, .. }
            | Command::Verify { inputs }
            | Command::Svg { inputs } => inputs,
            Command::Gen { .. } => &[],
        }
    }

    fn extension(&self) -> &'static str {
        match self {
            Command::Svg { .. } => "svg",
            _ => "json",
        }
    }
}

fn run_config(args: &ConfigArgs) -> Result<RunConfig, Failure> {
    RunConfig {
        seed: args.seed,
        weights: match args.weights {
            Weights::Unit => WeightChoice::Unit,
            Weights::Random => WeightChoice::Random,
        },
        tolerance: args.tolerance,
        method: Method::Tutte,
        exact: args.exact,
        n_limit: args.n_limit,
    }
    .validate()
    .and_then(RunConfig::with_env)
    .map_err(|e| Failure::usage(e.to_string()))
}

fn run_one(command: &Command, config: &RunConfig, input: &PathBuf) -> Result<Output, Failure> {
    let loaded = || commands::load(input);
    match command {
        Command::Check { .. } => commands::check(&loaded()?),
        Command::Henneberg { .. } => commands::henneberg(&loaded()?),
        Command::Cpt { nonpointed, .. } => commands::cpt(&loaded()?, *nonpointed),
        Command::Stretch { .. } => commands::stretch(&loaded()?, config),
        Command::Embed { method, .. } => {
            let method = match method {
                EmbedMethod::Tutte => Method::Tutte,
                EmbedMethod::Henneberg => Method::Henneberg,
            };
            commands::embed(&loaded()?, &RunConfig { method, ..*config })
        }
        Command::Verify { .. } => commands::verify(&loaded()?),
        Command::Svg { .. } => commands::svg(&loaded()?),
        Command::Gen { .. } => unreachable!("gen takes no inputs"),
    }
}

fn emit(out_dir: Option<&PathBuf>, name: Option<String>, result: &Result<Output, Failure>) -> Result<(), Failure> {
    let text = match result {
        Ok(o) => &o.text,
        Err(f) => match &f.partial {
            Some(t) => t,
            None => return Ok(()),
        },
    };
    match (out_dir, name) {
        (Some(dir), Some(name)) => {
            std::fs::write(dir.join(&name), text).map_err(|e| Failure::usage(format!("{}: {e}", dir.join(name).display())))
        }
        _ => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::usage(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    ExitCode::from(code)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let config = run_config(&cli.config)?;
    if let Some(dir) = &cli.out_dir {
        std::fs::create_dir_all(dir).map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
    }
    if let Command::Gen { n, kind } = cli.command {
        let kind = match kind {
            Kind::Laman => pseudotri::io::GraphKind::Laman,
            Kind::Circuit => pseudotri::io::GraphKind::Circuit,
        };
        let out = commands::gen(n, config.seed, kind);
        let name = Some(format!("gen-{n}-{}.json", config.seed));
        emit(cli.out_dir.as_ref(), name, &out)?;
        return out.map(|_| 0);
    }
    let inputs = cli.command.inputs();
    if inputs.is_empty() {
        return Err(Failure::usage("no input documents given (use - for stdin)"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()
        .map_err(|e| Failure::usage(e.to_string()))?;
    let results: Vec<Result<Output, Failure>> =
        pool.install(|| inputs.par_iter().map(|p| run_one(&cli.command, &config, p)).collect());
    let mut code = 0;
    for (input, result) in inputs.iter().zip(&results) {
        let name = input.file_stem().map(|s| format!("{}.{}", s.to_string_lossy(), cli.command.extension()));
        emit(cli.out_dir.as_ref(), name, result)?;
        if let Err(f) = result {
            eprintln!("{}: {}", input.display(), f.message);
            code = code.max(f.code);
        }
    }
    Ok(code)
}
