//! `drg`: exact reports on classical parameter sets and explicit
//! distance-regular graphs.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 invalid input,
//! 3 the graph is not distance-regular, 4 the spectrum is not rational.

mod graph_cmd;
mod input;
mod json;
mod params_cmd;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use drg_core::Error;

use graph_cmd::{GraphArgs, Part};

#[derive(Parser)]
#[command(name = "drg", version, about = "Distance-regular graph and endpoint-1 module reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Array, hypothesis filter and endpoint-1 models for `D b alpha beta`.
    Params {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Full report on an edge list.
    Graph(GraphOpts),
    /// Identity suite only.
    Identities(GraphOpts),
    /// T-module decomposition only.
    Decompose(GraphOpts),
}

#[derive(Args)]
struct GraphOpts {
    edges: PathBuf,
    #[arg(long)]
    base_vertex: String,
    #[arg(long)]
    neighbor: Option<String>,
    /// `all` or a single identity id.
    #[arg(long, default_value = "all")]
    identity: String,
    /// Q-polynomial ordering as comma-separated idempotent indices, e.g. `0,1,2,3`.
    #[arg(long, value_delimiter = ',')]
    ordering: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn input(message: String) -> Self {
        Self { code: 2, message }
    }

    pub fn from_input(e: Error) -> Self {
        Self::input(e.to_string())
    }

    pub fn check(message: String) -> Self {
        Self { code: 1, message }
    }

    pub fn not_drg(message: String) -> Self {
        Self { code: 3, message }
    }

    pub fn out_of_scope(message: String) -> Self {
        Self { code: 4, message }
    }
}

fn emit(format: Format, report: &serde_json::Value, text: &str) {
    match format {
        Format::Json => print!("{}", json::render(report)),
        Format::Text => print!("{text}"),
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Params { file, format } => {
            let p = input::read_parameters(&file)?;
            let out = params_cmd::run(&p)?;
            emit(format, &out.report, &out.text);
            Ok(out.ok)
        }
        Command::Graph(o) => run_graph(o, Part::All),
        Command::Identities(o) => run_graph(o, Part::Identities),
        Command::Decompose(o) => run_graph(o, Part::Decomposition),
    }
}

fn run_graph(o: GraphOpts, part: Part) -> Result<bool, Failure> {
    let args = GraphArgs {
        edges: input::read_edges(&o.edges)?,
        base_vertex: o.base_vertex,
        neighbor: o.neighbor,
        identity: o.identity,
        ordering: o.ordering,
        seed: o.seed,
        workers: input::workers()?,
        part,
    };
    let out = graph_cmd::run(&args)?;
    emit(o.format, &out.report, &out.text);
    Ok(out.ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("drg: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
