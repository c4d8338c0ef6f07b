use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use exlab::record::{record_csv, record_json, write_record};
use exlab::{render, report, run, ExperimentSpec, LabError, Module, RecordFormat, ReportFormat};
use serde::Serialize;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "exlab", version, about = "Run, replay and summarise extremal-combinatorics experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Set mappings on grids: violate, oracle
    Setmap(ModuleCmd<SetmapArgs>),
    /// Pattern-free subgraphs: extract, count, zarankiewicz, kpartite
    Bipfree(ModuleCmd<BipfreeArgs>),
    /// Hypergraph embedding: resample, ramsey
    Embed(ModuleCmd<EmbedArgs>),
    /// Weakly complete sequences: pipeline, minor, oracle
    Weakseq(ModuleCmd<WeakseqArgs>),
    /// RS graphs: behrend, construct, double, decompose, arrow
    Rsgraph(ModuleCmd<RsgraphArgs>),
    /// Triangle removal on grids: census, step, iterate, diamond, grid
    Removal(ModuleCmd<RemovalArgs>),
    /// Summarise saved records
    Report(ReportArgs),
}

#[derive(Args)]
struct ModuleCmd<A: Args> {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    args: A,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    op: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// paper, desk, or a preset TOML file
    #[arg(long, default_value = "desk")]
    preset: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: RecordFormat,
    /// Validate and print the resolved spec without running
    #[arg(long)]
    dry_run: bool,
    /// Extra parameter as key=value
    #[arg(long = "param", value_name = "KEY=VALUE", value_parser = key_value)]
    params: Vec<(String, String)>,
}

fn key_value(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .ok_or_else(|| format!("expected key=value, got {s:?}"))
}

#[derive(Args, Serialize)]
struct SetmapArgs {
    /// eh or caro
    #[arg(long)]
    map: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// full or lex
    #[arg(long)]
    variant: Option<String>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    size: Option<usize>,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args, Serialize)]
struct BipfreeArgs {
    /// gnp, file or kbip
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    input: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    retry_cap: Option<usize>,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args, Serialize)]
struct EmbedArgs {
    /// Dimension of the cube to embed
    #[arg(long)]
    d: Option<usize>,
    #[arg(long = "N")]
    #[serde(rename = "N")]
    big_n: Option<usize>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    round_cap: Option<usize>,
    #[arg(long)]
    retry_cap: Option<usize>,
}

#[derive(Args, Serialize)]
struct WeakseqArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    retry_cap: Option<usize>,
}

#[derive(Args, Serialize)]
struct RsgraphArgs {
    #[arg(long = "N")]
    #[serde(rename = "N")]
    big_n: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    chunk: Option<usize>,
    /// exhaustive or theorem
    #[arg(long)]
    mode: Option<String>,
    /// complete, behrend or file
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    v: Option<usize>,
    #[arg(long)]
    input: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args, Serialize)]
struct RemovalArgs {
    #[arg(long, conflicts_with = "random_grid")]
    grid_file: Option<String>,
    /// Side and number of colors
    #[arg(long, num_args = 2, value_names = ["N", "R"])]
    #[serde(skip)]
    random_grid: Option<Vec<usize>>,
}

impl RemovalArgs {
    fn extra(&self) -> Vec<(&'static str, Value)> {
        match self.random_grid.as_deref() {
            Some([n, r]) => vec![("N", (*n).into()), ("r", (*r).into())],
            _ => Vec::new(),
        }
    }
}

#[derive(Args)]
struct ReportArgs {
    #[arg(required = true)]
    records: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "md")]
    format: ReportFormat,
    /// Check the records parse without printing the table
    #[arg(long)]
    dry_run: bool,
}

fn build_spec<A: Args + Serialize>(
    module: Module,
    cmd: &ModuleCmd<A>,
    extra: Vec<(&'static str, Value)>,
) -> ExperimentSpec {
    let c = &cmd.common;
    let mut spec = ExperimentSpec::new(module, &c.op).seed(c.seed).trials(c.trials);
    spec.preset = c.preset.clone();
    spec.out = c.out.clone();
    if let Ok(Value::Object(map)) = serde_json::to_value(&cmd.args) {
        spec.params.extend(map.into_iter().filter(|(_, v)| !v.is_null()));
    }
    spec.params.extend(extra.into_iter().map(|(k, v)| (k.to_string(), v)));
    for (k, v) in &c.params {
        spec.params.insert(k.clone(), Value::String(v.clone()));
    }
    spec
}

fn execute(spec: ExperimentSpec, common: &Common) -> Result<ExitCode, LabError> {
    if common.dry_run {
        let (resolved, _) = spec.validate()?;
        println!("{}", serde_json::to_string_pretty(&resolved)?);
        return Ok(ExitCode::SUCCESS);
    }
    let record = run(&spec)?;
    match &common.out {
        Some(path) => {
            write_record(&record, path, common.format)?;
            let a = &record.aggregate;
            eprintln!(
                "{} {}: {}/{} succeeded, postconditions {}, {} ms -> {}",
                record.spec.module,
                record.spec.op,
                a.successes,
                a.trials,
                if a.all_hold { "held" } else { "FAILED" },
                record.wall_clock_ms,
                path.display()
            );
        }
        None => match common.format {
            RecordFormat::Json => println!("{}", record_json(&record)),
            RecordFormat::Csv => print!("{}", record_csv(&record)?),
        },
    }
    Ok(if record.exit_code() == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Setmap(c) => execute(build_spec(Module::Setmap, c, vec![]), &c.common),
        Command::Bipfree(c) => execute(build_spec(Module::Bipfree, c, vec![]), &c.common),
        Command::Embed(c) => execute(build_spec(Module::Embed, c, vec![]), &c.common),
        Command::Weakseq(c) => execute(build_spec(Module::Weakseq, c, vec![]), &c.common),
        Command::Rsgraph(c) => execute(build_spec(Module::Rsgraph, c, vec![]), &c.common),
        Command::Removal(c) => execute(build_spec(Module::Removal, c, c.args.extra()), &c.common),
        Command::Report(r) => report(&r.records).and_then(|rows| {
            if r.dry_run {
                for row in &rows {
                    println!("{} {} {}", row.path.display(), row.module, row.op);
                }
            } else {
                print!("{}", render(&rows, r.format)?);
            }
            Ok(ExitCode::SUCCESS)
        }),
    };
    result.unwrap_or_else(|e| {
        eprintln!("exlab: {e}");
        ExitCode::from(2)
    })
}
