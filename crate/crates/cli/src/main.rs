use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fcomp_cli::{
    emit_outputs, load_spec, read_raw_csv, run_experiment, summarize, write_summary_csv, Overrides,
    Result,
};
use fcomp_core::Algorithm;

#[derive(Parser)]
#[command(
    name = "fcomp",
    version,
    about = "Sparse decomposition experiment runner for FMCW radar scenes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sweep described by a JSON config, writing CSVs and a manifest.
    Run(RunArgs),
    /// Rebuild the per-(algorithm, grid size) summary table from a raw CSV.
    Summarize(SummarizeArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment description (JSON). Flags below override its fields.
    #[arg(long)]
    config: PathBuf,
    /// Subset of algorithms to run, e.g. --algos fcomp,omp.
    #[arg(long, value_delimiter = ',')]
    algos: Option<Vec<Algorithm>>,
    /// Grid sizes to sweep, e.g. --grid-sizes 16,32,64.
    #[arg(long, value_delimiter = ',')]
    grid_sizes: Option<Vec<usize>>,
    #[arg(long)]
    trials: Option<usize>,
    /// Base seed for the scene stream.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    noise_sigma: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also emit static SVG charts.
    #[arg(long)]
    svg: bool,
    /// Fan trials across threads (disables timing capture).
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct SummarizeArgs {
    /// Raw per-trial CSV produced by `run`.
    #[arg(long = "in")]
    input: PathBuf,
    /// Where to write the summary CSV.
    #[arg(long)]
    out: PathBuf,
}

fn run(args: RunArgs) -> Result<()> {
    let spec = load_spec(&args.config)?.with_overrides(&Overrides {
        algorithms: args.algos,
        grid_sizes: args.grid_sizes,
        trials: args.trials,
        base_seed: args.seed,
        noise_sigma: args.noise_sigma,
        output_dir: args.out,
        emit_svg: args.svg,
        parallel: args.parallel,
    });
    spec.validate()?;

    let records = run_experiment(&spec)?;
    let rows = summarize(&records);
    let paths = emit_outputs(&records, &rows, &spec)?;

    println!("algo     n_star  trials  miss_rate  time_median_ns");
    for row in &rows {
        println!(
            "{:<8} {:<7} {:<7} {:<10.4} {:.0}",
            row.algo.name(),
            row.n_star,
            row.trials,
            row.miss_rate,
            row.time_median_ns
        );
    }
    println!("wrote {}", paths.raw_csv.display());
    println!("wrote {}", paths.summary_csv.display());
    println!("wrote {}", paths.manifest.display());
    for chart in [&paths.miss_chart, &paths.time_chart].into_iter().flatten() {
        println!("wrote {}", chart.display());
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(args) => run(args),
        Command::Summarize(args) => {
            let records = read_raw_csv(&args.input)?;
            write_summary_csv(&args.out, &summarize(&records))?;
            println!("wrote {}", args.out.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
