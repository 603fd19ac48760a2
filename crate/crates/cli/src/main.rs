use std::path::PathBuf;
use std::process::ExitCode;

use anthill_cli::{compare, load_config, run_experiment, CliError, Mode, Overrides, SummaryReport};
use clap::{Args, Parser, Subcommand};

/// Seeded ant hill colonization experiments.
#[derive(Parser, Debug)]
#[command(name = "anthill", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Optimize one benchmark function over a list of seeds
    Bench(RunArgs),
    /// Synthesize a low side-lobe linear array over a list of seeds
    Antenna(RunArgs),
    /// Run every benchmark/dimension pair of a grid
    Sweep(RunArgs),
    /// Run several algorithms on the same objective and budget
    Compare(RunArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    /// JSON config file; repeat with `compare` to compare several configs
    #[arg(long)]
    config: Vec<PathBuf>,
    /// Algorithm name (ahcoa, alo, random, hillclimb); comma list for compare
    #[arg(long)]
    algorithm: Option<String>,
    /// Benchmark id F1..F7; comma list for sweep
    #[arg(long)]
    benchmark: Option<String>,
    /// Problem dimension; comma list for sweep
    #[arg(long)]
    dim: Option<String>,
    /// Population size
    #[arg(long)]
    pop: Option<usize>,
    /// Iterations
    #[arg(long)]
    iters: Option<usize>,
    /// Comma-separated seeds
    #[arg(long)]
    seeds: Option<String>,
    /// Output directory (default: $ANTHILL_OUT_DIR, then ./anthill-out)
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            algorithm: self.algorithm.clone(),
            benchmark: self.benchmark.clone(),
            dim: self.dim.clone(),
            pop: self.pop,
            iters: self.iters,
            seeds: self.seeds.clone(),
            out: self.out.clone(),
        }
    }
}

fn print_summary(summary: &SummaryReport) {
    let s = &summary.stats;
    println!(
        "{} {} ({} seeds, {} evals each): median {:e} mean {:e} std {:e} min {:e} max {:e}",
        summary.algorithm,
        summary.objective,
        s.count,
        summary.budget,
        s.median,
        s.mean,
        s.std,
        s.min,
        s.max
    );
    if let Some(a) = &summary.antenna {
        println!(
            "uniform array max side-lobe level: {:.4} dB",
            a.uniform_max_sll_db
        );
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let (mode, args) = match &cli.command {
        Command::Bench(a) => (Some(Mode::Bench), a),
        Command::Antenna(a) => (Some(Mode::Antenna), a),
        Command::Sweep(a) => (Some(Mode::Sweep), a),
        Command::Compare(a) => (None, a),
    };
    let overrides = args.overrides();

    if let Command::Compare(_) = cli.command {
        let configs = if args.config.is_empty() {
            vec![load_config(None, &overrides, None)?]
        } else {
            args.config
                .iter()
                .map(|p| load_config(Some(p), &overrides, None))
                .collect::<Result<Vec<_>, _>>()?
        };
        let out = configs[0].out_dir.clone();
        let table = compare(&configs, &out)?;
        print!("{table}");
        println!("wrote {}", out.join("comparison.csv").display());
        return Ok(());
    }

    if args.config.len() > 1 {
        return Err(CliError::Config(
            "only compare accepts several --config files".into(),
        ));
    }
    let config = load_config(args.config.first().map(PathBuf::as_path), &overrides, mode)?;
    if config.algorithms.len() > 1 {
        return Err(CliError::Config(
            "several algorithms given; use compare".into(),
        ));
    }
    for summary in run_experiment(&config)? {
        print_summary(&summary);
    }
    println!("wrote {}", config.out_dir.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
