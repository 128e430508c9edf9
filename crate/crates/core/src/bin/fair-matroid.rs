use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fair_matroid::algorithms::RunConfig;
use fair_matroid::harness::{
    gen_instance, parse_range, run_once, sweep, verify, AlgoSpec, GenParams, Instance,
    InstanceKind, Outcome, Solution, SweepSpec,
};
use fair_matroid::Error;

#[derive(Parser)]
#[command(name = "fair-matroid", version, about = "Fair submodular maximization over matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic instance.
    Gen {
        #[arg(long, default_value = "coverage")]
        kind: InstanceKind,
        /// Universe size (defaults per kind: 2000, 500, 1000).
        #[arg(long)]
        n: Option<usize>,
        /// Number of colors (defaults per kind: 7, 6, 18).
        #[arg(long)]
        colors: Option<usize>,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run one algorithm on an instance file and print the run record.
    Run {
        instance: PathBuf,
        /// our, our:EPS, det:EPS, twopass, lbmi, ubmi or random.
        #[arg(long, default_value = "our")]
        algo: AlgoSpec,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Re-check every exchange step.
        #[arg(long)]
        debug_verify: bool,
        /// Use the partition-matroid path decomposition.
        #[arg(long)]
        fast_paths: bool,
        /// Write the solution as `{"elements": [...]}`.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sweep algorithms over r on generated instances; writes CSV and a
    /// `.summary.json` next to it.
    Sweep {
        #[arg(long, default_value = "coverage")]
        kind: InstanceKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        colors: Option<usize>,
        #[arg(long, value_delimiter = ',',
              default_value = "our:0.2,our:0.5,our:0.8,twopass,lbmi,ubmi,random")]
        algos: Vec<AlgoSpec>,
        /// start:stop:step, inclusive.
        #[arg(long, default_value = "10:100:10")]
        r: String,
        #[arg(long, default_value_t = 40)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Epsilon for tags given without one.
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        #[arg(long)]
        fast_paths: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a solution file against an instance.
    Verify { instance: PathBuf, solution: PathBuf },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Infeasible(_) => 3,
        Error::Invariant(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn execute(command: Command) -> Result<u8, Error> {
    match command {
        Command::Gen { kind, n, colors, r, seed, output } => {
            let params = GenParams {
                kind,
                n: n.unwrap_or(kind.default_n()),
                colors: colors.unwrap_or(kind.default_colors()),
                r,
                seed,
            };
            gen_instance(&params)?.save(&output)?;
            Ok(0)
        }
        Command::Run { instance, algo, epsilon, seed, debug_verify, fast_paths, output } => {
            let inst = Instance::load(&instance)?;
            let mut cfg = RunConfig::new(algo.algorithm, epsilon, seed);
            cfg.debug_verify = debug_verify;
            cfg.fast_paths = fast_paths;
            match run_once(&inst, &algo, &cfg, None)? {
                Outcome::Done(rec) => {
                    println!("{}", serde_json::to_string_pretty(&rec)?);
                    if let Some(path) = output {
                        Solution { elements: rec.solution }.save(&path)?;
                    }
                    Ok(0)
                }
                Outcome::Infeasible(msg) => Err(Error::Infeasible(msg)),
            }
        }
        Command::Sweep { kind, n, colors, algos, r, reps, seed, epsilon, fast_paths, output } => {
            let spec = SweepSpec {
                kind,
                n: n.unwrap_or(kind.default_n()),
                colors: colors.unwrap_or(kind.default_colors()),
                algos,
                r_values: parse_range(&r)?,
                reps,
                seed,
                epsilon,
                fast_paths,
                output: Some(output),
            };
            let (rows, _) = sweep(&spec)?;
            eprintln!("{} rows written", rows.len());
            Ok(0)
        }
        Command::Verify { instance, solution } => {
            let inst = Instance::load(&instance)?;
            let sol = Solution::load(&solution)?;
            let report = verify(&inst, &sol.elements)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}
