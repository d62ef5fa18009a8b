use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use deltakp::oracle::DEFAULT_CAP;
use deltakp::{Instance, Mode};
use deltakp_cli::{
    bench, exit, generate, parse_epsilon, solve, write_csv, BenchOptions, CliError, GenParams, InstanceFile, Kind,
    SolveOptions, EXIT_CODES_HELP,
};

#[derive(Parser)]
#[command(name = "deltakp", version, about = "Solvers for bounded knapsack and standard-form integer programs", after_help = EXIT_CODES_HELP)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one instance file and print a JSON report.
    Solve {
        path: PathBuf,
        /// greedy | fptas | exact-levels | exact-paths | oracle
        #[arg(long, default_value = "exact-paths")]
        mode: Mode,
        /// Accuracy for fptas, written p/q.
        #[arg(long)]
        epsilon: Option<String>,
        /// Override the l1 search radius of the exact solvers.
        #[arg(long)]
        radius: Option<i64>,
        /// Largest box the oracle may enumerate.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
        /// Binary splitting of multiplicities in exact-levels.
        #[arg(long)]
        binarized: bool,
        /// Cross-check sliding-window values in exact-paths.
        #[arg(long)]
        verify: bool,
    },
    /// Write generated instance files into a directory.
    Generate {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        max_entry: i64,
        #[arg(long, default_value_t = 3)]
        max_u: i64,
        #[arg(long, default_value_t = 5)]
        max_c: i64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// knapsack | standard
        #[arg(long, default_value = "knapsack")]
        kind: Kind,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run solvers over a directory of instance files and print CSV.
    Bench {
        dir: PathBuf,
        /// Comma-separated modes.
        #[arg(long, value_delimiter = ',', default_value = "greedy,fptas,exact-paths")]
        modes: Vec<Mode>,
        /// Comma-separated p/q values for fptas rows.
        #[arg(long, value_delimiter = ',', default_value = "1/2,1/4")]
        epsilons: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u128,
        #[arg(long)]
        binarized: bool,
    },
    /// Check instance files; prints one line per file.
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}

fn run(cmd: Cmd) -> Result<i32, CliError> {
    match cmd {
        Cmd::Solve { path, mode, epsilon, radius, cap, binarized, verify } => {
            let file = InstanceFile::read(&path)?;
            let epsilon = epsilon.as_deref().map(parse_epsilon).transpose()?;
            let opts = SolveOptions { mode, epsilon, radius, cap, binarized, verify_recurrence: verify };
            let report = solve(&file.instance, &opts)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            Ok(if report.is_infeasible() { exit::INFEASIBLE } else { exit::OK })
        }
        Cmd::Generate { seed, m, n, max_entry, max_u, max_c, count, kind, out } => {
            if m == 0 || n == 0 || max_entry <= 0 || max_u < 0 || max_c < 0 || (kind == Kind::Standard && n < m) {
                return Err(CliError::Invalid("generator parameters must be positive (and n >= m for standard)".into()));
            }
            std::fs::create_dir_all(&out).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
            let params = GenParams { seed, m, n, max_entry, max_u, max_c, count, kind };
            for (name, file) in generate(&params) {
                let path = out.join(format!("{name}.json"));
                std::fs::write(&path, file.to_canonical()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                println!("{}", path.display());
            }
            Ok(exit::OK)
        }
        Cmd::Bench { dir, modes, epsilons, cap, binarized } => {
            let epsilons = epsilons.iter().map(|e| parse_epsilon(e)).collect::<Result<Vec<_>, _>>()?;
            let files = deltakp_cli::bench::corpus(&dir)?;
            let records = bench(&files, &BenchOptions { modes, epsilons, cap, binarized });
            let stdout = std::io::stdout();
            write_csv(stdout.lock(), &records)?;
            Ok(exit::OK)
        }
        Cmd::Validate { paths } => {
            let mut worst = exit::OK;
            let mut out = std::io::stdout().lock();
            for p in paths {
                match InstanceFile::read(&p) {
                    Ok(f) => {
                        let a = f.instance.a();
                        let delta = deltakp::linalg::delta(a).map(|d| d.to_string()).unwrap_or_default();
                        let kind = match f.instance {
                            Instance::Knapsack(_) => "knapsack",
                            Instance::Standard(_) => "standard",
                        };
                        let _ = writeln!(out, "ok {} {} m={} n={} delta={}", p.display(), kind, a.rows(), a.cols(), delta);
                    }
                    Err(e) => {
                        let _ = writeln!(out, "fail {}: {e}", p.display());
                        worst = worst.max(e.exit_code());
                    }
                }
            }
            Ok(worst)
        }
    }
}
