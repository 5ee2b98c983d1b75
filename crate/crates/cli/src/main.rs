use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sharkdepth_cli::{
    cmd_analyze, cmd_bias_experiment, cmd_compile, cmd_covering, cmd_cycles, cmd_dataset, cmd_extract, cmd_iterate,
    cmd_rho, cmd_tradeoff, CliError, CliResult, DatasetArgs, Format, Options, Output,
};

/// Exact periodic-orbit, crossing-growth and ReLU depth/width analysis of
/// piecewise-linear interval maps.
///
/// Maps are given as tent:<mu>, logistic:<r>[:<grid>], canonical:<3|4|5> or
/// file:<path>. Scalars are integers, fractions like 3/7, or decimals.
#[derive(Parser)]
#[command(name = "sharkdepth", version)]
struct Cli {
    /// Breakpoint cap for any single iterate.
    #[arg(long, global = true, default_value_t = sharkdepth::DEFAULT_BREAKPOINT_CAP)]
    cap: usize,
    /// Residual tolerance for the growth-rate bisection.
    #[arg(long, global = true, default_value_t = sharkdepth::spectral::RHO_TOL)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Write the report (or the produced file) here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Prime period, cycles, covering chain and growth regime.
    Analyze {
        map: String,
        #[arg(long, default_value_t = 8)]
        max_period: usize,
    },
    /// Piece counts and crossing vectors of f^t for t = 1..t_max.
    Iterate {
        map: String,
        #[arg(long, default_value_t = 10)]
        t_max: usize,
        /// Count crossings over x,y instead of the covering chain.
        #[arg(long)]
        interval: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_period: usize,
    },
    /// Cycles of the given least periods.
    Cycles {
        map: String,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5,6,7,8")]
        periods: Vec<usize>,
    },
    /// Covering graph, chain and transfer matrix.
    Covering {
        map: String,
        #[arg(long)]
        period: Option<usize>,
        #[arg(long, default_value_t = 8)]
        max_period: usize,
    },
    /// Growth rates rho_r for r = 1..r_max.
    Rho {
        #[arg(long, default_value_t = 20)]
        r_max: u32,
    },
    /// Network computing the k-fold iterate of tent(mu).
    Compile { mu: String, k: usize },
    /// PWL function computed by a network file.
    Extract {
        network: PathBuf,
        #[arg(long, default_value = "0,1")]
        domain: String,
    },
    /// Alternating-label dataset realized by f^(m k).
    Dataset {
        map: String,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 3)]
        p: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Target values x,y; defaults to the first chain interval.
        #[arg(long)]
        interval: Option<String>,
        /// Check the error bound for depth l and width u, written l,u.
        #[arg(long = "verify")]
        verify: Vec<String>,
    },
    /// Largest width with a guaranteed error bound, per depth.
    Tradeoff {
        p: usize,
        k: u32,
        #[arg(long)]
        l_max: Option<u32>,
    },
    /// Period 3 of tent(phi_hat) versus tent(phi_hat - epsilon).
    BiasExperiment {
        #[arg(long, default_value = "1/100")]
        epsilon: String,
    },
}

fn parse_pair(s: &str) -> CliResult<(u32, u64)> {
    let bad = || CliError::Parse(format!("--verify {s:?}: expected l,u"));
    let (l, u) = s.split_once(',').ok_or_else(bad)?;
    Ok((l.trim().parse().map_err(|_| bad())?, u.trim().parse().map_err(|_| bad())?))
}

fn dispatch(cli: &Cli, opts: &Options) -> CliResult<Output> {
    match &cli.command {
        Command::Analyze { map, max_period } => cmd_analyze(map, *max_period, opts),
        Command::Iterate { map, t_max, interval, max_period } => {
            cmd_iterate(map, *t_max, interval.as_deref(), *max_period, opts)
        }
        Command::Cycles { map, periods } => cmd_cycles(map, periods, opts),
        Command::Covering { map, period, max_period } => cmd_covering(map, *period, *max_period, opts),
        Command::Rho { r_max } => cmd_rho(*r_max, opts),
        Command::Compile { mu, k } => cmd_compile(mu, *k, opts),
        Command::Extract { network, domain } => cmd_extract(&network.to_string_lossy(), domain),
        Command::Dataset { map, k, p, m, interval, verify } => {
            let verify = verify.iter().map(|s| parse_pair(s)).collect::<CliResult<Vec<_>>>()?;
            let args = DatasetArgs { map, m: *m, p: *p, k: *k, interval: interval.as_deref(), verify: &verify };
            cmd_dataset(&args, opts)
        }
        Command::Tradeoff { p, k, l_max } => cmd_tradeoff(*p, *k, *l_max, opts),
        Command::BiasExperiment { epsilon } => cmd_bias_experiment(epsilon, opts),
    }
}

fn emit(out: &Option<PathBuf>, output: Output) -> CliResult<()> {
    match (output.artifact, out) {
        (Some(artifact), Some(path)) => {
            fs::write(path, artifact).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            print!("{}", output.report);
        }
        (Some(artifact), None) => {
            print!("{artifact}");
            eprint!("{}", output.report);
        }
        (None, Some(path)) => {
            fs::write(path, output.report).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        }
        (None, None) => print!("{}", output.report),
    }
    std::io::stdout().flush()?;
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
    let opts = Options {
        cap: cli.cap,
        tol: cli.tol,
        format: match cli.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        },
    };
    let result = dispatch(&cli, &opts).and_then(|o| emit(&cli.out, o));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let CliError::Resource { partial: Some(p), .. } = &e {
                print!("{p}");
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
