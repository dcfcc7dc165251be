use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use monotone_index::index::{h_profile_rows, theoretical_index, theoretical_index_via_h};
use monotone_index::{
    empirical_index, HFunction, LomaxParams, QuadratureConfig, TransferFunction, Window, WindowedDistribution,
};
use monotone_index_cli::format::sig;
use monotone_index_cli::input::read_pairs;
use monotone_index_cli::presets;
use monotone_index_cli::simulation::{
    default_n_grid, run_experiment, summarize, write_summary, write_trajectory, ExperimentConfig,
};
use monotone_index_cli::CliError;

const THREADS_ENV: &str = "MONOTONE_INDEX_THREADS";

/// Index of increase: exact values, estimates from data, and Monte Carlo sweeps.
#[derive(Debug, Parser)]
#[command(name = "monotone-index", version)]
struct Cli {
    /// Write CSV here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Significant digits of printed numbers.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
    precision: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact index of the transfer function on a window.
    Theoretical(TheoreticalArgs),
    /// H(u) on an equally spaced grid of (0, 1].
    Hfunc(HfuncArgs),
    /// Empirical index of (x, y) pairs read from CSV.
    Estimate(EstimateArgs),
    /// Trajectories of the empirical index over growing sample sizes.
    Simulate(SimulateArgs),
    /// `simulate` with rho = 0 and additive noise.
    NoiseDemo(NoiseDemoArgs),
}

#[derive(Debug, Args)]
struct TransferArgs {
    #[arg(long, default_value_t = presets::GAMMA, allow_negative_numbers = true)]
    gamma: f64,
    #[arg(long, default_value_t = presets::DELTA, allow_negative_numbers = true)]
    delta: f64,
    #[arg(long, default_value_t = presets::X0, allow_negative_numbers = true)]
    x0: f64,
    /// Relative jump of h above x0.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    rho: f64,
}

impl TransferArgs {
    fn build(&self) -> Result<TransferFunction, CliError> {
        Ok(TransferFunction::new(self.gamma, self.delta, self.x0, self.rho)?)
    }
}

#[derive(Debug, Args)]
struct WindowArgs {
    /// Window (a, b] given as `a,b`. Defaults to `0,2`.
    #[arg(long, value_name = "A,B", value_parser = parse_window, conflicts_with = "paper_window")]
    window: Option<Window>,
    /// Named window: w02, w812 or w020.
    #[arg(long, value_name = "NAME", value_parser = parse_window_preset)]
    paper_window: Option<Window>,
}

impl WindowArgs {
    fn get(&self) -> Window {
        self.window
            .or(self.paper_window)
            .unwrap_or_else(|| presets::window("w02").expect("preset"))
    }
}

#[derive(Debug, Args)]
struct DistArgs {
    /// Lomax shape.
    #[arg(long, default_value_t = 1.5, conflicts_with = "paper_params")]
    alpha: f64,
    /// Lomax scale.
    #[arg(long, default_value_t = 1.0, conflicts_with = "paper_params")]
    beta: f64,
    /// Named Lomax parameters: a15 or a5.
    #[arg(long, value_name = "NAME", value_parser = parse_lomax_preset)]
    paper_params: Option<LomaxParams>,
}

impl DistArgs {
    fn build(&self, window: Window) -> Result<WindowedDistribution, CliError> {
        let base = match self.paper_params {
            Some(p) => p,
            None => LomaxParams::new(self.alpha, self.beta)?,
        };
        Ok(WindowedDistribution::new(base, window)?)
    }
}

#[derive(Debug, Args)]
struct TheoreticalArgs {
    #[command(flatten)]
    transfer: TransferArgs,
    #[command(flatten)]
    window: WindowArgs,
    /// Also compute the index in the quantile domain.
    #[arg(long)]
    via_h: bool,
    #[command(flatten)]
    dist: DistArgs,
}

#[derive(Debug, Args)]
struct HfuncArgs {
    #[command(flatten)]
    transfer: TransferArgs,
    #[command(flatten)]
    window: WindowArgs,
    #[command(flatten)]
    dist: DistArgs,
    /// Number of grid points.
    #[arg(long, default_value_t = 1000)]
    grid: usize,
}

#[derive(Debug, Args)]
struct EstimateArgs {
    /// Two-column CSV of x,y; `-` reads standard input.
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    window: WindowArgs,
    #[command(flatten)]
    dist: DistArgs,
    /// A single sample size.
    #[arg(long, conflicts_with = "n_grid")]
    n: Option<usize>,
    /// Comma-separated increasing sample sizes. Defaults to 20 log-spaced
    /// sizes from 100 to 100000.
    #[arg(long, value_name = "N,N,...", value_delimiter = ',')]
    n_grid: Option<Vec<usize>>,
    #[arg(long, default_value_t = 20)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses every available core. Overridden by
    /// MONOTONE_INDEX_THREADS.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Print per-size median, q10, q90 and mean B_n instead of raw rows.
    #[arg(long)]
    summary: bool,
}

impl SweepArgs {
    fn n_grid(&self) -> Vec<usize> {
        match (&self.n, &self.n_grid) {
            (Some(n), _) => vec![*n],
            (None, Some(g)) => g.clone(),
            (None, None) => default_n_grid(),
        }
    }
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[command(flatten)]
    transfer: TransferArgs,
    /// Standard deviation of additive Gaussian output noise.
    #[arg(long, default_value_t = 0.0)]
    sigma: f64,
    #[command(flatten)]
    sweep: SweepArgs,
}

#[derive(Debug, Args)]
struct NoiseDemoArgs {
    /// Standard deviation of additive Gaussian output noise.
    #[arg(long, default_value_t = 0.1)]
    sigma: f64,
    #[command(flatten)]
    sweep: SweepArgs,
}

fn parse_window(s: &str) -> Result<Window, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let a: f64 = a.trim().parse().map_err(|e| format!("window start: {e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("window end: {e}"))?;
    Window::new(a, b).map_err(|e| e.to_string())
}

fn parse_window_preset(s: &str) -> Result<Window, String> {
    presets::window(s).ok_or_else(|| format!("unknown window `{s}`; expected one of {:?}", presets::WINDOW_NAMES))
}

fn parse_lomax_preset(s: &str) -> Result<LomaxParams, String> {
    presets::lomax(s).ok_or_else(|| {
        format!(
            "unknown parameter set `{s}`; expected one of {:?}",
            presets::LOMAX_NAMES
        )
    })
}

fn threads(flag: usize) -> Result<usize, CliError> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(flag),
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let digits = cli.precision as usize;
    let cfg = QuadratureConfig::default();
    match cli.command {
        Command::Theoretical(args) => {
            let tf = args.transfer.build()?;
            let window = args.window.get();
            let r = theoretical_index(&tf, &window, &cfg)?;
            let mut header = String::from("jump_pos,jump_abs,int_pos,int_abs,value");
            let mut row = [r.jump_pos, r.jump_abs, r.int_pos, r.int_abs, r.value]
                .iter()
                .map(|v| sig(*v, digits))
                .collect::<Vec<_>>()
                .join(",");
            if args.via_h {
                let hf = HFunction::new(tf, args.dist.build(window)?)?;
                let v = theoretical_index_via_h(&hf, &cfg)?;
                header.push_str(",via_h_value");
                row.push(',');
                row.push_str(&sig(v.value, digits));
            }
            writeln!(out, "{header}\n{row}")?;
        }
        Command::Hfunc(args) => {
            let tf = args.transfer.build()?;
            let window = args.window.get();
            let hf = HFunction::new(tf, args.dist.build(window)?)?;
            writeln!(out, "u,H")?;
            for row in h_profile_rows(&hf, args.grid)? {
                match row {
                    Ok((u, h)) => writeln!(out, "{},{}", sig(u, digits), sig(h, digits))?,
                    Err(e) => {
                        writeln!(out, "# error: {e}")?;
                        out.flush()?;
                        return Err(e.into());
                    }
                }
            }
        }
        Command::Estimate(args) => {
            let pairs = if args.input.as_os_str() == "-" {
                read_pairs(io::stdin().lock())?
            } else {
                read_pairs(File::open(&args.input)?)?
            };
            let r = empirical_index(&pairs)?;
            if r.duplicate_x > 0 {
                eprintln!(
                    "warning: {} input value(s) repeat their predecessor; ties keep file order",
                    r.duplicate_x
                );
            }
            writeln!(out, "n,index,numerator,denominator,bn")?;
            writeln!(
                out,
                "{},{},{},{},{}",
                r.n,
                sig(r.index, digits),
                sig(r.numerator, digits),
                sig(r.denominator, digits),
                sig(r.bn, digits)
            )?;
        }
        Command::Simulate(args) => {
            let tf = args.transfer.build()?;
            sweep(&args.sweep, tf, args.sigma, digits, out)?;
        }
        Command::NoiseDemo(args) => {
            let tf = TransferFunction::preset(0.0)?;
            sweep(&args.sweep, tf, args.sigma, digits, out)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn sweep(
    args: &SweepArgs,
    tf: TransferFunction,
    sigma: f64,
    digits: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let cfg = ExperimentConfig {
        dist: args.dist.build(args.window.get())?,
        tf,
        noise_sigma: sigma,
        n_grid: args.n_grid(),
        replications: args.reps,
        base_seed: args.seed,
    };
    let rows = run_experiment(&cfg, threads(args.threads)?)?;
    if args.summary {
        write_summary(out, &summarize(&rows), digits)?;
    } else {
        write_trajectory(out, &rows, digits)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.output.clone() {
        Some(path) => match File::create(path) {
            Ok(f) => run(cli, &mut BufWriter::new(f)),
            Err(e) => Err(CliError::Io(e)),
        },
        None => run(cli, &mut BufWriter::new(io::stdout().lock())),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
