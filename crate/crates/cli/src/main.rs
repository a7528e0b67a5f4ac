use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use subblock_codes::exact_oracle::{OracleConfig, DEFAULT_TIME_BUDGET};
use subblock_codes::finite_bounds::BoundConfig;
use subblock_codes::spaces::DEFAULT_SPACE_CAP;
use subblock_codes::CodeParams;
use subblock_codes_cli::commands::{
    self, CommandError, Family, Kind, Output, RateFamily, ThresholdChoice, EXIT_USAGE,
};
use subblock_codes_cli::figures::{FigureId, FigureSpec, Gap, DEFAULT_DELTAS};
use subblock_codes_cli::verify::Level;

#[derive(Parser)]
#[command(name = "sbcodes", version, about = "Bounds, exact sizes and rate gaps for subblock-constrained codes")]
struct Cli {
    /// Print JSON instead of text or CSV.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for grid computations (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest space the oracle will enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_SPACE_CAP)]
    cap: u64,
    /// Oracle time budget per instance in seconds (default 60 for `exact`,
    /// 10 for `verify fast`, 20 for `verify full`).
    #[arg(long, global = true)]
    budget: Option<f64>,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(short = 'm', default_value_t = 1)]
    m: u32,
    #[arg(short = 'L')]
    l: u32,
    #[arg(short = 'd')]
    d: u32,
    #[arg(short = 'w')]
    ws: u32,
}

impl ParamArgs {
    fn params(&self) -> Result<CodeParams, CommandError> {
        Ok(CodeParams::new(self.m, self.l, self.d, self.ws)?)
    }
}

#[derive(Args)]
struct GridArgs {
    /// Comma-separated δ values.
    #[arg(long, value_delimiter = ',', conflicts_with = "grid")]
    delta: Vec<f64>,
    /// Inclusive δ grid start:stop:step.
    #[arg(long)]
    grid: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Every applicable finite bound and the best of each direction.
    Bound {
        family: Family,
        #[command(flatten)]
        params: ParamArgs,
        /// Only list methods whose label contains this string.
        #[arg(long)]
        method: Option<String>,
    },
    /// Optimal size and one optimal code by exhaustive clique search.
    Exact {
        kind: Kind,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Asymptotic GV and sphere-packing rates over a δ grid.
    Rate {
        family: RateFamily,
        #[arg(short = 'L')]
        l: u32,
        #[arg(short = 'w')]
        ws: u32,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Rate-penalty gap lower bound over a δ grid.
    Gap {
        gap: Gap,
        #[arg(short = 'L')]
        l: u32,
        #[arg(short = 'w')]
        ws: u32,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Roots delimiting where the gap bounds are strictly positive.
    Threshold {
        #[arg(default_value = "all")]
        which: ThresholdChoice,
        /// Even subblock lengths (default 2,4,..,64).
        #[arg(short = 'L', value_delimiter = ',')]
        lengths: Vec<u32>,
    },
    /// CSV table behind one of the nine figures.
    Figure {
        id: FigureId,
        #[arg(long, value_delimiter = ',')]
        deltas: Vec<f64>,
        /// Even lengths for the length sweeps (default 2,4,..,64).
        #[arg(short = 'L', value_delimiter = ',')]
        lengths: Vec<u32>,
        /// Subblock length for the weight sweeps.
        #[arg(long)]
        weight_sweep_l: Option<u32>,
        /// Also render an SVG line plot here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run the cross-module verification suite.
    Verify {
        #[arg(default_value = "fast")]
        level: LevelArg,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

fn budget(cli: &Cli, default: Duration) -> Result<Duration, CommandError> {
    match cli.budget {
        None => Ok(default),
        Some(s) => Duration::try_from_secs_f64(s)
            .map_err(|_| CommandError::usage(format!("budget must be a non-negative number of seconds, got {s}"))),
    }
}

fn write_file(path: &PathBuf, content: &str) -> Result<(), CommandError> {
    std::fs::write(path, content).map_err(|e| CommandError {
        code: EXIT_USAGE,
        message: format!("cannot write {}: {e}", path.display()),
    })
}

fn run(cli: &Cli) -> Result<Output, CommandError> {
    match &cli.command {
        Command::Bound { family, params, method } => {
            let cfg = BoundConfig::default();
            commands::bound(*family, &params.params()?, method.as_deref(), &cfg)
        }
        Command::Exact { kind, params } => {
            let cfg = OracleConfig {
                space_cap: cli.cap,
                time_budget: Some(budget(cli, DEFAULT_TIME_BUDGET)?),
                ..OracleConfig::default()
            };
            commands::exact(*kind, &params.params()?, &cfg)
        }
        Command::Rate { family, l, ws, grid } => {
            let deltas = commands::parse_grid(&grid.delta, grid.grid.as_deref())?;
            commands::rate(*family, *l, *ws, &deltas)
        }
        Command::Gap { gap, l, ws, grid } => {
            let deltas = commands::parse_grid(&grid.delta, grid.grid.as_deref())?;
            commands::gap(*gap, *l, *ws, &deltas)
        }
        Command::Threshold { which, lengths } => {
            let lengths = if lengths.is_empty() { (2..=64).step_by(2).collect() } else { lengths.clone() };
            commands::threshold(*which, &lengths)
        }
        Command::Figure {
            id,
            deltas,
            lengths,
            weight_sweep_l,
            svg,
        } => {
            let mut spec = FigureSpec::new(*id);
            spec.deltas = if deltas.is_empty() { DEFAULT_DELTAS.to_vec() } else { deltas.clone() };
            if !lengths.is_empty() {
                spec.lengths = lengths.clone();
            }
            if let Some(l) = weight_sweep_l {
                spec.weight_sweep_l = *l;
            }
            let (out, table) = commands::figure(&spec)?;
            if let Some(path) = svg {
                write_file(path, &table.to_svg())?;
            }
            Ok(out)
        }
        Command::Verify { level } => {
            let (level, default) = match level {
                LevelArg::Fast => (Level::Fast, Duration::from_secs(10)),
                LevelArg::Full => (Level::Full, Duration::from_secs(20)),
            };
            commands::verify(level, budget(cli, default)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(EXIT_USAGE as u8);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("global pool is configured once");
    }
    let result = run(&cli).and_then(|out| {
        let rendered = out.render(cli.json);
        match &cli.out {
            Some(path) => write_file(path, &rendered)?,
            None => print!("{rendered}"),
        }
        Ok(out.code)
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
