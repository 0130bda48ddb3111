use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qwalk::report::{self, Engine, OutputFormat, ReportError, WalkConfig};
use qwalk::{InitialState, WalkKind};

#[derive(Parser)]
#[command(
    name = "qwalk",
    version,
    about = "Discrete-time quantum walks on the line and the ring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a walk and write the final distribution.
    Simulate {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value = "coinless")]
        walk: WalkArg,
        #[arg(long, default_value = "line")]
        boundary: String,
        /// Absorb everything that crosses below site 0 after each step.
        #[arg(long)]
        wall: bool,
        #[arg(long, value_enum, default_value = "direct")]
        engine: EngineArg,
    },
    /// Coinless walk against the absorbing wall; writes P_abs(t).
    Absorb {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Sample the smoothed long-time density.
    Asymptotics {
        #[arg(long)]
        t: u64,
        /// Center of the density; 0.5 matches the symmetric pair.
        #[arg(long, default_value_t = 0.0)]
        center: f64,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        #[arg(long, allow_hyphen_values = true, requires = "to")]
        from: Option<f64>,
        #[arg(long, allow_hyphen_values = true, requires = "from")]
        to: Option<f64>,
        #[arg(long, default_value_t = report::default_band())]
        band: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run two walk/engine pairs side by side.
    Compare {
        #[command(flatten)]
        run: RunArgs,
        /// `walk:engine`, e.g. `coinless:direct`.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value = "line")]
        boundary: String,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value = "origin")]
    init: InitArg,
    /// Triples `n re im`, one per line; used with `--init custom`.
    #[arg(long)]
    init_file: Option<PathBuf>,
    #[arg(long)]
    steps: u64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct OutArgs {
    /// Written atomically; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum WalkArg {
    Coinless,
    Coined,
    Classical,
}

#[derive(Clone, Copy, ValueEnum)]
enum InitArg {
    Origin,
    Symmetric,
    Custom,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Direct,
    Spectral,
    Asymptotic,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<WalkArg> for WalkKind {
    fn from(w: WalkArg) -> Self {
        match w {
            WalkArg::Coinless => WalkKind::CoinlessStaggered,
            WalkArg::Coined => WalkKind::CoinedFlipFlop,
            WalkArg::Classical => WalkKind::ClassicalSymmetric,
        }
    }
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Direct => Engine::Direct,
            EngineArg::Spectral => Engine::Spectral,
            EngineArg::Asymptotic => Engine::Asymptotic,
        }
    }
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

fn base_config(run: &RunArgs, walk: WalkKind) -> Result<WalkConfig, ReportError> {
    let (init, label) = match (run.init, &run.init_file) {
        (InitArg::Origin, None) => (InitialState::OriginDelta, "origin".to_string()),
        (InitArg::Symmetric, None) => (InitialState::SymmetricPair, "symmetric".to_string()),
        (InitArg::Custom, Some(path)) => {
            (report::load_custom_state(path)?, path.display().to_string())
        }
        (InitArg::Custom, None) => {
            return Err(ReportError::Config(
                "--init custom needs --init-file".into(),
            ))
        }
        (_, Some(_)) => {
            return Err(ReportError::Config(
                "--init-file needs --init custom".into(),
            ))
        }
    };
    let mut config = WalkConfig::new(walk, init, run.steps);
    config.init_label = label;
    config.format = run.out.format.into();
    Ok(config)
}

fn parse_pair(text: &str) -> Result<(WalkKind, Engine), ReportError> {
    let bad = || ReportError::Config(format!("expected `walk:engine`, got `{text}`"));
    let (walk, engine) = text.split_once(':').ok_or_else(bad)?;
    let walk = WalkArg::from_str(walk, true).map_err(|_| bad())?;
    let engine = EngineArg::from_str(engine, true).map_err(|_| bad())?;
    Ok((walk.into(), engine.into()))
}

fn emit(out: &OutArgs, text: String) -> Result<(), ReportError> {
    match &out.output {
        Some(path) => report::write_atomic(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(command: Command) -> Result<(), ReportError> {
    match command {
        Command::Simulate {
            run,
            walk,
            boundary,
            wall,
            engine,
        } => {
            let mut config = base_config(&run, walk.into())?;
            config.boundary = report::parse_boundary(&boundary)?;
            config.wall = wall;
            config.engine = engine.into();
            let result = report::run(&config)?;
            let text = match config.format {
                OutputFormat::Csv => report::simulate_csv(&result),
                OutputFormat::Json => report::report_json(&result),
            };
            emit(&run.out, text)
        }
        Command::Absorb { run } => {
            let config = base_config(&run, WalkKind::CoinlessStaggered)?;
            let result = report::absorb(&config)?;
            let text = match config.format {
                OutputFormat::Csv => report::absorb_csv(&result),
                OutputFormat::Json => report::report_json(&result),
            };
            emit(&run.out, text)
        }
        Command::Asymptotics {
            t,
            center,
            step,
            from,
            to,
            band,
            out,
        } => {
            let range = from.zip(to);
            let curve = report::asymptotic_curve(t, center, step, range, band)?;
            let text = match out.format {
                FormatArg::Csv => report::curve_csv(&curve),
                FormatArg::Json => report::report_json(&curve),
            };
            emit(&out, text)
        }
        Command::Compare {
            run,
            a,
            b,
            boundary,
        } => {
            let boundary = report::parse_boundary(&boundary)?;
            let configs = [a, b].map(|pair| {
                let (walk, engine) = parse_pair(&pair)?;
                let mut config = base_config(&run, walk)?;
                config.boundary = boundary;
                config.engine = engine;
                Ok::<_, ReportError>(config)
            });
            let [a, b] = configs;
            let comparison = report::compare(&a?, &b?)?;
            let text = match run.out.format {
                FormatArg::Csv => report::comparison_csv(&comparison),
                FormatArg::Json => report::report_json(&comparison),
            };
            emit(&run.out, text)
        }
    }
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
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
