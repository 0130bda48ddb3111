//! Run configuration and the CSV/JSON artifacts written by the `qwalk` binary.
//!
//! Output is a pure function of the configuration: floats are written with
//! 17 significant digits, rows are in site order, and nothing time-dependent
//! is recorded. Comment lines start with `#`.

use serde::Serialize;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

use crate::asymptotics::{classify, peak_band, RegionClass, SmoothedPdf, DEFAULT_BAND_COEFFICIENT};
use crate::error::WalkError;
use crate::evolution::{evolve, step_classical, ClassicalDistribution, WalkKind};
use crate::spectral::{evolve_field_spectral, required_sites};
use crate::state::{
    make_initial, moments_of, support_bounds, AmplitudeField, Boundary, InitialState, MomentReport,
    C64,
};
use crate::wall::{run_absorption_with, AbsorptionSeries, WallConfig};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl ReportError {
    /// 2 for configuration problems, 3 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            ReportError::Config(_) | ReportError::Walk(_) => 2,
            ReportError::Io { .. } => 3,
        }
    }
}

pub type Result<T, E = ReportError> = std::result::Result<T, E>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Direct,
    Spectral,
    Asymptotic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WalkConfig {
    pub walk: WalkKind,
    pub init: InitialState,
    /// `origin`, `symmetric` or the custom file path, echoed in outputs.
    pub init_label: String,
    pub steps: u64,
    pub boundary: Boundary,
    pub wall: bool,
    pub engine: Engine,
    pub format: OutputFormat,
}

impl WalkConfig {
    pub fn new(walk: WalkKind, init: InitialState, steps: u64) -> Self {
        let init_label = match &init {
            InitialState::OriginDelta => "origin",
            InitialState::SymmetricPair => "symmetric",
            InitialState::Custom(_) => "custom",
        }
        .to_string();
        Self {
            walk,
            init,
            init_label,
            steps,
            boundary: Boundary::Line,
            wall: false,
            engine: Engine::Direct,
            format: OutputFormat::Csv,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.boundary.validate()?;
        let config = |msg: &str| Err(ReportError::Config(msg.to_string()));
        if self.engine != Engine::Direct && self.walk != WalkKind::CoinlessStaggered {
            return config("the spectral and asymptotic engines only run the coinless walk");
        }
        if self.engine == Engine::Asymptotic {
            if matches!(self.init, InitialState::Custom(_)) {
                return config("the asymptotic engine needs the origin or symmetric initial state");
            }
            if self.boundary != Boundary::Line {
                return config("the asymptotic engine is only defined on the line");
            }
            if self.steps == 0 {
                return config("the asymptotic engine needs at least one step");
            }
        }
        if self.wall {
            if self.boundary != Boundary::Line {
                return config("the absorbing wall needs the line boundary");
            }
            if self.walk != WalkKind::CoinlessStaggered || self.engine != Engine::Direct {
                return config(
                    "the absorbing wall runs with the coinless walk and the direct engine",
                );
            }
            if self.init.amplitudes().iter().any(|(n, _)| *n < 0) {
                return config("the absorbing wall needs an initial state supported on n >= 0");
            }
        }
        Ok(())
    }

    fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            walk: walk_name(self.walk),
            init: self.init_label.clone(),
            steps: self.steps,
            boundary: boundary_name(self.boundary),
            wall: self.wall,
            engine: self.engine,
        }
    }
}

pub fn walk_name(kind: WalkKind) -> &'static str {
    match kind {
        WalkKind::CoinlessStaggered => "coinless",
        WalkKind::CoinedFlipFlop => "coined",
        WalkKind::ClassicalSymmetric => "classical",
    }
}

pub fn boundary_name(boundary: Boundary) -> String {
    match boundary {
        Boundary::Line => "line".to_string(),
        Boundary::Circle(n) => format!("circle:{n}"),
    }
}

/// Parses `line` or `circle:N`.
pub fn parse_boundary(text: &str) -> Result<Boundary> {
    if text == "line" {
        return Ok(Boundary::Line);
    }
    let size = text
        .strip_prefix("circle:")
        .and_then(|n| n.parse::<usize>().ok())
        .ok_or_else(|| {
            ReportError::Config(format!(
                "boundary must be `line` or `circle:N`, got `{text}`"
            ))
        })?;
    let boundary = Boundary::Circle(size);
    boundary.validate()?;
    Ok(boundary)
}

/// Parses a custom initial state: one `n re im` triple per line, `#` comments.
pub fn parse_custom_state(text: &str) -> Result<InitialState> {
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || {
            ReportError::Config(format!(
                "line {}: expected `n re im`, got `{line}`",
                lineno + 1
            ))
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(bad());
        }
        let n = fields[0].parse::<i64>().map_err(|_| bad())?;
        let re = fields[1].parse::<f64>().map_err(|_| bad())?;
        let im = fields[2].parse::<f64>().map_err(|_| bad())?;
        entries.push((n, C64::new(re, im)));
    }
    Ok(InitialState::Custom(entries))
}

pub fn load_custom_state(path: &Path) -> Result<InitialState> {
    let text = std::fs::read_to_string(path).map_err(|source| ReportError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_custom_state(&text)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub walk: &'static str,
    pub init: String,
    pub steps: u64,
    pub boundary: String,
    pub wall: bool,
    pub engine: Engine,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DistributionRow {
    pub n: i64,
    pub re: f64,
    pub im: f64,
    pub prob: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AbsorptionRow {
    pub t: u64,
    pub p_abs: f64,
    pub p_survive: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EngineMetadata {
    pub engine: Engine,
    /// Sites in the transform grid, for the spectral engine.
    pub grid_sites: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub config: ConfigEcho,
    pub distribution: Vec<DistributionRow>,
    pub moments: MomentReport,
    pub absorption: Option<Vec<AbsorptionRow>>,
    pub metadata: EngineMetadata,
}

impl RunReport {
    pub fn total_probability(&self) -> f64 {
        self.distribution.iter().map(|r| r.prob).sum()
    }

    pub fn final_absorption(&self) -> f64 {
        self.absorption
            .as_ref()
            .and_then(|rows| rows.last())
            .map_or(0.0, |r| r.p_abs)
    }
}

/// Sites every engine reports: the initial support widened by `2·steps` on
/// the line, the whole ring on the circle.
fn report_sites(config: &WalkConfig) -> Vec<i64> {
    match config.boundary {
        Boundary::Circle(size) => (0..size as i64).collect(),
        Boundary::Line => {
            let sites: Vec<i64> = config.init.amplitudes().iter().map(|e| e.0).collect();
            let lo = sites.iter().copied().min().unwrap_or(0) - 2 * config.steps as i64;
            let hi = sites.iter().copied().max().unwrap_or(0) + 2 * config.steps as i64;
            (lo..=hi).collect()
        }
    }
}

fn rows_from_field(field: &AmplitudeField, sites: &[i64]) -> Vec<DistributionRow> {
    sites
        .iter()
        .map(|&n| {
            let a = field.get(n);
            DistributionRow {
                n,
                re: a.re,
                im: a.im,
                prob: a.norm_sqr(),
            }
        })
        .collect()
}

fn absorption_rows(series: &AbsorptionSeries) -> Vec<AbsorptionRow> {
    series
        .rows()
        .map(|(t, p_abs, p_survive)| AbsorptionRow {
            t,
            p_abs,
            p_survive,
        })
        .collect()
}

/// Executes one configured run.
pub fn run(config: &WalkConfig) -> Result<RunReport> {
    config.validate()?;
    let sites = report_sites(config);
    let mut grid_sites = None;
    let mut absorption = None;
    let distribution = match config.engine {
        Engine::Direct if config.wall => {
            let run = run_absorption_with(&config.init, config.steps, WallConfig::absorbing())?;
            absorption = Some(absorption_rows(&run.series));
            rows_from_field(&run.field, &sites)
        }
        Engine::Direct if config.walk == WalkKind::ClassicalSymmetric => {
            let init = make_initial(&config.init, config.boundary, config.steps)?;
            let mut dist = ClassicalDistribution::from_field(&init);
            for _ in 0..config.steps {
                step_classical(&mut dist)?;
            }
            sites
                .iter()
                .map(|&n| {
                    let prob = dist.get(n);
                    DistributionRow {
                        n,
                        re: prob.sqrt(),
                        im: 0.0,
                        prob,
                    }
                })
                .collect()
        }
        Engine::Direct => {
            let init = make_initial(&config.init, config.boundary, config.steps)?;
            rows_from_field(&evolve(&init, config.steps, config.walk)?, &sites)
        }
        Engine::Spectral => {
            let init = match config.boundary {
                Boundary::Line => {
                    let seed = make_initial(&config.init, Boundary::Line, 0)?;
                    let (lo, _) = support_bounds(&seed)?.unwrap_or((0, 0));
                    let width = required_sites(&seed, config.steps)? as i64;
                    seed.rewindowed(lo, lo + width - 1)?
                }
                ring => make_initial(&config.init, ring, 0)?,
            };
            grid_sites = Some(init.len());
            rows_from_field(&evolve_field_spectral(&init, config.steps)?, &sites)
        }
        Engine::Asymptotic => {
            let pdf = SmoothedPdf::new(config.steps, config.init.center())?;
            sites
                .iter()
                .map(|&n| {
                    let prob = pdf.density(n as f64);
                    DistributionRow {
                        n,
                        re: prob.sqrt(),
                        im: 0.0,
                        prob,
                    }
                })
                .collect()
        }
    };
    let moments = moments_of(
        distribution.iter().map(|r| (r.n, r.prob)),
        config.init.center(),
    );
    Ok(RunReport {
        config: config.echo(),
        distribution,
        moments,
        absorption,
        metadata: EngineMetadata {
            engine: config.engine,
            grid_sites,
        },
    })
}

/// Float text with 17 significant digits; parses back to the same value.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn config_comment(out: &mut String, command: &str, echo: &ConfigEcho) {
    let engine = match echo.engine {
        Engine::Direct => "direct",
        Engine::Spectral => "spectral",
        Engine::Asymptotic => "asymptotic",
    };
    let _ = writeln!(out, "# qwalk {command}");
    let _ = writeln!(
        out,
        "# walk={} init={} steps={} boundary={} wall={} engine={}",
        echo.walk, echo.init, echo.steps, echo.boundary, echo.wall, engine
    );
}

fn moments_comment(out: &mut String, m: &MomentReport) {
    let _ = writeln!(
        out,
        "# total_probability={} abs_first_moment={} second_moment={} center={}",
        format_float(m.total_probability),
        format_float(m.abs_first_moment),
        format_float(m.second_moment),
        format_float(m.center)
    );
}

/// Distribution CSV, header `n,re,im,prob`.
pub fn simulate_csv(report: &RunReport) -> String {
    let mut out = String::new();
    config_comment(&mut out, "simulate", &report.config);
    if let Some(grid) = report.metadata.grid_sites {
        let _ = writeln!(out, "# grid_sites={grid}");
    }
    moments_comment(&mut out, &report.moments);
    if report.absorption.is_some() {
        let _ = writeln!(out, "# p_abs={}", format_float(report.final_absorption()));
    }
    out.push_str("n,re,im,prob\n");
    for r in &report.distribution {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.n,
            format_float(r.re),
            format_float(r.im),
            format_float(r.prob)
        );
    }
    out
}

/// Absorption CSV, header `t,p_abs,p_survive`.
pub fn absorb_csv(report: &RunReport) -> String {
    let mut out = String::new();
    config_comment(&mut out, "absorb", &report.config);
    out.push_str("t,p_abs,p_survive\n");
    for r in report.absorption.iter().flatten() {
        let _ = writeln!(
            out,
            "{},{},{}",
            r.t,
            format_float(r.p_abs),
            format_float(r.p_survive)
        );
    }
    out
}

pub fn report_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}

/// Runs with the wall forced on.
pub fn absorb(config: &WalkConfig) -> Result<RunReport> {
    let mut config = config.clone();
    config.wall = true;
    run(&config)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurveSample {
    pub n: f64,
    pub density: f64,
    /// Exact probability in `[n − step/2, n + step/2]`.
    pub mass: f64,
    pub region: RegionClass,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticCurve {
    pub t: u64,
    pub center: f64,
    pub step: f64,
    pub band: f64,
    pub marker_minus: f64,
    pub marker_plus: f64,
    pub samples: Vec<CurveSample>,
}

/// Samples the smoothed density on `from, from + step, … ≤ to`. Defaults
/// cover the support with one step of margin.
pub fn asymptotic_curve(
    t: u64,
    center: f64,
    step: f64,
    range: Option<(f64, f64)>,
    band_coefficient: f64,
) -> Result<AsymptoticCurve> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(ReportError::Config(format!(
            "sample step must be positive, got {step}"
        )));
    }
    let pdf = SmoothedPdf::new(t, center)?;
    let edge = pdf.half_width();
    let (from, to) = range.unwrap_or((center - edge - step, center + edge + step));
    if !(from.is_finite() && to.is_finite() && from <= to) {
        return Err(ReportError::Config(format!("invalid range {from}..{to}")));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    let samples = (0..count)
        .map(|i| {
            let n = from + step * i as f64;
            Ok(CurveSample {
                n,
                density: pdf.density(n),
                mass: pdf.cdf(n + 0.5 * step) - pdf.cdf(n - 0.5 * step),
                region: classify(n - center, t, band_coefficient)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AsymptoticCurve {
        t,
        center,
        step,
        band: peak_band(t, band_coefficient),
        marker_minus: center - edge,
        marker_plus: center + edge,
        samples,
    })
}

pub fn default_band() -> f64 {
    DEFAULT_BAND_COEFFICIENT
}

/// Curve CSV, header `n,density,mass,region`.
pub fn curve_csv(curve: &AsymptoticCurve) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# qwalk asymptotics");
    let _ = writeln!(
        out,
        "# t={} center={} step={} band={}",
        curve.t,
        format_float(curve.center),
        format_float(curve.step),
        format_float(curve.band)
    );
    let _ = writeln!(
        out,
        "# marker_minus={} marker_plus={}",
        format_float(curve.marker_minus),
        format_float(curve.marker_plus)
    );
    out.push_str("n,density,mass,region\n");
    for s in &curve.samples {
        let region = match s.region {
            RegionClass::Outer => "outer",
            RegionClass::Peak => "peak",
            RegionClass::Interior => "interior",
        };
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_float(s.n),
            format_float(s.density),
            format_float(s.mass),
            region
        );
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub n: i64,
    pub prob_a: f64,
    pub prob_b: f64,
    pub amp_dev: f64,
    pub prob_dev: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub a: ConfigEcho,
    pub b: ConfigEcho,
    pub rows: Vec<ComparisonRow>,
    pub max_amp_dev: f64,
    pub max_prob_dev: f64,
    pub mean_prob_dev: f64,
    pub second_moment_a: f64,
    pub second_moment_b: f64,
    pub second_moment_ratio: f64,
}

/// Runs both configurations and joins their distributions by site.
pub fn compare(a: &WalkConfig, b: &WalkConfig) -> Result<Comparison> {
    if a.steps != b.steps || a.init != b.init || a.boundary != b.boundary {
        return Err(ReportError::Config(
            "compared runs must share steps, initial state and boundary".into(),
        ));
    }
    let ra = run(a)?;
    let rb = run(b)?;
    let rows: Vec<ComparisonRow> = ra
        .distribution
        .iter()
        .zip(&rb.distribution)
        .map(|(x, y)| {
            debug_assert_eq!(x.n, y.n);
            ComparisonRow {
                n: x.n,
                prob_a: x.prob,
                prob_b: y.prob,
                amp_dev: (C64::new(x.re, x.im) - C64::new(y.re, y.im)).norm(),
                prob_dev: (x.prob - y.prob).abs(),
            }
        })
        .collect();
    let max_amp_dev = rows.iter().map(|r| r.amp_dev).fold(0.0, f64::max);
    let max_prob_dev = rows.iter().map(|r| r.prob_dev).fold(0.0, f64::max);
    let mean_prob_dev = rows.iter().map(|r| r.prob_dev).sum::<f64>() / rows.len().max(1) as f64;
    let (second_moment_a, second_moment_b) = (ra.moments.second_moment, rb.moments.second_moment);
    Ok(Comparison {
        a: ra.config,
        b: rb.config,
        rows,
        max_amp_dev,
        max_prob_dev,
        mean_prob_dev,
        second_moment_a,
        second_moment_b,
        second_moment_ratio: second_moment_a / second_moment_b,
    })
}

/// Comparison CSV, header `n,prob_a,prob_b,amp_dev,prob_dev`.
pub fn comparison_csv(c: &Comparison) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# qwalk compare");
    for (tag, echo) in [("a", &c.a), ("b", &c.b)] {
        let _ = writeln!(
            out,
            "# {tag}: walk={} init={} steps={} boundary={} engine={}",
            echo.walk,
            echo.init,
            echo.steps,
            echo.boundary,
            serde_json::to_value(echo.engine)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default()
        );
    }
    let _ = writeln!(
        out,
        "# max_amp_dev={} max_prob_dev={} mean_prob_dev={}",
        format_float(c.max_amp_dev),
        format_float(c.max_prob_dev),
        format_float(c.mean_prob_dev)
    );
    let _ = writeln!(
        out,
        "# second_moment_a={} second_moment_b={} second_moment_ratio={}",
        format_float(c.second_moment_a),
        format_float(c.second_moment_b),
        format_float(c.second_moment_ratio)
    );
    out.push_str("n,prob_a,prob_b,amp_dev,prob_dev\n");
    for r in &c.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.n,
            format_float(r.prob_a),
            format_float(r.prob_b),
            format_float(r.amp_dev),
            format_float(r.prob_dev)
        );
    }
    out
}

/// Writes via a temporary file in the target directory and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let io_err = |source| ReportError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path.file_name().ok_or_else(|| {
        io_err(std::io::Error::new(
            std::io::ErrorKind::InvalidInput,
            "output path has no file name",
        ))
    })?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        name.to_string_lossy(),
        std::process::id()
    ));
    let result = std::fs::File::create(&tmp)
        .and_then(|mut f| {
            f.write_all(contents.as_bytes())?;
            f.sync_all()
        })
        .and_then(|_| std::fs::rename(&tmp, path));
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    result.map_err(io_err)
}
