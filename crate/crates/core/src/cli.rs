//! Experiment configs, CSV output and the `rama-sim` command line.
//!
//! Config files are flat TOML key/value documents carrying a `version` key
//! equal to [`CONFIG_VERSION`]; unknown keys are rejected. Command-line flags
//! override values from `--config`.
//!
//! Every CSV starts with `#` comment lines: tool version, generator id, and
//! the fully resolved config between `# config:` and the header row. Feeding
//! that echo back through [`parse_echo`] and re-running reproduces the file
//! byte for byte.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 config validation failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::channel::{LinkBudget, PRNG_ID};
use crate::constellations::{make_psk, make_qam, Constellation, ConstellationKind};
use crate::error::{Error, Result};
use crate::montecarlo::{db_grid, run_sweep, FadingConfig, SweepConfig, XAxis, DEFAULT_SPLITS};
use crate::rates::Scheme;
use crate::region::{trace_region_with_alpha, DEFAULT_ALPHA, DEFAULT_RESOLUTION};
use crate::transceiver::{rama1_transmit, rama2_feed, rama2_transmit, superpose, PowerAllocation};

pub const CONFIG_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest error the signal check accepts.
pub const SIGNAL_TOLERANCE: f64 = 1e-12;

const CONFIG_MARKER: &str = "# config:";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Region,
    Sweep,
    SignalCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Region => "region",
            Command::Sweep => "sweep",
            Command::SignalCheck => "signal-check",
        }
    }

    fn parse(s: &str) -> Result<Command> {
        match s {
            "region" => Ok(Command::Region),
            "sweep" => Ok(Command::Sweep),
            "signal-check" => Ok(Command::SignalCheck),
            other => Err(Error::config(
                "command",
                format!("unknown command `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RegionConfig {
    pub version: Option<u32>,
    pub command: Option<String>,
    pub g1_db: Option<f64>,
    pub g2_db: Option<f64>,
    pub schemes: Vec<Scheme>,
    pub n: usize,
    pub alpha: f64,
}

impl Default for RegionConfig {
    fn default() -> Self {
        RegionConfig {
            version: Some(CONFIG_VERSION),
            command: Some(Command::Region.name().into()),
            g1_db: None,
            g2_db: None,
            schemes: vec![Scheme::Oma, Scheme::Noma, Scheme::Rama2],
            n: DEFAULT_RESOLUTION,
            alpha: DEFAULT_ALPHA,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepFileConfig {
    pub version: Option<u32>,
    pub command: Option<String>,
    pub schemes: Vec<Scheme>,
    pub x_axis: XAxis,
    /// Grid values in dB; defaults depend on `x_axis`.
    pub grid_db: Option<Vec<f64>>,
    pub splits: Vec<f64>,
    pub anchor_db: f64,
    pub alpha: f64,
    /// Fading realizations per grid point; absent disables fading.
    pub num_samples: Option<usize>,
    pub seed: u64,
}

impl Default for SweepFileConfig {
    fn default() -> Self {
        SweepFileConfig {
            version: Some(CONFIG_VERSION),
            command: Some(Command::Sweep.name().into()),
            schemes: vec![Scheme::Noma, Scheme::Rama1],
            x_axis: XAxis::SymmetricPgammaDb,
            grid_db: None,
            splits: DEFAULT_SPLITS.to_vec(),
            anchor_db: 0.0,
            alpha: DEFAULT_ALPHA,
            num_samples: None,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignalScheme {
    Rama1,
    Rama2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SignalCheckConfig {
    pub version: Option<u32>,
    pub command: Option<String>,
    pub scheme: SignalScheme,
    /// `psk` or `qam`.
    pub kind: String,
    pub order: usize,
    /// Power fractions checked under RAMA-II.
    pub splits: Vec<f64>,
    pub p: f64,
}

impl Default for SignalCheckConfig {
    fn default() -> Self {
        SignalCheckConfig {
            version: Some(CONFIG_VERSION),
            command: Some(Command::SignalCheck.name().into()),
            scheme: SignalScheme::Rama1,
            kind: "psk".into(),
            order: 8,
            splits: vec![0.1, 0.3, 0.5, 0.7, 0.9],
            p: 1.0,
        }
    }
}

/// A parsed config for any subcommand.
#[derive(Debug, Clone, PartialEq)]
pub enum ExperimentConfig {
    Region(RegionConfig),
    Sweep(SweepFileConfig),
    SignalCheck(SignalCheckConfig),
}

impl ExperimentConfig {
    /// Parses a config whose `command` key selects the subcommand.
    pub fn parse(text: &str) -> Result<ExperimentConfig> {
        let table: toml::Table = text.parse().map_err(toml_error)?;
        let command = match table.get("command") {
            Some(toml::Value::String(s)) => Command::parse(s)?,
            Some(_) => return Err(Error::config("command", "must be a string")),
            None => return Err(Error::config("command", "missing")),
        };
        Ok(match command {
            Command::Region => ExperimentConfig::Region(parse_for(command, text)?),
            Command::Sweep => ExperimentConfig::Sweep(parse_for(command, text)?),
            Command::SignalCheck => ExperimentConfig::SignalCheck(parse_for(command, text)?),
        })
    }
}

trait Versioned {
    fn version(&self) -> Option<u32>;
    fn command(&self) -> Option<&str>;
}

macro_rules! versioned {
    ($($t:ty),*) => {$(
        impl Versioned for $t {
            fn version(&self) -> Option<u32> { self.version }
            fn command(&self) -> Option<&str> { self.command.as_deref() }
        }
    )*};
}
versioned!(RegionConfig, SweepFileConfig, SignalCheckConfig);

/// Parses a config file for `command`. `version` is required and a
/// `command` key, if present, must name `command`.
fn parse_for<T>(command: Command, text: &str) -> Result<T>
where
    T: for<'de> Deserialize<'de> + Versioned,
{
    let table: toml::Table = text.parse().map_err(toml_error)?;
    // The defaults carry a version, so absence must be caught before them.
    if !table.contains_key("version") {
        return Err(Error::config("version", "missing"));
    }
    let cfg: T = toml::Value::Table(table).try_into().map_err(toml_error)?;
    match cfg.version() {
        Some(v) if v == CONFIG_VERSION => {}
        Some(v) => {
            return Err(Error::config(
                "version",
                format!("config version {v} does not match supported version {CONFIG_VERSION}"),
            ))
        }
        None => return Err(Error::config("version", "missing")),
    }
    if let Some(c) = cfg.command() {
        if c != command.name() {
            return Err(Error::config(
                "command",
                format!("config is for `{c}`, not `{}`", command.name()),
            ));
        }
    }
    Ok(cfg)
}

fn toml_error(e: toml::de::Error) -> Error {
    let msg = e.message().to_string();
    // serde reports the offending key between backticks.
    let key = msg
        .split('`')
        .nth(1)
        .map(str::to_string)
        .unwrap_or_else(|| "<config>".into());
    Error::config(key, msg.trim())
}

impl RegionConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        parse_for(Command::Region, text)
    }

    pub fn validate(&self) -> Result<LinkBudget> {
        let g1 = self
            .g1_db
            .ok_or_else(|| Error::config("g1_db", "missing"))?;
        let g2 = self
            .g2_db
            .ok_or_else(|| Error::config("g2_db", "missing"))?;
        for (key, v) in [("g1_db", g1), ("g2_db", g2)] {
            if !v.is_finite() {
                return Err(Error::config(key, "must be finite"));
            }
        }
        if self.schemes.is_empty() {
            return Err(Error::config("schemes", "at least one scheme is required"));
        }
        if self.n < 2 {
            return Err(Error::config(
                "n",
                format!("grid resolution must be >= 2, got {}", self.n),
            ));
        }
        if self.schemes.contains(&Scheme::ReconfigNoma) && !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::config(
                "alpha",
                format!("{} outside (0, 1)", self.alpha),
            ));
        }
        Ok(LinkBudget::from_db(g1, g2))
    }
}

impl SweepFileConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        parse_for(Command::Sweep, text)
    }

    /// Fills in the axis-dependent default grid.
    pub fn resolved(&self) -> SweepFileConfig {
        let mut out = self.clone();
        if out.grid_db.is_none() {
            out.grid_db = Some(match self.x_axis {
                XAxis::SymmetricPgammaDb => db_grid(-10.0, 40.0, 1.0),
                XAxis::GainRatioDb => db_grid(0.0, 40.0, 1.0),
            });
        }
        out
    }

    pub fn sweep_config(&self) -> SweepConfig {
        let r = self.resolved();
        SweepConfig {
            schemes: r.schemes,
            x_axis: r.x_axis,
            grid_db: r.grid_db.unwrap_or_default(),
            splits: r.splits,
            anchor_db: r.anchor_db,
            alpha: r.alpha,
            fading: r.num_samples.map(|num_samples| FadingConfig {
                num_samples,
                seed: r.seed,
            }),
        }
    }
}

impl SignalCheckConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        parse_for(Command::SignalCheck, text)
    }

    pub fn constellation(&self) -> Result<Constellation> {
        match self.kind.as_str() {
            "psk" => make_psk(self.order),
            "qam" => make_qam(self.order),
            other => Err(Error::config(
                "kind",
                format!("unsupported constellation `{other}`"),
            )),
        }
        .map_err(|e| match e {
            Error::InvalidOrder { .. } => Error::config("order", e.to_string()),
            e => e,
        })
    }
}

fn header(out: &mut String, command: Command, config: &impl Serialize) -> Result<()> {
    let echo = toml::to_string(config)
        .map_err(|e| Error::config("<config>", format!("cannot serialize config: {e}")))?;
    let _ = writeln!(out, "# rama-sim {TOOL_VERSION}");
    let _ = writeln!(out, "# command: {}", command.name());
    let _ = writeln!(out, "# prng: {PRNG_ID}");
    let _ = writeln!(out, "{CONFIG_MARKER}");
    for line in echo.lines().filter(|l| !l.trim().is_empty()) {
        let _ = writeln!(out, "# {line}");
    }
    Ok(())
}

/// Recovers the config echoed into a CSV produced by this tool.
pub fn parse_echo(csv: &str) -> Result<ExperimentConfig> {
    let mut lines = csv.lines().skip_while(|l| *l != CONFIG_MARKER);
    if lines.next().is_none() {
        return Err(Error::config("<config>", "no config echo found"));
    }
    let text: String = lines
        .map_while(|l| l.strip_prefix('#'))
        .map(|l| format!("{}\n", l.strip_prefix(' ').unwrap_or(l)))
        .collect();
    ExperimentConfig::parse(&text)
}

/// Region frontiers as CSV: `scheme,r1_bits,r2_bits`.
pub fn region_csv(cfg: &RegionConfig) -> Result<String> {
    let lb = cfg.validate()?;
    let mut out = String::new();
    header(&mut out, Command::Region, cfg)?;
    out.push_str("scheme,r1_bits,r2_bits\n");
    for &scheme in &cfg.schemes {
        let region = trace_region_with_alpha(scheme, &lb, cfg.n, cfg.alpha)?;
        for p in &region.frontier {
            let _ = writeln!(out, "{scheme},{:.6},{:.6}", p.r1, p.r2);
        }
    }
    Ok(out)
}

/// Sum-rate sweep as CSV: `x_db,scheme,split,sum_rate_bits,stderr`.
pub fn sweep_csv(cfg: &SweepFileConfig) -> Result<String> {
    let resolved = cfg.resolved();
    let result = run_sweep(&resolved.sweep_config())?;
    let mut out = String::new();
    header(&mut out, Command::Sweep, &resolved)?;
    out.push_str("x_db,scheme,split,sum_rate_bits,stderr\n");
    for r in &result.rows {
        let _ = writeln!(
            out,
            "{:.6},{},{:.6},{:.6},{:.6}",
            r.x_db, r.scheme, r.split, r.sum_rate, r.stderr
        );
    }
    Ok(out)
}

/// Outcome of the exhaustive transmit-chain check.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalCheckReport {
    pub scheme: SignalScheme,
    pub kind: ConstellationKind,
    pub order: usize,
    /// Ordered symbol pairs checked, summed over splits.
    pub pairs: usize,
    /// Max `|tsa1 − √p1·s1|`.
    pub max_tsa1_error: f64,
    /// Max `|tsa2 − √p2·s2|`.
    pub max_tsa2_error: f64,
    /// Max deviation of an average transmit power from `p`.
    pub max_power_error: f64,
}

impl SignalCheckReport {
    pub fn max_error(&self) -> f64 {
        self.max_tsa1_error
            .max(self.max_tsa2_error)
            .max(self.max_power_error)
    }

    pub fn passed(&self) -> bool {
        self.max_error() <= SIGNAL_TOLERANCE
    }

    pub fn render(&self) -> String {
        let scheme = match self.scheme {
            SignalScheme::Rama1 => "rama1",
            SignalScheme::Rama2 => "rama2",
        };
        format!(
            "signal-check {scheme} {}-{}: {} pairs\n\
             max |tsa1 error| = {:.3e}\n\
             max |tsa2 error| = {:.3e}\n\
             max |mean power - p| = {:.3e}\n\
             max error = {:.3e} (tolerance {:.0e})\n\
             {}\n",
            self.order,
            self.kind,
            self.pairs,
            self.max_tsa1_error,
            self.max_tsa2_error,
            self.max_power_error,
            self.max_error(),
            SIGNAL_TOLERANCE,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Runs every ordered symbol pair through the RAMA transmit chain and compares
/// each beam with the directly encoded user signal.
pub fn signal_check(cfg: &SignalCheckConfig) -> Result<SignalCheckReport> {
    let c = cfg.constellation()?;
    if !(cfg.p > 0.0 && cfg.p.is_finite()) {
        return Err(Error::config(
            "p",
            format!("must be positive, got {}", cfg.p),
        ));
    }
    let splits = match cfg.scheme {
        SignalScheme::Rama1 => vec![0.5],
        SignalScheme::Rama2 => cfg.splits.clone(),
    };
    if splits.is_empty() {
        return Err(Error::config("splits", "at least one split is required"));
    }
    let mut report = SignalCheckReport {
        scheme: cfg.scheme,
        kind: c.kind(),
        order: c.order(),
        pairs: 0,
        max_tsa1_error: 0.0,
        max_tsa2_error: 0.0,
        max_power_error: 0.0,
    };
    for split in splits {
        let alloc = PowerAllocation::from_fraction(cfg.p, split)
            .map_err(|e| Error::config("splits", e.to_string()))?;
        let (mut feed_power, mut noma_power) = (0.0, 0.0);
        for (s1, s2) in c.ordered_pairs() {
            let (tx, feed) = match cfg.scheme {
                SignalScheme::Rama1 => (rama1_transmit(s1, s2, cfg.p)?, s1 * cfg.p.sqrt()),
                SignalScheme::Rama2 => {
                    (rama2_transmit(s1, s2, &alloc)?, rama2_feed(s1, s2, &alloc)?)
                }
            };
            report.max_tsa1_error = report
                .max_tsa1_error
                .max((tx.tsa1 - s1 * alloc.p1().sqrt()).norm());
            report.max_tsa2_error = report
                .max_tsa2_error
                .max((tx.tsa2 - s2 * alloc.p2().sqrt()).norm());
            feed_power += feed.norm_sqr();
            noma_power += superpose(s1, s2, &alloc).norm_sqr();
            report.pairs += 1;
        }
        let n = (c.order() * c.order()) as f64;
        for mean in [feed_power / n, noma_power / n] {
            report.max_power_error = report.max_power_error.max((mean - cfg.p).abs());
        }
    }
    Ok(report)
}

#[derive(Debug, Parser)]
#[command(
    name = "rama-sim",
    version,
    about = "Rate regions, sum-rate sweeps and signal-chain checks for NOMA, RAMA and OFDMA"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Trace achievable rate regions and write their frontiers as CSV.
    Region(RegionArgs),
    /// Sum rate against a channel-quality grid, written as CSV.
    Sweep(SweepArgs),
    /// Exhaustively verify the RAMA transmit chains over a constellation.
    SignalCheck(SignalCheckArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Config file (TOML); flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// p|h1|²/σ1² in dB.
    #[arg(long, allow_negative_numbers = true)]
    pub g1_db: Option<f64>,
    /// p|h2|²/σ2² in dB.
    #[arg(long, allow_negative_numbers = true)]
    pub g2_db: Option<f64>,
    /// Comma-separated schemes: noma, reconfig-noma, rama1, rama2, oma.
    #[arg(long)]
    pub schemes: Option<String>,
    /// Grid resolution.
    #[arg(long)]
    pub n: Option<usize>,
    /// Beam power division for reconfig-noma.
    #[arg(long)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub schemes: Option<String>,
    /// symmetric-pgamma-db or gain-ratio-db.
    #[arg(long)]
    pub x_axis: Option<String>,
    /// Comma-separated grid values in dB.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Comma-separated p1/p fractions.
    #[arg(long)]
    pub splits: Option<String>,
    /// p|h2|²/σ2² in dB for the gain-ratio axis.
    #[arg(long, allow_negative_numbers = true)]
    pub anchor_db: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Rayleigh realizations per grid point; enables fading.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SignalCheckArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// rama1 or rama2.
    #[arg(long)]
    pub scheme: Option<String>,
    /// psk or qam.
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long)]
    pub splits: Option<String>,
    #[arg(long)]
    pub p: Option<f64>,
}

/// Error surfaced by the command line, with its exit code.
#[derive(Debug)]
pub enum CliError {
    Config(Error),
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "{e}"),
            CliError::Runtime(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::OutOfRange { .. } => CliError::Runtime(e.to_string()),
            e => CliError::Config(e),
        }
    }
}

fn read_config(path: &Path) -> std::result::Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| {
        CliError::Config(Error::config(
            "config",
            format!("cannot read {}: {e}", path.display()),
        ))
    })
}

fn parse_list<T>(key: &str, raw: &str, item: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            item(s).map_err(|e| match e {
                Error::Config { reason, .. } => Error::config(key, reason),
                other => Error::config(key, other.to_string()),
            })
        })
        .collect()
}

fn parse_f64(s: &str) -> Result<f64> {
    s.parse()
        .map_err(|_| Error::config("value", format!("`{s}` is not a number")))
}

fn parse_schemes(raw: &str) -> Result<Vec<Scheme>> {
    parse_list("schemes", raw, |s| s.parse())
}

/// Resolves the region config from `--config` and flags.
pub fn region_config(args: &RegionArgs) -> std::result::Result<RegionConfig, CliError> {
    let mut cfg = match &args.common.config {
        Some(path) => RegionConfig::from_toml(&read_config(path)?)?,
        None => RegionConfig::default(),
    };
    cfg.command = Some(Command::Region.name().into());
    if let Some(v) = args.g1_db {
        cfg.g1_db = Some(v);
    }
    if let Some(v) = args.g2_db {
        cfg.g2_db = Some(v);
    }
    if let Some(raw) = &args.schemes {
        cfg.schemes = parse_schemes(raw)?;
    }
    if let Some(n) = args.n {
        cfg.n = n;
    }
    if let Some(a) = args.alpha {
        cfg.alpha = a;
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn sweep_config(args: &SweepArgs) -> std::result::Result<SweepFileConfig, CliError> {
    let mut cfg = match &args.common.config {
        Some(path) => SweepFileConfig::from_toml(&read_config(path)?)?,
        None => SweepFileConfig::default(),
    };
    cfg.command = Some(Command::Sweep.name().into());
    if let Some(raw) = &args.schemes {
        cfg.schemes = parse_schemes(raw)?;
    }
    if let Some(axis) = &args.x_axis {
        cfg.x_axis = match axis.as_str() {
            "symmetric-pgamma-db" => XAxis::SymmetricPgammaDb,
            "gain-ratio-db" => XAxis::GainRatioDb,
            other => return Err(Error::config("x_axis", format!("unknown axis `{other}`")).into()),
        };
    }
    if let Some(raw) = &args.grid {
        cfg.grid_db = Some(parse_list("grid", raw, parse_f64)?);
    }
    if let Some(raw) = &args.splits {
        cfg.splits = parse_list("splits", raw, parse_f64)?;
    }
    if let Some(v) = args.anchor_db {
        cfg.anchor_db = v;
    }
    if let Some(v) = args.alpha {
        cfg.alpha = v;
    }
    if let Some(v) = args.samples {
        cfg.num_samples = Some(v);
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    let cfg = cfg.resolved();
    cfg.sweep_config().validate()?;
    Ok(cfg)
}

pub fn signal_check_config(
    args: &SignalCheckArgs,
) -> std::result::Result<SignalCheckConfig, CliError> {
    let mut cfg = match &args.common.config {
        Some(path) => SignalCheckConfig::from_toml(&read_config(path)?)?,
        None => SignalCheckConfig::default(),
    };
    cfg.command = Some(Command::SignalCheck.name().into());
    if let Some(s) = &args.scheme {
        cfg.scheme = match s.as_str() {
            "rama1" => SignalScheme::Rama1,
            "rama2" => SignalScheme::Rama2,
            other => {
                return Err(Error::config("scheme", format!("unknown scheme `{other}`")).into())
            }
        };
    }
    if let Some(k) = &args.kind {
        cfg.kind = k.clone();
    }
    if let Some(o) = args.order {
        cfg.order = o;
    }
    if let Some(raw) = &args.splits {
        cfg.splits = parse_list("splits", raw, parse_f64)?;
    }
    if let Some(p) = args.p {
        cfg.p = p;
    }
    cfg.constellation()?;
    Ok(cfg)
}

fn emit(out: &Option<PathBuf>, text: &str) -> std::result::Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            CliError::Runtime(format!(
                "invalid `out`: cannot write {}: {e}",
                path.display()
            ))
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn cmd_region(args: &RegionArgs) -> std::result::Result<(), CliError> {
    let cfg = region_config(args)?;
    emit(&args.common.out, &region_csv(&cfg)?)
}

pub fn cmd_sweep(args: &SweepArgs) -> std::result::Result<(), CliError> {
    let cfg = sweep_config(args)?;
    emit(&args.common.out, &sweep_csv(&cfg)?)
}

/// Prints the report; fails with a runtime error when any error exceeds the
/// tolerance.
pub fn cmd_signal_check(args: &SignalCheckArgs) -> std::result::Result<(), CliError> {
    let cfg = signal_check_config(args)?;
    let report = signal_check(&cfg)?;
    emit(&args.common.out, &report.render())?;
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Runtime(format!(
            "signal check failed: max error {:.3e} exceeds {:.0e}",
            report.max_error(),
            SIGNAL_TOLERANCE
        )))
    }
}

pub fn run(cli: &Cli) -> std::result::Result<(), CliError> {
    match &cli.command {
        Cmd::Region(a) => cmd_region(a),
        Cmd::Sweep(a) => cmd_sweep(a),
        Cmd::SignalCheck(a) => cmd_signal_check(a),
    }
}

/// Entry point shared by the binary: parses `args`, runs, and maps errors to
/// exit codes.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
