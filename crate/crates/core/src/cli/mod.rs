//! Command-line front end: tabulate actions, families and spectra as CSV or
//! JSON, and run the verification suites.
//!
//! Exit codes: 0 success, 1 argument error, 2 lambda or domain validation
//! failure (including singular grid points in strict mode), 3 a failed check.

pub mod table;
pub mod verify;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::actions::{Action, ActionModel, ZeroMode};
use crate::darboux::{DarbouxFamily, FamilyOptions, Interval, Lambda, LambdaPolicy};
use crate::error::{Error, Result};
use crate::noise::{spectrum_sweep, ResistanceModel};
use crate::numerics::{linspace, logspace};
use crate::thermo::internal_energy;
use table::{format_g17, write_json, Cell, Table};
pub use verify::{run_suite, Check, Suite, VerifyOptions, VerifyReport};

/// Directory for output files given as relative paths, and for the default
/// `<command>.<format>` file when `--output` is absent.
pub const OUT_DIR_ENV: &str = "DARBOUX_THERMO_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ARGUMENT: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum CommandTag {
    Action,
    Family,
    Verify,
    Spectrum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SeedTag {
    Planck,
    Vacuum,
    Thermal,
    Fermi,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// `start:stop:count` or a comma-separated list of points.
#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    Range { start: f64, stop: f64, count: usize },
    List(Vec<f64>),
}

impl GridSpec {
    pub fn points(&self, log: bool) -> Result<Vec<f64>> {
        match *self {
            GridSpec::Range { start, stop, count } => {
                if log && !(start > 0.0 && stop > 0.0) {
                    return Err(Error::Argument(format!("log grid needs positive bounds, got {start}:{stop}")));
                }
                Ok(if log { logspace(start, stop, count) } else { linspace(start, stop, count) })
            }
            GridSpec::List(ref xs) => Ok(xs.clone()),
        }
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            let v: f64 = t.trim().parse().map_err(|_| Error::Argument(format!("bad grid value {t:?}")))?;
            if v.is_finite() { Ok(v) } else { Err(Error::Argument(format!("grid value {t:?} is not finite"))) }
        };
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            let [a, b, n] = parts[..] else {
                return Err(Error::Argument(format!("grid range must be start:stop:count, got {s:?}")));
            };
            let count: usize = n.trim().parse().map_err(|_| Error::Argument(format!("bad grid count {n:?}")))?;
            if count < 2 {
                return Err(Error::Argument(format!("grid count must be at least 2, got {count}")));
            }
            Ok(GridSpec::Range { start: num(a)?, stop: num(b)?, count })
        } else {
            let xs = s.split(',').map(num).collect::<Result<Vec<_>>>()?;
            if xs.is_empty() {
                return Err(Error::Argument("empty grid".into()));
            }
            Ok(GridSpec::List(xs))
        }
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridSpec::Range { start, stop, count } => write!(f, "{}:{}:{count}", format_g17(*start), format_g17(*stop)),
            GridSpec::List(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| format_g17(*x)).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl Serialize for GridSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GridSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `const:R`, `rlc:R,L,C` or `resonant:R,OMEGA0,Q`.
pub fn parse_resistance(s: &str) -> Result<ResistanceModel> {
    let (kind, rest) = s.split_once(':').ok_or_else(|| Error::Argument(format!("bad resistance spec {s:?}")))?;
    let vals = rest
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Argument(format!("bad resistance value {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    match (kind, &vals[..]) {
        ("const", &[r]) => ResistanceModel::constant(r),
        ("rlc", &[r, l, c]) => ResistanceModel::parallel_rlc(r, l, c),
        ("resonant", &[r, w0, q]) => ResistanceModel::from_resonance(r, w0, q),
        _ => Err(Error::Argument(format!("bad resistance spec {s:?}; expected const:R, rlc:R,L,C or resonant:R,W0,Q"))),
    }
}

/// Everything one invocation needs. Identical configs give byte-identical output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandTag,
    /// `None` means 1, or the default set for `verify`.
    pub hbar: Option<f64>,
    pub grid: Option<GridSpec>,
    #[serde(default)]
    pub log_grid: bool,
    #[serde(default)]
    pub lambda: Vec<Lambda>,
    pub seed: Option<SeedTag>,
    #[serde(rename = "A")]
    pub a: Option<f64>,
    #[serde(rename = "B")]
    pub b: Option<f64>,
    pub omega: Option<f64>,
    pub resistance: Option<ResistanceModel>,
    pub beta: Option<f64>,
    #[serde(default)]
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
    pub tolerance: f64,
    pub strict_lambda: bool,
    #[serde(default)]
    pub allow_negative_x: bool,
    #[serde(default)]
    pub include_seed: bool,
    #[serde(default)]
    pub suite: Suite,
}

impl RunConfig {
    pub fn new(command: CommandTag) -> Self {
        RunConfig {
            command,
            hbar: None,
            grid: None,
            log_grid: false,
            lambda: Vec::new(),
            seed: None,
            a: None,
            b: None,
            omega: None,
            resistance: None,
            beta: None,
            output_format: Format::Csv,
            output_path: None,
            tolerance: 1e-8,
            strict_lambda: true,
            allow_negative_x: false,
            include_seed: false,
            suite: Suite::All,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "darboux-thermo", version, about = "Oscillator actions, Darboux families and noise spectra")]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate an action f, its slope and optionally U = omega f.
    Action(ActionArgs),
    /// Tabulate Darboux families f_g(x; lambda) of a seed.
    Family(FamilyArgs),
    /// Run the residual and oracle checks.
    Verify(VerifyArgs),
    /// Tabulate the noise power P(omega) for a set of lambdas.
    Spectrum(SpectrumArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// start:stop:count or x1,x2,...
    #[arg(long, allow_hyphen_values = true)]
    pub grid: GridSpec,
    /// Log-spaced range.
    #[arg(long)]
    pub log: bool,
}

#[derive(Debug, Args)]
pub struct ModeArgs {
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long = "A")]
    pub a: Option<f64>,
    #[arg(long = "B")]
    pub b: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ActionArgs {
    #[arg(long, value_enum)]
    pub family: SeedTag,
    #[command(flatten)]
    pub mode: ModeArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Adds the column U = omega f.
    #[arg(long)]
    pub omega: Option<f64>,
    /// Flag singular points instead of failing.
    #[arg(long)]
    pub permissive: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum, default_value_t = SeedTag::Vacuum)]
    pub seed: SeedTag,
    #[command(flatten)]
    pub mode: ModeArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Comma-separated; `inf` allowed.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub lambda: Vec<Lambda>,
    /// Append the lambda = inf series.
    #[arg(long)]
    pub include_seed: bool,
    /// Admit lambda <= 0 and flag singular rows instead of failing.
    #[arg(long)]
    pub permissive: bool,
    #[arg(long)]
    pub allow_negative_x: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Defaults to 0.5, 1 and 2.
    #[arg(long)]
    pub hbar: Option<f64>,
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_enum, default_value_t = SeedTag::Planck)]
    pub seed: SeedTag,
    #[command(flatten)]
    pub mode: ModeArgs,
    /// Angular frequencies: start:stop:count or a list.
    #[arg(long)]
    pub omega: GridSpec,
    #[arg(long)]
    pub log: bool,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "inf")]
    pub lambda: Vec<Lambda>,
    /// const:R, rlc:R,L,C or resonant:R,OMEGA0,Q
    #[arg(long, default_value = "const:1", value_parser = parse_resistance)]
    pub resistance: ResistanceModel,
    #[arg(long)]
    pub permissive: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        match cli.command {
            Command::Action(a) => RunConfig {
                hbar: Some(a.mode.hbar),
                grid: Some(a.grid.grid),
                log_grid: a.grid.log,
                seed: Some(a.family),
                a: a.mode.a,
                b: a.mode.b,
                omega: a.omega,
                output_format: a.out.format,
                output_path: a.out.output,
                strict_lambda: !a.permissive,
                ..RunConfig::new(CommandTag::Action)
            },
            Command::Family(f) => RunConfig {
                hbar: Some(f.mode.hbar),
                grid: Some(f.grid.grid),
                log_grid: f.grid.log,
                lambda: f.lambda,
                seed: Some(f.seed),
                a: f.mode.a,
                b: f.mode.b,
                output_format: f.out.format,
                output_path: f.out.output,
                strict_lambda: !f.permissive,
                allow_negative_x: f.allow_negative_x,
                include_seed: f.include_seed,
                ..RunConfig::new(CommandTag::Family)
            },
            Command::Verify(v) => RunConfig {
                hbar: v.hbar,
                output_format: v.out.format,
                output_path: v.out.output,
                tolerance: v.tolerance,
                suite: v.suite,
                ..RunConfig::new(CommandTag::Verify)
            },
            Command::Spectrum(s) => RunConfig {
                hbar: Some(s.mode.hbar),
                grid: Some(s.omega),
                log_grid: s.log,
                lambda: s.lambda,
                seed: Some(s.seed),
                a: s.mode.a,
                b: s.mode.b,
                resistance: Some(s.resistance),
                beta: Some(s.beta),
                output_format: s.out.format,
                output_path: s.out.output,
                strict_lambda: !s.permissive,
                ..RunConfig::new(CommandTag::Spectrum)
            },
        }
    }
}

/// Rendered output, exit code and diagnostics for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: Vec<u8>,
    pub code: i32,
    pub messages: Vec<String>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Argument(_) | Error::Unsupported(_) => EXIT_ARGUMENT,
        _ => EXIT_VALIDATION,
    }
}

fn is_singular(e: &Error) -> bool {
    matches!(e, Error::Singularity { .. } | Error::Node { .. } | Error::InfiniteTemperature)
}

fn failure(e: Error) -> Outcome {
    let mut messages = vec![format!("error: {e}")];
    if let Error::LambdaViolation(report) = &e {
        if let Ok(json) = serde_json::to_string(report.as_ref()) {
            messages.push(json);
        }
    }
    Outcome { body: Vec::new(), code: exit_code(&e), messages }
}

fn zero_mode(config: &RunConfig, tag: SeedTag, hbar: f64) -> Result<ZeroMode> {
    match tag {
        SeedTag::Planck => ZeroMode::planck(hbar),
        SeedTag::Vacuum => ZeroMode::vacuum(hbar),
        SeedTag::Fermi => ZeroMode::symmetric(hbar),
        SeedTag::General => match (config.a, config.b) {
            (Some(a), Some(b)) => ZeroMode::general(a, b, hbar),
            _ => Err(Error::Argument("the general zero mode needs --A and --B".into())),
        },
        SeedTag::Thermal => Err(Error::Unsupported("the thermal action has no zero mode".into())),
    }
}

fn action_model(config: &RunConfig, tag: SeedTag, hbar: f64) -> Result<ActionModel> {
    match tag {
        SeedTag::Thermal => ActionModel::thermal(hbar),
        _ => Ok(zero_mode(config, tag, hbar)?.action()),
    }
}

fn grid(config: &RunConfig) -> Result<Vec<f64>> {
    config.grid.as_ref().ok_or_else(|| Error::Argument("--grid is required".into()))?.points(config.log_grid)
}

fn lambda_cell(l: Lambda) -> Cell {
    match l {
        Lambda::Finite(v) => Cell::Num(v),
        Lambda::Infinity => Cell::text("inf"),
    }
}

/// A value, `"singular"` at a pole or node, or the error for anything else.
fn cell(r: Result<f64>, singular: &mut Option<f64>, x: f64) -> Result<Cell> {
    match r {
        Ok(v) => Ok(Cell::Num(v)),
        Err(e) if is_singular(&e) => {
            singular.get_or_insert(x);
            Ok(Cell::text("singular"))
        }
        Err(e) => Err(e),
    }
}

fn cmd_action(config: &RunConfig) -> Result<(Table, Option<f64>)> {
    let hbar = config.hbar.unwrap_or(1.0);
    let tag = config.seed.ok_or_else(|| Error::Argument("--family is required".into()))?;
    let model = action_model(config, tag, hbar)?;
    let xs = grid(config)?;
    let mut columns = vec!["x", "f", "f_prime"];
    if config.omega.is_some() {
        columns.push("U");
    }
    let mut table = Table::new("action", columns);
    let mut singular = None;
    for &x in &xs {
        let mut row = vec![Cell::Num(x), cell(model.value(x), &mut singular, x)?, cell(model.derivative(x), &mut singular, x)?];
        if let Some(omega) = config.omega {
            row.push(cell(internal_energy(&model, x, omega), &mut singular, x)?);
        }
        table.push(row);
    }
    Ok((table, singular))
}

fn family_options(config: &RunConfig) -> FamilyOptions {
    FamilyOptions {
        policy: if config.strict_lambda { LambdaPolicy::Strict } else { LambdaPolicy::Permissive },
        allow_negative_x: config.allow_negative_x,
        ..FamilyOptions::default()
    }
}

fn lambdas(config: &RunConfig) -> Result<Vec<Lambda>> {
    if config.lambda.is_empty() {
        return Err(Error::Argument("at least one --lambda is required".into()));
    }
    let mut out: Vec<Lambda> = Vec::new();
    for &l in &config.lambda {
        if !out.contains(&l) {
            out.push(l);
        }
    }
    if config.include_seed && !out.contains(&Lambda::Infinity) {
        out.push(Lambda::Infinity);
    }
    Ok(out)
}

fn cmd_family(config: &RunConfig) -> Result<(Table, Option<f64>)> {
    let hbar = config.hbar.unwrap_or(1.0);
    let tag = config.seed.ok_or_else(|| Error::Argument("--seed is required".into()))?;
    let mode = zero_mode(config, tag, hbar)?;
    let xs = grid(config)?;
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let domain = Interval::new(lo, hi)?;
    let options = family_options(config);
    // Every lambda is validated before any row is produced.
    let families = lambdas(config)?
        .into_iter()
        .map(|l| DarbouxFamily::new(mode, l, domain, options))
        .collect::<Result<Vec<_>>>()?;

    let mut table = Table::new("family", vec!["x", "lambda", "f_g", "V_1g", "w_lambda", "I0", "v"]);
    let mut singular = None;
    for fam in &families {
        for &x in &xs {
            table.push(vec![
                Cell::Num(x),
                lambda_cell(fam.lambda()),
                cell(fam.value(x), &mut singular, x)?,
                cell(fam.transformed_potential(x), &mut singular, x)?,
                cell(fam.transformed_zero_mode(x), &mut singular, x)?,
                cell(fam.i0(x), &mut singular, x)?,
                cell(fam.v(x), &mut singular, x)?,
            ]);
        }
    }
    Ok((table, singular))
}

fn cmd_spectrum(config: &RunConfig) -> Result<Table> {
    let hbar = config.hbar.unwrap_or(1.0);
    let tag = config.seed.unwrap_or(SeedTag::Planck);
    let mode = zero_mode(config, tag, hbar)?;
    let omegas = grid(config)?;
    let beta = config.beta.ok_or_else(|| Error::Argument("--beta is required".into()))?;
    let model = config.resistance.unwrap_or(ResistanceModel::Constant { r: 1.0 });
    let lambdas = if config.lambda.is_empty() { vec![Lambda::Infinity] } else { config.lambda.clone() };
    let sweep = spectrum_sweep(&omegas, beta, &lambdas, &mode, &model, family_options(config))?;
    let mut table = Table::new("spectrum", vec!["omega", "beta", "lambda", "R", "P", "regime"]);
    for r in &sweep.records {
        table.push(vec![
            Cell::Num(r.omega),
            Cell::Num(r.beta),
            lambda_cell(r.lambda),
            Cell::Num(r.r),
            Cell::Num(r.p),
            Cell::text(r.regime.as_str()),
        ]);
    }
    Ok(table)
}

fn render_table(table: &Table, format: Format) -> Result<Vec<u8>> {
    let mut body = Vec::new();
    match format {
        Format::Csv => table.write_csv(&mut body)?,
        Format::Json => write_json(&mut body, &table.to_json())?,
    }
    Ok(body)
}

fn render_report(report: &VerifyReport, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut body = Vec::new();
            write_json(&mut body, report)?;
            Ok(body)
        }
        Format::Csv => {
            let mut t = Table::new("verify", vec!["name", "max_residual", "tolerance", "pass"]);
            for c in &report.checks {
                t.push(vec![
                    Cell::text(c.name.clone()),
                    Cell::Num(c.max_residual),
                    Cell::Num(c.tolerance),
                    Cell::text(if c.pass { "pass" } else { "fail" }),
                ]);
            }
            render_table(&t, Format::Csv)
        }
    }
}

fn tabulated(result: Result<(Table, Option<f64>)>, config: &RunConfig) -> Outcome {
    let (table, singular) = match result {
        Ok(t) => t,
        Err(e) => return failure(e),
    };
    let body = match render_table(&table, config.output_format) {
        Ok(b) => b,
        Err(e) => return failure(e),
    };
    match singular {
        Some(x) if config.strict_lambda => Outcome {
            body,
            code: EXIT_VALIDATION,
            messages: vec![format!("error: singular point at x = {} (rerun with --permissive to flag it)", format_g17(x))],
        },
        Some(x) => Outcome { body, code: EXIT_OK, messages: vec![format!("warning: singular point at x = {}", format_g17(x))] },
        None => Outcome { body, code: EXIT_OK, messages: Vec::new() },
    }
}

/// Run one configuration without touching the filesystem.
pub fn execute(config: &RunConfig) -> Outcome {
    if let Some(h) = config.hbar {
        if let Err(e) = crate::error::check_hbar(h) {
            return failure(e);
        }
    }
    match config.command {
        CommandTag::Action => tabulated(cmd_action(config), config),
        CommandTag::Family => tabulated(cmd_family(config), config),
        CommandTag::Spectrum => tabulated(cmd_spectrum(config).map(|t| (t, None)), config),
        CommandTag::Verify => {
            let options = VerifyOptions {
                hbars: config.hbar.map_or_else(|| verify::DEFAULT_HBARS.to_vec(), |h| vec![h]),
                tolerance: config.tolerance,
            };
            let report = match run_suite(config.suite, &options) {
                Ok(r) => r,
                Err(e) => return failure(e),
            };
            let failed: Vec<String> =
                report.checks.iter().filter(|c| !c.pass).map(|c| format!("failed: {}", c.name)).collect();
            match render_report(&report, config.output_format) {
                Ok(body) => Outcome { body, code: if report.overall { EXIT_OK } else { EXIT_VERIFY }, messages: failed },
                Err(e) => failure(e),
            }
        }
    }
}

/// Where output goes: the given path (relative ones resolved against
/// `out_dir`), `<out_dir>/<command>.<ext>` when only the directory is set,
/// otherwise standard output (`None`).
pub fn output_target(config: &RunConfig, out_dir: Option<&Path>) -> Option<PathBuf> {
    match (&config.output_path, out_dir) {
        (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => {
            let command = serde_json::to_value(config.command).ok()?;
            let ext = match config.output_format {
                Format::Csv => "csv",
                Format::Json => "json",
            };
            Some(dir.join(format!("{}.{ext}", command.as_str()?)))
        }
        (None, None) => None,
    }
}

/// Parse `args` (program name first), execute, write output, return the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let help = matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if help {
                let _ = stdout.write_all(rendered.as_bytes());
                return EXIT_OK;
            }
            let _ = stderr.write_all(rendered.as_bytes());
            return EXIT_ARGUMENT;
        }
    };
    let config = RunConfig::from(cli);
    let outcome = execute(&config);
    for m in &outcome.messages {
        let _ = writeln!(stderr, "{m}");
    }
    let out_dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    match output_target(&config, out_dir.as_deref()) {
        _ if outcome.body.is_empty() => {}
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &outcome.body) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return EXIT_ARGUMENT;
            }
        }
        None => {
            if let Err(e) = stdout.write_all(&outcome.body) {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                return EXIT_ARGUMENT;
            }
        }
    }
    outcome.code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("darboux-thermo").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn grid_spec_parsing() {
        assert_eq!("0.5:5:10".parse::<GridSpec>().unwrap(), GridSpec::Range { start: 0.5, stop: 5.0, count: 10 });
        assert_eq!("-1,0,2".parse::<GridSpec>().unwrap(), GridSpec::List(vec![-1.0, 0.0, 2.0]));
        assert!("0:1:1".parse::<GridSpec>().is_err());
        assert!("0:1".parse::<GridSpec>().is_err());
        assert!("a,b".parse::<GridSpec>().is_err());
        assert!("0:1:3".parse::<GridSpec>().unwrap().points(true).is_err());
        let g: GridSpec = "0.1:10:3".parse().unwrap();
        assert_eq!(g.to_string(), "0.10000000000000001:10:3");
        assert_eq!(g.to_string().parse::<GridSpec>().unwrap(), g);
    }

    #[test]
    fn resistance_specs() {
        assert_eq!(parse_resistance("const:2").unwrap(), ResistanceModel::Constant { r: 2.0 });
        assert!(matches!(parse_resistance("rlc:1,2,3").unwrap(), ResistanceModel::ParallelRlc { .. }));
        let m = parse_resistance("resonant:1,2,5").unwrap();
        assert!((m.resonance().unwrap() - 2.0).abs() < 1e-12);
        assert!(parse_resistance("const:-1").is_err());
        assert!(parse_resistance("rlc:1,2").is_err());
        assert!(parse_resistance("foo").is_err());
    }

    #[test]
    fn run_config_rejects_unknown_keys() {
        let ok = serde_json::to_string(&RunConfig::new(CommandTag::Verify)).unwrap();
        let back: RunConfig = serde_json::from_str(&ok).unwrap();
        assert_eq!(back, RunConfig::new(CommandTag::Verify));
        let bad = ok.replacen('{', "{\"colour\":1,", 1);
        assert!(serde_json::from_str::<RunConfig>(&bad).is_err());
    }

    #[test]
    fn action_table_shape() {
        let (code, out, _) = run_args(&["action", "--family", "planck", "--hbar", "1", "--grid", "0.5:5:10", "--format", "csv"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "x,f,f_prime");
        assert_eq!(lines.len(), 11);
    }

    #[test]
    fn general_symmetric_mode_is_odd() {
        let (code, out, _) = run_args(&["action", "--family", "general", "--A", "0.5", "--B", "0.5", "--grid", "-2:2:5"]);
        assert_eq!(code, 0);
        let middle: Vec<&str> = out.lines().nth(3).unwrap().split(',').collect();
        assert_eq!(middle[0], "0");
        assert_eq!(middle[1], "0");
    }

    #[test]
    fn planck_singularity_is_strict() {
        let (code, out, err) = run_args(&["action", "--family", "planck", "--grid", "-1:1:3"]);
        assert_eq!(code, EXIT_VALIDATION);
        assert!(err.contains("x = 0"), "{err}");
        assert!(out.lines().nth(2).unwrap().contains("singular"));
        let (code, _, _) = run_args(&["action", "--family", "planck", "--grid", "-1:1:3", "--permissive"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn internal_energy_column() {
        let (code, out, _) = run_args(&["action", "--family", "vacuum", "--grid", "1,2", "--omega", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "x,f,f_prime,U\n1,0.5,0,1.5\n2,0.5,0,1.5\n");
    }

    #[test]
    fn family_constant_branch() {
        let (code, out, _) = run_args(&["family", "--seed", "vacuum", "--lambda", "1", "--grid", "0:2:5"]);
        assert_eq!(code, 0);
        for line in out.lines().skip(1) {
            let f: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
            assert!((f + 0.5).abs() <= 1e-12, "{line}");
        }
    }

    #[test]
    fn family_violation_exits_with_report() {
        let (code, out, err) = run_args(&["family", "--seed", "vacuum", "--lambda", "0.5", "--grid", "-2:2:101"]);
        assert_eq!(code, EXIT_VALIDATION);
        assert!(out.is_empty());
        let json = err.lines().find(|l| l.starts_with('{')).unwrap();
        let v: serde_json::Value = serde_json::from_str(json).unwrap();
        let (a, b) = (v["brackets"][0][0].as_f64().unwrap(), v["brackets"][0][1].as_f64().unwrap());
        assert!(a <= 0.5f64.ln() && 0.5f64.ln() <= b);
    }

    #[test]
    fn family_seed_reproduction() {
        let (code, out, _) =
            run_args(&["family", "--seed", "planck", "--lambda", "2", "--include-seed", "--grid", "0.5:3:4"]);
        assert_eq!(code, 0);
        let inf_rows: Vec<&str> = out.lines().filter(|l| l.split(',').nth(1) == Some("inf")).collect();
        assert_eq!(inf_rows.len(), 4);
        for row in inf_rows {
            let cols: Vec<&str> = row.split(',').collect();
            let x: f64 = cols[0].parse().unwrap();
            assert_eq!(cols[2].parse::<f64>().unwrap(), crate::actions::planck_action(x, 1.0).unwrap());
            assert_eq!(cols[6], "inf");
        }
    }

    #[test]
    fn spectrum_pairs_and_signs() {
        let (code, out, _) = run_args(&[
            "spectrum", "--seed", "vacuum", "--omega", "0.5:2:4", "--beta", "1", "--lambda", "inf,2",
        ]);
        assert_eq!(code, 0);
        let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split(',').collect()).collect();
        assert_eq!(rows.len(), 8);
        for pair in rows.chunks(2) {
            assert_eq!(pair[0][2], "2");
            assert_eq!(pair[1][2], "inf");
            assert!(pair[0][4].parse::<f64>().unwrap() < 0.0);
            assert_eq!(pair[0][5], "fermionic");
            assert_eq!(pair[1][5], "bosonic");
        }
    }

    #[test]
    fn parse_errors_and_help() {
        assert_eq!(run_args(&["action", "--family", "nope", "--grid", "0:1:2"]).0, EXIT_ARGUMENT);
        assert_eq!(run_args(&["action", "--family", "planck", "--grid", "0:1:1"]).0, EXIT_ARGUMENT);
        assert_eq!(run_args(&["bogus"]).0, EXIT_ARGUMENT);
        assert_eq!(run_args(&["family", "--seed", "thermal", "--lambda", "1", "--grid", "0:1:2"]).0, EXIT_ARGUMENT);
        assert_eq!(run_args(&["action", "--family", "general", "--grid", "0:1:2"]).0, EXIT_ARGUMENT);
        assert_eq!(run_args(&["action", "--family", "planck", "--hbar", "-1", "--grid", "1:2:2"]).0, EXIT_ARGUMENT);
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify"));
    }

    #[test]
    fn verify_riccati_passes_and_tight_tolerance_fails() {
        let (code, out, _) = run_args(&["verify", "--suite", "riccati"]);
        assert_eq!(code, 0);
        assert!(out.lines().skip(1).all(|l| l.ends_with(",pass")));
        let (code, _, err) = run_args(&["verify", "--suite", "riccati", "--tolerance", "1e-30"]);
        assert_eq!(code, EXIT_VERIFY);
        assert!(err.contains("failed: riccati."));
    }

    #[test]
    fn output_targets() {
        let mut c = RunConfig::new(CommandTag::Spectrum);
        assert_eq!(output_target(&c, None), None);
        assert_eq!(output_target(&c, Some(Path::new("/o"))), Some(PathBuf::from("/o/spectrum.csv")));
        c.output_path = Some("a.json".into());
        assert_eq!(output_target(&c, Some(Path::new("/o"))), Some(PathBuf::from("/o/a.json")));
        c.output_path = Some("/abs.json".into());
        assert_eq!(output_target(&c, Some(Path::new("/o"))), Some(PathBuf::from("/abs.json")));
    }
}
