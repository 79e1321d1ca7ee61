//! Command-line front end: Frenet tables, indicatrices, direction curves,
//! classification, verification and figure reproduction, written as CSV,
//! JSON or SVG.
//!
//! Exit status is 0 on success, 1 on input errors and 2 when a verification
//! fails or a frame degenerates.

use std::f64::consts::FRAC_PI_3;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::{self, CatalogEntry};
use crate::classify::{classify_with, ClassifyOptions, DEFAULT_CLASSIFY_TOL};
use crate::curve::{Curve3, FrameMode, FrameOptions, FrameTrack, Vec3};
use crate::direction::{residual_check, DirectionCurve, DirectionKind, DirectionVariant};
use crate::error::Error;
use crate::expr::parse_curve_expression;
use crate::indicatrix::Indicatrix;
use crate::numerics::Grid;
use crate::report::{
    all_pass, compare_with_references, indicatrix_reference_check, reference_checks, verify_curve, Check, PhaseChoice,
};
use crate::svg;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Column order of the `frenet` and `indicatrix` tables.
pub const FRENET_COLUMNS: [&str; 15] = [
    "param", "px", "py", "pz", "Tx", "Ty", "Tz", "Nx", "Ny", "Nz", "Bx", "By", "Bz", "kappa", "tau",
];

#[derive(Debug, Parser)]
#[command(name = "frenetlab", version, about = "Frenet apparatus, tangent indicatrices and direction curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Sample T, N, B, κ and τ along a curve.
    Frenet(CommonArgs),
    /// Sample the tangent indicatrix and its closed-form apparatus.
    Indicatrix(CommonArgs),
    /// Integrate a direction curve of the tangent indicatrix.
    Direction {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        kind: KindArgs,
    },
    /// Decide helix, slant-helix and sphericity classes.
    Classify(CommonArgs),
    /// Check the direction-curve systems, predictions and class correspondences.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        kind: KindArgs,
    },
    /// Write the five figures and a JSON summary for a worked example.
    Reproduce {
        /// Catalog id with reference figures ("ex7.1" or "ex7.2").
        id: String,
        /// Output directory (default: reproduce-<id>).
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, env = "FRENETLAB_TOL", default_value_t = DEFAULT_CLASSIFY_TOL)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Catalog id, or three comma-separated expressions in `t`.
    #[arg(long)]
    pub curve: String,
    /// Sampling grid `start:end:count` (count is made odd).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_grid)]
    pub grid: Option<Grid>,
    #[arg(long, env = "FRENETLAB_TOL", default_value_t = DEFAULT_CLASSIFY_TOL)]
    pub tol: f64,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (default: standard output).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Frame handling at inflections (default: the catalog entry's, else strict).
    #[arg(long, value_enum)]
    pub frames: Option<FramesArg>,
}

#[derive(Debug, Args)]
pub struct KindArgs {
    #[arg(long, value_enum)]
    pub kind: Option<KindName>,
    /// Bertrand angle θ.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Evolute or Mannheim angle at the grid start.
    #[arg(long, allow_negative_numbers = true)]
    pub phase: Option<f64>,
    /// Starting point `x,y,z` of the direction curve.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_vec3)]
    pub beta0: Option<Vec3>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FramesArg {
    Strict,
    Continued,
}

impl From<FramesArg> for FrameMode {
    fn from(f: FramesArg) -> Self {
        match f {
            FramesArg::Strict => FrameMode::Strict,
            FramesArg::Continued => FrameMode::Continued,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KindName {
    Evolute,
    Bertrand,
    Mannheim,
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err("expected start:end:count".into());
    };
    let a: f64 = a.trim().parse().map_err(|e| format!("bad start: {e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("bad end: {e}"))?;
    let n: usize = n.trim().parse().map_err(|e| format!("bad count: {e}"))?;
    Grid::new(a, b, n).map_err(|e| e.to_string())
}

fn parse_vec3(s: &str) -> Result<Vec3, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    match v.as_slice() {
        [x, y, z] => Ok(Vec3::new(*x, *y, *z)),
        _ => Err("expected x,y,z".into()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Frenet,
    Indicatrix,
    Direction,
    Classify,
    Verify,
    Reproduce,
}

/// Fully resolved settings of one invocation; embedded in JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub curve: String,
    pub grid: Option<Grid>,
    pub kind: Option<DirectionKind>,
    pub beta0: Option<Vec3>,
    pub tolerance: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub frames: Option<FrameMode>,
}

/// Failure of one invocation.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Library(#[from] Error),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Library(e) if e.is_degenerate() => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn kind_from(args: &KindArgs, required: bool) -> CliResult<Option<DirectionKind>> {
    let Some(name) = args.kind else {
        if required {
            return Err(CliError::Input("--kind is required (evolute, bertrand or mannheim)".into()));
        }
        return Ok(None);
    };
    let phase = args.phase.unwrap_or(0.0);
    let variant = match name {
        KindName::Evolute => DirectionVariant::Evolute,
        KindName::Mannheim => DirectionVariant::Mannheim,
        KindName::Bertrand => {
            let theta = args
                .theta
                .ok_or_else(|| CliError::Input("--theta is required for the bertrand kind".into()))?;
            DirectionVariant::Bertrand { theta }
        }
    };
    Ok(Some(DirectionKind::new(variant, phase)?))
}

impl RunConfig {
    /// Turns parsed arguments into a configuration, rejecting inconsistent
    /// combinations.
    pub fn from_cli(cli: &Cli) -> CliResult<Self> {
        let base = |command: Command, c: &CommonArgs, default_format: Format| RunConfig {
            command,
            curve: c.curve.clone(),
            grid: c.grid,
            kind: None,
            beta0: None,
            tolerance: c.tol,
            format: c.format.unwrap_or(default_format),
            output: c.output.clone(),
            frames: c.frames.map(Into::into),
        };
        let config = match &cli.command {
            CommandArgs::Frenet(c) => base(Command::Frenet, c, Format::Csv),
            CommandArgs::Indicatrix(c) => base(Command::Indicatrix, c, Format::Csv),
            CommandArgs::Direction { common, kind } => RunConfig {
                kind: kind_from(kind, true)?,
                beta0: kind.beta0,
                ..base(Command::Direction, common, Format::Csv)
            },
            CommandArgs::Classify(c) => base(Command::Classify, c, Format::Json),
            CommandArgs::Verify { common, kind } => RunConfig {
                kind: kind_from(kind, false)?,
                ..base(Command::Verify, common, Format::Json)
            },
            CommandArgs::Reproduce { id, output, tol } => RunConfig {
                command: Command::Reproduce,
                curve: id.clone(),
                grid: None,
                kind: None,
                beta0: None,
                tolerance: *tol,
                format: Format::Svg,
                output: Some(output.clone().unwrap_or_else(|| PathBuf::from(format!("reproduce-{id}")))),
                frames: None,
            },
        };
        if !(config.tolerance > 0.0 && config.tolerance.is_finite()) {
            return Err(CliError::Input(format!("tolerance must be positive, got {}", config.tolerance)));
        }
        if matches!(config.command, Command::Classify | Command::Verify) && config.format != Format::Json {
            return Err(CliError::Input("classify and verify only write JSON".into()));
        }
        Ok(config)
    }
}

/// The curve named by `--curve`, with its catalog entry when it has one.
struct Source {
    curve: Curve3,
    entry: Option<CatalogEntry>,
}

fn resolve(config: &RunConfig) -> CliResult<Source> {
    if let Some(entry) = catalog::lookup(&config.curve) {
        return Ok(Source {
            curve: entry.curve.clone(),
            entry: Some(entry),
        });
    }
    if !config.curve.contains(',') {
        return Err(CliError::Input(format!(
            "unknown curve id '{}'; known ids: {}",
            config.curve,
            catalog::ids().join(", ")
        )));
    }
    let grid = config
        .grid
        .ok_or_else(|| CliError::Input("--grid is required for curve expressions".into()))?;
    Ok(Source {
        curve: parse_curve_expression(&config.curve, (grid.start(), grid.end()))?,
        entry: None,
    })
}

impl Source {
    /// The explicit grid, else the entry's plotting or analysis grid.
    fn grid(&self, config: &RunConfig, analysis: bool) -> Grid {
        config.grid.unwrap_or_else(|| {
            let entry = self.entry.as_ref().expect("expressions always carry a grid");
            if analysis {
                entry.analysis_grid
            } else {
                entry.grid
            }
        })
    }

    fn frames(&self, config: &RunConfig, analysis: bool) -> FrameOptions {
        let mode = config.frames.unwrap_or(match (&self.entry, analysis, config.grid) {
            (Some(e), false, _) => e.frame_mode,
            _ => FrameMode::Strict,
        });
        FrameOptions::with_mode(mode)
    }
}

/// Fixed 17-significant-digit rendering used in CSV output.
fn number(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else {
        // Adding 0.0 turns -0.0 into 0.0.
        format!("{:.16e}", v + 0.0)
    }
}

fn csv_table(header: &[&str], rows: &[Vec<f64>]) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io_err = |e: csv::Error| CliError::Io {
        path: "<csv>".into(),
        source: io::Error::other(e.to_string()),
    };
    w.write_record(header).map_err(io_err)?;
    for row in rows {
        w.write_record(row.iter().map(|&v| number(v))).map_err(io_err)?;
    }
    w.into_inner().map_err(|e| CliError::Io {
        path: "<csv>".into(),
        source: io::Error::other(e.to_string()),
    })
}

fn document(config: &RunConfig, results: Value, checks: &[Check]) -> Value {
    json!({
        "config": config,
        "results": results,
        "checks": checks,
        "version": VERSION,
    })
}

fn to_json(value: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s.into_bytes()
}

fn write_bytes(path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => io::stdout().write_all(bytes).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn frame_row(param: f64, p: Vec3, t: Vec3, n: Vec3, b: Vec3, kappa: f64, tau: f64) -> Vec<f64> {
    let mut row = vec![param];
    for v in [p, t, n, b] {
        row.extend(v.iter());
    }
    row.push(kappa);
    row.push(tau);
    row
}

/// Rendered output of a table-producing command.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
    points: Vec<Vec3>,
    results: Value,
}

fn emit_table(config: &RunConfig, title: &str, table: Table) -> CliResult<bool> {
    let bytes = match config.format {
        Format::Csv => csv_table(&table.header, &table.rows)?,
        Format::Json => to_json(&document(config, table.results, &[])),
        Format::Svg => svg::render(title, &table.points)?.into_bytes(),
    };
    write_bytes(config.output.as_deref(), &bytes)?;
    Ok(true)
}

fn run_frenet(config: &RunConfig) -> CliResult<bool> {
    let src = resolve(config)?;
    let grid = src.grid(config, false);
    let track = FrameTrack::new(&src.curve, &grid, &src.frames(config, false))?;
    let mut rows = Vec::new();
    let mut points = Vec::new();
    let mut samples = Vec::new();
    for f in track.frames() {
        let p = src.curve.point(f.t_param)?;
        points.push(p);
        rows.push(frame_row(f.t_param, p, f.tangent, f.normal, f.binormal, f.kappa, f.tau));
        samples.push(json!({"point": p, "apparatus": f.apparatus(), "speed": f.speed, "inflection": f.inflection}));
    }
    emit_table(
        config,
        &format!("{} (curve)", config.curve),
        Table {
            header: FRENET_COLUMNS.to_vec(),
            rows,
            points,
            results: json!({ "samples": samples }),
        },
    )
}

fn run_indicatrix(config: &RunConfig) -> CliResult<bool> {
    let src = resolve(config)?;
    let grid = src.grid(config, false);
    let ind = Indicatrix::new(&src.curve, &grid, &src.frames(config, false))?;
    let mut rows = Vec::new();
    let mut points = Vec::new();
    let apparatus = ind.apparatus();
    for (f, a) in ind.frames().iter().zip(&apparatus) {
        points.push(f.tangent);
        let mut row = frame_row(a.t_param, f.tangent, a.tangent, a.normal, a.binormal, a.kappa, a.tau);
        row.push(a.s_t);
        rows.push(row);
    }
    let mut header = FRENET_COLUMNS.to_vec();
    header.push("s_t");
    emit_table(
        config,
        &format!("{} (tangent indicatrix)", config.curve),
        Table {
            header,
            rows,
            points,
            results: json!({ "samples": apparatus, "sigma": ind.sigma() }),
        },
    )
}

fn run_direction(config: &RunConfig) -> CliResult<bool> {
    let src = resolve(config)?;
    let grid = src.grid(config, false);
    let kind = config.kind.expect("direction always has a kind");
    let ind = Arc::new(Indicatrix::new(&src.curve, &grid, &src.frames(config, false))?);
    let beta = DirectionCurve::new(kind, ind, config.beta0.unwrap_or_else(Vec3::zeros))?;
    let nan = Vec3::repeat(f64::NAN);
    let rows = beta
        .samples()
        .iter()
        .map(|s| {
            let mut row = match s.measured.frame() {
                Some(f) => frame_row(s.t_param, s.point, f.tangent, f.normal, f.binormal, f.kappa, f.tau),
                None => frame_row(s.t_param, s.point, nan, nan, nan, f64::NAN, f64::NAN),
            };
            row.push(s.predicted_kappa);
            row.push(s.predicted_tau);
            row
        })
        .collect();
    let mut header = FRENET_COLUMNS.to_vec();
    header.extend(["kappa_pred", "tau_pred"]);
    let residual = match residual_check(&kind, &beta) {
        Ok(r) => serde_json::to_value(r).expect("reports serialize"),
        Err(e) if e.is_degenerate() => json!({ "degenerate": e.to_string() }),
        Err(e) => return Err(e.into()),
    };
    emit_table(
        config,
        &format!("{} ({} direction curve)", config.curve, kind.name()),
        Table {
            header,
            rows,
            points: beta.points(),
            results: json!({ "samples": beta.samples(), "residual": residual }),
        },
    )
}

fn run_classify(config: &RunConfig) -> CliResult<bool> {
    let src = resolve(config)?;
    let grid = src.grid(config, true);
    let options = ClassifyOptions {
        tol: config.tolerance,
        frame: src.frames(config, true),
        ..Default::default()
    };
    let report = classify_with(&src.curve, &grid, &options)?;
    let results = serde_json::to_value(&report).expect("reports serialize");
    write_bytes(config.output.as_deref(), &to_json(&document(config, results, &[])))?;
    Ok(true)
}

/// The kinds checked by `verify` and `reproduce`.
fn verification_kinds(config: &RunConfig, entry: Option<&CatalogEntry>) -> (Vec<DirectionKind>, PhaseChoice) {
    if let Some(k) = config.kind {
        return (vec![k], PhaseChoice::Given);
    }
    let theta = entry.and_then(|e| e.figures).map_or(FRAC_PI_3, |f| f.theta);
    (
        vec![
            DirectionKind::evolute(0.0),
            DirectionKind::bertrand(theta),
            DirectionKind::mannheim(0.0),
        ],
        PhaseChoice::Centered,
    )
}

/// Runs the analysis checks and, for catalog entries with reference figures
/// and no grid override, the closed-form comparisons.
fn verification(config: &RunConfig, src: &Source) -> CliResult<(Value, Vec<Check>, Option<ReferenceRun>)> {
    let grid = src.grid(config, true);
    let (kinds, phases) = verification_kinds(config, src.entry.as_ref());
    let v = verify_curve(&src.curve, &grid, &src.frames(config, true), &kinds, phases, config.tolerance)?;
    let mut checks = v.checks.clone();
    let mut reference = None;
    if let (Some(entry), None) = (&src.entry, config.grid) {
        if let Some((ind, comparisons)) = compare_with_references(entry)? {
            if let Some(c) = indicatrix_reference_check(entry, &ind)? {
                checks.push(c);
            }
            checks.extend(reference_checks(entry, &comparisons));
            reference = Some(ReferenceRun { ind, comparisons });
        }
    }
    let references: Vec<Value> = reference
        .iter()
        .flat_map(|r| &r.comparisons)
        .map(|c| json!({ "kind": c.kind, "match": c.matched }))
        .collect();
    let results = json!({
        "grid": grid,
        "curve": v.curve,
        "indicatrix": v.indicatrix,
        "kinds": v.kinds,
        "references": references,
    });
    Ok((results, checks, reference))
}

struct ReferenceRun {
    ind: Arc<Indicatrix>,
    comparisons: Vec<crate::report::ReferenceComparison>,
}

fn run_verify(config: &RunConfig) -> CliResult<bool> {
    let src = resolve(config)?;
    let (results, checks, _) = verification(config, &src)?;
    write_bytes(config.output.as_deref(), &to_json(&document(config, results, &checks)))?;
    Ok(all_pass(&checks))
}

fn run_reproduce(config: &RunConfig) -> CliResult<bool> {
    let src = resolve(config)?;
    let entry = src.entry.as_ref().expect("reproduce ids are catalog ids");
    if entry.figures.is_none() {
        return Err(CliError::Input(format!(
            "'{}' has no reference figures; use ex7.1 or ex7.2",
            entry.id
        )));
    }
    let dir = config.output.clone().expect("reproduce always has an output directory");
    fs::create_dir_all(&dir).map_err(|source| CliError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let (results, checks, reference) = verification(config, &src)?;
    let reference = reference.expect("entries with figures are compared");
    let curve_points = entry
        .grid
        .nodes()
        .iter()
        .map(|&t| entry.curve.point(t))
        .collect::<Result<Vec<_>, _>>()?;
    let mut figures = vec![
        ("curve", "curve", curve_points),
        (
            "indicatrix",
            "tangent indicatrix",
            reference.ind.frames().iter().map(|f| f.tangent).collect(),
        ),
    ];
    for c in &reference.comparisons {
        figures.push((c.kind.name(), c.kind.name(), c.curve.points()));
    }
    let mut files = Vec::new();
    for (stem, label, points) in &figures {
        let name = format!("{stem}.svg");
        let title = format!("{}: {label}", entry.id);
        let path = dir.join(&name);
        write_bytes(Some(&path), svg::render(&title, points)?.as_bytes())?;
        files.push(json!({ "file": name, "points": points.len() }));
    }
    let results = json!({ "figures": files, "verification": results });
    // The summary must not depend on where it was written, so that two runs
    // into different directories produce identical bytes.
    let relocatable = RunConfig { output: None, ..config.clone() };
    write_bytes(Some(&dir.join("summary.json")), &to_json(&document(&relocatable, results, &checks)))?;
    Ok(all_pass(&checks))
}

/// Executes a configuration. `Ok(false)` means a verification failed.
pub fn run(config: &RunConfig) -> CliResult<bool> {
    match config.command {
        Command::Frenet => run_frenet(config),
        Command::Indicatrix => run_indicatrix(config),
        Command::Direction => run_direction(config),
        Command::Classify => run_classify(config),
        Command::Verify => run_verify(config),
        Command::Reproduce => run_reproduce(config),
    }
}

/// Structured record written when a run stops on a degenerate frame.
fn error_record(config: &RunConfig, err: &CliError) -> Value {
    let (kind, index) = match err {
        CliError::Input(_) => ("input", None),
        CliError::Io { .. } => ("io", None),
        CliError::Library(e) => (
            if e.is_degenerate() { "degenerate" } else { "input" },
            match e {
                Error::Degenerate { index, .. }
                | Error::DegenerateFrame { index, .. }
                | Error::DegenerateSpeed { index, .. } => *index,
                _ => None,
            },
        ),
    };
    document(
        config,
        json!({ "error": { "kind": kind, "message": err.to_string(), "index": index } }),
        &[],
    )
}

/// Runs parsed arguments and maps the outcome to an exit code,
/// reporting errors on stderr (and, for degenerate frames with JSON output,
/// as a structured record in the output).
pub fn execute(cli: &Cli) -> ExitCode {
    let config = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    match run(&config) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed: see the checks in the output");
            ExitCode::from(2)
        }
        Err(e) => {
            if e.exit_code() == 2 {
                let record = to_json(&error_record(&config, &e));
                if config.format == Format::Json && config.command != Command::Reproduce {
                    let _ = write_bytes(config.output.as_deref(), &record);
                } else {
                    let _ = io::stderr().write_all(&record);
                }
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("frenetlab").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn grid_flag_syntax() {
        let g = parse_grid("-1.5:2:100").unwrap();
        assert_eq!((g.start(), g.end(), g.count()), (-1.5, 2.0, 101));
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("1:0:11").is_err());
        assert!(parse_grid("0:1:x").is_err());
    }

    #[test]
    fn configs_are_validated() {
        let cli = parse(&["direction", "--curve", "ex7.1"]);
        assert!(matches!(RunConfig::from_cli(&cli), Err(CliError::Input(_))));
        let cli = parse(&["direction", "--curve", "ex7.1", "--kind", "bertrand"]);
        assert!(matches!(RunConfig::from_cli(&cli), Err(CliError::Input(_))));
        let cli = parse(&["classify", "--curve", "line", "--format", "csv"]);
        assert!(matches!(RunConfig::from_cli(&cli), Err(CliError::Input(_))));
        let cli = parse(&["direction", "--curve", "ex7.1", "--kind", "mannheim", "--phase", "-0.5"]);
        let c = RunConfig::from_cli(&cli).unwrap();
        assert_eq!(c.kind, Some(DirectionKind::mannheim(-0.5)));
        assert_eq!(c.format, Format::Csv);
    }

    #[test]
    fn unknown_curve_is_an_input_error() {
        let cli = parse(&["frenet", "--curve", "nope"]);
        let err = run(&RunConfig::from_cli(&cli).unwrap()).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn numbers_have_seventeen_significant_digits() {
        assert_eq!(number(0.1), "1.0000000000000001e-1");
        assert_eq!(number(-2.5), "-2.5000000000000000e0");
        assert_eq!(number(0.0), "0.0000000000000000e0");
        assert_eq!(number(-0.0), "0.0000000000000000e0");
        assert_eq!(number(f64::NAN), "NaN");
    }
}
