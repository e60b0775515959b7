//! The `le3` command-line front end.
//!
//! Every command writes a [`RunManifest`] into the output directory. The
//! manifest stores a normalized argument vector, so `le3 replay` re-runs the
//! same command and regenerates the same files.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::bounds::QuotientCurveSample;
use crate::complex::{format_complex, parse_complex, Complex64};
use crate::geometry::{trisect, NormalizedTriangle, SimilarityChain};
use crate::io::svg::{orbit_scatter, quotient_plot};
use crate::io::{
    read_orbit_csv, read_quotient_csv, write_orbit_csv, write_quotient_csv, IoError, OrbitDocument,
    RunManifest,
};
use crate::orbit::{angle_stats, simulate_orbit, simulate_orbit_parallel, RandomWalkConfig};
use crate::verify::{self, VerifyOptions, VerifyTarget};

/// Environment variable consulted when `--out-dir` is absent.
pub const OUT_DIR_ENV: &str = "LE3_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "le3", version, about = "Longest-edge trisection dynamics")]
pub struct Cli {
    /// Directory for outputs and manifests (default: current directory).
    #[arg(long, global = true, env = OUT_DIR_ENV)]
    pub out_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the three normalized children of a triangle and their maps.
    Trisect(TrisectArgs),
    /// Monte Carlo simulation of the orbit of a triangle.
    Simulate(SimulateArgs),
    /// Run a verification suite and write its JSON report.
    Verify(VerifyArgs),
    /// Render a CSV produced by `simulate` or `verify theorem2` as SVG.
    Plot(PlotArgs),
    /// Re-run the command recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Args)]
pub struct TrisectArgs {
    /// Apex in Σ, e.g. "0.5+0.8660254037844386i".
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    /// Also write the JSON to this file.
    #[arg(long)]
    pub out_json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    #[arg(long, default_value_t = 1000)]
    pub walkers: u64,
    #[arg(long, default_value_t = 1000)]
    pub steps: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "orbit.csv")]
    pub out_csv: PathBuf,
    #[arg(long)]
    pub out_svg: Option<PathBuf>,
    #[arg(long)]
    pub out_json: Option<PathBuf>,
    /// Spread walkers over threads; the result is identical to the serial run.
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub target: VerifyTarget,
    /// Grid step in t for `theorem2`.
    #[arg(long, default_value_t = 1e-4)]
    pub t_step: f64,
    /// Exhaustive depth for orbit-based targets.
    #[arg(long, default_value_t = 6)]
    pub depth: u32,
    #[arg(long, default_value_t = 1000)]
    pub walkers: u64,
    #[arg(long, default_value_t = 200)]
    pub steps: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random samples for `nonincreasing` and `wr-closed-form`.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Report path (default: `<target>.json`).
    #[arg(long)]
    pub out_json: Option<PathBuf>,
    /// Quotient samples for `theorem2`.
    #[arg(long, default_value = "quotient.csv")]
    pub out_csv: PathBuf,
    /// Quotient plot for `theorem2`.
    #[arg(long)]
    pub out_svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    OrbitScatter,
    QuotientCurve,
}

impl PlotKind {
    fn name(self) -> &'static str {
        match self {
            PlotKind::OrbitScatter => "orbit-scatter",
            PlotKind::QuotientCurve => "quotient-curve",
        }
    }
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// CSV input, relative to the current directory.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub kind: PlotKind,
    #[arg(long, default_value = "plot.svg")]
    pub out_svg: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    #[arg(long)]
    pub manifest: PathBuf,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] crate::Error),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(IoError::Io(e))
    }
}

/// Result of a command that ran to completion.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    /// False when a verification suite found a counterexample.
    pub pass: bool,
    pub manifest: PathBuf,
    pub outputs: Vec<PathBuf>,
}

impl Outcome {
    pub fn exit_code(&self) -> ExitCode {
        if self.pass {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }
    }
}

/// Entry point of the binary: parse, run, map errors to exit codes.
pub fn main_entry() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(out) => out.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

pub fn execute(cli: Cli) -> Result<Outcome, CliError> {
    if let Command::Replay(a) = &cli.command {
        return cmd_replay(a, cli.out_dir.as_deref());
    }
    let out_dir = match &cli.out_dir {
        Some(d) => absolute(d)?,
        None => std::env::current_dir()?,
    };
    match cli.command {
        Command::Trisect(a) => cmd_trisect(&a, &out_dir),
        Command::Simulate(a) => cmd_simulate(&a, &out_dir),
        Command::Verify(a) => cmd_verify(&a, &out_dir),
        Command::Plot(a) => cmd_plot(&a, &out_dir),
        Command::Replay(_) => unreachable!("handled above"),
    }
}

fn absolute(p: &Path) -> Result<PathBuf, CliError> {
    Ok(std::path::absolute(p)?)
}

fn resolve(out_dir: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        out_dir.join(p)
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|source| CliError::File {
            path: parent.to_path_buf(),
            source,
        })?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| CliError::File {
            path: path.to_path_buf(),
            source,
        })
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    let mut w = create(path)?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

fn parse_point(s: &str) -> Result<NormalizedTriangle, CliError> {
    Ok(NormalizedTriangle::new(parse_complex(s)?)?)
}

fn path_arg(p: &Path) -> String {
    p.display().to_string()
}

/// Writes the manifest as `<stem>.manifest.json` in `out_dir`.
fn finish(
    mut manifest: RunManifest,
    stem: &str,
    out_dir: &Path,
    outputs: Vec<PathBuf>,
    start: Instant,
    pass: bool,
) -> Result<Outcome, CliError> {
    fs::create_dir_all(out_dir).map_err(|source| CliError::File {
        path: out_dir.to_path_buf(),
        source,
    })?;
    let path = out_dir.join(format!("{stem}.manifest.json"));
    manifest.finish(
        out_dir,
        outputs.iter().map(|p| path_arg(p)).collect(),
        start.elapsed(),
    );
    manifest.write(&path)?;
    Ok(Outcome {
        pass,
        manifest: path,
        outputs,
    })
}

fn chain_json(c: &SimilarityChain) -> serde_json::Value {
    json!({
        "translation": format_complex(c.translation),
        "rotation": format_complex(c.rotation),
        "conjugated": c.conjugated,
        "magnification": c.magnification,
    })
}

fn point_json(z: Complex64) -> serde_json::Value {
    json!({ "z": format_complex(z), "re": z.re, "im": z.im })
}

fn cmd_trisect(a: &TrisectArgs, out_dir: &Path) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let z = parse_point(&a.z)?;
    let t = trisect(z);
    let mut doc = json!({ "input": point_json(z.z()) });
    for (name, (c, chain)) in ["left", "mid", "right"]
        .iter()
        .zip(t.children.iter().zip(&t.chains))
    {
        let mut v = point_json(c.z());
        v["chain"] = chain_json(chain);
        doc[*name] = v;
    }
    let text = serde_json::to_string_pretty(&doc).expect("json value") + "\n";
    print!("{text}");

    let mut args = vec!["trisect".to_string(), "--z".into(), format_complex(z.z())];
    let mut outputs = Vec::new();
    if let Some(p) = &a.out_json {
        let path = resolve(out_dir, p);
        write_text(&path, &text)?;
        args.extend(["--out-json".into(), path_arg(p)]);
        outputs.push(path);
    }
    let manifest = RunManifest::new("trisect", args, json!({ "z": format_complex(z.z()) }), None);
    finish(manifest, "trisect", out_dir, outputs, start, true)
}

fn cmd_simulate(a: &SimulateArgs, out_dir: &Path) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let z = parse_point(&a.z)?;
    let cfg = RandomWalkConfig::new(a.walkers, a.steps, a.seed)?;
    let orbit = if a.parallel {
        simulate_orbit_parallel(z, &cfg)
    } else {
        simulate_orbit(z, &cfg)
    };

    let mut args = vec![
        "simulate".to_string(),
        "--z".into(),
        format_complex(z.z()),
        "--walkers".into(),
        a.walkers.to_string(),
        "--steps".into(),
        a.steps.to_string(),
        "--seed".into(),
        a.seed.to_string(),
        "--out-csv".into(),
        path_arg(&a.out_csv),
    ];
    let mut outputs = Vec::new();

    let csv_path = resolve(out_dir, &a.out_csv);
    write_orbit_csv(&orbit, create(&csv_path)?)?;
    outputs.push(csv_path);

    if let Some(p) = &a.out_svg {
        let pts: Vec<Complex64> = orbit.iter().map(|t| t.z()).collect();
        let path = resolve(out_dir, p);
        write_text(&path, &orbit_scatter(&pts).render())?;
        args.extend(["--out-svg".into(), path_arg(p)]);
        outputs.push(path);
    }
    if let Some(p) = &a.out_json {
        let doc = OrbitDocument::new(z, &cfg, &orbit);
        let path = resolve(out_dir, p);
        write_text(
            &path,
            &(serde_json::to_string_pretty(&doc).map_err(IoError::from)? + "\n"),
        )?;
        args.extend(["--out-json".into(), path_arg(p)]);
        outputs.push(path);
    }
    if a.parallel {
        args.push("--parallel".into());
    }

    let stats = angle_stats(&orbit)?;
    println!(
        "{} points; min angle {} at {}; max angle {} at {}",
        orbit.len(),
        stats.min_angle,
        stats.argmin,
        stats.max_angle,
        stats.argmax
    );
    let params = json!({
        "z": format_complex(z.z()),
        "walkers": a.walkers,
        "steps": a.steps,
        "parallel": a.parallel,
        "points": orbit.len(),
    });
    let manifest = RunManifest::new("simulate", args, params, Some(a.seed));
    finish(manifest, "simulate", out_dir, outputs, start, true)
}

fn cmd_verify(a: &VerifyArgs, out_dir: &Path) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let opts = VerifyOptions {
        t_step: a.t_step,
        depth: a.depth,
        walkers: a.walkers,
        steps: a.steps,
        seed: a.seed,
        samples: a.samples,
    };
    let name = a.target.name();
    let outcome = verify::run(a.target, &opts)?;
    let report = &outcome.report;

    let json_rel = a
        .out_json
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{name}.json")));
    let mut args = vec![
        "verify".to_string(),
        name.to_string(),
        "--t-step".into(),
        a.t_step.to_string(),
        "--depth".into(),
        a.depth.to_string(),
        "--walkers".into(),
        a.walkers.to_string(),
        "--steps".into(),
        a.steps.to_string(),
        "--seed".into(),
        a.seed.to_string(),
        "--out-json".into(),
        path_arg(&json_rel),
    ];
    if let Some(n) = a.samples {
        args.extend(["--samples".into(), n.to_string()]);
    }
    let mut outputs = Vec::new();
    let json_path = resolve(out_dir, &json_rel);
    write_text(
        &json_path,
        &(serde_json::to_string_pretty(report).map_err(IoError::from)? + "\n"),
    )?;
    outputs.push(json_path);

    if let Some(curve) = &outcome.quotient {
        let csv_path = resolve(out_dir, &a.out_csv);
        write_quotient_csv(&curve.samples, create(&csv_path)?)?;
        args.extend(["--out-csv".into(), path_arg(&a.out_csv)]);
        outputs.push(csv_path);
        if let Some(p) = &a.out_svg {
            let path = resolve(out_dir, p);
            write_text(
                &path,
                &quotient_plot(&ratio_points(&curve.samples)).render(),
            )?;
            args.extend(["--out-svg".into(), path_arg(p)]);
            outputs.push(path);
        }
    }

    print!("{}", report.summary());
    if let Some(f) = &report.first_failure {
        eprintln!("verification failed: {f}");
    }
    let params = serde_json::to_value(opts).map_err(IoError::from)?;
    let manifest = RunManifest::new("verify", args, params, Some(a.seed));
    finish(
        manifest,
        &format!("verify-{name}"),
        out_dir,
        outputs,
        start,
        report.pass,
    )
}

fn ratio_points(samples: &[QuotientCurveSample]) -> Vec<(f64, f64)> {
    samples.iter().map(|s| (s.t, s.ratio)).collect()
}

fn cmd_plot(a: &PlotArgs, out_dir: &Path) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let input = absolute(&a.input)?;
    let file = File::open(&input).map_err(|source| CliError::File {
        path: input.clone(),
        source,
    })?;
    let scene = match a.kind {
        PlotKind::OrbitScatter => orbit_scatter(&read_orbit_csv(file)?),
        PlotKind::QuotientCurve => {
            let rows = read_quotient_csv(file)?;
            quotient_plot(&rows.iter().map(|r| (r.t, r.ratio)).collect::<Vec<_>>())
        }
    };
    let path = resolve(out_dir, &a.out_svg);
    write_text(&path, &scene.render())?;
    let args = vec![
        "plot".to_string(),
        "--input".into(),
        path_arg(&input),
        "--kind".into(),
        a.kind.name().into(),
        "--out-svg".into(),
        path_arg(&a.out_svg),
    ];
    let params = json!({ "input": path_arg(&input), "kind": a.kind.name() });
    let manifest = RunManifest::new("plot", args, params, None);
    finish(manifest, "plot", out_dir, vec![path], start, true)
}

/// Re-runs a recorded command. Outputs go to `--out-dir` when given,
/// otherwise to the directory recorded in the manifest.
fn cmd_replay(a: &ReplayArgs, out_dir: Option<&Path>) -> Result<Outcome, CliError> {
    let manifest = RunManifest::read(&a.manifest)?;
    if manifest.args.first().map(String::as_str) == Some("replay") {
        return Err(CliError::Usage(
            "a manifest cannot replay another replay".into(),
        ));
    }
    let target = match out_dir {
        Some(d) => absolute(d)?,
        None => PathBuf::from(&manifest.out_dir),
    };
    let argv = std::iter::once("le3".to_string()).chain(manifest.args.iter().cloned());
    let mut cli = Cli::try_parse_from(argv)
        .map_err(|e| CliError::Usage(format!("bad manifest arguments: {e}")))?;
    cli.out_dir = Some(target);
    execute(cli)
}
