use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use horoflow_core::boundary::{classify_boundary_point, LimitPointEvidence};
use horoflow_core::dichotomy::{
    run_dichotomy, DiagnosticsReport, DichotomyConfig, HeightBand, Settle,
};
use horoflow_core::flows::{injectivity_profile, sample_times, UnitTangent};
use horoflow_core::group::{check_elliptic_free, GroupSpec};
use horoflow_core::hyperbolic::{BoundaryPoint, Mobius};
use serde::Serialize;

use crate::output::{to_csv, to_json};
use crate::spec_io::{load_group_spec, resolved_file, SpecFile};
use crate::verify::{run_suite, VerifyConfig, VerifyReport};
use crate::VERSION;

#[derive(Debug, Parser)]
#[command(
    name = "horoflow",
    version,
    about = "Horocycle-flow diagnostics on hyperbolic surfaces"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Geometric tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Output file; standard output when absent.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlowKind {
    Horocycle,
    Geodesic,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check the geometric identities on seeded random samples (JSON).
    Verify {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Evidence for the type of a boundary point (JSON).
    Classify {
        #[arg(long)]
        group: PathBuf,
        /// A real number, or `inf`.
        #[arg(long, default_value = "inf", value_parser = parse_point)]
        point: BoundaryPoint,
        /// Word depth; defaults to the spec's `max_word_length`.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Base points along a flow orbit (CSV: s_or_t, re, im).
    Orbit {
        #[arg(long, value_enum, default_value_t = FlowKind::Horocycle)]
        flow: FlowKind,
        /// Frame `a,b,c,d` of the starting vector; defaults to the vector at
        /// `i` pointing to `∞`.
        #[arg(long, value_parser = parse_frame, allow_hyphen_values = true)]
        frame: Option<Mobius>,
        #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
        start: f64,
        #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
        end: f64,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
    },
    /// Injectivity-radius profile along a geodesic ray (CSV: t, inj_estimate).
    Inj {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, value_parser = parse_frame, allow_hyphen_values = true)]
        frame: Option<Mobius>,
        #[arg(long, default_value_t = 10.0)]
        tmax: f64,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Recurrence versus non-minimality diagnostics (JSON).
    Diagnose {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, value_parser = parse_frame, allow_hyphen_values = true)]
        frame: Option<Mobius>,
        #[arg(long, default_value_t = 0.5)]
        band_lo: f64,
        #[arg(long, default_value_t = 2.0)]
        band_hi: f64,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        #[arg(long, default_value_t = 5)]
        window: usize,
        #[arg(long, default_value_t = 8)]
        min_len: usize,
        /// Word length bound for the `T_u` witnesses.
        #[arg(long, default_value_t = 2)]
        alpha_depth: usize,
        #[arg(long)]
        depth: Option<usize>,
    },
}

fn parse_point(s: &str) -> Result<BoundaryPoint, String> {
    match s.trim() {
        "inf" | "infinity" | "∞" => Ok(BoundaryPoint::Infinity),
        x => x
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .map(BoundaryPoint::Finite)
            .ok_or_else(|| format!("expected a real number or `inf`, got `{s}`")),
    }
}

fn parse_frame(s: &str) -> Result<Mobius, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| format!("bad frame `{s}`: {e}"))?;
    let [a, b, c, d] = v[..] else {
        return Err(format!(
            "frame needs four comma-separated numbers, got `{s}`"
        ));
    };
    Mobius::new(a, b, c, d).map_err(|e| e.to_string())
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flag values; exit status 2.
    Usage(String),
    /// Errors from the input files or the computation; exit status 1.
    Domain(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(e) => write!(f, "error: {e:#}"),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Domain(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Header shared by every JSON report.
#[derive(Serialize)]
struct Report<'a, C: Serialize, B: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    common: &'a Common,
    config: C,
    #[serde(flatten)]
    body: B,
}

#[derive(Serialize)]
struct GroupEcho {
    group_path: String,
    resolved: SpecFile,
    #[serde(flatten)]
    extra: serde_json::Value,
}

fn group_echo(path: &std::path::Path, spec: &GroupSpec, extra: serde_json::Value) -> GroupEcho {
    GroupEcho {
        group_path: path.display().to_string(),
        resolved: resolved_file(spec),
        extra,
    }
}

#[derive(Serialize)]
struct ClassifyBody {
    evidence: LimitPointEvidence,
    elliptic_witnesses: usize,
    caveats: Vec<String>,
}

#[derive(Serialize)]
struct DiagnoseBody {
    report: DiagnosticsReport,
}

#[derive(Serialize)]
struct VerifyBody {
    #[serde(flatten)]
    report: VerifyReport,
}

fn load(path: &std::path::Path, depth: Option<usize>) -> Result<GroupSpec, CliError> {
    let spec = load_group_spec(path).with_context(|| format!("loading {}", path.display()))?;
    match depth {
        Some(0) => Err(usage("--depth must be at least 1")),
        Some(d) => spec
            .with_max_word_length(d)
            .map_err(|e| CliError::Domain(e.into())),
        None => Ok(spec),
    }
}

fn frame_or_reference(frame: Option<Mobius>) -> UnitTangent {
    frame.map_or(UnitTangent::REFERENCE, UnitTangent::from_frame)
}

fn json<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    to_json(value).map_err(|e| CliError::Domain(e.into()))
}

/// Bytes to write, and whether the command found a failing check.
pub struct Output {
    pub bytes: Vec<u8>,
    pub failed: bool,
}

impl From<Vec<u8>> for Output {
    fn from(bytes: Vec<u8>) -> Self {
        Output {
            bytes,
            failed: false,
        }
    }
}

/// Runs one command without writing anything.
pub fn execute(cli: &Cli) -> Result<Output, CliError> {
    let common = &cli.common;
    if !(common.tol > 0.0 && common.tol.is_finite()) {
        return Err(usage("--tol must be positive"));
    }
    match &cli.command {
        Command::Verify { samples } => {
            if *samples < 10 {
                return Err(usage("--samples must be at least 10"));
            }
            let config = VerifyConfig {
                samples: *samples,
                seed: common.seed,
                tol: common.tol,
            };
            let report = crate::with_thread_pool(|| run_suite(&config));
            let failed = !report.all_passed;
            let bytes = json(&Report {
                tool: "horoflow",
                version: VERSION,
                command: "verify",
                common,
                config,
                body: VerifyBody { report },
            })?;
            Ok(Output { bytes, failed })
        }
        Command::Classify {
            group,
            point,
            depth,
        } => {
            let spec = load(group, *depth)?;
            let depth = spec.max_word_length();
            let evidence = classify_boundary_point(&spec, *point, depth)
                .map_err(|e| CliError::Domain(e.into()))?;
            let elliptic = check_elliptic_free(&spec).map_err(|e| CliError::Domain(e.into()))?;
            let caveats = vec![format!(
                "evidence from the ball of word length {depth}; it does not certify the point type"
            )];
            json(&Report {
                tool: "horoflow",
                version: VERSION,
                command: "classify",
                common,
                config: group_echo(
                    group,
                    &spec,
                    serde_json::json!({ "point": point, "depth": depth }),
                ),
                body: ClassifyBody {
                    evidence,
                    elliptic_witnesses: elliptic.len(),
                    caveats,
                },
            })
            .map(Output::from)
        }
        Command::Orbit {
            flow,
            frame,
            start,
            end,
            step,
        } => {
            if start.is_nan() || end.is_nan() || start >= end {
                return Err(usage("--start must be below --end"));
            }
            if !(*step > 0.0 && step.is_finite()) {
                return Err(usage("--step must be positive"));
            }
            let u = frame_or_reference(*frame);
            let offsets = sample_times(end - start, *step).map_err(|e| usage(e.to_string()))?;
            let rows = offsets.into_iter().map(|k| {
                let s = start + k;
                let p = match flow {
                    FlowKind::Horocycle => u.horocycle_flow(s),
                    FlowKind::Geodesic => u.geodesic_flow(s),
                }
                .base_point();
                vec![s, p.re(), p.im()]
            });
            to_csv(&["s_or_t", "re", "im"], rows)
                .map(Output::from)
                .map_err(|e| CliError::Domain(e.into()))
        }
        Command::Inj {
            group,
            frame,
            tmax,
            step,
            depth,
        } => {
            if !(*tmax > 0.0 && tmax.is_finite()) {
                return Err(usage("--tmax must be positive"));
            }
            if !(*step > 0.0 && step.is_finite()) {
                return Err(usage("--step must be positive"));
            }
            let spec = load(group, *depth)?;
            let profile = injectivity_profile(&spec, &frame_or_reference(*frame), *tmax, *step)
                .map_err(|e| CliError::Domain(e.into()))?;
            let rows = profile
                .times
                .iter()
                .zip(&profile.inj_estimates)
                .map(|(t, v)| vec![*t, *v]);
            to_csv(&["t", "inj_estimate"], rows)
                .map(Output::from)
                .map_err(|e| CliError::Domain(e.into()))
        }
        Command::Diagnose {
            group,
            frame,
            band_lo,
            band_hi,
            eps,
            window,
            min_len,
            alpha_depth,
            depth,
        } => {
            let band = HeightBand::new(*band_lo, *band_hi).map_err(|e| usage(e.to_string()))?;
            if !(*eps > 0.0 && eps.is_finite()) || *window == 0 || *min_len < 2 {
                return Err(usage(
                    "--eps must be positive, --window at least 1, --min-len at least 2",
                ));
            }
            let spec = load(group, *depth)?;
            let config = DichotomyConfig {
                band,
                settle: Settle {
                    eps: *eps,
                    window_count: *window,
                },
                min_seq_len: *min_len,
                alpha_max_word_length: *alpha_depth,
                depth: None,
            };
            let report = run_dichotomy(&spec, &frame_or_reference(*frame), &config)
                .map_err(|e| CliError::Domain(e.into()))?;
            json(&Report {
                tool: "horoflow",
                version: VERSION,
                command: "diagnose",
                common,
                config: group_echo(
                    group,
                    &spec,
                    serde_json::json!({ "dichotomy": config, "frame": frame }),
                ),
                body: DiagnoseBody { report },
            })
            .map(Output::from)
        }
    }
}

/// Runs the command and writes its output. A verify report with a failing
/// check is still written, then reported as a domain error.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let out = execute(cli)?;
    match &cli.common.output {
        Some(path) => {
            fs::write(path, &out.bytes).with_context(|| format!("writing {}", path.display()))?
        }
        None => io::stdout()
            .write_all(&out.bytes)
            .context("writing to standard output")?,
    }
    if out.failed {
        return Err(CliError::Domain(anyhow::anyhow!(
            "some identity checks failed"
        )));
    }
    Ok(())
}
