//! Command-line front end: `pdcenter <dist|center|verify|gen>`.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage, parse or input
//! errors.

pub mod dgm;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::center::{center_diagrams, eval_diagram_center, Algorithm, DiagramCenter, Objective, SelectionMode};
use crate::distances::{bottleneck_distance, wasserstein_distance};
use crate::geometry::{Diagram, EPS};
use crate::instances::{generate, GenKind, GenSpec};

pub use dgm::{format_g17, parse_diagram, read_diagram, write_diagram, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pdcenter", version, about = "Persistence diagram distances and center diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Bottleneck,
    Wasserstein,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    #[value(name = "no-replacement")]
    NoReplacement,
    Replacement,
    Continuous,
}

impl From<ModeArg> for SelectionMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::NoReplacement => SelectionMode::NoReplacement,
            ModeArg::Replacement => SelectionMode::WithReplacement,
            ModeArg::Continuous => SelectionMode::Continuous,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Exact2,
    Approx,
    Brute,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Exact2 => Algorithm::Exact2,
            AlgoArg::Approx => Algorithm::Approx,
            AlgoArg::Brute => Algorithm::Brute,
        }
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct ObjectiveArgs {
    /// Distance between diagrams.
    #[arg(long, value_enum, default_value = "bottleneck")]
    pub metric: MetricArg,
    /// Wasserstein exponent.
    #[arg(short = 'p', default_value_t = 1.0)]
    pub p: f64,
}

impl ObjectiveArgs {
    fn objective(&self) -> Objective {
        match self.metric {
            MetricArg::Bottleneck => Objective::Bottleneck,
            MetricArg::Wasserstein => Objective::Wasserstein(self.p),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance between two diagrams.
    Dist {
        #[command(flatten)]
        objective: ObjectiveArgs,
        a: PathBuf,
        b: PathBuf,
    },
    /// Center diagram of two or more diagrams.
    Center {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "approx")]
        algo: AlgoArg,
        #[command(flatten)]
        objective: ObjectiveArgs,
        /// Where to write the center diagram.
        #[arg(long)]
        out: PathBuf,
        #[arg(required = true, num_args = 2..)]
        inputs: Vec<PathBuf>,
    },
    /// Check that a center diagram is within a radius of every input.
    Verify {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[command(flatten)]
        objective: ObjectiveArgs,
        #[arg(long)]
        radius: f64,
        center: PathBuf,
        #[arg(required = true, num_args = 1..)]
        inputs: Vec<PathBuf>,
    },
    /// Write fixture diagrams and a manifest.
    Gen {
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.0)]
        lo: f64,
        #[arg(long, default_value_t = 10.0)]
        hi: f64,
        /// Path points of the element gadget.
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = false, action = clap::ArgAction::Set)]
        pull: bool,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        absorbed: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Error carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

/// Runs the CLI on `args` (including the program name), writing the report
/// to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cmd: &Command) -> Result<(String, i32), Failure> {
    match cmd {
        Command::Dist { objective, a, b } => cmd_dist(objective, a, b),
        Command::Center {
            mode,
            algo,
            objective,
            out,
            inputs,
        } => cmd_center((*mode).into(), (*algo).into(), objective.objective(), out, inputs),
        Command::Verify {
            mode,
            objective,
            radius,
            center,
            inputs,
        } => cmd_verify((*mode).into(), objective.objective(), *radius, center, inputs),
        Command::Gen {
            kind,
            n,
            m,
            seed,
            lo,
            hi,
            d,
            pull,
            absorbed,
            out,
        } => {
            let spec = GenSpec {
                kind: kind.parse::<GenKind>().map_err(usage)?,
                n: *n,
                m: *m,
                seed: *seed,
                bbox: (*lo, *hi),
                d: *d,
                pull: *pull,
                absorbed: *absorbed,
            };
            cmd_gen(&spec, out)
        }
    }
}

fn read_all(paths: &[PathBuf]) -> Result<Vec<Diagram>, Failure> {
    paths.iter().map(|p| read_diagram(p).map_err(usage)).collect()
}

fn cmd_dist(objective: &ObjectiveArgs, a: &Path, b: &Path) -> Result<(String, i32), Failure> {
    let da = read_diagram(a).map_err(usage)?;
    let db = read_diagram(b).map_err(usage)?;
    let v = match objective.objective() {
        Objective::Bottleneck => bottleneck_distance(&da, &db),
        Objective::Wasserstein(p) => wasserstein_distance(&da, &db, p),
    }
    .map_err(usage)?;
    Ok((format!("{v:.9}\n"), EXIT_OK))
}

fn cmd_center(
    mode: SelectionMode,
    algo: Algorithm,
    objective: Objective,
    out: &Path,
    inputs: &[PathBuf],
) -> Result<(String, i32), Failure> {
    let diagrams = read_all(inputs)?;
    let result = center_diagrams(&diagrams, mode, objective, algo).map_err(usage)?;
    let header = vec![format!(
        "center diagram: mode={mode} objective={objective} algo={algo} value={:.9}",
        result.objective_value
    )];
    fs::write(out, write_diagram(&result.diagram, &header))
        .map_err(|e| usage(format!("{}: {e}", out.display())))?;

    let eval = result.verify(&diagrams).map_err(usage)?;
    let consistent = (eval.value - result.objective_value).abs() <= EPS;
    let mut failures: Vec<String> = eval.violations.iter().map(|v| v.to_string()).collect();
    if !consistent {
        failures.push(format!(
            "objective-mismatch: reported {} but re-evaluated {}",
            result.objective_value, eval.value
        ));
    }
    let text = solution_report(&result, inputs.len(), &failures);
    let code = if failures.is_empty() { EXIT_OK } else { EXIT_VERIFY };
    Ok((text, code))
}

/// Key/value report; one key per line.
pub fn solution_report(result: &DiagramCenter, inputs: usize, failures: &[String]) -> String {
    let sol = &result.solution;
    let mut s = String::new();
    let _ = writeln!(s, "value: {:.9}", result.objective_value);
    let _ = writeln!(s, "mode: {}", sol.mode);
    let _ = writeln!(s, "objective: {}", sol.objective);
    let _ = writeln!(s, "algo: {}", result.algorithm);
    let _ = writeln!(s, "inputs: {inputs}");
    let _ = writeln!(s, "centers: {}", result.diagram.len());
    for p in &result.diagram.points {
        let _ = writeln!(s, "center: {} {}", format_g17(p.x), format_g17(p.y));
    }
    let _ = writeln!(s, "clusters: {}", sol.clusters.len());
    for (c, cl) in sol.clusters.iter().enumerate() {
        let kind = if cl.center.on_diagonal || cl.center.pt.y <= cl.center.pt.x {
            "diagonal"
        } else {
            "point"
        };
        let members: Vec<String> = cl
            .members
            .iter()
            .zip(&result.augmented)
            .map(|(&k, aug)| {
                let (d, i) = aug.sources[k];
                let proj = if aug.points[k].on_diagonal { "'" } else { "" };
                format!("{}:{}{}", d + 1, i, proj)
            })
            .collect();
        let _ = writeln!(
            s,
            "cluster: {c} {kind} {} {} | {}",
            format_g17(cl.center.pt.x),
            format_g17(cl.center.pt.y),
            members.join(" ")
        );
    }
    for f in failures {
        let _ = writeln!(s, "check: {f}");
    }
    let _ = writeln!(s, "status: {}", if failures.is_empty() { "ok" } else { "failed" });
    s
}

fn cmd_verify(
    mode: SelectionMode,
    objective: Objective,
    radius: f64,
    center: &Path,
    inputs: &[PathBuf],
) -> Result<(String, i32), Failure> {
    let q = read_diagram(center).map_err(usage)?;
    let diagrams = read_all(inputs)?;
    let eval = eval_diagram_center(&q, &diagrams, mode, objective).map_err(usage)?;
    let pass = eval.value <= radius + EPS && eval.is_valid();
    let mut s = String::new();
    let _ = writeln!(s, "value: {:.9}", eval.value);
    let _ = writeln!(s, "radius: {:.9}", radius);
    for v in &eval.violations {
        let _ = writeln!(s, "check: {v}");
    }
    let _ = writeln!(s, "status: {}", if pass { "pass" } else { "fail" });
    Ok((s, if pass { EXIT_OK } else { EXIT_VERIFY }))
}

fn cmd_gen(spec: &GenSpec, dir: &Path) -> Result<(String, i32), Failure> {
    let diagrams = generate(spec).map_err(usage)?;
    fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    let mut manifest = String::new();
    for (k, v) in spec.manifest() {
        let _ = writeln!(manifest, "{k}: {v}");
    }
    let mut listing = String::new();
    for (i, d) in diagrams.iter().enumerate() {
        let name = format!("diagram_{}.dgm", i + 1);
        let header = vec![format!("{} diagram {}", spec.kind, i + 1)];
        fs::write(dir.join(&name), write_diagram(d, &header))
            .map_err(|e| usage(format!("{}: {e}", dir.join(&name).display())))?;
        let _ = writeln!(manifest, "file: {name}");
        let _ = writeln!(listing, "{}", dir.join(&name).display());
    }
    fs::write(dir.join("manifest.txt"), manifest)
        .map_err(|e| usage(format!("{}: {e}", dir.join("manifest.txt").display())))?;
    Ok((listing, EXIT_OK))
}
