mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lca_entropy::bridge::{
    check_finite_instance, check_padic_instance, check_real_instance, check_tower_pair,
    duality_law_suite, ClosedForm, FiniteInstance, InstanceDescriptor,
};
use lca_entropy::entropyseq::{estimate, IndexSequence, DEFAULT_WINDOW};
use lca_entropy::fingroup::{cotrajectory_chain, index};
use lca_entropy::padic::{cotrajectory_index_seq, newton_entropy, PLattice};
use lca_entropy::realspace::{bowen_entropy, DEFAULT_TOLERANCE};
use lca_entropy::tdlca::ProfiniteTower;
use lca_entropy::Execution;

use input::{Instance, InstanceFile};
use report::{render_json, render_text, EntropyReport, EntropyValue, Report};

const FINITE_DEPTH: usize = 8;
const TOWER_DEPTH: usize = 8;
const PADIC_DEPTH: usize = 10;

#[derive(Parser)]
#[command(
    name = "lca-entropy",
    version,
    about = "Exact entropy and duality checks for LCA group endomorphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Number of steps n = 1..=N to compute.
    #[arg(long, global = true)]
    depth: Option<usize>,

    /// Number of trailing ratios that must agree to report a stabilized value.
    #[arg(long, global = true)]
    window: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Index sequence, certified bound and stabilization verdict.
    Entropy { file: PathBuf },
    /// Topological indices against algebraic indices of the dual.
    BridgeCheck { file: PathBuf },
    /// Randomized duality law battery.
    DualitySelftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 512)]
        max_order: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

enum Failure {
    Input(String),
    Compute(String),
}

impl Failure {
    fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Input(_) => ExitCode::from(2),
            Failure::Compute(_) => ExitCode::from(3),
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Compute(m) => m,
        }
    }
}

fn compute<T>(r: lca_entropy::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Compute(e.to_string()))
}

struct Settings {
    depth: Option<usize>,
    window: usize,
}

fn load(path: &Path) -> Result<(InstanceFile, Instance), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let input = input::parse(&text).map_err(|e| Failure::Input(e.to_string()))?;
    let instance = input.build().map_err(|e| Failure::Input(e.to_string()))?;
    Ok((input, instance))
}

fn tower_depth(t: &ProfiniteTower, j: usize) -> usize {
    match t.lag() {
        0 => TOWER_DEPTH,
        s => ((t.top_level() - j) / s + 1).min(TOWER_DEPTH),
    }
}

fn settings(
    cli_depth: Option<usize>,
    cli_window: Option<usize>,
    input: &InstanceFile,
) -> Result<Settings, Failure> {
    let window = cli_window.or(input.window).unwrap_or(DEFAULT_WINDOW);
    if window == 0 {
        return Err(Failure::Input("window must be at least 1".into()));
    }
    let depth = cli_depth.or(input.depth);
    if depth == Some(0) {
        return Err(Failure::Input("depth must be at least 1".into()));
    }
    Ok(Settings { depth, window })
}

fn tower_descriptor(t: &ProfiniteTower, j: usize, depth: usize) -> InstanceDescriptor {
    InstanceDescriptor::Tower {
        level_moduli: t
            .levels()
            .iter()
            .map(|g| g.moduli().iter().map(ToString::to_string).collect())
            .collect(),
        lag: t.lag(),
        base_level: j,
        depth,
    }
}

fn lattice_report(
    instance: InstanceDescriptor,
    indices: IndexSequence,
    window: usize,
) -> Result<EntropyReport, Failure> {
    let est = compute(estimate(&indices, window))?;
    let source = match est.status {
        lca_entropy::entropyseq::EstimateStatus::Stabilized => "stabilized",
        lca_entropy::entropyseq::EstimateStatus::BoundedOnly => "bounded-only",
    };
    Ok(EntropyReport {
        instance,
        indices: indices.indices().iter().map(ToString::to_string).collect(),
        entropy: EntropyValue {
            exact: est.exact_string(),
            decimal: est.float_value,
            source: source.into(),
        },
        estimate: Some(est),
        closed_forms: Vec::new(),
    })
}

fn need_two(depth: usize) -> Result<usize, Failure> {
    if depth < 2 {
        return Err(Failure::Input(
            "entropy estimates need depth at least 2".into(),
        ));
    }
    Ok(depth)
}

fn cmd_entropy(
    path: &Path,
    depth: Option<usize>,
    window: Option<usize>,
) -> Result<Report, Failure> {
    let (input, instance) = load(path)?;
    let s = settings(depth, window, &input)?;
    let report = match instance {
        Instance::Finite { f, u } => {
            let depth = need_two(s.depth.unwrap_or(FINITE_DEPTH))?;
            let chain = compute(cotrajectory_chain(&f, &u, depth))?;
            let idx = compute(
                chain
                    .iter()
                    .map(|c| index(&u, c))
                    .collect::<lca_entropy::Result<Vec<_>>>(),
            )?;
            let desc = InstanceDescriptor::Finite {
                instance: FiniteInstance::from_parts(&f, &u),
                depth,
            };
            lattice_report(desc, compute(IndexSequence::new(idx))?, s.window)?
        }
        Instance::Tower { tower, base_level } => {
            let depth = need_two(s.depth.unwrap_or_else(|| tower_depth(&tower, base_level)))?;
            let idx = compute(tower.cotrajectory_indices(base_level, depth))?;
            let desc = tower_descriptor(&tower, base_level, depth);
            lattice_report(desc, compute(IndexSequence::new(idx))?, s.window)?
        }
        Instance::Padic(phi) => {
            let depth = need_two(s.depth.unwrap_or(PADIC_DEPTH))?;
            let u = compute(PLattice::standard(phi.prime(), phi.dim()))?;
            let seq = compute(cotrajectory_index_seq(&phi, &u, depth))?;
            let desc = InstanceDescriptor::Padic {
                p: phi.prime(),
                matrix: phi.matrix().to_string_rows(),
                depth,
            };
            let mut r = lattice_report(desc, seq, s.window)?;
            let newton = compute(newton_entropy(&phi))?;
            r.entropy = EntropyValue {
                exact: newton.to_string(),
                decimal: newton.to_f64(),
                source: "newton".into(),
            };
            r.closed_forms.push(ClosedForm {
                name: "newton".into(),
                exact: Some(newton.to_string()),
                value: newton.to_f64(),
                boundary: false,
            });
            r
        }
        Instance::Real(phi) => {
            let h = compute(bowen_entropy(&phi, DEFAULT_TOLERANCE))?;
            EntropyReport {
                instance: InstanceDescriptor::Real {
                    matrix: phi.matrix().to_string_rows(),
                    tolerance: DEFAULT_TOLERANCE,
                },
                indices: Vec::new(),
                estimate: None,
                closed_forms: vec![ClosedForm {
                    name: "bowen".into(),
                    exact: None,
                    value: h.value,
                    boundary: h.boundary,
                }],
                entropy: EntropyValue {
                    exact: format!("{:.12}", h.value),
                    decimal: h.value,
                    source: "bowen".into(),
                },
            }
        }
    };
    Ok(Report::Entropy(report))
}

fn cmd_bridge_check(
    path: &Path,
    depth: Option<usize>,
    window: Option<usize>,
) -> Result<Report, Failure> {
    let (input, instance) = load(path)?;
    let s = settings(depth, window, &input)?;
    let report = match instance {
        Instance::Finite { f, u } => compute(check_finite_instance(
            &f,
            &u,
            s.depth.unwrap_or(FINITE_DEPTH),
            s.window,
        ))?,
        Instance::Tower { tower, base_level } => {
            let depth = s.depth.unwrap_or_else(|| tower_depth(&tower, base_level));
            compute(check_tower_pair(&tower, base_level, depth, s.window))?
        }
        Instance::Padic(phi) => compute(check_padic_instance(
            &phi,
            s.depth.unwrap_or(PADIC_DEPTH),
            s.window,
        ))?,
        Instance::Real(phi) => compute(check_real_instance(&phi, DEFAULT_TOLERANCE))?,
    };
    Ok(Report::BridgeCheck(report))
}

/// 0 when every check passed, 1 on a verified mismatch.
fn status(report: &Report) -> u8 {
    if report.passed() {
        0
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Entropy { file } => cmd_entropy(file, cli.depth, cli.window),
        Command::BridgeCheck { file } => cmd_bridge_check(file, cli.depth, cli.window),
        Command::DualitySelftest {
            seed,
            trials,
            max_order,
        } => Ok(Report::DualitySelftest(duality_law_suite(
            *seed,
            *trials,
            *max_order,
            Execution::Parallel,
        ))),
    };
    match result {
        Ok(report) => {
            let out = match cli.format {
                Format::Json => render_json(&report),
                Format::Text => render_text(&report),
            };
            print!("{out}");
            ExitCode::from(status(&report))
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            failure.exit_code()
        }
    }
}
