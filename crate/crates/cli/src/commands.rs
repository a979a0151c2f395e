use crate::args::{Cli, Command};
use crate::{batch, svg};
use kcapture::engine;
use kcapture::error::Error;
use kcapture::geometry::{beta_max, halfspace_depth, in_khull_interior, khull_boundary_2d, PointSet, Vector};
use kcapture::oracle::BoundAudit;
use kcapture::scenario::Scenario;
use kcapture::trace::{Outcome, Trace};
use serde::Serialize;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Per-run report: outcome, audit and headline quantities.
#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub seed: u64,
    pub d_max0: f64,
    pub beta_max: Option<f64>,
    pub outcome: Outcome,
    pub capture_time: Option<u64>,
    pub rounds: u64,
    pub min_separation: f64,
    pub max_drift: f64,
    pub audit: Option<BoundAudit>,
}

impl Report {
    pub fn from_trace(trace: &Trace) -> Report {
        Report {
            schema_version: 1,
            n: trace.n,
            k: trace.k,
            m: trace.m,
            seed: trace.seed,
            d_max0: trace.d_max0,
            beta_max: trace.beta_max,
            outcome: trace.outcome.clone(),
            capture_time: trace.outcome.capture_time(),
            rounds: trace.summary.rounds,
            min_separation: trace.summary.min_separation,
            max_drift: trace.summary.max_drift,
            audit: trace.audit.clone(),
        }
    }
}

pub fn dispatch(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Simulate { scenario, out_dir, seed, step_limit, svg, eps_cap, eps_closest } => {
            cmd_simulate(&scenario, out_dir, seed, step_limit, svg, eps_cap, eps_closest)
        }
        Command::Khull { points, k, query } => cmd_khull(&points, k, query),
        Command::Beta { points, k, query } => cmd_beta(&points, k, &query),
        Command::Batch { input, out_dir, seed, step_limit, svg, eps_cap, eps_closest } => {
            batch::cmd_batch(&input, &out_dir, seed, step_limit, svg, eps_cap, eps_closest)
        }
        Command::Audit { trace } => cmd_audit(&trace),
    };
    match result {
        Ok(code) => code,
        Err(code) => code,
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, i32> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_IO
    })?;
    serde_json::from_str(&text).map_err(|e| {
        eprintln!("error: cannot parse {}: {e}", path.display());
        EXIT_VALIDATION
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), i32> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| {
            eprintln!("error: cannot create {}: {e}", parent.display());
            EXIT_IO
        })?;
    }
    std::fs::write(path, text).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        EXIT_IO
    })
}

pub fn exit_code_for(err: &Error) -> i32 {
    if err.is_validation() {
        EXIT_VALIDATION
    } else {
        EXIT_INVARIANT
    }
}

pub fn apply_overrides(
    scenario: &mut Scenario,
    seed: Option<u64>,
    step_limit: Option<u64>,
    eps_cap: Option<f64>,
    eps_closest: Option<f64>,
) {
    if let Some(s) = seed {
        scenario.seed = s;
    }
    if let Some(l) = step_limit {
        scenario.step_limit = Some(l);
    }
    if eps_cap.is_some() || eps_closest.is_some() {
        let mut tol = scenario.tolerances.clone().unwrap_or_default();
        if let Some(c) = eps_cap {
            tol.eps_cap = c;
        }
        if let Some(c) = eps_closest {
            tol.eps_closest = c;
        }
        scenario.tolerances = Some(tol);
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    path: &Path,
    out_dir: Option<PathBuf>,
    seed: Option<u64>,
    step_limit: Option<u64>,
    want_svg: bool,
    eps_cap: Option<f64>,
    eps_closest: Option<f64>,
) -> Result<i32, i32> {
    let mut scenario: Scenario = read_json(path)?;
    apply_overrides(&mut scenario, seed, step_limit, eps_cap, eps_closest);
    let dir = out_dir.unwrap_or_else(|| path.parent().unwrap_or(Path::new(".")).to_path_buf());
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or("run".into());

    let (outcome, trace) = engine::run(&scenario).map_err(|e| {
        eprintln!("error: {e}");
        exit_code_for(&e)
    })?;
    let trace_json = serde_json::to_string_pretty(&trace).expect("trace serializes");
    write_text(&dir.join(format!("{stem}.trace.json")), &trace_json)?;
    let report = Report::from_trace(&trace);
    let report_json = serde_json::to_string_pretty(&report).expect("report serializes");
    write_text(&dir.join(format!("{stem}.report.json")), &report_json)?;
    if want_svg && scenario.m == 2 {
        let plot = svg::render(&scenario, &trace);
        write_text(&dir.join(format!("{stem}.svg")), &plot)?;
    }
    println!("{}", summarize_outcome(&outcome));
    if let Some(audit) = &trace.audit {
        if !audit.violations.is_empty() {
            for v in &audit.violations {
                eprintln!("audit violation: {v}");
            }
            return Ok(EXIT_INVARIANT);
        }
    }
    Ok(EXIT_OK)
}

pub fn summarize_outcome(outcome: &Outcome) -> String {
    match outcome {
        Outcome::KCaptured { time, captors } => {
            format!("k_captured at round {time} by pursuers {captors:?}")
        }
        Outcome::PursuersDestroyed { indices, time } => {
            format!("all pursuers destroyed by round {time}: {indices:?}")
        }
        Outcome::StepLimit { time } => format!("step limit reached at round {time}"),
        Outcome::Escaped { certificate } => format!(
            "escaped: outside the k-Hull from round {} for {} rounds (min lead delta {:.3e})",
            certificate.certified_round, certificate.rounds_outside, certificate.min_lead_delta
        ),
    }
}

fn load_points(path: &Path) -> Result<PointSet, i32> {
    let raw: Vec<Vector> = read_json(path)?;
    PointSet::new(raw).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_VALIDATION
    })
}

fn cmd_khull(path: &Path, k: usize, query: Option<Vec<f64>>) -> Result<i32, i32> {
    let points = load_points(path)?;
    match query {
        Some(coords) => {
            let q = Vector::new(coords);
            let depth = halfspace_depth(&points, &q).map_err(|e| {
                eprintln!("error: {e}");
                exit_code_for(&e)
            })?;
            let interior = in_khull_interior(&points, &q, k).map_err(|e| {
                eprintln!("error: {e}");
                exit_code_for(&e)
            })?;
            #[derive(Serialize)]
            struct DepthOut {
                depth: usize,
                witness_direction: Vector,
                coincident: Vec<usize>,
                in_khull: bool,
                in_khull_interior: bool,
            }
            let out = DepthOut {
                in_khull: depth.depth >= k,
                in_khull_interior: interior,
                depth: depth.depth,
                witness_direction: depth.witness_direction,
                coincident: depth.coincident,
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        None => {
            let polygon = khull_boundary_2d(&points, k).map_err(|e| {
                eprintln!("error: {e}");
                exit_code_for(&e)
            })?;
            println!("{}", serde_json::to_string_pretty(&polygon).unwrap());
        }
    }
    Ok(EXIT_OK)
}

fn cmd_beta(path: &Path, k: usize, query: &[f64]) -> Result<i32, i32> {
    let points = load_points(path)?;
    let q = Vector::new(query.to_vec());
    let b = beta_max(&points, &q, k).map_err(|e| {
        eprintln!("error: {e}");
        exit_code_for(&e)
    })?;
    #[derive(Serialize)]
    struct BetaOut {
        beta_max: f64,
        g_min: f64,
        argmin_direction: Vector,
        exact: bool,
        grid_resolution: Option<usize>,
    }
    let out = BetaOut {
        beta_max: b.beta_max,
        g_min: b.g_min,
        argmin_direction: b.argmin_direction,
        exact: b.exact,
        grid_resolution: b.grid_resolution,
    };
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    Ok(EXIT_OK)
}

fn cmd_audit(path: &Path) -> Result<i32, i32> {
    let trace: Trace = read_json(path)?;
    let audit = kcapture::oracle::audit_trace(&trace);
    println!("{}", serde_json::to_string_pretty(&audit).unwrap());
    if audit.violations.is_empty() {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_INVARIANT)
    }
}
