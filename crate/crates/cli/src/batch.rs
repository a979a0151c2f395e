use crate::commands::{
    apply_overrides, exit_code_for, read_json, summarize_outcome, write_text, Report, EXIT_INVARIANT,
    EXIT_OK, EXIT_VALIDATION,
};
use crate::svg;
use kcapture::engine;
use kcapture::scenario::{generate, GeneratorSpec, Scenario};
use rayon::prelude::*;
use serde::Serialize;
use std::path::{Path, PathBuf};

/// One CSV row per run.
#[derive(Debug, Serialize)]
struct Row {
    scenario_id: String,
    n: usize,
    k: usize,
    m: usize,
    d_max: f64,
    beta_max: Option<f64>,
    outcome: String,
    capture_time: Option<u64>,
    thm2_bound: Option<f64>,
    ratio: Option<f64>,
    audit_ok: bool,
    error: Option<String>,
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_batch(
    input: &Path,
    out_dir: &Path,
    seed: Option<u64>,
    step_limit: Option<u64>,
    want_svg: bool,
    eps_cap: Option<f64>,
    eps_closest: Option<f64>,
) -> Result<i32, i32> {
    let scenarios: Vec<(String, Scenario)> = if input.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(input)
            .map_err(|e| {
                eprintln!("error: cannot read {}: {e}", input.display());
                3
            })?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|e| e == "json"))
            .collect();
        files.sort();
        let mut out = Vec::with_capacity(files.len());
        for f in files {
            let sc: Scenario = read_json(&f)?;
            let id = f.file_stem().unwrap().to_string_lossy().into_owned();
            out.push((id, sc));
        }
        out
    } else {
        let mut spec: GeneratorSpec = read_json(input)?;
        if let Some(s) = seed {
            spec.master_seed = s;
        }
        let generated = generate(&spec).map_err(|e| {
            eprintln!("error: {e}");
            exit_code_for(&e)
        })?;
        generated
            .into_iter()
            .enumerate()
            .map(|(i, sc)| (format!("gen{i:04}"), sc))
            .collect()
    };

    let results: Vec<Row> = scenarios
        .into_par_iter()
        .map(|(id, mut scenario)| {
            apply_overrides(&mut scenario, None, step_limit, eps_cap, eps_closest);
            match engine::run(&scenario) {
                Ok((outcome, trace)) => {
                    let report = Report::from_trace(&trace);
                    let audit_ok = trace
                        .audit
                        .as_ref()
                        .map_or(true, |a| a.violations.is_empty());
                    let trace_json = serde_json::to_string(&trace).unwrap();
                    let report_json = serde_json::to_string_pretty(&report).unwrap();
                    let _ = write_text(&out_dir.join(format!("{id}.trace.json")), &trace_json);
                    let _ = write_text(&out_dir.join(format!("{id}.report.json")), &report_json);
                    if want_svg && scenario.m == 2 {
                        let _ =
                            write_text(&out_dir.join(format!("{id}.svg")), &svg::render(&scenario, &trace));
                    }
                    let bound = trace.audit.as_ref().and_then(|a| a.capture_bound);
                    let t = outcome.capture_time();
                    Row {
                        scenario_id: id,
                        n: trace.n,
                        k: trace.k,
                        m: trace.m,
                        d_max: trace.d_max0,
                        beta_max: trace.beta_max,
                        outcome: summarize_outcome(&outcome),
                        capture_time: t,
                        thm2_bound: bound,
                        ratio: match (t, bound) {
                            (Some(t), Some(b)) if b > 0.0 => Some(t as f64 / b),
                            _ => None,
                        },
                        audit_ok,
                        error: None,
                    }
                }
                Err(e) => Row {
                    scenario_id: id,
                    n: scenario.n(),
                    k: scenario.k,
                    m: scenario.m,
                    d_max: f64::NAN,
                    beta_max: None,
                    outcome: "error".into(),
                    capture_time: None,
                    thm2_bound: None,
                    ratio: None,
                    audit_ok: false,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();

    let mut csv = String::from(
        "scenario_id,n,k,m,d_max,beta_max,outcome,capture_time,thm2_bound,ratio,audit_ok,error\n",
    );
    for r in &results {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{:?},{},{},{},{},{}\n",
            r.scenario_id,
            r.n,
            r.k,
            r.m,
            fmt_opt_f(Some(r.d_max)),
            fmt_opt_f(r.beta_max),
            r.outcome,
            fmt_opt_u(r.capture_time),
            fmt_opt_f(r.thm2_bound),
            fmt_opt_f(r.ratio),
            r.audit_ok,
            r.error.as_deref().unwrap_or("")
        ));
    }
    write_text(&out_dir.join("summary.csv"), &csv)?;

    let failed: Vec<&Row> = results.iter().filter(|r| !r.audit_ok || r.error.is_some()).collect();
    println!(
        "batch: {} runs, {} failed; summary at {}",
        results.len(),
        failed.len(),
        out_dir.join("summary.csv").display()
    );
    for r in &failed {
        eprintln!(
            "failed: {} ({})",
            r.scenario_id,
            r.error.as_deref().unwrap_or("audit violation")
        );
    }
    if failed.is_empty() {
        Ok(EXIT_OK)
    } else if failed.iter().any(|r| r.error.is_none()) {
        Ok(EXIT_INVARIANT)
    } else {
        Ok(EXIT_VALIDATION)
    }
}

fn fmt_opt_f(v: Option<f64>) -> String {
    match v {
        Some(x) if x.is_finite() => format!("{x:.6}"),
        _ => String::new(),
    }
}

fn fmt_opt_u(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}
