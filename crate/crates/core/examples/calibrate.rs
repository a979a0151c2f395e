use kcapture::engine::{run_with_mode};
use kcapture::evader::EvaderSpec;
use kcapture::scenario::{generate, GeneratorSpec, Placement, PolicyKind};
use kcapture::trace::TraceMode;
use std::time::Instant;

fn main() {
    let spec = GeneratorSpec {
        count: 50,
        n_choices: vec![5, 6, 7, 8, 9],
        k_choices: vec![2, 3],
        coord_range: (-10.0, 10.0),
        evader_strategy: EvaderSpec::GreedyMaximin { samples: 256 },
        policy: PolicyKind::KCapture,
        placement: Placement::KHullInterior,
        master_seed: 20260809,
    };
    let t0 = Instant::now();
    let scenarios = generate(&spec).unwrap();
    println!("generation: {:?}", t0.elapsed());

    let t0 = Instant::now();
    let mut worst_t = 0;
    let mut worst_beta: f64 = 0.0;
    let mut total_steps = 0u64;
    for (i, sc) in scenarios.iter().enumerate() {
        let (outcome, trace) = run_with_mode(sc, TraceMode::Full).unwrap();
        let t = outcome.capture_time().unwrap_or(0);
        total_steps += trace.summary.rounds;
        let beta = trace.beta_max.unwrap_or(f64::NAN);
        if t == 0 {
            println!("run {i}: NOT captured?! {:?} n={} k={}", outcome, sc.n(), sc.k);
        }
        if t > worst_t { worst_t = t; }
        if beta > worst_beta { worst_beta = beta; }
        let audit = trace.audit.as_ref().unwrap();
        if !audit.violations.is_empty() {
            println!("run {i}: violations {:?}", audit.violations);
        }
    }
    println!("50 greedy runs: {:?}, worst T = {worst_t}, worst beta = {:.4} ({:.1} deg), total rounds {total_steps}",
             t0.elapsed(), worst_beta, worst_beta.to_degrees());

    // escape-side calibration
    let spec2 = GeneratorSpec {
        count: 10,
        n_choices: vec![5, 6, 7, 8, 9],
        k_choices: vec![2, 3],
        coord_range: (-10.0, 10.0),
        evader_strategy: EvaderSpec::SeparatingEscape { samples: 256 },
        policy: PolicyKind::KCapture,
        placement: Placement::InsideHullOutsideKHull,
        master_seed: 777,
    };
    let scenarios2 = generate(&spec2).unwrap();
    let t0 = Instant::now();
    let mut total = 0u64;
    for (i, sc) in scenarios2.iter().enumerate() {
        let (outcome, trace) = run_with_mode(sc, TraceMode::Summary).unwrap();
        total += trace.summary.rounds;
        match outcome {
            kcapture::trace::Outcome::Escaped { .. } => {}
            other => println!("escape run {i}: {:?}", other),
        }
    }
    println!("10 escape runs: {:?}, total rounds {total} (avg {})", t0.elapsed(), total / 10);
}
