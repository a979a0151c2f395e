//! Independent brute-force verifiers.
//!
//! Nothing here consults the implementations under test beyond their inputs
//! and outputs: depth is re-estimated by direction sampling, beta_max by a
//! dense grid, and the capture-time bounds are re-checked from recorded
//! traces alone. Performance is a non-goal.

use crate::geometry::{PointSet, Vector};
use crate::trace::{Outcome, Trace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Minimum closed-halfspace count over `num_dirs` sampled unit directions.
/// An upper bound on the true depth: the exact value can never exceed it.
///
/// In the plane the directions are evenly spaced (with an irrational phase so
/// axis-aligned inputs are not special); in higher dimensions they are drawn
/// from a fixed-seed generator, so results are reproducible.
pub fn depth_by_sampling(s: &PointSet, q: &Vector, num_dirs: usize) -> usize {
    let m = s.dim();
    let vectors: Vec<Vector> = s
        .iter()
        .map(|p| p.sub(q))
        .filter(|v| v.norm() > crate::geometry::EPS_LOC)
        .collect();
    let count = |u: &Vector| vectors.iter().filter(|v| v.dot(u) >= 0.0).count();
    let mut best = vectors.len();
    if m == 2 {
        for i in 0..num_dirs {
            let phi = (i as f64 + 0.318_309_886) * TAU / num_dirs as f64;
            let u = Vector::new(vec![phi.cos(), phi.sin()]);
            best = best.min(count(&u));
        }
    } else {
        let mut rng = ChaCha12Rng::seed_from_u64(0xdee9_0a11);
        let mut produced = 0;
        while produced < num_dirs {
            let v = Vector::new((0..m).map(|_| rng.gen_range(-1.0..1.0)).collect());
            let n = v.norm();
            if n > 1e-3 && n <= 1.0 {
                best = best.min(count(&v.scale(1.0 / n)));
                produced += 1;
            }
        }
    }
    best
}

/// Grid estimate of beta_max: arccos of the grid minimum of the k-th largest
/// direction cosine. Converges to the exact value from below in g (so from
/// above in beta) as the resolution grows.
pub fn beta_by_grid(s: &PointSet, q: &Vector, k: usize, resolution: usize) -> f64 {
    let m = s.dim();
    let dirs: Vec<Vector> = s
        .iter()
        .map(|p| p.sub(q).normalized(1e-300).expect("query coincides with a point"))
        .collect();
    let g = |u: &Vector| {
        let mut cos: Vec<f64> = dirs.iter().map(|d| d.dot(u)).collect();
        cos.sort_by(|a, b| b.partial_cmp(a).unwrap());
        cos[k - 1]
    };
    let mut g_min = f64::INFINITY;
    if m == 2 {
        for i in 0..resolution {
            let phi = i as f64 * TAU / resolution as f64;
            g_min = g_min.min(g(&Vector::new(vec![phi.cos(), phi.sin()])));
        }
    } else {
        let mut rng = ChaCha12Rng::seed_from_u64(0x0bea_9a1d);
        let mut produced = 0;
        while produced < resolution {
            let v = Vector::new((0..m).map(|_| rng.gen_range(-1.0..1.0)).collect());
            let n = v.norm();
            if n > 1e-3 && n <= 1.0 {
                g_min = g_min.min(g(&v.scale(1.0 / n)));
                produced += 1;
            }
        }
    }
    g_min.clamp(-1.0, 1.0).acos()
}

/// Bound bookkeeping extracted from a trace, all computed from recorded
/// positions and move kinds only.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundAudit {
    /// First round with at least k pursuers sharing the minimum distance.
    pub time_to_k_closest: Option<u64>,
    /// n (1 + d_max / cos beta_max): the proof-version bound on that time and
    /// on the window between successive d_min decreases.
    pub window_bound: Option<f64>,
    /// n (1 + d_max / beta_max): the bound as printed in the statement
    /// (radians in the denominator), logged for comparison.
    pub window_bound_stated: Option<f64>,
    /// Every cone move's (round, d_min decrease).
    pub cone_decreases: Vec<(u64, f64)>,
    /// (window start, length) of each maximal stretch between d_min
    /// decreases after k pursuers became closest.
    pub decrease_windows: Vec<(u64, u64)>,
    /// Capture round, if captured.
    pub capture_time: Option<u64>,
    /// n (1 + d_max / cos beta_max)^2.
    pub capture_bound: Option<f64>,
    /// d_max / cos beta_max.
    pub lower_bound_value: Option<f64>,
    pub violations: Vec<String>,
}

/// Audits a full trace against the capture-time bounds: time until k pursuers
/// become closest, the per-cone-move decrease of d_min, the window length
/// between successive decreases once k pursuers are closest, and the total
/// capture time. Violations are reported as strings; an empty list means the
/// trace satisfies every applicable bound.
pub fn audit_trace(trace: &Trace) -> BoundAudit {
    let mut audit = BoundAudit {
        time_to_k_closest: None,
        window_bound: None,
        window_bound_stated: None,
        cone_decreases: Vec::new(),
        decrease_windows: Vec::new(),
        capture_time: trace.outcome.capture_time(),
        capture_bound: None,
        lower_bound_value: None,
        violations: Vec::new(),
    };
    let steps = &trace.steps;
    if steps.is_empty() {
        audit.violations.push("empty trace".into());
        return audit;
    }
    let n = trace.n as f64;
    let Some(beta) = trace.beta_max else {
        // No cached beta_max (evader started outside the k-Hull interior):
        // none of the capture bounds apply.
        return audit;
    };
    let cos_beta = beta.cos();
    let d_max = trace.d_max0;
    let window = n * (1.0 + d_max / cos_beta);
    audit.window_bound = Some(window);
    audit.window_bound_stated = Some(n * (1.0 + d_max / beta));
    audit.capture_bound = Some(n * (1.0 + d_max / cos_beta) * (1.0 + d_max / cos_beta));
    audit.lower_bound_value = Some(d_max / cos_beta);

    let tol = 1e-9;

    // Lemma on P_closest cardinality: some k pursuers closest within the
    // window bound.
    let t_k = steps
        .iter()
        .find(|s| s.closest.len() >= trace.k)
        .map(|s| s.t);
    audit.time_to_k_closest = t_k;
    match t_k {
        Some(t) if (t as f64) <= window.ceil() => {}
        Some(t) => audit
            .violations
            .push(format!("k-closest reached at round {t}, bound {window:.3}")),
        None => audit
            .violations
            .push("k pursuers never shared the minimum distance".into()),
    }

    // Cone-move decreases: at least cos beta_max each, except a capturing
    // move, which consumes whatever distance was left.
    for w in steps.windows(2) {
        let (prev, cur) = (&w[0], &w[1]);
        if cur.cone_group.is_some() {
            let dec = prev.d_min - cur.d_min;
            audit.cone_decreases.push((cur.t, dec));
            let required = (cos_beta - tol).min(prev.d_min - tol);
            if dec < required {
                audit.violations.push(format!(
                    "cone move at round {} decreased d_min by {dec:.12} < {required:.12}",
                    cur.t
                ));
            }
        }
    }

    // Once k pursuers are closest: always k closest afterwards, and d_min
    // drops by cos beta_max within every window of `window` moves.
    if let Some(t_k) = t_k {
        let start = steps.iter().position(|s| s.t == t_k).unwrap();
        for s in &steps[start..] {
            if s.closest.len() < trace.k {
                audit.violations.push(format!(
                    "only {} closest pursuers at round {} after k became closest",
                    s.closest.len(),
                    s.t
                ));
            }
        }
        let captured = audit.capture_time.is_some();
        let w_len = window.ceil() as usize;
        let mut lo = start;
        for i in start..steps.len() {
            // earliest index where d_min has dropped by cos beta from step i
            while lo < steps.len()
                && steps[lo].d_min > steps[i].d_min - (cos_beta - tol)
            {
                lo += 1;
            }
            if lo <= i {
                lo = i + 1; // d_min not monotone here; restart past i
                continue;
            }
            if lo < steps.len() {
                let gap = steps[lo].t - steps[i].t;
                if gap as usize > w_len {
                    audit.violations.push(format!(
                        "d_min stagnated for {gap} rounds from round {} (window bound {w_len})",
                        steps[i].t
                    ));
                }
                audit.decrease_windows.push((steps[i].t, gap));
            } else if !(captured && steps.len() - i <= w_len) {
                // ran out of trace without the required decrease
                if steps.len() - i > w_len {
                    audit.violations.push(format!(
                        "d_min never decreased by cos beta after round {}",
                        steps[i].t
                    ));
                }
            }
        }
    }

    // Total capture time against the squared bound.
    if let (Some(t), Some(bound)) = (audit.capture_time, audit.capture_bound) {
        if t as f64 > bound {
            audit
                .violations
                .push(format!("capture at round {t} exceeds bound {bound:.3}"));
        }
    }

    // d_min should never increase while every pursuer is alive under the
    // orientation-preserving policies.
    if matches!(trace.outcome, Outcome::KCaptured { .. }) {
        for w in trace.steps.windows(2) {
            if w[1].alive.iter().all(|&a| a) && w[1].d_min > w[0].d_min + 1e-6 {
                audit.violations.push(format!(
                    "d_min increased from {:.9} to {:.9} at round {}",
                    w[0].d_min, w[1].d_min, w[1].t
                ));
                break;
            }
        }
    }

    audit
}
