//! Replayable run traces and per-run summaries.
//!
//! A full trace records every agent position, move kind and bookkeeping value
//! for every round, so a run can be replayed, audited against the capture-time
//! bounds, and plotted. Long escape runs can instead be recorded in summary
//! mode, which keeps only the aggregates the audits need.

use crate::geometry::Vector;
use serde::{Deserialize, Serialize};

pub const TRACE_SCHEMA_VERSION: u32 = 1;

/// How much per-step detail a run records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceMode {
    /// Every step recorded; required for bound audits and plotting.
    Full,
    /// Aggregates only; for long escape horizons where a full trace would
    /// not fit in memory.
    Summary,
}

/// The move a single pursuer executed in one round.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MoveRecord {
    /// Advance move with distance parameter d.
    Advance { d: f64 },
    /// Advance with d equal to the current distance: pure parallel step.
    Parallel,
    /// Coordinated cone move; `group` lists the participating pursuers.
    Cone { group: Vec<usize> },
    /// General-position perturbation by the given angle.
    Perturb { angle: f64 },
    /// Bounded arena: converge toward the gathering point.
    Gather,
    /// Bounded arena: jump into the collinear lead/follower formation.
    FormUp,
    /// Bounded arena: the lead pursuer's Sgall move.
    Sgall,
    /// Bounded arena: follower repositioning on the lead-evader segment.
    Follow,
    /// Destroyed pursuers hold position.
    Hold,
}

/// State after one complete round (evader move + simultaneous pursuer moves).
/// The record at t = 0 is the initial state with no moves.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepRecord {
    pub t: u64,
    pub e: Vector,
    pub p: Vec<Vector>,
    pub alive: Vec<bool>,
    /// Evader displacement this round (zero vector at t = 0); doubles as the
    /// cone axis of the round.
    pub u_e: Vector,
    pub moves: Vec<MoveRecord>,
    /// Minimum alive pursuer distance to the evader at time t.
    pub d_min: f64,
    /// Indices within eps_closest of d_min.
    pub closest: Vec<usize>,
    /// Participants of a cone move this round, if one fired.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cone_group: Option<Vec<usize>>,
    /// Largest angular drift of any p_j - e direction across this round.
    pub max_drift: f64,
    /// Whether the evader is strictly inside the k-Hull at time t
    /// (recorded for unbounded policies in full mode).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub khull_interior: Option<bool>,
}

/// Proof artifact for a certified escape: a witnessed round outside the
/// k-Hull plus the monotone projected-lead log for the far group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EscapeCertificate {
    /// First round at which the evader was outside the k-Hull interior.
    pub certified_round: u64,
    pub rounds_checked: u64,
    pub rounds_outside: u64,
    /// Minimum over rounds and far-group members of the change in
    /// (e - p) . witness across the round; nonnegative up to 1e-9 means no
    /// far pursuer ever gained along the escape direction.
    pub min_lead_delta: f64,
}

/// How a run ended.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    /// At least k alive pursuers reached the evader simultaneously.
    KCaptured { time: u64, captors: Vec<usize> },
    /// Every pursuer was destroyed by sub-k contact; only the evader remains.
    PursuersDestroyed { indices: Vec<usize>, time: u64 },
    /// Step limit reached without capture.
    StepLimit { time: u64 },
    /// Step limit reached with a certified escape.
    Escaped { certificate: EscapeCertificate },
}

impl Outcome {
    pub fn capture_time(&self) -> Option<u64> {
        match self {
            Outcome::KCaptured { time, .. } => Some(*time),
            _ => None,
        }
    }
}

/// Aggregates kept for every run regardless of trace mode.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunSummary {
    pub rounds: u64,
    /// Minimum pairwise separation among live agents outside capture or
    /// destruction instants.
    pub min_separation: f64,
    /// Largest orientation drift of any p_j - e direction in any round.
    pub max_drift: f64,
    /// Sub-k contact events: (round, destroyed indices).
    pub destroyed_events: Vec<(u64, Vec<usize>)>,
    /// Rounds in which the evader was outside the k-Hull interior, when the
    /// engine tracked it.
    pub rounds_outside_khull: u64,
    pub rounds_khull_checked: u64,
}

impl Default for RunSummary {
    fn default() -> Self {
        RunSummary {
            rounds: 0,
            min_separation: f64::INFINITY,
            max_drift: 0.0,
            destroyed_events: Vec::new(),
            rounds_outside_khull: 0,
            rounds_khull_checked: 0,
        }
    }
}

/// Complete record of one run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Trace {
    pub schema_version: u32,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    /// Cached worst-case approach angle, when the initial configuration
    /// admitted one (evader strictly inside the k-Hull at policy start).
    pub beta_max: Option<f64>,
    /// Max/min pursuer-evader distance at t = 0.
    pub d_max0: f64,
    pub d_min0: f64,
    pub seed: u64,
    pub steps: Vec<StepRecord>,
    pub outcome: Outcome,
    pub summary: RunSummary,
    /// Bound audit, attached after the run for full traces.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub audit: Option<crate::oracle::BoundAudit>,
}
