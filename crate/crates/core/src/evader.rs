//! Evader strategies.
//!
//! `separating_escape` is the proof strategy for the necessity theorem: when
//! the evader is not strictly inside the pursuers' k-Hull, some hyperplane
//! through it leaves at most k - 1 pursuers strictly on one side, and running
//! at full speed along that hyperplane's normal (toward the small side) keeps
//! the far group from ever catching up. The remaining strategies are
//! adversarial baselines used to stress the pursuit policies.

use crate::bounded::ConvexArena;
use crate::error::Error;
use crate::geometry::{min_strict_count, PointSet, Vector, EPS_LOC};
use crate::Result;
use rand::Rng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Declarative strategy description (scenario files use this directly).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EvaderSpec {
    /// Theorem-1 escape while outside the k-Hull interior; greedy maximin
    /// fallback when inside.
    SeparatingEscape {
        #[serde(default = "default_samples")]
        samples: usize,
    },
    /// Unit step along a fixed direction every round.
    FixedDirection { dir: Vector },
    /// Deterministic maximin over sampled unit steps plus the zero step.
    GreedyMaximin {
        #[serde(default = "default_samples")]
        samples: usize,
    },
    /// Uniform random unit step from the scenario RNG.
    RandomUnit,
    /// Fixed list of steps; zero step once exhausted.
    Scripted { steps: Vec<Vector> },
}

fn default_samples() -> usize {
    256
}

/// What the strategy sees when deciding a step.
#[derive(Debug, Clone, Copy)]
pub struct EvaderView<'a> {
    pub pursuers: &'a [Vector],
    pub alive: &'a [bool],
    pub e: &'a Vector,
    pub k: usize,
    pub arena: Option<&'a ConvexArena>,
}

/// Per-round escape bookkeeping, used by the engine to build certificates.
#[derive(Debug, Clone)]
pub struct EscapeInfo {
    /// Whether the evader was outside the k-Hull interior this round.
    pub outside: bool,
    /// Direction minimizing the strict halfspace count.
    pub witness: Vector,
}

/// One evader decision: the displacement to apply, plus escape bookkeeping
/// when the strategy computed it anyway.
#[derive(Debug, Clone)]
pub struct EvaderDecision {
    pub step: Vector,
    pub escape: Option<EscapeInfo>,
}

/// Runtime strategy state.
#[derive(Debug, Clone)]
pub struct EvaderStrategy {
    spec: EvaderSpec,
    cursor: usize,
}

impl EvaderStrategy {
    pub fn new(spec: EvaderSpec) -> Self {
        EvaderStrategy { spec, cursor: 0 }
    }

    pub fn spec(&self) -> &EvaderSpec {
        &self.spec
    }

    pub fn decide(&mut self, view: EvaderView<'_>, rng: &mut ChaCha12Rng) -> Result<EvaderDecision> {
        let m = view.e.dim();
        match &self.spec {
            EvaderSpec::SeparatingEscape { samples } => {
                let alive_pts: Vec<Vector> = view
                    .pursuers
                    .iter()
                    .zip(view.alive)
                    .filter(|(_, &a)| a)
                    .map(|(p, _)| p.clone())
                    .collect();
                if alive_pts.is_empty() {
                    return Ok(EvaderDecision { step: Vector::zeros(m), escape: None });
                }
                let s = PointSet::new(alive_pts)?;
                let (strict_min, witness) = min_strict_count(&s, view.e)?;
                if strict_min < view.k {
                    let step = clip_step(view.e, &witness, view.arena);
                    Ok(EvaderDecision {
                        step,
                        escape: Some(EscapeInfo { outside: true, witness }),
                    })
                } else {
                    let step = greedy_step(&s, view.e, *samples, view.arena);
                    Ok(EvaderDecision {
                        step,
                        escape: Some(EscapeInfo { outside: false, witness }),
                    })
                }
            }
            EvaderSpec::FixedDirection { dir } => {
                let u = dir
                    .normalized(EPS_LOC)
                    .ok_or_else(|| Error::DegenerateInput("zero fixed direction".into()))?;
                Ok(EvaderDecision { step: clip_step(view.e, &u, view.arena), escape: None })
            }
            EvaderSpec::GreedyMaximin { samples } => {
                let alive_pts: Vec<Vector> = view
                    .pursuers
                    .iter()
                    .zip(view.alive)
                    .filter(|(_, &a)| a)
                    .map(|(p, _)| p.clone())
                    .collect();
                if alive_pts.is_empty() {
                    return Ok(EvaderDecision { step: Vector::zeros(m), escape: None });
                }
                let s = PointSet::new(alive_pts)?;
                Ok(EvaderDecision {
                    step: greedy_step(&s, view.e, *samples, view.arena),
                    escape: None,
                })
            }
            EvaderSpec::RandomUnit => {
                let u = random_unit(m, rng);
                Ok(EvaderDecision { step: clip_step(view.e, &u, view.arena), escape: None })
            }
            EvaderSpec::Scripted { steps } => {
                let step = steps.get(self.cursor).cloned().unwrap_or_else(|| Vector::zeros(m));
                self.cursor += 1;
                Ok(EvaderDecision { step, escape: None })
            }
        }
    }
}

/// Theorem-1 escape step: unit move along the normal of a witness hyperplane
/// through `e`, toward the side holding at most k - 1 pursuers. Errors when
/// `e` is strictly inside the k-Hull (the strategy is inapplicable there).
pub fn separating_escape(pursuers: &PointSet, e: &Vector, k: usize) -> Result<Vector> {
    let (strict_min, witness) = min_strict_count(pursuers, e)?;
    if strict_min >= k {
        return Err(Error::NotInKHullInterior { witness: witness.0 });
    }
    Ok(e.add(&witness))
}

/// Deterministic maximin baseline: among `samples` quasi-uniform unit steps
/// plus the zero step, the one maximizing the distance to the nearest
/// pursuer. Ties keep the earliest candidate (the zero step is first).
pub fn greedy_maximin(pursuers: &PointSet, e: &Vector, samples: usize) -> Vector {
    debug_assert!(samples >= 8);
    e.add(&greedy_step(pursuers, e, samples, None))
}

fn greedy_step(pursuers: &PointSet, e: &Vector, samples: usize, arena: Option<&ConvexArena>) -> Vector {
    let m = e.dim();
    let mut best_step = Vector::zeros(m);
    let mut best_obj = objective(pursuers, &e.add(&best_step));
    let mut rng = ChaCha12Rng::from_seed_u64_fixed();
    for i in 0..samples {
        let u = if m == 2 {
            let phi = i as f64 * TAU / samples as f64;
            Vector::new(vec![phi.cos(), phi.sin()])
        } else {
            random_unit(m, &mut rng)
        };
        let step = clip_step(e, &u, arena);
        let obj = objective(pursuers, &e.add(&step));
        if obj > best_obj + 1e-12 {
            best_obj = obj;
            best_step = step;
        }
    }
    best_step
}

fn objective(pursuers: &PointSet, candidate: &Vector) -> f64 {
    pursuers
        .iter()
        .map(|p| p.dist(candidate))
        .fold(f64::INFINITY, f64::min)
}

fn random_unit(m: usize, rng: &mut ChaCha12Rng) -> Vector {
    loop {
        let v = Vector::new((0..m).map(|_| rng.gen_range(-1.0..1.0)).collect());
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v.scale(1.0 / n);
        }
    }
}

/// Longest admissible step of length <= 1 along `dir` that stays inside the
/// arena (the whole space when unbounded).
fn clip_step(e: &Vector, dir: &Vector, arena: Option<&ConvexArena>) -> Vector {
    let Some(u) = dir.normalized(EPS_LOC) else {
        return Vector::zeros(e.dim());
    };
    match arena {
        None => u,
        Some(a) => {
            let allowed = a.max_step(e, &u).min(1.0).max(0.0);
            u.scale(allowed)
        }
    }
}

trait FixedSeed {
    fn from_seed_u64_fixed() -> Self;
}

impl FixedSeed for ChaCha12Rng {
    fn from_seed_u64_fixed() -> Self {
        use rand::SeedableRng;
        // Fixed stream so the greedy candidate set is identical across calls.
        ChaCha12Rng::seed_from_u64(0x9eed_9eed)
    }
}
