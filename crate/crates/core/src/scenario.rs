//! Declarative scenario descriptions, validation, and random instance
//! generation.

use crate::bounded::ConvexArena;
use crate::error::Error;
use crate::evader::EvaderSpec;
use crate::geometry::{
    self, helly_bound, in_khull_interior, khull_boundary_2d, PointSet, Vector, EPS_LOC,
};
use crate::pursuit::{DEFAULT_ALPHA_PERTURB, DEFAULT_EPS_CAP, DEFAULT_EPS_CLOSEST, SPEED_TOL};
use crate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

pub const SCENARIO_SCHEMA_VERSION: u32 = 1;

/// Which pursuit policy drives the pursuers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolicyKind {
    KCapture,
    SgallLike,
    NaiveAdvance,
}

/// Optional tolerance overrides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    #[serde(default = "default_eps_cap")]
    pub eps_cap: f64,
    #[serde(default = "default_eps_closest")]
    pub eps_closest: f64,
    #[serde(default = "default_alpha_perturb")]
    pub alpha_perturb: f64,
}

fn default_eps_cap() -> f64 {
    DEFAULT_EPS_CAP
}
fn default_eps_closest() -> f64 {
    DEFAULT_EPS_CLOSEST
}
fn default_alpha_perturb() -> f64 {
    DEFAULT_ALPHA_PERTURB
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps_cap: DEFAULT_EPS_CAP,
            eps_closest: DEFAULT_EPS_CLOSEST,
            alpha_perturb: DEFAULT_ALPHA_PERTURB,
        }
    }
}

/// One game instance: initial conditions, strategies, environment, seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub schema_version: u32,
    pub m: usize,
    pub k: usize,
    pub pursuers: Vec<Vector>,
    pub evader: Vector,
    pub evader_strategy: EvaderSpec,
    pub policy: PolicyKind,
    #[serde(default)]
    pub arena: Option<ConvexArena>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub step_limit: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tolerances: Option<Tolerances>,
}

impl Scenario {
    pub fn n(&self) -> usize {
        self.pursuers.len()
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tolerances.clone().unwrap_or_default()
    }

    /// Validates the scenario, collecting every violation.
    pub fn validate(&self) -> Result<()> {
        let mut errs: Vec<String> = Vec::new();
        if self.schema_version != SCENARIO_SCHEMA_VERSION {
            errs.push(format!(
                "schema_version {} unsupported (expected {SCENARIO_SCHEMA_VERSION})",
                self.schema_version
            ));
        }
        if self.m < 2 {
            errs.push(format!("dimension m = {} must be at least 2", self.m));
        }
        if self.pursuers.is_empty() {
            errs.push("at least one pursuer required".into());
        }
        for (i, p) in self.pursuers.iter().enumerate() {
            if p.dim() != self.m {
                errs.push(format!("pursuer {i} has dimension {} (expected {})", p.dim(), self.m));
            } else if !p.is_finite() {
                errs.push(format!("pursuer {i} has non-finite coordinates"));
            }
        }
        if self.evader.dim() != self.m {
            errs.push(format!(
                "evader has dimension {} (expected {})",
                self.evader.dim(),
                self.m
            ));
        } else if !self.evader.is_finite() {
            errs.push("evader has non-finite coordinates".into());
        }
        if !errs.is_empty() {
            // Dimension errors make the geometric checks meaningless.
            return Err(Error::InvalidScenario(errs));
        }

        let n = self.n();
        match self.policy {
            PolicyKind::KCapture | PolicyKind::NaiveAdvance => {
                let bound = helly_bound(n, self.m);
                if self.k < 1 || self.k > bound {
                    errs.push(format!(
                        "k = {} outside Helly range 1..={} (k-Hull nonempty only for k <= ceil(n/(m+1)) = {} with n = {}, m = {})",
                        self.k, bound, bound, n, self.m
                    ));
                }
                if self.m >= 3 && n > 15 {
                    errs.push(format!(
                        "exact k-Hull tests in dimension {} limited to n <= 15, got n = {n}",
                        self.m
                    ));
                }
            }
            PolicyKind::SgallLike => {
                if self.k != n {
                    errs.push(format!(
                        "sgall_like uses exactly k pursuers: k = {} but n = {n}",
                        self.k
                    ));
                }
                if self.arena.is_none() {
                    errs.push("sgall_like requires a bounded arena".into());
                }
            }
        }

        for i in 0..n {
            for j in (i + 1)..n {
                let d = self.pursuers[i].dist(&self.pursuers[j]);
                if d <= EPS_LOC {
                    errs.push(format!("pursuers {i} and {j} initially co-located (distance {d:e})"));
                }
            }
            let d = self.pursuers[i].dist(&self.evader);
            if d <= EPS_LOC {
                errs.push(format!("pursuer {i} initially co-located with the evader"));
            }
        }

        if let Some(arena) = &self.arena {
            if arena.dim() != self.m {
                errs.push(format!(
                    "arena dimension {} does not match m = {}",
                    arena.dim(),
                    self.m
                ));
            } else {
                match arena {
                    ConvexArena::Ball { radius, .. } if *radius <= 0.0 => {
                        errs.push("arena ball radius must be positive".into());
                    }
                    _ => {}
                }
                if let Err(e) = arena.diameter() {
                    errs.push(format!("arena diameter: {e}"));
                }
                if !arena.contains(&self.evader, 1e-9) {
                    errs.push("evader starts outside the arena".into());
                }
                for (i, p) in self.pursuers.iter().enumerate() {
                    if !arena.contains(p, 1e-9) {
                        errs.push(format!("pursuer {i} starts outside the arena"));
                    }
                }
            }
        }

        match &self.evader_strategy {
            EvaderSpec::FixedDirection { dir } => {
                if dir.dim() != self.m {
                    errs.push("fixed direction has wrong dimension".into());
                } else if dir.norm() <= EPS_LOC {
                    errs.push("fixed direction must be nonzero".into());
                }
            }
            EvaderSpec::Scripted { steps } => {
                for (i, s) in steps.iter().enumerate() {
                    if s.dim() != self.m {
                        errs.push(format!("scripted step {i} has wrong dimension"));
                    } else if s.norm() > 1.0 + SPEED_TOL {
                        errs.push(format!("scripted step {i} exceeds unit speed"));
                    }
                }
            }
            EvaderSpec::GreedyMaximin { samples } | EvaderSpec::SeparatingEscape { samples } => {
                if *samples < 8 {
                    errs.push("maximin sampling needs at least 8 candidate directions".into());
                }
            }
            EvaderSpec::RandomUnit => {}
        }

        if let Some(tol) = &self.tolerances {
            if tol.eps_cap < EPS_LOC {
                errs.push(format!("eps_cap = {} below the co-location tolerance", tol.eps_cap));
            }
            if tol.eps_closest <= 0.0 {
                errs.push("eps_closest must be positive".into());
            }
            if !(0.0..=1e-3).contains(&tol.alpha_perturb) || tol.alpha_perturb == 0.0 {
                errs.push(format!(
                    "alpha_perturb = {} outside (0, 1e-3]",
                    tol.alpha_perturb
                ));
            }
        }
        if let Some(limit) = self.step_limit {
            if limit == 0 {
                errs.push("step_limit must be at least 1".into());
            }
        }

        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidScenario(errs))
        }
    }
}

/// Where the generator places the evader.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    /// Strictly inside the k-Hull (capture instances).
    KHullInterior,
    /// Strictly inside the convex hull but outside the k-Hull interior
    /// (nontrivial escape instances).
    InsideHullOutsideKHull,
}

/// Random 2D instance generator specification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub count: usize,
    pub n_choices: Vec<usize>,
    pub k_choices: Vec<usize>,
    pub coord_range: (f64, f64),
    pub evader_strategy: EvaderSpec,
    pub policy: PolicyKind,
    pub placement: Placement,
    pub master_seed: u64,
}

/// Generates `count` validated 2D scenarios by rejection sampling: pursuer
/// coordinates uniform in the range, the evader placed according to the
/// requested region, (n, k) drawn from the given choices within the Helly
/// bound.
pub fn generate(spec: &GeneratorSpec) -> Result<Vec<Scenario>> {
    let mut out = Vec::with_capacity(spec.count);
    for i in 0..spec.count {
        let seed = spec
            .master_seed
            .wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let scenario = generate_one(spec, seed, &mut rng)?;
        out.push(scenario);
    }
    Ok(out)
}

fn generate_one(spec: &GeneratorSpec, seed: u64, rng: &mut ChaCha12Rng) -> Result<Scenario> {
    let (lo, hi) = spec.coord_range;
    for _outer in 0..500 {
        let n = spec.n_choices[rng.gen_range(0..spec.n_choices.len())];
        let valid_k: Vec<usize> = spec
            .k_choices
            .iter()
            .copied()
            .filter(|&k| k >= 1 && k <= helly_bound(n, 2))
            .collect();
        if valid_k.is_empty() {
            continue;
        }
        let k = valid_k[rng.gen_range(0..valid_k.len())];

        let mut pursuers: Vec<Vector> = Vec::with_capacity(n);
        while pursuers.len() < n {
            let p = Vector::new(vec![rng.gen_range(lo..hi), rng.gen_range(lo..hi)]);
            if pursuers.iter().all(|q| q.dist(&p) > 1e-2) {
                pursuers.push(p);
            }
        }
        let s = PointSet::new(pursuers.clone())?;
        let Some(evader) = place_evader(&s, k, spec.placement, rng) else {
            continue;
        };
        let scenario = Scenario {
            schema_version: SCENARIO_SCHEMA_VERSION,
            m: 2,
            k,
            pursuers,
            evader,
            evader_strategy: spec.evader_strategy.clone(),
            policy: spec.policy,
            arena: None,
            seed,
            step_limit: None,
            tolerances: None,
        };
        scenario.validate()?;
        return Ok(scenario);
    }
    Err(Error::DegenerateInput(
        "generator failed to place an evader after 500 point sets".into(),
    ))
}

fn place_evader(
    s: &PointSet,
    k: usize,
    placement: Placement,
    rng: &mut ChaCha12Rng,
) -> Option<Vector> {
    let region = match placement {
        Placement::KHullInterior => khull_boundary_2d(s, k).ok()?,
        Placement::InsideHullOutsideKHull => khull_boundary_2d(s, 1).ok()?,
    };
    if region.len() < 3 {
        return None;
    }
    let (mut lo_x, mut hi_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut lo_y, mut hi_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in &region {
        lo_x = lo_x.min(v.0[0]);
        hi_x = hi_x.max(v.0[0]);
        lo_y = lo_y.min(v.0[1]);
        hi_y = hi_y.max(v.0[1]);
    }
    if hi_x - lo_x < 1e-6 || hi_y - lo_y < 1e-6 {
        return None;
    }
    for _ in 0..400 {
        let q = Vector::new(vec![rng.gen_range(lo_x..hi_x), rng.gen_range(lo_y..hi_y)]);
        if s.iter().any(|p| p.dist(&q) < 5e-2) {
            continue;
        }
        if !geometry::convex_polygon_contains(&region, &q, 0.0) {
            continue;
        }
        let ok = match placement {
            Placement::KHullInterior => in_khull_interior(s, &q, k).unwrap_or(false),
            Placement::InsideHullOutsideKHull => {
                in_khull_interior(s, &q, 1).unwrap_or(false)
                    && !in_khull_interior(s, &q, k).unwrap_or(true)
            }
        };
        if ok {
            return Some(q);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_scenario() -> Scenario {
        Scenario {
            schema_version: 1,
            m: 2,
            k: 2,
            pursuers: vec![
                Vector::new(vec![3.0, 0.0]),
                Vector::new(vec![-3.0, 1.0]),
                Vector::new(vec![0.0, 3.0]),
                Vector::new(vec![1.0, -3.0]),
                Vector::new(vec![-2.0, -2.0]),
            ],
            evader: Vector::new(vec![0.1, 0.1]),
            evader_strategy: EvaderSpec::GreedyMaximin { samples: 64 },
            policy: PolicyKind::KCapture,
            arena: None,
            seed: 1,
            step_limit: None,
            tolerances: None,
        }
    }

    #[test]
    fn valid_scenario_passes() {
        base_scenario().validate().unwrap();
    }

    #[test]
    fn helly_violation_cites_bound() {
        let mut s = base_scenario();
        s.k = 3; // ceil(5/3) = 2
        let err = s.validate().unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("ceil(n/(m+1))"), "message should cite the Helly bound: {msg}");
    }

    #[test]
    fn initial_colocation_rejected() {
        let mut s = base_scenario();
        s.pursuers[1] = s.pursuers[0].clone();
        let err = s.validate().unwrap_err().to_string();
        assert!(err.contains("co-located"), "{err}");
    }

    #[test]
    fn generator_produces_interior_instances() {
        let spec = GeneratorSpec {
            count: 10,
            n_choices: vec![5, 6, 7, 8, 9],
            k_choices: vec![2, 3],
            coord_range: (-10.0, 10.0),
            evader_strategy: EvaderSpec::GreedyMaximin { samples: 64 },
            policy: PolicyKind::KCapture,
            placement: Placement::KHullInterior,
            master_seed: 99,
        };
        let scenarios = generate(&spec).unwrap();
        assert_eq!(scenarios.len(), 10);
        for sc in &scenarios {
            let s = PointSet::new(sc.pursuers.clone()).unwrap();
            assert!(in_khull_interior(&s, &sc.evader, sc.k).unwrap());
        }
    }

    #[test]
    fn generator_produces_escape_instances() {
        let spec = GeneratorSpec {
            count: 10,
            n_choices: vec![5, 6, 7, 8, 9],
            k_choices: vec![2, 3],
            coord_range: (-10.0, 10.0),
            evader_strategy: EvaderSpec::SeparatingEscape { samples: 64 },
            policy: PolicyKind::KCapture,
            placement: Placement::InsideHullOutsideKHull,
            master_seed: 123,
        };
        for sc in generate(&spec).unwrap() {
            let s = PointSet::new(sc.pursuers.clone()).unwrap();
            assert!(in_khull_interior(&s, &sc.evader, 1).unwrap(), "inside the convex hull");
            assert!(!in_khull_interior(&s, &sc.evader, sc.k).unwrap(), "outside the k-Hull");
        }
    }

    #[test]
    fn scenario_json_round_trip() {
        let s = base_scenario();
        let json = serde_json::to_string(&s).unwrap();
        let back: Scenario = serde_json::from_str(&json).unwrap();
        assert_eq!(s, back);
    }
}
