//! Pursuer-side strategies: the Advance and Cone moves, closest-set
//! bookkeeping, the general-position perturbation, and the full k-capture
//! policy.
//!
//! Every move here is orientation-preserving: a pursuer's new position lies
//! on the line through the evader's new position parallel to the pursuer's
//! old direction from the evader, on the same side. The k closest pursuers
//! inside the cone of half angle beta_max around the evader's step jointly
//! shrink their common distance by at least cos beta_max per cone move; all
//! other pursuers advance toward the minimum distance, which for the closest
//! ones degenerates to a pure parallel step.

use crate::geometry::{PointSet, Vector, EPS_ANG, EPS_LOC};
use crate::error::Error;
use crate::trace::MoveRecord;
use crate::Result;
use std::f64::consts::FRAC_PI_2;

/// Unit-speed legality slack.
pub const SPEED_TOL: f64 = 1e-12;

/// Default tolerance for clustering pursuers into the closest set.
pub const DEFAULT_EPS_CLOSEST: f64 = 1e-7;
/// Default capture distance threshold.
pub const DEFAULT_EPS_CAP: f64 = 1e-9;
/// Default general-position perturbation angle.
pub const DEFAULT_ALPHA_PERTURB: f64 = 1e-4;

/// Cached policy parameters.
#[derive(Debug, Clone)]
pub struct PursuitParams {
    pub k: usize,
    pub n: usize,
    /// Worst-case approach angle, cached at policy start and invariant under
    /// the orientation-preserving moves.
    pub beta_max: f64,
    /// False when the evader started outside the k-Hull interior and
    /// `beta_max` is only a working fallback (capture is then impossible and
    /// none of the decrease bounds are claimed).
    pub beta_valid: bool,
    pub eps_closest: f64,
    pub eps_cap: f64,
    pub alpha_perturb: f64,
}

impl PursuitParams {
    pub fn new(k: usize, n: usize, beta_max: f64, beta_valid: bool) -> Result<Self> {
        if !(0.0..FRAC_PI_2).contains(&beta_max) {
            return Err(Error::InvariantViolation(format!(
                "beta_max = {beta_max} outside [0, pi/2)"
            )));
        }
        Ok(PursuitParams {
            k,
            n,
            beta_max,
            beta_valid,
            eps_closest: DEFAULT_EPS_CLOSEST,
            eps_cap: DEFAULT_EPS_CAP,
            alpha_perturb: DEFAULT_ALPHA_PERTURB,
        })
    }
}

/// The pursuers at minimum distance from the evader.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosestSet {
    /// Sorted indices within `eps_closest` of the minimum.
    pub indices: Vec<usize>,
    pub d_min: f64,
}

/// One pursuer's move for the round.
#[derive(Debug, Clone)]
pub struct PursuerMove {
    pub kind: MoveRecord,
    pub target: Vector,
}

/// What the policy sees each round: the evader has already moved.
#[derive(Debug, Clone, Copy)]
pub struct PolicyInput<'a> {
    pub e_old: &'a Vector,
    pub e_new: &'a Vector,
    pub pursuers: &'a [Vector],
    pub alive: &'a [bool],
}

/// Closest set over a plain point set (all pursuers alive).
pub fn compute_closest_set(pursuers: &PointSet, e: &Vector, eps_closest: f64) -> ClosestSet {
    let alive = vec![true; pursuers.len()];
    closest_among(pursuers.points(), &alive, e, eps_closest)
}

/// Closest set restricted to alive pursuers.
pub fn closest_among(
    positions: &[Vector],
    alive: &[bool],
    e: &Vector,
    eps_closest: f64,
) -> ClosestSet {
    let mut d_min = f64::INFINITY;
    for (i, p) in positions.iter().enumerate() {
        if alive[i] {
            d_min = d_min.min(p.dist(e));
        }
    }
    let indices = positions
        .iter()
        .enumerate()
        .filter(|(i, p)| alive[*i] && p.dist(e) <= d_min + eps_closest)
        .map(|(i, _)| i)
        .collect();
    ClosestSet { indices, d_min }
}

/// Advance move: the point on the line through `e_new` parallel to
/// `p - e_old` whose distance to `e_new` is as close to `d` as possible,
/// restricted to the reachable part of the line and to the pursuer's own
/// side (orientation preservation).
///
/// With `d` equal to the current distance this is the parallel move; with
/// smaller `d` the pursuer closes in as far as the unit step allows.
pub fn advance_move(p: &Vector, e_old: &Vector, e_new: &Vector, d: f64) -> Result<Vector> {
    debug_assert!(d >= 0.0);
    let dir = p
        .sub(e_old)
        .normalized(EPS_LOC)
        .ok_or(Error::CoincidentPoint { index: 0 })?;
    // Feasible parameters s >= 0 on the line e_new + s * dir with
    // |e_new + s dir - p| <= 1: roots of s^2 - 2 s (dir.w) + |w|^2 - 1 with
    // w = p - e_new. The parallel point s = |p - e_old| is always feasible.
    let w = p.sub(e_new);
    let b = dir.dot(&w);
    let disc = b * b - w.dot(&w) + 1.0;
    debug_assert!(
        disc >= -1e-9,
        "advance move infeasible: disc = {disc}, evader step must have been legal"
    );
    let root = disc.max(0.0).sqrt();
    let s_lo = (b - root).max(0.0);
    let s_hi = b + root;
    debug_assert!(s_hi >= s_lo - 1e-12);
    let s = d.clamp(s_lo, s_hi.max(s_lo));
    Ok(e_new.add_scaled(&dir, s))
}

/// Coordinated cone move for a group of equidistant pursuers.
///
/// Each member moves along the line through `e_new` parallel to its old
/// direction; the common new distance is the smallest one every member can
/// reach in a unit step, clamped at zero (landing exactly on the evader, the
/// capture event). Members are given as (position, theta) with theta the
/// angle to the evader's step direction.
pub fn cone_move(
    group: &[(Vector, f64)],
    e_old: &Vector,
    e_new: &Vector,
) -> Result<Vec<Vector>> {
    if group.is_empty() {
        return Err(Error::InvariantViolation("empty cone group".into()));
    }
    let u = e_new.sub(e_old).norm();
    let mut dirs = Vec::with_capacity(group.len());
    let mut dists = Vec::with_capacity(group.len());
    for (p, theta) in group {
        if !(0.0..FRAC_PI_2).contains(theta) {
            return Err(Error::InvariantViolation(format!(
                "cone member angle {theta} outside [0, pi/2)"
            )));
        }
        let v = p.sub(e_old);
        let dir = v.normalized(EPS_LOC).ok_or(Error::CoincidentPoint { index: 0 })?;
        dirs.push(dir);
        dists.push(v.norm());
    }
    let d_ref = dists[0];
    for &d in &dists {
        if (d - d_ref).abs() > 10.0 * DEFAULT_EPS_CLOSEST {
            return Err(Error::InvariantViolation(format!(
                "cone group distances unequal: {d} vs {d_ref}"
            )));
        }
    }
    // Smallest common distance s subject to every member's unit step:
    // member j needs s >= d_j - (u cos t_j + sqrt(1 - u^2 sin^2 t_j)).
    let mut s = 0.0f64;
    for ((_, theta), &d) in group.iter().zip(&dists) {
        let reach = u * theta.cos() + (1.0 - (u * theta.sin()).powi(2)).max(0.0).sqrt();
        s = s.max(d - reach);
    }
    let targets: Vec<Vector> = if s <= 0.0 {
        // Landing move: everyone reaches the evader exactly.
        group.iter().map(|_| e_new.clone()).collect()
    } else {
        dirs.iter().map(|dir| e_new.add_scaled(dir, s)).collect()
    };

    // Contracts: unit steps, equal distances, and the Cone-move decrease.
    let theta_max = group
        .iter()
        .map(|(_, t)| *t)
        .fold(0.0f64, f64::max);
    for (((p, _), x), &d) in group.iter().zip(&targets).zip(&dists) {
        let step = x.dist(p);
        if step > 1.0 + SPEED_TOL {
            return Err(Error::InvariantViolation(format!(
                "cone move step {step} exceeds unit speed"
            )));
        }
        let decrease = d - x.dist(e_new);
        if s > 0.0 && decrease < theta_max.cos() - DEFAULT_EPS_CLOSEST - 1e-9 {
            return Err(Error::InvariantViolation(format!(
                "cone move decrease {decrease} below cos(theta_max) = {}",
                theta_max.cos()
            )));
        }
    }
    Ok(targets)
}

/// One round of Algorithm k-Capture: pursuers that are both closest and
/// inside the cone execute a cone move (exactly k of them, smallest angles
/// first); everyone else advances with parameter d_min, which for the
/// remaining closest pursuers is their own distance, i.e. a parallel move.
pub fn k_capture_policy(input: PolicyInput<'_>, params: &PursuitParams) -> Result<Vec<PursuerMove>> {
    let u_vec = input.e_new.sub(input.e_old);
    let u = u_vec.norm();
    if u > 1.0 + SPEED_TOL {
        return Err(Error::IllegalMove {
            agent: "evader".into(),
            detail: format!("step length {u} exceeds unit speed"),
        });
    }
    let closest = closest_among(input.pursuers, input.alive, input.e_old, params.eps_closest);

    // Angles to the evader's step; a zero step makes the cone all of space
    // and every angle zero.
    let theta: Vec<f64> = input
        .pursuers
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if !input.alive[i] || u <= EPS_LOC {
                0.0
            } else {
                p.sub(input.e_old).angle_to(&u_vec)
            }
        })
        .collect();

    let mut eligible: Vec<usize> = closest
        .indices
        .iter()
        .copied()
        .filter(|&i| theta[i] <= params.beta_max + EPS_ANG && theta[i] < FRAC_PI_2 - 1e-9)
        .collect();
    eligible.sort_by(|&a, &b| theta[a].partial_cmp(&theta[b]).unwrap().then(a.cmp(&b)));

    let cone_group: Option<Vec<usize>> = if eligible.len() >= params.k {
        let mut g = eligible[..params.k].to_vec();
        g.sort_unstable();
        Some(g)
    } else {
        None
    };

    let mut moves: Vec<Option<PursuerMove>> = vec![None; input.pursuers.len()];
    if let Some(group) = &cone_group {
        let members: Vec<(Vector, f64)> = group
            .iter()
            .map(|&i| (input.pursuers[i].clone(), theta[i]))
            .collect();
        let targets = cone_move(&members, input.e_old, input.e_new)?;
        for (&i, target) in group.iter().zip(targets) {
            moves[i] = Some(PursuerMove {
                kind: MoveRecord::Cone { group: group.clone() },
                target,
            });
        }
    }
    for (i, p) in input.pursuers.iter().enumerate() {
        if moves[i].is_some() {
            continue;
        }
        if !input.alive[i] {
            moves[i] = Some(PursuerMove { kind: MoveRecord::Hold, target: p.clone() });
            continue;
        }
        let own = p.dist(input.e_old);
        let (kind, d) = if closest.indices.contains(&i) {
            // Advance with d = own distance: the pure parallel move.
            (MoveRecord::Parallel, own)
        } else {
            (MoveRecord::Advance { d: closest.d_min }, closest.d_min)
        };
        let target = advance_move(p, input.e_old, input.e_new, d)?;
        moves[i] = Some(PursuerMove { kind, target });
    }
    let moves: Vec<PursuerMove> = moves.into_iter().map(Option::unwrap).collect();

    // Distinct orientations imply distinct target rays; coinciding targets
    // are only legal at the evader itself (the capture event).
    for i in 0..moves.len() {
        for j in (i + 1)..moves.len() {
            if !input.alive[i] || !input.alive[j] {
                continue;
            }
            if moves[i].target.dist(&moves[j].target) <= EPS_LOC
                && moves[i].target.dist(input.e_new) > params.eps_cap
            {
                return Err(Error::CoLocation {
                    a: format!("pursuer {i}"),
                    b: format!("pursuer {j}"),
                    distance: moves[i].target.dist(&moves[j].target),
                });
            }
        }
    }
    Ok(moves)
}

/// Naive benchmark policy: every pursuer advances maximally (d = 0) along its
/// parallel line. Orientation-preserving but uncoordinated, so it cannot
/// force simultaneous arrivals.
pub fn naive_advance_policy(input: PolicyInput<'_>) -> Result<Vec<PursuerMove>> {
    input
        .pursuers
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if !input.alive[i] {
                return Ok(PursuerMove { kind: MoveRecord::Hold, target: p.clone() });
            }
            Ok(PursuerMove {
                kind: MoveRecord::Advance { d: 0.0 },
                target: advance_move(p, input.e_old, input.e_new, 0.0)?,
            })
        })
        .collect()
}

/// Pairs of alive pursuers whose directions from the evader coincide
/// (angle below EPS_ANG); such pairs share an advance line and must be
/// separated before the policy starts.
pub fn collinear_pairs(positions: &[Vector], alive: &[bool], e: &Vector) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..positions.len() {
        if !alive[i] {
            continue;
        }
        for j in (i + 1)..positions.len() {
            if !alive[j] {
                continue;
            }
            let vi = positions[i].sub(e);
            let vj = positions[j].sub(e);
            if vi.norm() > EPS_LOC && vj.norm() > EPS_LOC && vi.angle_to(&vj) < EPS_ANG {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

fn rotate_toward(step: &Vector, toward: &Vector, angle: f64) -> Vector {
    let h = step.norm();
    if h <= EPS_LOC {
        return step.clone();
    }
    let u = step.scale(1.0 / h);
    // Orthogonal component of `toward` against the step direction; fall back
    // to an arbitrary perpendicular when they are parallel.
    let mut w = toward.add_scaled(&u, -toward.dot(&u));
    if w.norm() <= 1e-9 {
        for axis in 0..step.dim() {
            let mut probe = Vector::zeros(step.dim());
            probe.0[axis] = 1.0;
            w = probe.add_scaled(&u, -probe.dot(&u));
            if w.norm() > 1e-9 {
                break;
            }
        }
    }
    let w = w.normalized(1e-300).expect("perpendicular exists in dim >= 2");
    u.scale(angle.cos()).add_scaled(&w, angle.sin()).scale(h)
}

/// Breaks evader-pursuer collinearities in the first round: every pursuer
/// copies the evader's step, except one member of each collinear pair whose
/// step is rotated by a small angle. The angle is halved and the move retried
/// until no collinear pair remains and (when it held before) the evader is
/// still strictly inside the k-Hull.
pub fn break_collinearity(
    input: PolicyInput<'_>,
    k: usize,
    alpha_perturb: f64,
    interior_before: bool,
) -> Result<Vec<PursuerMove>> {
    let pairs = collinear_pairs(input.pursuers, input.alive, input.e_old);
    if pairs.is_empty() {
        return Err(Error::InvariantViolation(
            "break_collinearity invoked without collinear pairs".into(),
        ));
    }
    let mut perturb: Vec<usize> = pairs.iter().map(|&(_, j)| j).collect();
    perturb.sort_unstable();
    perturb.dedup();

    let u_vec = input.e_new.sub(input.e_old);
    let h = u_vec.norm();
    let mut alpha = alpha_perturb;
    for _attempt in 0..40 {
        let mut moves = Vec::with_capacity(input.pursuers.len());
        for (i, p) in input.pursuers.iter().enumerate() {
            if !input.alive[i] {
                moves.push(PursuerMove { kind: MoveRecord::Hold, target: p.clone() });
                continue;
            }
            if let Some(rank) = perturb.iter().position(|&j| j == i) {
                // Distinct angles per perturbed pursuer so two perturbed pairs
                // cannot land collinear with each other.
                let angle = alpha * (1.0 + rank as f64 / 8.0);
                let v = p.sub(input.e_old);
                let step = if h > 1e-3 {
                    rotate_toward(&u_vec, &v, angle)
                } else {
                    // A (nearly) stationary evader leaves nothing to rotate;
                    // nudge perpendicular to the ray instead.
                    rotate_toward(&v.normalized(EPS_LOC).unwrap().scale(alpha), &u_vec, FRAC_PI_2)
                };
                moves.push(PursuerMove {
                    kind: MoveRecord::Perturb { angle },
                    target: p.add(&step),
                });
            } else {
                moves.push(PursuerMove { kind: MoveRecord::Parallel, target: p.add(&u_vec) });
            }
        }
        let new_positions: Vec<Vector> = moves.iter().map(|m| m.target.clone()).collect();
        let still_collinear =
            !collinear_pairs(&new_positions, input.alive, input.e_new).is_empty();
        let interior_ok = if interior_before {
            let pts: Vec<Vector> = new_positions
                .iter()
                .zip(input.alive)
                .filter(|(_, &a)| a)
                .map(|(p, _)| p.clone())
                .collect();
            PointSet::new(pts)
                .ok()
                .and_then(|s| crate::geometry::in_khull_interior(&s, input.e_new, k).ok())
                .unwrap_or(false)
        } else {
            true
        };
        if !still_collinear && interior_ok {
            return Ok(moves);
        }
        alpha /= 2.0;
    }
    Err(Error::PerturbationFailed { attempts: 40 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v2(x: f64, y: f64) -> Vector {
        Vector::new(vec![x, y])
    }

    #[test]
    fn advance_straight_approach() {
        // Stationary evader, d = 0: a straight unit step down the ray.
        let got = advance_move(&v2(5.0, 0.0), &v2(0.0, 0.0), &v2(0.0, 0.0), 0.0).unwrap();
        assert!(got.dist(&v2(4.0, 0.0)) < 1e-12);
    }

    #[test]
    fn advance_parallel_keeps_distance() {
        let got = advance_move(&v2(3.0, 0.0), &v2(0.0, 0.0), &v2(1.0, 0.0), 3.0).unwrap();
        assert!(got.dist(&v2(4.0, 0.0)) < 1e-12);
    }

    #[test]
    fn advance_perpendicular_step_is_forced_parallel() {
        // Line x = 1 through e_new parallel to the ray toward (0, 2); the only
        // reachable point is (1, 2), whatever d asks for.
        let got = advance_move(&v2(0.0, 2.0), &v2(0.0, 0.0), &v2(1.0, 0.0), 0.0).unwrap();
        assert!(got.dist(&v2(1.0, 2.0)) < 1e-9, "got {got:?}");
    }

    #[test]
    fn advance_matches_dense_scan() {
        // Independent 1D oracle: scan the feasible segment for the best s.
        let cases = [
            (v2(4.0, 1.0), v2(0.0, 0.0), v2(0.3, -0.4), 2.0),
            (v2(-2.0, 3.0), v2(0.5, 0.5), v2(1.0, 0.0), 0.0),
            (v2(0.0, 2.0), v2(0.0, 0.0), v2(1.0, 0.0), 0.0),
            (v2(6.0, -1.0), v2(1.0, 1.0), v2(1.2, 1.9), 5.5),
        ];
        for (p, e_old, e_new, d) in cases {
            let got = advance_move(&p, &e_old, &e_new, d).unwrap();
            let dir = p.sub(&e_old).normalized(0.0).unwrap();
            let mut best = f64::INFINITY;
            let mut best_pt = e_new.clone();
            for i in 0..=400_000 {
                let s = i as f64 * 2e-5 * 10.0; // s in [0, 8]
                let x = e_new.add_scaled(&dir, s);
                if x.dist(&p) <= 1.0 + 1e-9 {
                    let obj = (d - x.dist(&e_new)).abs();
                    if obj < best - 1e-12 {
                        best = obj;
                        best_pt = x;
                    }
                }
            }
            assert!(
                got.dist(&best_pt) < 1e-3,
                "advance {p:?} d={d}: got {got:?}, oracle {best_pt:?}"
            );
            assert!(got.dist(&p) <= 1.0 + 1e-9, "unit speed violated");
        }
    }

    #[test]
    fn cone_stationary_evader_unit_radial_steps() {
        let e = v2(0.0, 0.0);
        let group = vec![(v2(3.0, 0.0), 0.0), (v2(0.0, 3.0), 0.0)];
        let targets = cone_move(&group, &e, &e).unwrap();
        assert!(targets[0].dist(&v2(2.0, 0.0)) < 1e-12);
        assert!(targets[1].dist(&v2(0.0, 2.0)) < 1e-12);
    }

    #[test]
    fn cone_head_on_charge_closes_two() {
        // Evader charges a pursuer straight on: distance drops by two.
        let group = vec![(v2(5.0, 0.0), 0.0)];
        let targets = cone_move(&group, &v2(0.0, 0.0), &v2(1.0, 0.0)).unwrap();
        let new_d = targets[0].dist(&v2(1.0, 0.0));
        assert!((5.0 - (new_d + 1.0) - 1.0).abs() < 1e-12, "decrease = {}", 5.0 - new_d);
    }

    #[test]
    fn cone_thirty_degrees_decrease_sqrt3() {
        let theta = 30f64.to_radians();
        let p = v2(8.0 * theta.cos(), 8.0 * theta.sin());
        let targets = cone_move(&[(p.clone(), theta)], &v2(0.0, 0.0), &v2(1.0, 0.0)).unwrap();
        let decrease = 8.0 - targets[0].dist(&v2(1.0, 0.0));
        assert!((decrease - 3f64.sqrt()).abs() < 1e-12, "decrease = {decrease}");
        assert!(targets[0].dist(&p) <= 1.0 + 1e-12);
    }

    #[test]
    fn cone_landing_is_exact() {
        let group = vec![(v2(0.8, 0.0), 0.0), (v2(0.0, 0.8), 0.0)];
        let e = v2(0.0, 0.0);
        let targets = cone_move(&group, &e, &e).unwrap();
        for t in &targets {
            assert_eq!(t, &e, "landing move must reach the evader exactly");
        }
    }

    #[test]
    fn cone_group_reequalizes_distances() {
        let u = 0.7;
        let e_old = v2(0.0, 0.0);
        let e_new = v2(u, 0.0);
        let t1 = 25f64.to_radians();
        let t2 = 40f64.to_radians();
        let d = 6.0;
        let group = vec![
            (v2(d * t1.cos(), d * t1.sin()), t1),
            (v2(d * t2.cos(), -d * t2.sin()), t2),
        ];
        let targets = cone_move(&group, &e_old, &e_new).unwrap();
        let d1 = targets[0].dist(&e_new);
        let d2 = targets[1].dist(&e_new);
        assert!((d1 - d2).abs() < 1e-12, "distances {d1} vs {d2}");
        // The larger angle binds with a full unit step.
        assert!((targets[1].dist(&group[1].0) - 1.0).abs() < 1e-12);
        assert!(targets[0].dist(&group[0].0) <= 1.0 + 1e-12);
        // Decrease at least cos(theta_max).
        assert!(d - d1 >= t2.cos() - 1e-9);
    }

    #[test]
    fn closest_set_clustering() {
        let e = v2(0.0, 0.0);
        let ps = PointSet::new(vec![v2(3.0, 0.0), v2(0.0, 3.0 + 1e-7), v2(5.0, 0.0)]).unwrap();
        let c = compute_closest_set(&ps, &e, 1e-6);
        assert_eq!(c.indices, vec![0, 1]);
        assert_eq!(c.d_min, 3.0);
        let tight = compute_closest_set(&ps, &e, 1e-9);
        assert_eq!(tight.indices, vec![0]);
        let all_equal =
            compute_closest_set(&PointSet::new(vec![v2(2.0, 0.0), v2(0.0, 2.0)]).unwrap(), &e, 1e-6);
        assert_eq!(all_equal.indices, vec![0, 1]);
    }

    #[test]
    fn policy_rejects_illegal_evader_step() {
        let pursuers = vec![v2(3.0, 0.0), v2(-3.0, 0.0), v2(0.0, 3.0), v2(0.0, -3.0), v2(2.0, 2.0)];
        let alive = vec![true; 5];
        let params = PursuitParams::new(1, 5, 0.5, true).unwrap();
        let e_old = v2(0.0, 0.0);
        let e_new = v2(1.5, 0.0);
        let err = k_capture_policy(
            PolicyInput { e_old: &e_old, e_new: &e_new, pursuers: &pursuers, alive: &alive },
            &params,
        )
        .unwrap_err();
        assert!(matches!(err, Error::IllegalMove { .. }));
    }

    #[test]
    fn policy_stationary_evader_cone_fires() {
        // k closest with a stationary evader: the zero-step cone covers all of
        // space, so the cone move fires and d_min drops by one.
        let pursuers = vec![v2(4.0, 0.0), v2(-4.0, 0.0), v2(0.0, 4.0), v2(0.0, -4.0), v2(6.0, 6.0)];
        let alive = vec![true; 5];
        let params = PursuitParams::new(2, 5, 0.6, true).unwrap();
        let e = v2(0.0, 0.0);
        let moves = k_capture_policy(
            PolicyInput { e_old: &e, e_new: &e, pursuers: &pursuers, alive: &alive },
            &params,
        )
        .unwrap();
        let cone_count = moves
            .iter()
            .filter(|m| matches!(m.kind, MoveRecord::Cone { .. }))
            .count();
        assert_eq!(cone_count, 2);
        let new_d_min = moves
            .iter()
            .map(|m| m.target.dist(&e))
            .fold(f64::INFINITY, f64::min);
        assert!((new_d_min - 3.0).abs() < 1e-12);
        // Non-cone closest pursuers parallel (here: none; the two remaining
        // closest are in the cone too, so they got Advance(d_min)).
        for m in &moves {
            assert!(m.target.dist(&e) <= 6.0 * 2f64.sqrt() + 1e-9);
        }
    }

    #[test]
    fn policy_preserves_orientation() {
        let pursuers = vec![v2(5.0, 1.0), v2(-3.0, 2.0), v2(1.0, -4.0), v2(-2.0, -2.0), v2(0.5, 3.0)];
        let alive = vec![true; 5];
        let params = PursuitParams::new(1, 5, 0.7, true).unwrap();
        let e_old = v2(0.0, 0.0);
        let e_new = v2(0.3, -0.6);
        let moves = k_capture_policy(
            PolicyInput { e_old: &e_old, e_new: &e_new, pursuers: &pursuers, alive: &alive },
            &params,
        )
        .unwrap();
        for (p, m) in pursuers.iter().zip(&moves) {
            let before = p.sub(&e_old);
            let after = m.target.sub(&e_new);
            assert!(after.norm() > 1e-9);
            assert!(before.angle_to(&after) < 1e-9, "orientation drifted");
            assert!(m.target.dist(p) <= 1.0 + SPEED_TOL);
        }
    }

    #[test]
    fn collinear_pair_detection_and_break() {
        // Pursuers 0 and 2 share the ray from the evader.
        let pursuers = vec![v2(2.0, 0.0), v2(0.0, 3.0), v2(5.0, 0.0), v2(-3.0, -1.0), v2(-1.0, 3.0)];
        let alive = vec![true; 5];
        let e_old = v2(0.0, 0.0);
        let pairs = collinear_pairs(&pursuers, &alive, &e_old);
        assert_eq!(pairs, vec![(0, 2)]);

        let e_new = v2(0.4, 0.3);
        let moves = break_collinearity(
            PolicyInput { e_old: &e_old, e_new: &e_new, pursuers: &pursuers, alive: &alive },
            1,
            1e-4,
            true,
        )
        .unwrap();
        let new_pos: Vec<Vector> = moves.iter().map(|m| m.target.clone()).collect();
        assert!(collinear_pairs(&new_pos, &alive, &e_new).is_empty());
        // The perturbed pursuer's step makes roughly the requested angle.
        let step = new_pos[2].sub(&pursuers[2]);
        let u_vec = e_new.sub(&e_old);
        assert!(step.angle_to(&u_vec) >= 1e-4 * (1.0 - 1e-6));
        for (p, m) in pursuers.iter().zip(&moves) {
            assert!(m.target.dist(p) <= 1.0 + SPEED_TOL);
        }
    }

    #[test]
    fn two_separate_collinear_pairs_broken_in_one_round() {
        let pursuers = vec![
            v2(2.0, 0.0),
            v2(4.0, 0.0),
            v2(0.0, 2.0),
            v2(0.0, 5.0),
            v2(-3.0, -2.0),
            v2(3.0, -2.5),
            v2(-2.0, 2.5),
            v2(-1.0, -4.0),
        ];
        let alive = vec![true; 8];
        let e_old = v2(0.0, 0.0);
        assert_eq!(collinear_pairs(&pursuers, &alive, &e_old).len(), 2);
        let interior = crate::geometry::in_khull_interior(
            &PointSet::new(pursuers.clone()).unwrap(),
            &e_old,
            2,
        )
        .unwrap();
        assert!(interior, "test construction: evader inside the 2-Hull interior");
        let e_new = v2(0.2, 0.5);
        let moves = break_collinearity(
            PolicyInput { e_old: &e_old, e_new: &e_new, pursuers: &pursuers, alive: &alive },
            2,
            1e-4,
            interior,
        )
        .unwrap();
        let new_pos: Vec<Vector> = moves.iter().map(|m| m.target.clone()).collect();
        assert!(collinear_pairs(&new_pos, &alive, &e_new).is_empty());
        assert!(crate::geometry::in_khull_interior(
            &PointSet::new(new_pos).unwrap(),
            &e_new,
            2
        )
        .unwrap());
    }
}
