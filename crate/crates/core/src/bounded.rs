//! Capture in compact convex arenas with exactly k pursuers.
//!
//! Three phases: the pursuers first gather inside a ball of radius one half
//! (so each can reach any other's position in one step), then jump onto a
//! chord of that ball collinear with the evader — the lead pursuer farthest
//! away, the k - 1 followers strictly between lead and evader — and finally
//! the lead plays the Sgall move while the followers hold fixed fractions of
//! the lead-evader segment. When the lead reaches the evader the followers,
//! sitting on a segment of vanishing length, land with it: a k-capture.

use crate::error::Error;
use crate::geometry::{Hyperplane, Vector, EPS_LOC};
use crate::pursuit::{PursuerMove, SPEED_TOL};
use crate::trace::MoveRecord;
use crate::Result;
use serde::{Deserialize, Serialize};

/// Clearance kept from the evader while gathering (plumbing, not part of the
/// strategy proper: simultaneous jumps cannot collide mid-flight, but end
/// positions must respect the co-location rule).
const GATHER_CLEARANCE: f64 = 1e-3;
/// Margin keeping formation points strictly inside the half-radius ball.
const BALL_MARGIN: f64 = 1e-3;

/// A compact convex environment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConvexArena {
    Ball { center: Vector, radius: f64 },
    ConvexPolytope {
        /// Faces `normal . x <= offset` with unit normals.
        halfspaces: Vec<Hyperplane>,
        /// Required for dimension >= 3; computed from the vertices in 2D.
        #[serde(skip_serializing_if = "Option::is_none", default)]
        diameter: Option<f64>,
    },
}

impl ConvexArena {
    pub fn dim(&self) -> usize {
        match self {
            ConvexArena::Ball { center, .. } => center.dim(),
            ConvexArena::ConvexPolytope { halfspaces, .. } => {
                halfspaces.first().map_or(0, |h| h.normal.dim())
            }
        }
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        match self {
            ConvexArena::Ball { center, radius } => x.dist(center) <= radius + tol,
            ConvexArena::ConvexPolytope { halfspaces, .. } => {
                halfspaces.iter().all(|h| h.signed_dist(x) <= tol)
            }
        }
    }

    /// Longest step length along unit `dir` from `from` staying inside.
    pub fn max_step(&self, from: &Vector, dir: &Vector) -> f64 {
        self.ray_exit_dist(from, dir).max(0.0)
    }

    /// Distance from `from` to the boundary along unit `dir`.
    fn ray_exit_dist(&self, from: &Vector, dir: &Vector) -> f64 {
        match self {
            ConvexArena::Ball { center, radius } => {
                let w = from.sub(center);
                let b = w.dot(dir);
                let c = w.dot(&w) - radius * radius;
                let disc = (b * b - c).max(0.0);
                -b + disc.sqrt()
            }
            ConvexArena::ConvexPolytope { halfspaces, .. } => {
                let mut t = f64::INFINITY;
                for h in halfspaces {
                    let denom = h.normal.dot(dir);
                    if denom > 1e-12 {
                        t = t.min((h.offset - h.normal.dot(from)) / denom);
                    }
                }
                t
            }
        }
    }

    /// Boundary point hit by the ray from `origin` through unit `dir`.
    pub fn ray_exit(&self, origin: &Vector, dir: &Vector) -> Vector {
        origin.add_scaled(dir, self.ray_exit_dist(origin, dir))
    }

    /// Arena diameter: exact for balls, from the vertex set for 2D polytopes,
    /// required up front otherwise.
    pub fn diameter(&self) -> Result<f64> {
        match self {
            ConvexArena::Ball { radius, .. } => Ok(2.0 * radius),
            ConvexArena::ConvexPolytope { halfspaces, diameter } => {
                if let Some(d) = diameter {
                    return Ok(*d);
                }
                if self.dim() != 2 {
                    return Err(Error::DegenerateInput(
                        "polytope arena in dimension >= 3 requires an explicit diameter".into(),
                    ));
                }
                let verts = polytope_vertices_2d(halfspaces)?;
                let mut best = 0.0f64;
                for i in 0..verts.len() {
                    for j in (i + 1)..verts.len() {
                        best = best.max(verts[i].dist(&verts[j]));
                    }
                }
                Ok(best)
            }
        }
    }

    /// Axis-aligned square arena with the given diagonal (diameter), centered
    /// at the origin.
    pub fn axis_square(dim2_diameter: f64) -> ConvexArena {
        let half_side = dim2_diameter / (2.0 * 2f64.sqrt());
        let faces = [
            (vec![1.0, 0.0], half_side),
            (vec![-1.0, 0.0], half_side),
            (vec![0.0, 1.0], half_side),
            (vec![0.0, -1.0], half_side),
        ]
        .into_iter()
        .map(|(n, c)| Hyperplane { normal: Vector::new(n), offset: c })
        .collect();
        ConvexArena::ConvexPolytope { halfspaces: faces, diameter: Some(dim2_diameter) }
    }
}

/// Vertices of a bounded 2D polytope by pairwise face intersection.
fn polytope_vertices_2d(faces: &[Hyperplane]) -> Result<Vec<Vector>> {
    let mut verts = Vec::new();
    for i in 0..faces.len() {
        for j in (i + 1)..faces.len() {
            let (a, b) = (&faces[i], &faces[j]);
            let det = a.normal.0[0] * b.normal.0[1] - a.normal.0[1] * b.normal.0[0];
            if det.abs() < 1e-12 {
                continue;
            }
            let x = (a.offset * b.normal.0[1] - b.offset * a.normal.0[1]) / det;
            let y = (a.normal.0[0] * b.offset - b.normal.0[0] * a.offset) / det;
            let v = Vector::new(vec![x, y]);
            if faces.iter().all(|h| h.signed_dist(&v) <= 1e-9) {
                verts.push(v);
            }
        }
    }
    if verts.is_empty() {
        return Err(Error::DegenerateInput("unbounded or empty polytope arena".into()));
    }
    Ok(verts)
}

/// The collinear lead/follower formation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LeadFormation {
    /// Pursuer index playing the Sgall move.
    pub lead: usize,
    /// Remaining indices ordered from the lead toward the evader.
    pub followers: Vec<usize>,
    /// Largest deviation from the lead-evader line at formation time.
    pub collinearity_error: f64,
}

/// Fraction of the lead-evader segment occupied by follower slot `r`
/// (1-based) out of k agents total.
fn follower_fraction(r: usize, k: usize) -> f64 {
    r as f64 / (k as f64 + 1.0)
}

/// The initializing move: given pursuers inside a ball `O` of radius one
/// half around `ball_center`, place them on the chord of `O` toward the
/// evader's new position — collinear with it, the lead farthest, followers
/// spaced at most 1/(2k) apart. Every target lies in `O`, so every move is a
/// legal sub-unit step.
pub fn initializing_move(
    positions: &[Vector],
    ball_center: &Vector,
    e_new: &Vector,
    k: usize,
) -> Result<(LeadFormation, Vec<PursuerMove>)> {
    let m = e_new.dim();
    if positions.len() != k {
        return Err(Error::InvariantViolation(format!(
            "bounded strategy uses exactly k pursuers; got {} for k = {k}",
            positions.len()
        )));
    }
    for p in positions {
        if p.dist(ball_center) > 0.5 + 1e-9 {
            return Err(Error::InvariantViolation(
                "initializing move requires all pursuers inside the half-radius ball".into(),
            ));
        }
    }
    let rho = e_new.dist(ball_center);
    let w = match e_new.sub(ball_center).normalized(EPS_LOC) {
        Some(u) => u,
        None => {
            // Evader exactly at the center: any fixed chord direction works.
            let mut u = Vector::zeros(m);
            u.0[0] = 1.0;
            u
        }
    };
    // Signed offsets along w from the ball center; the chord spans [-1/2, 1/2].
    let kf = k as f64;
    let (anchor, gap) = if rho >= 0.5 {
        (0.5 - BALL_MARGIN, 1.0 / (4.0 * kf))
    } else {
        let gap = (1.0 / (4.0 * kf)).min((rho + 0.5 - BALL_MARGIN) / (kf + 1.0));
        (rho - gap, gap)
    };
    let offsets: Vec<f64> = (0..k).map(|j| anchor - (k - 1 - j) as f64 * gap).collect();
    debug_assert!(offsets.iter().all(|s| s.abs() <= 0.5));

    // Farthest-from-evader slot goes to the pursuer currently farthest behind
    // along the chord, keeping assignments stable.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        positions[a]
            .dot(&w)
            .partial_cmp(&positions[b].dot(&w))
            .unwrap()
            .then(a.cmp(&b))
    });
    let mut moves: Vec<Option<PursuerMove>> = vec![None; k];
    for (slot, &who) in order.iter().enumerate() {
        let target = ball_center.add_scaled(&w, offsets[slot]);
        if target.dist(&positions[who]) > 1.0 + SPEED_TOL {
            return Err(Error::InvariantViolation("formation jump exceeds unit speed".into()));
        }
        moves[who] = Some(PursuerMove { kind: MoveRecord::FormUp, target });
    }
    let moves: Vec<PursuerMove> = moves.into_iter().map(Option::unwrap).collect();

    let lead = order[0];
    let followers: Vec<usize> = order[1..].to_vec();
    let collinearity_error = formation_collinearity_error(
        &moves.iter().map(|mv| mv.target.clone()).collect::<Vec<_>>(),
        lead,
        &followers,
        e_new,
    );
    Ok((LeadFormation { lead, followers, collinearity_error }, moves))
}

/// Largest distance of any follower from the lead-evader line.
pub fn formation_collinearity_error(
    positions: &[Vector],
    lead: usize,
    followers: &[usize],
    e: &Vector,
) -> f64 {
    let Some(axis) = e.sub(&positions[lead]).normalized(EPS_LOC) else {
        return 0.0;
    };
    let mut worst = 0.0f64;
    for &f in followers {
        let v = positions[f].sub(&positions[lead]);
        let off = v.sub(&axis.scale(v.dot(&axis)));
        worst = worst.max(off.norm());
    }
    worst
}

/// The Sgall move: extend the line from the evader's old position through the
/// lead to the boundary point C, then step onto the segment from the evader's
/// new position to C, as close to the evader as the unit step allows.
pub fn sgall_move(
    p1_old: &Vector,
    e_old: &Vector,
    e_new: &Vector,
    arena: &ConvexArena,
) -> Result<Vector> {
    let c = match p1_old.sub(e_old).normalized(EPS_LOC) {
        Some(dir) => arena.ray_exit(e_old, &dir),
        None => {
            return Err(Error::CoLocation {
                a: "lead pursuer".into(),
                b: "evader".into(),
                distance: p1_old.dist(e_old),
            })
        }
    };
    // Minimize s on x(s) = e_new + s (C - e_new), s in [0, 1], subject to
    // |x(s) - p1_old| <= 1. The fraction matching the lead's position on the
    // old chord is always feasible, so the constraint set is nonempty.
    let a = e_new.sub(p1_old);
    let b = c.sub(e_new);
    let bb = b.dot(&b);
    if bb <= EPS_LOC * EPS_LOC {
        // Degenerate chord: the evader reached C itself.
        return Ok(if a.norm() <= 1.0 { e_new.clone() } else { p1_old.clone() });
    }
    let ab = a.dot(&b);
    let disc = ab * ab - bb * (a.dot(&a) - 1.0);
    debug_assert!(disc >= -1e-9, "Sgall move infeasible: disc = {disc}");
    let s_lo = (-ab - disc.max(0.0).sqrt()) / bb;
    let s = s_lo.clamp(0.0, 1.0);
    let target = if s <= 0.0 { e_new.clone() } else { e_new.add_scaled(&b, s) };
    debug_assert!(target.dist(p1_old) <= 1.0 + 1e-9);
    Ok(target)
}

/// One round of the Sgall-like policy: the lead plays the Sgall move, each
/// follower takes the point of the new lead-evader segment nearest its target
/// fraction that a unit step can reach. A follower sitting at fraction f of
/// the old segment can always reach fraction f of the new one (endpoints move
/// at most one each), so the feasible set is never empty and followers stay
/// strictly between lead and evader. When the lead reaches the evader every
/// follower lands there too (any point between old lead and old evader is
/// within one of the evader's new position): k-capture.
pub fn sgall_like_policy(
    positions: &[Vector],
    formation: &LeadFormation,
    e_old: &Vector,
    e_new: &Vector,
    arena: &ConvexArena,
    eps_cap: f64,
) -> Result<Vec<PursuerMove>> {
    let k = positions.len();
    let p1_new = sgall_move(&positions[formation.lead], e_old, e_new, arena)?;
    let mut moves: Vec<Option<PursuerMove>> = vec![None; k];
    let captured = p1_new.dist(e_new) <= eps_cap;
    moves[formation.lead] = Some(PursuerMove { kind: MoveRecord::Sgall, target: p1_new.clone() });
    let span = e_new.sub(&p1_new);
    let span_len = span.norm();
    for (slot, &who) in formation.followers.iter().enumerate() {
        let target = if captured {
            e_new.clone()
        } else {
            // Feasible fractions nu on x(nu) = p1_new + nu * span with
            // |x(nu) - prev| <= 1; clamp the ideal fraction into them and
            // into the open interval keeping followers strictly between.
            let prev = &positions[who];
            let a = p1_new.sub(prev);
            let bb = span.dot(&span);
            let ideal = follower_fraction(slot + 1, k);
            let nu = if bb <= EPS_LOC * EPS_LOC {
                ideal
            } else {
                let ab = a.dot(&span);
                let disc = ab * ab - bb * (a.dot(&a) - 1.0);
                if disc < -1e-9 {
                    return Err(Error::InvariantViolation(
                        "follower lost contact with the lead-evader segment".into(),
                    ));
                }
                let root = disc.max(0.0).sqrt();
                let nu_lo = (-ab - root) / bb;
                let nu_hi = (-ab + root) / bb;
                let margin = (2e-9 / span_len).min(0.1);
                let lo = nu_lo.max(margin).min(nu_hi);
                let hi = nu_hi.min(1.0 - margin).max(nu_lo);
                ideal.clamp(lo.min(hi), hi.max(lo))
            };
            p1_new.add_scaled(&span, nu)
        };
        let step = target.dist(&positions[who]);
        if step > 1.0 + SPEED_TOL {
            return Err(Error::InvariantViolation(format!(
                "follower step {step} exceeds unit speed; formation spacing broken"
            )));
        }
        moves[who] = Some(PursuerMove { kind: MoveRecord::Follow, target });
    }
    Ok(moves.into_iter().map(Option::unwrap).collect())
}

/// Gathering step toward a fixed rendezvous point. Pursuer `i` halts on a
/// standoff ring of its own radius (so no two ever co-locate) and yields to
/// the evader's personal space.
pub fn gather_move(
    positions: &[Vector],
    alive: &[bool],
    gather_point: &Vector,
    e_new: &Vector,
) -> Vec<PursuerMove> {
    let n = positions.len();
    positions
        .iter()
        .enumerate()
        .map(|(i, p)| {
            if !alive[i] {
                return PursuerMove { kind: MoveRecord::Hold, target: p.clone() };
            }
            let standoff = (i + 1) as f64 / (4.0 * n as f64);
            let to_goal = gather_point.sub(p);
            let dist = to_goal.norm();
            let mut target = if dist <= standoff {
                p.clone()
            } else {
                let step = (dist - standoff).min(1.0);
                p.add_scaled(&to_goal.scale(1.0 / dist), step)
            };
            // Keep clear of the evader's new position.
            let to_e = target.sub(e_new);
            if to_e.norm() < GATHER_CLEARANCE {
                let away = to_e
                    .normalized(EPS_LOC)
                    .unwrap_or_else(|| orthogonal_probe(e_new.dim()));
                target = e_new.add_scaled(&away, GATHER_CLEARANCE);
                if target.dist(p) > 1.0 {
                    // Cannot clear the evader this round; hold instead.
                    target = p.clone();
                }
            }
            PursuerMove { kind: MoveRecord::Gather, target }
        })
        .collect()
}

fn orthogonal_probe(m: usize) -> Vector {
    let mut v = Vector::zeros(m);
    v.0[0] = 1.0;
    v
}

/// True once every pursuer fits in a ball of radius one half around their
/// centroid (with margin).
pub fn gathered(positions: &[Vector]) -> Option<Vector> {
    let m = positions[0].dim();
    let mut centroid = Vector::zeros(m);
    for p in positions {
        centroid = centroid.add(p);
    }
    let centroid = centroid.scale(1.0 / positions.len() as f64);
    let max_dist = positions
        .iter()
        .map(|p| p.dist(&centroid))
        .fold(0.0f64, f64::max);
    (max_dist <= 0.5 - 2.0 * BALL_MARGIN).then_some(centroid)
}
