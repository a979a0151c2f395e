//! Worst-case approach angle beta_max and cone membership.
//!
//! For a query point strictly inside the k-Hull, define for each unit
//! direction u the value g(u) = k-th largest cosine of the angles between u
//! and the pursuer directions p_i - q. Then beta_max = arccos(min_u g(u)) is
//! strictly below pi/2 and stays fixed under any orientation-preserving
//! pursuit, whatever the radial distances: g depends on directions only.

use super::depth::min_strict_count;
use super::{PointSet, Vector, EPS_ANG};
use crate::error::Error;
use crate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::f64::consts::{PI, TAU};

/// Grid size used for dimensions >= 3 before local refinement.
const SPHERE_GRID: usize = 20_000;

/// Result of a beta_max computation.
#[derive(Debug, Clone)]
pub struct BetaResult {
    /// arccos(g_min), in [0, pi/2).
    pub beta_max: f64,
    /// Minimum over unit directions of the k-th largest direction cosine.
    pub g_min: f64,
    /// A direction attaining the minimum.
    pub argmin_direction: Vector,
    /// False when the minimization used a sampled sphere grid (m >= 3).
    pub exact: bool,
    /// Grid size used when not exact.
    pub grid_resolution: Option<usize>,
}

/// k-th largest of the cosines between `u` and the unit directions.
fn g_value(unit_dirs: &[Vector], u: &Vector, k: usize) -> f64 {
    let mut cosines: Vec<f64> = unit_dirs.iter().map(|d| d.dot(u)).collect();
    cosines.sort_by(|a, b| b.partial_cmp(a).unwrap());
    cosines[k - 1]
}

fn unit_difference_dirs(s: &PointSet, q: &Vector) -> Result<Vec<Vector>> {
    let mut dirs = Vec::with_capacity(s.len());
    for (i, p) in s.iter().enumerate() {
        let v = p.sub(q);
        match v.normalized(super::EPS_LOC) {
            Some(u) => dirs.push(u),
            None => return Err(Error::CoincidentPoint { index: i }),
        }
    }
    Ok(dirs)
}

/// Computes beta_max per Eq. (1): exact in the plane via the finite candidate
/// set (pairwise bisectors and antipodes of the pursuer angles), sampled plus
/// locally refined for m >= 3.
///
/// Errors when `q` is not strictly inside the k-Hull; the error carries a
/// direction along which fewer than k pursuers lie strictly ahead.
pub fn beta_max(s: &PointSet, q: &Vector, k: usize) -> Result<BetaResult> {
    super::check_helly(k, s.len(), s.dim())?;
    let (strict_min, strict_witness) = min_strict_count(s, q)?;
    if strict_min < k {
        return Err(Error::NotInKHullInterior { witness: strict_witness.0 });
    }
    let dirs = unit_difference_dirs(s, q)?;
    let m = s.dim();
    let (g_min, argmin, exact, grid) = if m == 2 {
        let (g, a) = beta_min_2d(&dirs, k);
        (g, a, true, None)
    } else {
        let (g, a) = beta_min_sampled(&dirs, k, m);
        (g, a, false, Some(SPHERE_GRID))
    };
    debug_assert!(
        g_min > 0.0 && g_min <= 1.0 + 1e-12,
        "interior point must have g_min in (0, 1], got {g_min}"
    );
    Ok(BetaResult {
        beta_max: g_min.clamp(-1.0, 1.0).acos(),
        g_min,
        argmin_direction: argmin,
        exact,
        grid_resolution: grid,
    })
}

/// Exact 2D minimization: the minimizer of the k-th-max-of-cosines envelope
/// lies where two cosine branches cross (angle bisectors, both of them) or at
/// a branch minimum (the antipode of a pursuer angle).
fn beta_min_2d(dirs: &[Vector], k: usize) -> (f64, Vector) {
    let angles: Vec<f64> = dirs.iter().map(|d| d.0[1].atan2(d.0[0])).collect();
    let mut candidates: Vec<f64> = Vec::with_capacity(angles.len() * angles.len());
    for (i, &a) in angles.iter().enumerate() {
        candidates.push((a + PI).rem_euclid(TAU));
        for &b in &angles[i + 1..] {
            let mid = (a + b) / 2.0;
            candidates.push(mid.rem_euclid(TAU));
            candidates.push((mid + PI).rem_euclid(TAU));
        }
    }
    let mut best = f64::INFINITY;
    let mut arg = Vector::new(vec![1.0, 0.0]);
    for phi in candidates {
        let u = Vector::new(vec![phi.cos(), phi.sin()]);
        let g = g_value(dirs, &u, k);
        if g < best {
            best = g;
            arg = u;
        }
    }
    (best, arg)
}

/// Quasi-uniform sphere grid followed by shrinking-neighborhood refinement.
fn beta_min_sampled(dirs: &[Vector], k: usize, m: usize) -> (f64, Vector) {
    let mut best = f64::INFINITY;
    let mut arg = {
        let mut v = Vector::zeros(m);
        v.0[0] = 1.0;
        v
    };
    let consider = |u: Vector, best: &mut f64, arg: &mut Vector| {
        let g = g_value(dirs, &u, k);
        if g < *best {
            *best = g;
            *arg = u;
        }
    };
    if m == 3 {
        // Fibonacci sphere.
        let golden = PI * (3.0 - 5f64.sqrt());
        for i in 0..SPHERE_GRID {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / SPHERE_GRID as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            consider(
                Vector::new(vec![r * phi.cos(), r * phi.sin(), z]),
                &mut best,
                &mut arg,
            );
        }
    } else {
        let mut rng = ChaCha12Rng::seed_from_u64(0x5eed_beaa);
        let mut produced = 0;
        while produced < SPHERE_GRID {
            let v = Vector::new((0..m).map(|_| rng.gen_range(-1.0..1.0)).collect());
            let n = v.norm();
            if n > 1e-3 && n <= 1.0 {
                consider(v.scale(1.0 / n), &mut best, &mut arg);
                produced += 1;
            }
        }
    }
    // Local refinement around the best grid direction.
    let mut rng = ChaCha12Rng::seed_from_u64(0x5eed_0f1e);
    let mut radius = 4.0 * (4.0 / SPHERE_GRID as f64).sqrt();
    for _ in 0..40 {
        let center = arg.clone();
        for _ in 0..24 {
            let jitter = Vector::new((0..m).map(|_| rng.gen_range(-1.0..1.0)).collect());
            if let Some(u) = center.add_scaled(&jitter, radius).normalized(1e-12) {
                consider(u, &mut best, &mut arg);
            }
        }
        radius *= 0.6;
    }
    (best, arg)
}

/// Closed cone membership: `x` is in the cone with vertex `q_from`, the given
/// axis and half angle iff the angle between x - q_from and the axis is at
/// most half_angle (+ EPS_ANG). A zero axis (the evader stood still) makes the
/// cone all of space; the vertex itself always belongs.
pub fn in_cone(q_from: &Vector, axis: &Vector, half_angle: f64, x: &Vector) -> bool {
    if axis.norm() <= super::EPS_LOC {
        return true;
    }
    let v = x.sub(q_from);
    if v.norm() <= super::EPS_LOC {
        return true;
    }
    v.angle_to(axis) <= half_angle + EPS_ANG
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::beta_by_grid;
    use std::f64::consts::FRAC_PI_3;

    fn ring(angles_deg: &[f64], radii: &[f64]) -> PointSet {
        let pts = angles_deg
            .iter()
            .zip(radii)
            .map(|(a, r)| {
                let t = a.to_radians();
                Vector::new(vec![r * t.cos(), r * t.sin()])
            })
            .collect();
        PointSet::new(pts).unwrap()
    }

    #[test]
    fn three_symmetric_pursuers_give_pi_over_3() {
        let s = ring(&[0.0, 120.0, 240.0], &[1.0, 2.0, 3.0]);
        let q = Vector::zeros(2);
        let b = beta_max(&s, &q, 1).unwrap();
        assert!((b.beta_max - FRAC_PI_3).abs() < 1e-12, "got {}", b.beta_max);
        assert!((beta_by_grid(&s, &q, 1, 10_000) - FRAC_PI_3).abs() < 1e-4);
    }

    #[test]
    fn four_axis_pursuers_give_pi_over_4() {
        let s = ring(&[0.0, 90.0, 180.0, 270.0], &[1.0, 1.0, 1.0, 1.0]);
        let q = Vector::zeros(2);
        let b = beta_max(&s, &q, 1).unwrap();
        assert!((b.beta_max - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn radial_scaling_leaves_beta_unchanged() {
        let s1 = ring(&[10.0, 130.0, 200.0, 310.0], &[1.0, 1.0, 1.0, 1.0]);
        let s2 = ring(&[10.0, 130.0, 200.0, 310.0], &[0.3, 7.0, 2.5, 11.0]);
        let q = Vector::zeros(2);
        let b1 = beta_max(&s1, &q, 1).unwrap();
        let b2 = beta_max(&s2, &q, 1).unwrap();
        assert!((b1.beta_max - b2.beta_max).abs() < 1e-9);
    }

    #[test]
    fn outside_interior_is_an_error() {
        let s = ring(&[0.0, 30.0, 60.0], &[1.0, 1.0, 1.0]);
        let err = beta_max(&s, &Vector::zeros(2), 1).unwrap_err();
        assert!(matches!(err, Error::NotInKHullInterior { .. }));
    }

    #[test]
    fn beta_below_right_angle_for_interior_points() {
        let s = ring(&[15.0, 100.0, 170.0, 260.0, 300.0], &[2.0, 1.0, 3.0, 2.0, 1.5]);
        let b = beta_max(&s, &Vector::zeros(2), 1).unwrap();
        assert!(b.beta_max < PI / 2.0);
        assert!(b.g_min > 0.0);
    }

    #[test]
    fn sampled_3d_close_to_symmetric_value() {
        // Octahedron vertices, k = 1: by symmetry the worst direction is a
        // cube-corner direction with g = 1/sqrt(3).
        let s = PointSet::new(vec![
            Vector::new(vec![1.0, 0.0, 0.0]),
            Vector::new(vec![-1.0, 0.0, 0.0]),
            Vector::new(vec![0.0, 1.0, 0.0]),
            Vector::new(vec![0.0, -1.0, 0.0]),
            Vector::new(vec![0.0, 0.0, 1.0]),
            Vector::new(vec![0.0, 0.0, -1.0]),
        ])
        .unwrap();
        let b = beta_max(&s, &Vector::zeros(3), 1).unwrap();
        assert!(!b.exact);
        let expected = (1.0 / 3f64.sqrt()).acos();
        assert!((b.beta_max - expected).abs() < 1e-3, "got {}", b.beta_max);
    }

    #[test]
    fn cone_membership() {
        let q = Vector::zeros(2);
        let axis = Vector::new(vec![1.0, 0.0]);
        let half = PI / 6.0;
        // on the axis ray
        assert!(in_cone(&q, &axis, half, &Vector::new(vec![3.0, 0.0])));
        // exactly on the boundary (closed cone)
        let on_edge = Vector::new(vec![half.cos(), half.sin()]);
        assert!(in_cone(&q, &axis, half, &on_edge));
        // 0.1 rad beyond the boundary
        let t = half + 0.1;
        assert!(!in_cone(&q, &axis, half, &Vector::new(vec![t.cos(), t.sin()])));
        // zero axis: cone is all of space
        assert!(in_cone(&q, &Vector::zeros(2), half, &Vector::new(vec![-5.0, 2.0])));
        // vertex belongs
        assert!(in_cone(&q, &axis, 0.0, &q));
    }
}
