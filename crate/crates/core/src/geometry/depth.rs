//! Exact halfspace (Tukey) depth and strict k-Hull interior membership.
//!
//! The depth of a query point q in a set S is the minimum, over all unit
//! directions u, of the number of points p in S with (p - q) . u >= 0.
//! A point is in the k-Hull iff its depth is at least k; it is strictly
//! interior iff every direction has at least k points strictly beyond it.
//!
//! In the plane the minimum is found exactly by an angular sweep over the
//! critical directions perpendicular to each p - q. In higher dimensions the
//! minimizing direction can be taken as a perturbed normal of a hyperplane
//! spanned by m - 1 of the difference vectors; points falling exactly on
//! that hyperplane are resolved by recursing on their projections inside it.

use super::{PointSet, Vector, EPS_GEOM, EPS_LOC};
use crate::error::Error;
use crate::Result;

/// Maximum point count accepted by the exact method in dimension >= 3.
const MAX_N_HIGH_DIM: usize = 15;

/// Result of a halfspace-depth query.
#[derive(Debug, Clone)]
pub struct DepthResult {
    /// Minimum closed-halfspace count over all directions.
    pub depth: usize,
    /// Unit direction achieving the minimum: counting points with
    /// (p - q) . witness >= -EPS_GEOM reproduces `depth`.
    pub witness_direction: Vector,
    /// Indices of points coinciding with q within EPS_LOC. When nonempty the
    /// query is ill-posed for a live game; those points are excluded from the
    /// counts.
    pub coincident: Vec<usize>,
}

fn closed_count(vectors: &[Vector], u: &Vector) -> usize {
    vectors.iter().filter(|v| v.dot(u) >= -EPS_GEOM).count()
}

fn strict_count(vectors: &[Vector], u: &Vector) -> usize {
    vectors.iter().filter(|v| v.dot(u) > EPS_GEOM).count()
}

/// Gram-Schmidt orthonormal basis of the span of `vectors`.
fn orthonormal_span(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::new();
    for v in vectors {
        if basis.len() == dim {
            break;
        }
        let mut w = v.clone();
        for b in &basis {
            let c = w.dot(b);
            w = w.add_scaled(b, -c);
        }
        let scale = v.norm().max(1.0);
        if let Some(u) = w.normalized(1e-12 * scale) {
            basis.push(u);
        }
    }
    basis
}

/// Extends an orthonormal set to a full orthonormal basis of R^dim.
fn complete_basis(partial: &[Vector], dim: usize) -> Vec<Vector> {
    let mut basis = partial.to_vec();
    for axis in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut w = Vector::zeros(dim);
        w.0[axis] = 1.0;
        for b in &basis {
            let c = w.dot(b);
            w = w.add_scaled(b, -c);
        }
        if let Some(u) = w.normalized(1e-9) {
            basis.push(u);
        }
    }
    debug_assert_eq!(basis.len(), dim);
    basis
}

/// Coordinates of `v` in the orthonormal `basis`.
fn project(v: &Vector, basis: &[Vector]) -> Vector {
    Vector(basis.iter().map(|b| v.dot(b)).collect())
}

/// Lifts coordinates back: sum of coord[i] * basis[i].
fn lift(coords: &Vector, basis: &[Vector], dim: usize) -> Vector {
    let mut out = Vector::zeros(dim);
    for (c, b) in coords.0.iter().zip(basis) {
        out = out.add_scaled(b, *c);
    }
    out
}

/// Candidate directions for the 2D sweep: each angle perpendicular to some
/// vector, plus the midpoint of every circular gap between them.
fn sweep_candidates(vectors: &[Vector]) -> Vec<Vector> {
    use std::f64::consts::{PI, TAU};
    let mut crit: Vec<f64> = Vec::with_capacity(2 * vectors.len());
    for v in vectors {
        let a = v.0[1].atan2(v.0[0]);
        crit.push((a + PI / 2.0).rem_euclid(TAU));
        crit.push((a - PI / 2.0).rem_euclid(TAU));
    }
    crit.sort_by(|a, b| a.partial_cmp(b).unwrap());
    crit.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    let mut out: Vec<Vector> = Vec::with_capacity(2 * crit.len());
    for (i, &c) in crit.iter().enumerate() {
        out.push(Vector::new(vec![c.cos(), c.sin()]));
        let next = if i + 1 < crit.len() { crit[i + 1] } else { crit[0] + TAU };
        let mid = (c + next) / 2.0;
        out.push(Vector::new(vec![mid.cos(), mid.sin()]));
    }
    if out.is_empty() {
        out.push(Vector::new(vec![1.0, 0.0]));
    }
    out
}

/// Exact minimum closed count over all directions, with a minimizing
/// direction, for vectors about the origin spanning `dim` dimensions.
/// Caller guarantees every vector is nonzero.
fn min_closed(vectors: &[Vector], dim: usize) -> (usize, Vector) {
    let span = orthonormal_span(vectors, dim);
    let d = span.len();
    if d == 0 {
        return (0, unit_axis(dim, 0));
    }
    let reduced: Vec<Vector> = if d == dim {
        vectors.to_vec()
    } else {
        vectors.iter().map(|v| project(v, &span)).collect()
    };
    let (count, w) = min_closed_full(&reduced, d);
    if d == dim {
        (count, w)
    } else {
        (count, lift(&w, &span, dim))
    }
}

fn unit_axis(dim: usize, axis: usize) -> Vector {
    let mut v = Vector::zeros(dim);
    v.0[axis] = 1.0;
    v
}

/// `min_closed` on vectors that span the full d-dimensional space.
fn min_closed_full(vectors: &[Vector], d: usize) -> (usize, Vector) {
    if d == 1 {
        let pos = vectors.iter().filter(|v| v.0[0] >= -EPS_GEOM).count();
        let neg = vectors.iter().filter(|v| v.0[0] <= EPS_GEOM).count();
        return if pos <= neg {
            (pos, Vector::new(vec![1.0]))
        } else {
            (neg, Vector::new(vec![-1.0]))
        };
    }
    if d == 2 {
        let mut best = usize::MAX;
        let mut witness = unit_axis(2, 0);
        for u in sweep_candidates(vectors) {
            let c = closed_count(vectors, &u);
            if c < best {
                best = c;
                witness = u;
            }
        }
        return (best, witness);
    }

    // d >= 3: enumerate normals of hyperplanes spanned by (d-1)-subsets, and
    // resolve points lying on the hyperplane by recursing on their
    // projections inside it (the "sign perturbation" of the normal).
    let n = vectors.len();
    let mut best = usize::MAX;
    let mut witness = unit_axis(d, 0);
    let mut subset = vec![0usize; d - 1];
    let mut combos: Vec<Vec<usize>> = Vec::new();
    gen_combinations(n, d - 1, 0, &mut subset, 0, &mut combos);
    for combo in &combos {
        let members: Vec<Vector> = combo.iter().map(|&i| vectors[i].clone()).collect();
        let span = orthonormal_span(&members, d);
        if span.len() != d - 1 {
            continue; // degenerate subset, covered by a smaller independent one
        }
        let full = complete_basis(&span, d);
        let normal = full[d - 1].clone();
        for sign in [1.0, -1.0] {
            let u0 = normal.scale(sign);
            let scale_eps = |v: &Vector| EPS_GEOM * v.norm().max(1.0);
            let mut strict = 0usize;
            let mut boundary: Vec<Vector> = Vec::new();
            for v in vectors {
                let dot = v.dot(&u0);
                if dot > scale_eps(v) {
                    strict += 1;
                } else if dot >= -scale_eps(v) {
                    boundary.push(v.clone());
                }
            }
            if strict >= best {
                continue;
            }
            let (sub_count, sub_w) = if boundary.is_empty() {
                (0, Vector::zeros(d - 1))
            } else {
                let projected: Vec<Vector> =
                    boundary.iter().map(|v| project(v, &span)).collect();
                min_closed(&projected, d - 1)
            };
            let total = strict + sub_count;
            if total < best {
                best = total;
                let w_lifted = lift(&sub_w, &span, d);
                witness = refine_witness(vectors, &u0, &w_lifted, total);
            }
        }
    }
    debug_assert!(best != usize::MAX, "no full-rank subset in spanning set");
    (best, witness)
}

/// Picks a perturbation size so the tilted normal reproduces the counted
/// minimum; falls back to the best direction found.
fn refine_witness(vectors: &[Vector], u0: &Vector, tilt: &Vector, target: usize) -> Vector {
    let mut best_dir = u0.clone();
    let mut best_count = closed_count(vectors, u0);
    if best_count == target {
        return best_dir;
    }
    for exp in 1..=10 {
        let delta = 10f64.powi(-exp);
        if let Some(u) = u0.add_scaled(tilt, delta).normalized(1e-300) {
            let c = closed_count(vectors, &u);
            if c < best_count {
                best_count = c;
                best_dir = u;
                if c == target {
                    break;
                }
            }
        }
    }
    best_dir
}

fn gen_combinations(
    n: usize,
    take: usize,
    start: usize,
    current: &mut Vec<usize>,
    filled: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if filled == take {
        out.push(current[..take].to_vec());
        return;
    }
    for i in start..n {
        if n - i < take - filled {
            break;
        }
        current[filled] = i;
        gen_combinations(n, take, i + 1, current, filled + 1, out);
    }
}

/// Splits off points coincident with q and returns the difference vectors of
/// the rest.
fn difference_vectors(s: &PointSet, q: &Vector) -> Result<(Vec<Vector>, Vec<usize>)> {
    if q.dim() != s.dim() {
        return Err(Error::DimensionMismatch { expected: s.dim(), got: q.dim() });
    }
    let mut vectors = Vec::with_capacity(s.len());
    let mut coincident = Vec::new();
    for (i, p) in s.iter().enumerate() {
        let v = p.sub(q);
        if v.norm() <= EPS_LOC {
            coincident.push(i);
        } else {
            vectors.push(v);
        }
    }
    Ok((vectors, coincident))
}

/// Exact halfspace depth of `q` with respect to `s`.
///
/// Exact for m = 2 at any n; for m >= 3 the combinatorial enumeration is
/// restricted to n <= 15.
pub fn halfspace_depth(s: &PointSet, q: &Vector) -> Result<DepthResult> {
    let m = s.dim();
    if m >= 3 && s.len() > MAX_N_HIGH_DIM {
        return Err(Error::DegenerateInput(format!(
            "exact depth in dimension {m} limited to n <= {MAX_N_HIGH_DIM}, got n = {}",
            s.len()
        )));
    }
    let (vectors, coincident) = difference_vectors(s, q)?;
    if vectors.is_empty() {
        return Ok(DepthResult {
            depth: 0,
            witness_direction: unit_axis(m, 0),
            coincident,
        });
    }
    let (depth, witness_direction) = min_closed(&vectors, m);
    Ok(DepthResult { depth, witness_direction, coincident })
}

/// Minimum over all unit directions of the strict count
/// |{ i : (p_i - q) . u > EPS_GEOM }|, with a minimizing direction.
///
/// The query point is strictly inside the k-Hull iff this is >= k.
pub fn min_strict_count(s: &PointSet, q: &Vector) -> Result<(usize, Vector)> {
    let m = s.dim();
    if m >= 3 && s.len() > MAX_N_HIGH_DIM {
        return Err(Error::DegenerateInput(format!(
            "exact depth in dimension {m} limited to n <= {MAX_N_HIGH_DIM}, got n = {}",
            s.len()
        )));
    }
    let (vectors, coincident) = difference_vectors(s, q)?;
    if let Some(&index) = coincident.first() {
        return Err(Error::CoincidentPoint { index });
    }
    let span = orthonormal_span(&vectors, m);
    if span.len() < m {
        // A direction orthogonal to the span has zero strict count.
        let full = complete_basis(&span, m);
        return Ok((0, full[m - 1].clone()));
    }
    Ok(min_strict_full(&vectors, m))
}

/// Minimum strict count for vectors spanning the full space. Strict counts
/// only drop where boundary points exist, so the minimum is attained at the
/// critical directions themselves (no perturbation step needed).
fn min_strict_full(vectors: &[Vector], d: usize) -> (usize, Vector) {
    let mut best = usize::MAX;
    let mut witness = unit_axis(d, 0);
    let mut consider = |u: &Vector| {
        let c = strict_count(vectors, u);
        if c < best {
            best = c;
            witness = u.clone();
        }
    };
    if d == 2 {
        for u in sweep_candidates(vectors) {
            consider(&u);
        }
    } else {
        let n = vectors.len();
        let mut subset = vec![0usize; d - 1];
        let mut combos: Vec<Vec<usize>> = Vec::new();
        gen_combinations(n, d - 1, 0, &mut subset, 0, &mut combos);
        for combo in &combos {
            let members: Vec<Vector> = combo.iter().map(|&i| vectors[i].clone()).collect();
            let span = orthonormal_span(&members, d);
            if span.len() != d - 1 {
                continue;
            }
            let full = complete_basis(&span, d);
            let normal = &full[d - 1];
            consider(normal);
            consider(&normal.scale(-1.0));
        }
    }
    (best, witness)
}

/// True iff `q` lies strictly inside the k-Hull of `s`: every unit direction
/// has at least k points strictly beyond it. Equivalent to g_min > 0 in the
/// beta_max computation.
pub fn in_khull_interior(s: &PointSet, q: &Vector, k: usize) -> Result<bool> {
    super::check_helly(k, s.len(), s.dim())?;
    let (min_strict, _) = min_strict_count(s, q)?;
    Ok(min_strict >= k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::depth_by_sampling;
    use std::f64::consts::TAU;

    fn pentagon() -> PointSet {
        let pts = (0..5)
            .map(|i| {
                let a = TAU * i as f64 / 5.0;
                Vector::new(vec![a.cos(), a.sin()])
            })
            .collect();
        PointSet::new(pts).unwrap()
    }

    fn cross() -> PointSet {
        PointSet::new(vec![
            Vector::new(vec![1.0, 0.0]),
            Vector::new(vec![-1.0, 0.0]),
            Vector::new(vec![0.0, 1.0]),
            Vector::new(vec![0.0, -1.0]),
        ])
        .unwrap()
    }

    #[test]
    fn pentagon_centroid_depth_two() {
        let s = pentagon();
        let q = Vector::zeros(2);
        let r = halfspace_depth(&s, &q).unwrap();
        assert_eq!(r.depth, 2);
        assert_eq!(depth_by_sampling(&s, &q, 100_000), 2);
        // witness reproduces its own count
        let count = s
            .iter()
            .filter(|p| p.sub(&q).dot(&r.witness_direction) >= -EPS_GEOM)
            .count();
        assert_eq!(count, r.depth);
    }

    #[test]
    fn cross_origin_depth_two() {
        let r = halfspace_depth(&cross(), &Vector::zeros(2)).unwrap();
        assert_eq!(r.depth, 2);
    }

    #[test]
    fn outside_hull_depth_zero() {
        let r = halfspace_depth(&pentagon(), &Vector::new(vec![5.0, 5.0])).unwrap();
        assert_eq!(r.depth, 0);
    }

    #[test]
    fn coincident_point_flagged() {
        let s = cross();
        let r = halfspace_depth(&s, &Vector::new(vec![1.0, 0.0])).unwrap();
        assert_eq!(r.coincident, vec![0]);
    }

    #[test]
    fn pentagon_centroid_interior_k2() {
        assert!(in_khull_interior(&pentagon(), &Vector::zeros(2), 2).unwrap());
    }

    #[test]
    fn edge_midpoint_not_interior_k1() {
        // Midpoint of the edge between vertices 0 and 1 of the pentagon.
        let s = pentagon();
        let mid = s.get(0).add(s.get(1)).scale(0.5);
        assert!(!in_khull_interior(&s, &mid, 1).unwrap());
    }

    #[test]
    fn strict_inside_hull_interior_k1() {
        assert!(in_khull_interior(&pentagon(), &Vector::new(vec![0.1, 0.05]), 1).unwrap());
    }

    #[test]
    fn helly_violation_rejected() {
        let err = in_khull_interior(&pentagon(), &Vector::zeros(2), 3).unwrap_err();
        assert!(matches!(err, Error::HellyBound { k: 3, n: 5, m: 2, bound: 2 }));
    }

    #[test]
    fn square_center_config_not_interior_k2() {
        // Four corners plus center: the 2-Hull is exactly the center point, so
        // the center is in the hull but not its interior.
        let s = PointSet::new(vec![
            Vector::new(vec![1.0, 1.0]),
            Vector::new(vec![1.0, -1.0]),
            Vector::new(vec![-1.0, 1.0]),
            Vector::new(vec![-1.0, -1.0]),
            Vector::new(vec![0.0, 0.0]),
        ])
        .unwrap();
        let q = Vector::new(vec![1e-3, 0.0]);
        let depth = halfspace_depth(&s, &q).unwrap().depth;
        assert!(depth <= 2);
        assert!(!in_khull_interior(&s, &q, 2).unwrap());
    }

    #[test]
    fn octahedron_3d_depth() {
        let s = PointSet::new(vec![
            Vector::new(vec![1.0, 0.0, 0.0]),
            Vector::new(vec![-1.0, 0.0, 0.0]),
            Vector::new(vec![0.0, 1.0, 0.0]),
            Vector::new(vec![0.0, -1.0, 0.0]),
            Vector::new(vec![0.0, 0.0, 1.0]),
            Vector::new(vec![0.0, 0.0, -1.0]),
        ])
        .unwrap();
        let q = Vector::zeros(3);
        let r = halfspace_depth(&s, &q).unwrap();
        assert_eq!(r.depth, depth_by_sampling(&s, &q, 200_000));
        let count = s
            .iter()
            .filter(|p| p.sub(&q).dot(&r.witness_direction) >= -EPS_GEOM)
            .count();
        assert_eq!(count, r.depth);
    }

    #[test]
    fn random_3d_matches_sampling() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(42);
        for _ in 0..40 {
            let n = rng.gen_range(4..=9);
            let pts: Vec<Vector> = (0..n)
                .map(|_| Vector::new((0..3).map(|_| rng.gen_range(-5.0..5.0)).collect()))
                .collect();
            let s = PointSet::new(pts).unwrap();
            let q = Vector::new((0..3).map(|_| rng.gen_range(-2.0..2.0)).collect());
            let exact = halfspace_depth(&s, &q).unwrap();
            let sampled = depth_by_sampling(&s, &q, 20_000);
            assert!(
                exact.depth <= sampled,
                "exact {} > sampled {} (n = {n})",
                exact.depth,
                sampled
            );
            let count = s
                .iter()
                .filter(|p| p.sub(&q).dot(&exact.witness_direction) >= -EPS_GEOM)
                .count();
            assert_eq!(count, exact.depth, "witness count mismatch");
        }
    }

    #[test]
    fn collinear_set_has_no_interior() {
        let s = PointSet::new(vec![
            Vector::new(vec![0.0, 0.0]),
            Vector::new(vec![1.0, 0.0]),
            Vector::new(vec![2.0, 0.0]),
        ])
        .unwrap();
        assert!(!in_khull_interior(&s, &Vector::new(vec![1.0, 1e-6]), 1).unwrap());
    }
}
