//! 2D k-Hull boundary polygon by brute-force halfplane intersection.
//!
//! For every direction u the k-Hull satisfies u . x <= (k-th largest of
//! u . p_i). The binding constraints come from lines through pairs of points
//! with exactly k - 1 points strictly on one side: intersecting those O(n^2)
//! halfplanes yields the hull. Deliberately O(n^3); the sophisticated
//! dynamic-hull construction is out of scope.

use super::{PointSet, Vector, EPS_GEOM};
use crate::error::Error;
use crate::Result;

const MAX_N_BOUNDARY: usize = 30;

/// Closed halfplane `normal . x <= offset` used during clipping.
#[derive(Debug, Clone)]
struct HalfplaneLe {
    normal: Vector,
    offset: f64,
}

/// Signed area of a polygon (positive when counterclockwise).
pub fn polygon_area(poly: &[Vector]) -> f64 {
    let n = poly.len();
    if n < 3 {
        return 0.0;
    }
    let mut area = 0.0;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        area += a.0[0] * b.0[1] - b.0[0] * a.0[1];
    }
    area / 2.0
}

/// Point-in-convex-polygon test with tolerance, polygon in CCW order.
pub fn convex_polygon_contains(poly: &[Vector], x: &Vector, tol: f64) -> bool {
    let n = poly.len();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return poly[0].dist(x) <= tol;
    }
    if n == 2 {
        // Segment: distance to the segment within tol.
        let d = poly[1].sub(&poly[0]);
        let len2 = d.dot(&d);
        let t = if len2 > 0.0 { (x.sub(&poly[0]).dot(&d) / len2).clamp(0.0, 1.0) } else { 0.0 };
        return poly[0].add_scaled(&d, t).dist(x) <= tol;
    }
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        let cross = (b.0[0] - a.0[0]) * (x.0[1] - a.0[1]) - (b.0[1] - a.0[1]) * (x.0[0] - a.0[0]);
        if cross < -tol {
            return false;
        }
    }
    true
}

/// Sutherland-Hodgman clip of a polygon by one closed halfplane.
fn clip(poly: Vec<Vector>, h: &HalfplaneLe, slack: f64) -> Vec<Vector> {
    if poly.is_empty() {
        return poly;
    }
    let inside = |p: &Vector| h.normal.dot(p) <= h.offset + slack;
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let cur = &poly[i];
        let next = &poly[(i + 1) % n];
        let cur_in = inside(cur);
        let next_in = inside(next);
        if cur_in {
            out.push(cur.clone());
        }
        if cur_in != next_in {
            let dc = h.normal.dot(cur) - h.offset;
            let dn = h.normal.dot(next) - h.offset;
            let denom = dc - dn;
            if denom.abs() > 1e-300 {
                let t = dc / denom;
                out.push(cur.add_scaled(&next.sub(cur), t));
            }
        }
    }
    out
}

fn dedup_ring(mut poly: Vec<Vector>, tol: f64) -> Vec<Vector> {
    if poly.len() < 2 {
        return poly;
    }
    let mut out: Vec<Vector> = Vec::with_capacity(poly.len());
    for p in poly.drain(..) {
        if out.last().map_or(true, |q: &Vector| q.dist(&p) > tol) {
            out.push(p);
        }
    }
    while out.len() >= 2 && out[0].dist(out.last().unwrap()) <= tol {
        out.pop();
    }
    out
}

/// Vertices of the 2D k-Hull in counterclockwise order.
///
/// Returns an empty list for an empty hull; a hull degenerating to a point or
/// segment comes back with one or two vertices. All-collinear input is
/// reported as an error rather than silently producing an empty-interior
/// region.
pub fn khull_boundary_2d(s: &PointSet, k: usize) -> Result<Vec<Vector>> {
    if s.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: s.dim() });
    }
    super::check_helly(k, s.len(), 2)?;
    if s.len() > MAX_N_BOUNDARY {
        return Err(Error::DegenerateInput(format!(
            "k-Hull boundary limited to n <= {MAX_N_BOUNDARY}, got {}",
            s.len()
        )));
    }
    if all_collinear(s) {
        return Err(Error::DegenerateInput(
            "all points collinear: k-Hull has empty interior".into(),
        ));
    }

    // Binding halfplanes from point pairs: keep `normal . x <= normal . p_i`
    // whenever the k-th largest projection along `normal` is attained on the
    // line through the pair (s strictly beyond, mult on the line, s < k <= s + mult).
    let n = s.len();
    let mut halfplanes: Vec<HalfplaneLe> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let edge = s.get(j).sub(s.get(i));
            let Some(t) = edge.normalized(1e-12) else { continue };
            let base = Vector::new(vec![-t.0[1], t.0[0]]);
            for normal in [base.clone(), base.scale(-1.0)] {
                let offset = normal.dot(s.get(i));
                let mut strictly_beyond = 0usize;
                let mut on_line = 0usize;
                for p in s.iter() {
                    let d = normal.dot(p) - offset;
                    if d > EPS_GEOM {
                        strictly_beyond += 1;
                    } else if d >= -EPS_GEOM {
                        on_line += 1;
                    }
                }
                if strictly_beyond < k && k <= strictly_beyond + on_line {
                    halfplanes.push(HalfplaneLe { normal, offset });
                }
            }
        }
    }

    // Start from an inflated bounding box of the points and clip.
    let (mut lo_x, mut hi_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut lo_y, mut hi_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in s.iter() {
        lo_x = lo_x.min(p.0[0]);
        hi_x = hi_x.max(p.0[0]);
        lo_y = lo_y.min(p.0[1]);
        hi_y = hi_y.max(p.0[1]);
    }
    let pad = 1.0 + (hi_x - lo_x).max(hi_y - lo_y);
    let mut poly = vec![
        Vector::new(vec![lo_x - pad, lo_y - pad]),
        Vector::new(vec![hi_x + pad, lo_y - pad]),
        Vector::new(vec![hi_x + pad, hi_y + pad]),
        Vector::new(vec![lo_x - pad, hi_y + pad]),
    ];
    for h in &halfplanes {
        poly = clip(poly, h, EPS_GEOM);
        if poly.is_empty() {
            return Ok(Vec::new());
        }
    }
    let mut poly = dedup_ring(poly, 1e-7);
    if polygon_area(&poly) < 0.0 {
        poly.reverse();
    }
    Ok(poly)
}

fn all_collinear(s: &PointSet) -> bool {
    if s.len() <= 2 {
        return true;
    }
    let a = s.get(0);
    let Some(dir) = s
        .iter()
        .skip(1)
        .map(|p| p.sub(a))
        .find(|v| v.norm() > 1e-12)
        .and_then(|v| v.normalized(1e-12))
    else {
        return true;
    };
    s.iter().all(|p| {
        let v = p.sub(a);
        (v.0[0] * dir.0[1] - v.0[1] * dir.0[0]).abs() <= 1e-9 * v.norm().max(1.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::halfspace_depth;
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

    fn sort_ring(mut v: Vec<Vector>) -> Vec<Vector> {
        v.sort_by(|a, b| {
            a.0[1]
                .atan2(a.0[0])
                .partial_cmp(&b.0[1].atan2(b.0[0]))
                .unwrap()
        });
        v
    }

    #[test]
    fn k1_equals_convex_hull_for_pentagon() {
        let s = pentagon();
        let hull = khull_boundary_2d(&s, 1).unwrap();
        assert_eq!(hull.len(), 5);
        let got = sort_ring(hull);
        let want = sort_ring(s.iter().cloned().collect());
        for (g, w) in got.iter().zip(&want) {
            assert!(g.dist(w) < 1e-9, "vertex {g:?} vs {w:?}");
        }
    }

    /// Line-line intersection oracle for the pentagon diagonals.
    fn intersect(a: &Vector, b: &Vector, c: &Vector, d: &Vector) -> Vector {
        let r = b.sub(a);
        let s = d.sub(c);
        let denom = r.0[0] * s.0[1] - r.0[1] * s.0[0];
        let t = ((c.0[0] - a.0[0]) * s.0[1] - (c.0[1] - a.0[1]) * s.0[0]) / denom;
        a.add_scaled(&r, t)
    }

    #[test]
    fn pentagon_k2_is_inner_diagonal_pentagon() {
        let s = pentagon();
        let hull = khull_boundary_2d(&s, 2).unwrap();
        assert_eq!(hull.len(), 5, "inner pentagon expected, got {hull:?}");
        // Expected vertices: intersections of consecutive diagonals
        // (i, i+2) x (i+1, i+3).
        let mut want = Vec::new();
        for i in 0..5 {
            want.push(intersect(
                s.get(i),
                s.get((i + 2) % 5),
                s.get((i + 1) % 5),
                s.get((i + 4) % 5),
            ));
        }
        let got = sort_ring(hull);
        let want = sort_ring(want);
        for (g, w) in got.iter().zip(&want) {
            assert!(g.dist(w) < 1e-7, "vertex {g:?} vs {w:?}");
        }
    }

    #[test]
    fn square_plus_center_k2_collapses_to_center() {
        let s = PointSet::new(vec![
            Vector::new(vec![1.0, 1.0]),
            Vector::new(vec![1.0, -1.0]),
            Vector::new(vec![-1.0, 1.0]),
            Vector::new(vec![-1.0, -1.0]),
            Vector::new(vec![0.0, 0.0]),
        ])
        .unwrap();
        let hull = khull_boundary_2d(&s, 2).unwrap();
        assert!(!hull.is_empty());
        // point or tiny polygon containing the center
        for v in &hull {
            assert!(v.norm() < 1e-6, "vertex {v:?} should collapse to origin");
        }
    }

    #[test]
    fn membership_grid_oracle_agrees() {
        let s = pentagon();
        for k in [1usize, 2] {
            let hull = khull_boundary_2d(&s, k).unwrap();
            let res = 300;
            let cell = 2.4 / res as f64;
            let slack = cell * 1.5;
            for iy in 0..res {
                for ix in 0..res {
                    let x = -1.2 + (ix as f64 + 0.5) * cell;
                    let y = -1.2 + (iy as f64 + 0.5) * cell;
                    let q = Vector::new(vec![x, y]);
                    let depth = match halfspace_depth(&s, &q) {
                        Ok(r) if r.coincident.is_empty() => r.depth,
                        _ => continue,
                    };
                    let inside_exact = depth >= k;
                    let inside_poly = convex_polygon_contains(&hull, &q, 1e-9);
                    if inside_exact != inside_poly {
                        // disagreement allowed only within a cell of the boundary
                        let near = convex_polygon_contains(&hull, &q, slack)
                            && !convex_polygon_contains(&hull, &q, -slack);
                        assert!(near, "grid mismatch at {q:?} for k = {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn collinear_input_reported() {
        let s = PointSet::new(vec![
            Vector::new(vec![0.0, 0.0]),
            Vector::new(vec![1.0, 0.0]),
            Vector::new(vec![2.0, 0.0]),
        ])
        .unwrap();
        assert!(matches!(khull_boundary_2d(&s, 1), Err(Error::DegenerateInput(_))));
    }
}
