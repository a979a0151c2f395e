//! Geometric primitives: m-dimensional vectors, hyperplanes, halfspace depth,
//! k-Hull membership and boundary, and the worst-case approach angle.

mod beta;
mod depth;
mod khull2d;

pub use beta::{beta_max, in_cone, BetaResult};
pub use depth::{halfspace_depth, in_khull_interior, min_strict_count, DepthResult};
pub use khull2d::{convex_polygon_contains, khull_boundary_2d, polygon_area};

use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};

/// Strict/closed halfspace counting tolerance.
pub const EPS_GEOM: f64 = 1e-9;
/// Angular tolerance for cone membership and collinearity tests.
pub const EPS_ANG: f64 = 1e-9;
/// Co-location tolerance: live agents must stay farther apart than this.
pub const EPS_LOC: f64 = 1e-9;

/// A point or displacement in m-dimensional Euclidean space, m >= 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(pub Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dist(&self, other: &Vector) -> f64 {
        self.sub(other).norm()
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: f64) -> Vector {
        Vector(self.0.iter().map(|a| a * s).collect())
    }

    /// `self + s * dir`.
    pub fn add_scaled(&self, dir: &Vector, s: f64) -> Vector {
        Vector(
            self.0
                .iter()
                .zip(&dir.0)
                .map(|(a, d)| a + s * d)
                .collect(),
        )
    }

    /// Unit vector in the same direction; `None` when the norm is below `eps`.
    pub fn normalized(&self, eps: f64) -> Option<Vector> {
        let n = self.norm();
        if n <= eps {
            None
        } else {
            Some(self.scale(1.0 / n))
        }
    }

    /// Smaller angle between two nonzero vectors, in [0, pi].
    ///
    /// Computed as atan2 of the orthogonal and parallel components, which
    /// stays accurate for nearly parallel vectors where acos of the dot
    /// product bottoms out near 1e-8.
    pub fn angle_to(&self, other: &Vector) -> f64 {
        let na = self.norm();
        debug_assert!(na > 0.0 && other.norm() > 0.0, "angle of zero vector");
        let u = self.scale(1.0 / na);
        let proj = other.dot(&u);
        let perp = other.add_scaled(&u, -proj);
        perp.norm().atan2(proj)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|a| a.is_finite())
    }
}

/// Hyperplane { x : normal . x = offset } with unit normal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane {
    pub normal: Vector,
    pub offset: f64,
}

impl Hyperplane {
    /// Plane through `point` with the given direction as (normalized) normal.
    pub fn through(point: &Vector, normal: &Vector) -> Result<Self> {
        let n = normal
            .normalized(1e-300)
            .ok_or_else(|| Error::DegenerateInput("zero hyperplane normal".into()))?;
        let offset = n.dot(point);
        Ok(Hyperplane { normal: n, offset })
    }

    /// Signed distance of `x` from the plane (positive on the normal side).
    pub fn signed_dist(&self, x: &Vector) -> f64 {
        self.normal.dot(x) - self.offset
    }
}

/// A finite set of points sharing one dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointSet {
    points: Vec<Vector>,
}

impl PointSet {
    pub fn new(points: Vec<Vector>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let m = points[0].dim();
        if m < 2 {
            return Err(Error::DegenerateInput(format!("dimension m = {m} < 2")));
        }
        for p in &points {
            if p.dim() != m {
                return Err(Error::DimensionMismatch { expected: m, got: p.dim() });
            }
            if !p.is_finite() {
                return Err(Error::DegenerateInput("non-finite coordinate".into()));
            }
        }
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vector> {
        self.points.iter()
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn get(&self, i: usize) -> &Vector {
        &self.points[i]
    }
}

/// Helly nonemptiness bound: the k-Hull of n points in m dimensions is
/// nonempty for all k up to ceil(n/(m+1)).
pub fn helly_bound(n: usize, m: usize) -> usize {
    n.div_ceil(m + 1)
}

/// Validates `1 <= k <= helly_bound(n, m)`.
pub fn check_helly(k: usize, n: usize, m: usize) -> Result<()> {
    let bound = helly_bound(n, m);
    if k < 1 || k > bound {
        return Err(Error::HellyBound { k, n, m, bound });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_basics() {
        let a = Vector::new(vec![3.0, 4.0]);
        let b = Vector::new(vec![1.0, 0.0]);
        assert_eq!(a.norm(), 5.0);
        assert_eq!(a.dot(&b), 3.0);
        assert_eq!(a.sub(&b).0, vec![2.0, 4.0]);
        let u = a.normalized(0.0).unwrap();
        assert!((u.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn angle_between_axes_is_right() {
        let x = Vector::new(vec![1.0, 0.0]);
        let y = Vector::new(vec![0.0, 2.0]);
        assert!((x.angle_to(&y) - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn pointset_rejects_mixed_dims() {
        let pts = vec![Vector::new(vec![0.0, 0.0]), Vector::new(vec![1.0, 2.0, 3.0])];
        assert!(matches!(
            PointSet::new(pts),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn helly_bounds() {
        assert_eq!(helly_bound(5, 2), 2);
        assert_eq!(helly_bound(7, 2), 3);
        assert_eq!(helly_bound(9, 2), 3);
        assert_eq!(helly_bound(15, 3), 4);
        assert!(check_helly(3, 6, 2).is_err());
        assert!(check_helly(2, 6, 2).is_ok());
    }

    #[test]
    fn hyperplane_signed_distance() {
        let h = Hyperplane::through(
            &Vector::new(vec![0.0, 1.0]),
            &Vector::new(vec![0.0, 2.0]),
        )
        .unwrap();
        assert!((h.signed_dist(&Vector::new(vec![5.0, 3.0])) - 2.0).abs() < 1e-12);
        assert!((h.signed_dist(&Vector::new(vec![-1.0, 0.0])) + 1.0).abs() < 1e-12);
    }
}
