//! Planar primitives with tolerance-aware sign tests.
//!
//! Points of the complex plane are plain [`Complex64`] values. Every predicate
//! that compares a signed quantity against zero goes through a
//! [`TolerancePolicy`], and ties within `eps_geom` are surfaced as
//! [`Verdict::Uncertain`] instead of being broken silently.

mod halfplane;
mod polygon;

pub use halfplane::{ClosedHalfPlane, HalfClosedHalfPlane, OpenHalfPlane, RaySign};
pub use polygon::{convex_hull, halfplane_intersection, ConvexPolygon};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// A point of the complex plane.
pub type Point = Complex64;

/// Three-valued outcome of a membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    In,
    Out,
    Uncertain,
}

impl Verdict {
    pub fn is_certain(self) -> bool {
        self != Verdict::Uncertain
    }
}

/// Numerical tolerances shared by every layer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TolerancePolicy {
    /// Sign tests of signed distances.
    pub eps_geom: f64,
    /// Eigenvalue clustering and normality checks.
    pub eps_eig: f64,
    /// Unitarity and compression residuals.
    pub eps_unitary: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            eps_geom: 1e-9,
            eps_eig: 1e-8,
            eps_unitary: 1e-10,
        }
    }
}

impl TolerancePolicy {
    pub fn new(eps_geom: f64, eps_eig: f64, eps_unitary: f64) -> Option<Self> {
        let all_positive = [eps_geom, eps_eig, eps_unitary]
            .iter()
            .all(|e| e.is_finite() && *e > 0.0);
        all_positive.then_some(Self {
            eps_geom,
            eps_eig,
            eps_unitary,
        })
    }
}

/// Euclidean inner product of two points viewed as vectors of R².
#[inline]
pub fn dot(a: Point, b: Point) -> f64 {
    a.re * b.re + a.im * b.im
}

/// z-component of the cross product `a × b`.
#[inline]
pub fn cross(a: Point, b: Point) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Unit vector at `angle`.
#[inline]
pub fn unit(angle: f64) -> Point {
    Complex64::new(angle.cos(), angle.sin())
}

/// Reduce an angle to `[0, 2π)`.
pub fn wrap_tau(angle: f64) -> f64 {
    let r = angle.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Reduce a line direction to `[0, π)`.
pub fn wrap_pi(angle: f64) -> f64 {
    let r = angle.rem_euclid(PI);
    if r >= PI {
        0.0
    } else {
        r
    }
}

pub fn is_finite_point(p: Point) -> bool {
    p.re.is_finite() && p.im.is_finite()
}

/// Sign of `value` with a dead zone of half-width `eps`.
#[inline]
pub(crate) fn sign_with(value: f64, eps: f64) -> i8 {
    if value > eps {
        1
    } else if value < -eps {
        -1
    } else {
        0
    }
}

/// Distance from `p` to the closed segment `[a, b]`.
pub fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (dot(p - a, ab) / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_ranges() {
        assert_eq!(wrap_tau(-0.5 * PI), 1.5 * PI);
        assert!(wrap_tau(TAU) < 1e-12);
        assert!((wrap_pi(1.5 * PI) - 0.5 * PI).abs() < 1e-15);
        assert_eq!(wrap_pi(-0.0), 0.0);
    }

    #[test]
    fn tolerance_rejects_nonpositive() {
        assert!(TolerancePolicy::new(0.0, 1e-8, 1e-10).is_none());
        assert!(TolerancePolicy::new(1e-9, f64::NAN, 1e-10).is_none());
        assert!(TolerancePolicy::new(1e-9, 1e-8, 1e-10).is_some());
    }

    #[test]
    fn segment_distance_cases() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(1.0, 0.0);
        assert_eq!(segment_distance(Point::new(0.5, 2.0), a, b), 2.0);
        assert_eq!(segment_distance(Point::new(-3.0, 4.0), a, b), 5.0);
        assert_eq!(segment_distance(Point::new(3.0, 0.0), a, a), 3.0);
    }
}
