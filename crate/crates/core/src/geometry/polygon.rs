use super::{cross, dot, segment_distance, ClosedHalfPlane, Point, TolerancePolicy};
use serde::{Deserialize, Serialize};

/// A closed convex polygon with counterclockwise vertices.
///
/// Degenerate cases are first-class: no vertices (empty set), one vertex (a
/// point) or two vertices (a segment).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl ConvexPolygon {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Axis-aligned square `[-r, r]²`.
    pub fn square(r: f64) -> Self {
        Self {
            vertices: vec![
                Point::new(-r, -r),
                Point::new(r, -r),
                Point::new(r, r),
                Point::new(-r, r),
            ],
        }
    }

    /// Takes the convex hull of `points`; the input order does not matter.
    pub fn from_points(points: &[Point]) -> Self {
        convex_hull(points)
    }

    /// Wrap vertices already in counterclockwise convex position.
    pub(crate) fn from_hull_vertices(vertices: Vec<Point>) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Boundary edges. A segment has one edge, a point none.
    pub fn edges(&self) -> Vec<(Point, Point)> {
        let v = &self.vertices;
        match v.len() {
            0 | 1 => Vec::new(),
            2 => vec![(v[0], v[1])],
            n => (0..n).map(|i| (v[i], v[(i + 1) % n])).collect(),
        }
    }

    pub fn area(&self) -> f64 {
        let v = &self.vertices;
        if v.len() < 3 {
            return 0.0;
        }
        let n = v.len();
        0.5 * (0..n).map(|i| cross(v[i], v[(i + 1) % n])).sum::<f64>()
    }

    /// Distance to the boundary (for degenerate polygons, to the set itself).
    pub fn boundary_distance(&self, p: Point) -> f64 {
        match self.vertices.len() {
            0 => f64::INFINITY,
            1 => (p - self.vertices[0]).norm(),
            _ => self
                .edges()
                .into_iter()
                .map(|(a, b)| segment_distance(p, a, b))
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Negative inside, zero on the boundary, positive distance outside.
    pub fn signed_distance(&self, p: Point) -> f64 {
        let d = self.boundary_distance(p);
        if self.vertices.len() >= 3 && self.strictly_inside(p) {
            -d
        } else {
            d
        }
    }

    fn strictly_inside(&self, p: Point) -> bool {
        self.edges()
            .into_iter()
            .all(|(a, b)| cross(b - a, p - a) > 0.0)
    }

    /// Membership of the closed polygon inflated by `slack`.
    pub fn contains(&self, p: Point, slack: f64) -> bool {
        self.signed_distance(p) <= slack
    }

    /// Distance from `p` to the polygon as a set (zero inside).
    pub fn distance(&self, p: Point) -> f64 {
        self.signed_distance(p).max(0.0)
    }

    /// Symmetric Hausdorff distance between two convex polygons.
    pub fn hausdorff(&self, other: &ConvexPolygon) -> f64 {
        match (self.is_empty(), other.is_empty()) {
            (true, true) => 0.0,
            (true, false) | (false, true) => f64::INFINITY,
            _ => {
                let one = |a: &ConvexPolygon, b: &ConvexPolygon| {
                    a.vertices
                        .iter()
                        .map(|&v| b.distance(v))
                        .fold(0.0, f64::max)
                };
                one(self, other).max(one(other, self))
            }
        }
    }

    /// `max ⟨v, u⟩` over the vertices.
    pub fn support(&self, u: Point) -> Option<f64> {
        self.vertices
            .iter()
            .map(|&v| dot(v, u))
            .reduce(f64::max)
    }

    pub fn centroid(&self) -> Option<Point> {
        if self.vertices.is_empty() {
            return None;
        }
        let n = self.vertices.len() as f64;
        Some(self.vertices.iter().sum::<Point>() / n)
    }

    /// Vertices followed by `per_edge` evenly spaced interior points of every
    /// edge, in boundary order.
    pub fn boundary_samples(&self, per_edge: usize) -> Vec<Point> {
        let edges = self.edges();
        if edges.is_empty() {
            return self.vertices.clone();
        }
        let mut out = Vec::with_capacity(edges.len() * (per_edge + 1) + 1);
        for &(a, b) in &edges {
            out.push(a);
            for j in 1..=per_edge {
                let t = j as f64 / (per_edge + 1) as f64;
                out.push(a + (b - a) * t);
            }
        }
        if self.vertices.len() == 2 {
            out.push(self.vertices[1]);
        }
        out
    }

    /// Clip against a closed half plane; points within `eps_geom` outside
    /// the boundary are kept.
    pub fn clip(&self, plane: &ClosedHalfPlane, tol: &TolerancePolicy) -> ConvexPolygon {
        let eps = tol.eps_geom;
        let v = &self.vertices;
        if v.is_empty() {
            return self.clone();
        }
        let s: Vec<f64> = v.iter().map(|&p| plane.signed_distance(p)).collect();
        if s.iter().all(|&x| x >= -eps) {
            return self.clone();
        }
        if s.iter().all(|&x| x < -eps) {
            return ConvexPolygon::empty();
        }
        let n = v.len();
        let mut out = Vec::with_capacity(n + 2);
        for i in 0..n {
            let j = (i + 1) % n;
            let (a, b) = (v[i], v[j]);
            let (sa, sb) = (s[i], s[j]);
            let a_in = sa >= -eps;
            let b_in = sb >= -eps;
            if a_in {
                out.push(a);
            }
            if a_in != b_in && i != j {
                let t = (sa / (sa - sb)).clamp(0.0, 1.0);
                out.push(a + (b - a) * t);
            }
        }
        convex_hull_tol(&out, eps)
    }
}

/// Smallest closed convex polygon containing `points`.
pub fn convex_hull(points: &[Point]) -> ConvexPolygon {
    let scale = points
        .iter()
        .map(|p| p.norm())
        .fold(1.0_f64, f64::max);
    convex_hull_tol(points, 1e-13 * scale)
}

/// Monotone-chain hull that drops vertices within `eps` of the line through
/// their neighbours, and collapses clusters within `eps` of each other.
pub(crate) fn convex_hull_tol(points: &[Point], eps: f64) -> ConvexPolygon {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup_by(|a, b| (*a - *b).norm() <= eps);
    if pts.len() <= 1 {
        return ConvexPolygon { vertices: pts };
    }

    let turn_is_left = |o: Point, a: Point, p: Point| {
        let base = (p - o).norm();
        cross(a - o, p - o) > eps * base.max(f64::MIN_POSITIVE)
    };

    let mut lower: Vec<Point> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && !turn_is_left(lower[lower.len() - 2], lower[lower.len() - 1], p) {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && !turn_is_left(upper[upper.len() - 2], upper[upper.len() - 1], p) {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);

    let mut hull = lower;
    hull.dedup_by(|a, b| (*a - *b).norm() <= eps);
    if hull.len() > 1 && (hull[0] - hull[hull.len() - 1]).norm() <= eps {
        hull.pop();
    }
    if hull.len() == 1 {
        // every point collapsed onto a short segment shorter than eps
        let first = pts[0];
        let last = pts[pts.len() - 1];
        if (last - first).norm() > eps {
            hull = vec![first, last];
        }
    }
    ConvexPolygon { vertices: hull }
}

/// `box(±bound) ∩ ⋂ planes`, empty when the intersection is empty.
pub fn halfplane_intersection(
    planes: &[ClosedHalfPlane],
    bound: f64,
    tol: &TolerancePolicy,
) -> ConvexPolygon {
    planes
        .iter()
        .fold(ConvexPolygon::square(bound), |poly, plane| {
            if poly.is_empty() {
                poly
            } else {
                poly.clip(plane, tol)
            }
        })
}
