use super::{dot, sign_with, unit, wrap_tau, Point, TolerancePolicy, Verdict};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

/// Which way the included boundary ray of a half closed-half plane points,
/// relative to the boundary direction `d = -i·n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RaySign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl RaySign {
    pub fn value(self) -> f64 {
        match self {
            RaySign::Plus => 1.0,
            RaySign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            RaySign::Plus => RaySign::Minus,
            RaySign::Minus => RaySign::Plus,
        }
    }
}

/// An open half plane together with one closed ray of its boundary line.
///
/// The open side is `{z : ⟨z − anchor, n⟩ > 0}` with `n = e^{i·normal_angle}`.
/// The boundary direction is `d = −i·n` (n turned clockwise) and the included
/// ray is `anchor + t·ray_sign·d`, `t ≥ 0`. With this orientation
/// `(0, π/2, +)` is `{Im > 0} ∪ [0, ∞)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfClosedHalfPlane {
    pub anchor: Point,
    pub normal_angle: f64,
    pub ray_sign: RaySign,
}

impl HalfClosedHalfPlane {
    pub fn new(anchor: Point, normal_angle: f64, ray_sign: RaySign) -> Self {
        Self {
            anchor,
            normal_angle: wrap_tau(normal_angle),
            ray_sign,
        }
    }

    /// Build the half closed-half plane at `anchor` whose open side has inward
    /// normal `normal` and whose ray points along `ray_direction`.
    ///
    /// `ray_direction` must be (numerically) parallel to the boundary line.
    pub fn with_ray(anchor: Point, normal_angle: f64, ray_direction: Point) -> Self {
        let d = -Point::i() * unit(normal_angle);
        let sign = if dot(d, ray_direction) >= 0.0 {
            RaySign::Plus
        } else {
            RaySign::Minus
        };
        Self::new(anchor, normal_angle, sign)
    }

    /// The four half closed-half planes at `anchor` generated by the line with
    /// direction angle `line_angle`.
    pub fn variants(anchor: Point, line_angle: f64) -> [Self; 4] {
        let phi = line_angle + FRAC_PI_2;
        [
            Self::new(anchor, phi, RaySign::Plus),
            Self::new(anchor, phi, RaySign::Minus),
            Self::new(anchor, phi + PI, RaySign::Plus),
            Self::new(anchor, phi + PI, RaySign::Minus),
        ]
    }

    pub fn normal(&self) -> Point {
        unit(self.normal_angle)
    }

    /// Boundary direction `d = −i·n`.
    pub fn boundary_direction(&self) -> Point {
        -Point::i() * self.normal()
    }

    pub fn ray_direction(&self) -> Point {
        self.boundary_direction() * self.ray_sign.value()
    }

    /// Signed distance of `z` to the boundary line, positive on the open side.
    pub fn signed_distance(&self, z: Point) -> f64 {
        dot(z - self.anchor, self.normal())
    }

    /// Coordinate of `z` along the included ray.
    pub fn along_ray(&self, z: Point) -> f64 {
        dot(z - self.anchor, self.ray_direction())
    }

    /// Membership with tolerance.
    ///
    /// Points within `eps_geom` of the anchor are `In`. Points within
    /// `eps_geom` of the boundary line are decided by the ray coordinate; if
    /// that too is inside the dead zone the answer is `Uncertain`.
    pub fn member(&self, z: Point, tol: &TolerancePolicy) -> Verdict {
        let eps = tol.eps_geom;
        if (z - self.anchor).norm() <= eps {
            return Verdict::In;
        }
        match sign_with(self.signed_distance(z), eps) {
            1 => Verdict::In,
            -1 => Verdict::Out,
            _ => match sign_with(self.along_ray(z), eps) {
                1 => Verdict::In,
                -1 => Verdict::Out,
                _ => Verdict::Uncertain,
            },
        }
    }

    pub fn open_side(&self) -> OpenHalfPlane {
        OpenHalfPlane {
            anchor: self.anchor,
            normal_angle: self.normal_angle,
        }
    }

    pub fn closure(&self) -> ClosedHalfPlane {
        ClosedHalfPlane {
            anchor: self.anchor,
            normal_angle: self.normal_angle,
        }
    }

    /// The complementary half closed-half plane: together with `self` it
    /// covers the plane and the two share only the anchor.
    pub fn opposite(&self) -> Self {
        Self::new(self.anchor, self.normal_angle + PI, self.ray_sign)
    }
}

impl fmt::Display for HalfClosedHalfPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normal();
        let r = self.ray_direction();
        write!(
            f,
            "{{⟨z − ({:.6}, {:.6}), ({:.6}, {:.6})⟩ > 0}} ∪ ray from ({:.6}, {:.6}) toward ({:.6}, {:.6})",
            self.anchor.re, self.anchor.im, n.re, n.im, self.anchor.re, self.anchor.im, r.re, r.im
        )
    }
}

/// `{z : ⟨z − anchor, n⟩ ≥ 0}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedHalfPlane {
    pub anchor: Point,
    pub normal_angle: f64,
}

impl ClosedHalfPlane {
    pub fn new(anchor: Point, normal_angle: f64) -> Self {
        Self {
            anchor,
            normal_angle: wrap_tau(normal_angle),
        }
    }

    /// `{µ : Re(e^{iξ}·µ) ≤ h}`.
    pub fn support(xi: f64, h: f64) -> Self {
        let outward = unit(-xi);
        Self::new(outward * h, PI - xi)
    }

    pub fn normal(&self) -> Point {
        unit(self.normal_angle)
    }

    pub fn signed_distance(&self, z: Point) -> f64 {
        dot(z - self.anchor, self.normal())
    }

    /// The band `|signed distance| ≤ eps_geom` counts as the boundary line,
    /// which a closed half plane contains.
    pub fn contains(&self, z: Point, tol: &TolerancePolicy) -> bool {
        self.signed_distance(z) >= -tol.eps_geom
    }

    pub fn interior(&self) -> OpenHalfPlane {
        OpenHalfPlane {
            anchor: self.anchor,
            normal_angle: self.normal_angle,
        }
    }
}

/// `{z : ⟨z − anchor, n⟩ > 0}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OpenHalfPlane {
    pub anchor: Point,
    pub normal_angle: f64,
}

impl OpenHalfPlane {
    pub fn new(anchor: Point, normal_angle: f64) -> Self {
        Self {
            anchor,
            normal_angle: wrap_tau(normal_angle),
        }
    }

    pub fn normal(&self) -> Point {
        unit(self.normal_angle)
    }

    pub fn signed_distance(&self, z: Point) -> f64 {
        dot(z - self.anchor, self.normal())
    }

    pub fn contains(&self, z: Point, tol: &TolerancePolicy) -> bool {
        self.signed_distance(z) > tol.eps_geom
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn p(re: f64, im: f64) -> Point {
        Point::new(re, im)
    }

    #[test]
    fn upper_half_with_positive_ray() {
        let tol = TolerancePolicy::default();
        let h = HalfClosedHalfPlane::new(p(0.0, 0.0), FRAC_PI_2, RaySign::Plus);
        assert_eq!(h.member(p(0.0, 1.0), &tol), Verdict::In);
        assert_eq!(h.member(p(-1.0, 0.0), &tol), Verdict::Out);
        assert_eq!(h.member(p(0.5, 0.0), &tol), Verdict::In);
        assert_eq!(h.member(p(0.0, 0.0), &tol), Verdict::In);
        assert_eq!(h.member(p(3.0, -1e-3), &tol), Verdict::Out);
    }

    #[test]
    fn hchp_at_orientations() {
        let tol = TolerancePolicy::default();
        let minus = HalfClosedHalfPlane::new(p(0.0, 0.0), FRAC_PI_2, RaySign::Minus);
        assert_eq!(minus.member(p(-2.0, 0.0), &tol), Verdict::In);
        assert_eq!(minus.member(p(2.0, 0.0), &tol), Verdict::Out);
        assert_eq!(minus.member(p(0.0, 0.3), &tol), Verdict::In);

        let lower = HalfClosedHalfPlane::new(p(0.0, 0.0), 1.5 * PI, RaySign::Plus);
        assert_eq!(lower.member(p(0.0, -1.0), &tol), Verdict::In);
        assert_eq!(lower.member(p(-2.0, 0.0), &tol), Verdict::In);
        assert_eq!(lower.member(p(2.0, 0.0), &tol), Verdict::Out);
        assert_eq!(lower.member(p(0.0, 1.0), &tol), Verdict::Out);
    }

    #[test]
    fn uncertain_only_near_anchor_on_line() {
        let tol = TolerancePolicy::default();
        let h = HalfClosedHalfPlane::new(p(0.0, 0.0), FRAC_PI_2, RaySign::Plus);
        assert_eq!(h.member(p(-0.9e-9, 0.9e-9), &tol), Verdict::Uncertain);
        assert_eq!(h.member(p(1e-10, 1e-10), &tol), Verdict::In);
        // inside the line band the ray decides
        assert_eq!(h.member(p(1.0, -5e-10), &tol), Verdict::In);
        assert_eq!(h.member(p(-1.0, 5e-10), &tol), Verdict::Out);
    }

    #[test]
    fn with_ray_picks_matching_sign() {
        let h = HalfClosedHalfPlane::with_ray(p(0.5, 0.0), 1.5 * PI, p(1.0, 0.0));
        let tol = TolerancePolicy::default();
        assert_eq!(h.member(p(0.9, 0.0), &tol), Verdict::In);
        assert_eq!(h.member(p(0.0, 0.0), &tol), Verdict::Out);
        assert_eq!(h.member(p(0.0, -0.1), &tol), Verdict::In);
    }

    #[test]
    fn support_plane_matches_inequality() {
        let tol = TolerancePolicy::default();
        let xi = 0.7;
        let plane = ClosedHalfPlane::support(xi, 0.3);
        for z in [p(0.1, 0.2), p(-1.0, 2.0), p(2.0, -0.5), p(0.9, 0.9)] {
            let lhs = (unit(xi) * z).re;
            assert_eq!(plane.contains(z, &tol), lhs <= 0.3 + 1e-12, "{z}");
        }
    }

    #[test]
    fn opposite_pairs_partition_the_plane() {
        let tol = TolerancePolicy::default();
        let h = HalfClosedHalfPlane::new(p(0.2, -0.1), 0.4, RaySign::Minus);
        let g = h.opposite();
        for k in 0..50 {
            let z = p(0.2, -0.1) + unit(k as f64 * 0.37) * (0.1 + k as f64 * 0.01);
            let a = h.member(z, &tol) == Verdict::In;
            let b = g.member(z, &tol) == Verdict::In;
            assert!(a ^ b, "{z}");
        }
        assert_eq!(g.member(h.anchor, &tol), Verdict::In);
    }
}
