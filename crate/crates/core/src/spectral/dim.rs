use super::{arc_covers, ApproachSide, ContinuousPiece, DimClass, Rank, SequenceFamily, SpectralMeasureModel};
use crate::error::{Error, Result};
use crate::geometry::{
    dot, sign_with, ClosedHalfPlane, HalfClosedHalfPlane, OpenHalfPlane, Point, TolerancePolicy,
    Verdict,
};

/// What part of the boundary line belongs to the selected set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Boundary {
    /// The closed ray from the anchor in this (unit) direction.
    Ray(Point),
    Whole,
    Nothing,
}

/// An open half plane `{⟨z − anchor, normal⟩ > 0}` plus a portion of its
/// boundary line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Selector {
    pub anchor: Point,
    pub normal: Point,
    pub boundary: Boundary,
}

impl From<&HalfClosedHalfPlane> for Selector {
    fn from(h: &HalfClosedHalfPlane) -> Self {
        Self {
            anchor: h.anchor,
            normal: h.normal(),
            boundary: Boundary::Ray(h.ray_direction()),
        }
    }
}

impl From<&ClosedHalfPlane> for Selector {
    fn from(p: &ClosedHalfPlane) -> Self {
        Self {
            anchor: p.anchor,
            normal: p.normal(),
            boundary: Boundary::Whole,
        }
    }
}

impl From<&OpenHalfPlane> for Selector {
    fn from(p: &OpenHalfPlane) -> Self {
        Self {
            anchor: p.anchor,
            normal: p.normal(),
            boundary: Boundary::Nothing,
        }
    }
}

/// Upper end of a dimension interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Upper {
    At(DimClass),
    /// Finite, but with no known bound.
    SomeFinite,
}

/// Certified lower and upper bounds on `dim ran E(S)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct DimBounds {
    pub lo: DimClass,
    pub hi: Upper,
}

impl DimBounds {
    pub const ZERO: DimBounds = DimBounds {
        lo: DimClass::ZERO,
        hi: Upper::At(DimClass::ZERO),
    };

    fn add_certain(&mut self, d: DimClass) {
        self.lo = self.lo + d;
        self.add_upper(d);
    }

    fn add_upper(&mut self, d: DimClass) {
        self.hi = match (self.hi, d) {
            (Upper::At(a), _) => Upper::At(a + d),
            (Upper::SomeFinite, DimClass::Infinite) => Upper::At(DimClass::Infinite),
            (Upper::SomeFinite, DimClass::Finite(_)) => Upper::SomeFinite,
        };
    }

    fn add_unknown_finite(&mut self) {
        if let Upper::At(DimClass::Finite(_)) = self.hi {
            self.hi = Upper::SomeFinite;
        }
    }

    fn add_verdict(&mut self, v: Verdict, d: DimClass) {
        match v {
            Verdict::In => self.add_certain(d),
            Verdict::Out => {}
            Verdict::Uncertain => self.add_upper(d),
        }
    }

    pub fn exact(&self) -> Option<DimClass> {
        (self.hi == Upper::At(self.lo)).then_some(self.lo)
    }

    pub fn certainly_below(&self, k: Rank) -> bool {
        match self.hi {
            Upper::At(d) => d.below(k),
            Upper::SomeFinite => k == Rank::Infinity,
        }
    }

    pub fn certainly_at_least(&self, k: Rank) -> bool {
        self.lo.at_least(k)
    }

    /// Ordering key for choosing the smallest witness: the upper bound, with
    /// an unknown finite bound ranked just below infinity.
    pub fn rank_key(&self) -> (u8, u64) {
        match self.hi {
            Upper::At(DimClass::Finite(n)) => (0, n),
            Upper::SomeFinite => (1, 0),
            Upper::At(DimClass::Infinite) => (2, 0),
        }
    }
}

impl Selector {
    pub fn point(&self, z: Point, eps: f64) -> Verdict {
        let rel = z - self.anchor;
        let s = dot(rel, self.normal);
        match self.boundary {
            Boundary::Whole => {
                if s >= -eps {
                    Verdict::In
                } else {
                    Verdict::Out
                }
            }
            Boundary::Nothing => {
                if s > eps {
                    Verdict::In
                } else {
                    Verdict::Out
                }
            }
            Boundary::Ray(r) => {
                if rel.norm() <= eps {
                    return Verdict::In;
                }
                match sign_with(s, eps) {
                    1 => Verdict::In,
                    -1 => Verdict::Out,
                    _ => match sign_with(dot(rel, r), eps) {
                        1 => Verdict::In,
                        -1 => Verdict::Out,
                        _ => Verdict::Uncertain,
                    },
                }
            }
        }
    }

    fn piece(&self, piece: &ContinuousPiece, eps: f64) -> DimClass {
        let s = |z: Point| dot(z - self.anchor, self.normal);
        let positive = match piece {
            ContinuousPiece::Segment { a, b } => {
                let (sa, sb) = (s(*a), s(*b));
                if sa.max(sb) > eps {
                    true
                } else if sa.abs() <= eps && sb.abs() <= eps {
                    match self.boundary {
                        Boundary::Whole => true,
                        Boundary::Nothing => false,
                        Boundary::Ray(r) => {
                            let ta = dot(a - self.anchor, r);
                            let tb = dot(b - self.anchor, r);
                            ta.max(tb) - ta.min(tb).max(0.0) > eps
                        }
                    }
                } else {
                    false
                }
            }
            ContinuousPiece::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => {
                let phi = self.normal.arg();
                let reach = if arc_covers(*theta0, *theta1, phi) {
                    1.0
                } else {
                    (theta0 - phi).cos().max((theta1 - phi).cos())
                };
                s(*center) + radius * reach > eps
            }
            ContinuousPiece::Region(poly) => poly.vertices().iter().any(|&v| s(v) > eps),
        };
        if positive {
            DimClass::Infinite
        } else {
            DimClass::ZERO
        }
    }

    fn family(&self, f: &SequenceFamily, eps: f64, out: &mut DimBounds) {
        for t in &f.prefix {
            out.add_verdict(self.point(t.point, eps), DimClass::Finite(t.mult));
        }
        let l = f.limit;
        let s_l = dot(l - self.anchor, self.normal);
        if s_l > eps {
            out.add_certain(DimClass::Infinite);
            return;
        }
        if s_l < -eps {
            if f.tail_radius() < -s_l - eps {
                return;
            }
            out.add_unknown_finite();
            return;
        }
        let u = f.approach();
        let c = dot(u, self.normal);
        let inside = if c.abs() > eps {
            Verdict::from_sign(c)
        } else {
            match f.approach_side {
                ApproachSide::Above => Verdict::from_sign(dot(Point::i() * u, self.normal)),
                ApproachSide::Below => Verdict::from_sign(-dot(Point::i() * u, self.normal)),
                ApproachSide::On => match self.boundary {
                    Boundary::Whole => Verdict::In,
                    Boundary::Nothing => Verdict::Out,
                    Boundary::Ray(r) => {
                        if (l - self.anchor).norm() <= eps {
                            Verdict::from_sign(dot(u, r))
                        } else {
                            match sign_with(dot(l - self.anchor, r), eps) {
                                1 => Verdict::In,
                                -1 => Verdict::Out,
                                _ => Verdict::Uncertain,
                            }
                        }
                    }
                },
            }
        };
        out.add_verdict(inside, DimClass::Infinite);
    }

    /// Bounds on `dim ran E(self)` for `model`.
    pub fn bounds(&self, model: &SpectralMeasureModel, tol: &TolerancePolicy) -> DimBounds {
        let eps = tol.eps_geom;
        let mut out = DimBounds::ZERO;
        for a in model.atoms() {
            out.add_verdict(self.point(a.location, eps), a.mult.into());
        }
        for p in model.pieces() {
            out.add_certain(self.piece(p, eps));
        }
        for f in model.families() {
            self.family(f, eps, &mut out);
        }
        out
    }

    fn exact(&self, model: &SpectralMeasureModel, tol: &TolerancePolicy) -> Result<DimClass> {
        let b = self.bounds(model, tol);
        b.exact().ok_or_else(|| {
            Error::UncertainGeometry(format!(
                "dimension is only known to lie between {} and {}",
                b.lo,
                match b.hi {
                    Upper::At(d) => d.to_string(),
                    Upper::SomeFinite => "some finite value".into(),
                }
            ))
        })
    }
}

impl Verdict {
    fn from_sign(x: f64) -> Verdict {
        if x > 0.0 {
            Verdict::In
        } else {
            Verdict::Out
        }
    }
}

/// `dim ran E(H)` for a half closed-half plane.
pub fn dim_ran_hchp(
    model: &SpectralMeasureModel,
    h: &HalfClosedHalfPlane,
    tol: &TolerancePolicy,
) -> Result<DimClass> {
    Selector::from(h).exact(model, tol)
}

/// `dim ran E(P)` for a closed half plane, boundary line included.
pub fn dim_ran_closed(
    model: &SpectralMeasureModel,
    p: &ClosedHalfPlane,
    tol: &TolerancePolicy,
) -> Result<DimClass> {
    Selector::from(p).exact(model, tol)
}

/// `dim ran E(P)` for an open half plane.
pub fn dim_ran_open(
    model: &SpectralMeasureModel,
    p: &OpenHalfPlane,
    tol: &TolerancePolicy,
) -> Result<DimClass> {
    Selector::from(p).exact(model, tol)
}
