//! Finitely described spectral measures of normal operators.
//!
//! A [`SpectralMeasureModel`] is a sum of atoms (eigenvalues with finite or
//! infinite multiplicity), continuous pieces carrying infinite-dimensional
//! range on every subset of positive length or area, and sequence families
//! accumulating at a limit point. The central query is `dim ran E(S)` for
//! half planes and half closed-half planes, answered exactly as a
//! [`DimClass`].

mod dim;
mod matrix;
mod real;

pub(crate) use dim::{DimBounds, Selector, Upper};
pub use dim::{dim_ran_closed, dim_ran_hchp, dim_ran_open};
pub use matrix::from_normal_matrix;
pub use real::{lambda_k_sup, pushforward, RealApproach, RealFamily, RealSpectralModel};

use crate::error::{Error, Result};
use crate::geometry::{
    convex_hull, cross, dot, is_finite_point, unit, wrap_tau, ConvexPolygon, Point,
    TolerancePolicy,
};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::fmt;
use std::ops::Add;

/// Longest explicit prefix a sequence family may carry.
pub const MAX_PREFIX: usize = 10_000;

/// Multiplicity of an atom: a positive integer or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MultRepr", into = "MultRepr")]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MultRepr {
    Count(u64),
    Word(String),
}

impl TryFrom<MultRepr> for Multiplicity {
    type Error = String;

    fn try_from(r: MultRepr) -> std::result::Result<Self, String> {
        match r {
            MultRepr::Count(0) => Err("multiplicity must be at least 1".into()),
            MultRepr::Count(n) => Ok(Multiplicity::Finite(n)),
            MultRepr::Word(w) if w == "inf" => Ok(Multiplicity::Infinite),
            MultRepr::Word(w) => Err(format!("bad multiplicity {w:?}")),
        }
    }
}

impl From<Multiplicity> for MultRepr {
    fn from(m: Multiplicity) -> Self {
        match m {
            Multiplicity::Finite(n) => MultRepr::Count(n),
            Multiplicity::Infinite => MultRepr::Word("inf".into()),
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

/// `dim ran E(S)`, collapsed to a count or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DimClass {
    Finite(u64),
    Infinite,
}

impl DimClass {
    pub const ZERO: DimClass = DimClass::Finite(0);

    /// `self ≥ k`.
    pub fn at_least(self, k: Rank) -> bool {
        match (self, k) {
            (DimClass::Infinite, _) => true,
            (DimClass::Finite(n), Rank::Finite(k)) => n >= k,
            (DimClass::Finite(_), Rank::Infinity) => false,
        }
    }

    pub fn below(self, k: Rank) -> bool {
        !self.at_least(k)
    }

    pub fn is_infinite(self) -> bool {
        self == DimClass::Infinite
    }
}

impl Add for DimClass {
    type Output = DimClass;

    fn add(self, rhs: DimClass) -> DimClass {
        match (self, rhs) {
            (DimClass::Finite(a), DimClass::Finite(b)) => DimClass::Finite(a.saturating_add(b)),
            _ => DimClass::Infinite,
        }
    }
}

impl From<Multiplicity> for DimClass {
    fn from(m: Multiplicity) -> Self {
        match m {
            Multiplicity::Finite(n) => DimClass::Finite(n),
            Multiplicity::Infinite => DimClass::Infinite,
        }
    }
}

impl fmt::Display for DimClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimClass::Finite(n) => write!(f, "{n}"),
            DimClass::Infinite => write!(f, "inf"),
        }
    }
}

/// The rank `k ∈ ℕ ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rank {
    Finite(u64),
    Infinity,
}

impl Rank {
    pub fn finite(k: u64) -> Result<Self> {
        if k == 0 {
            Err(Error::InvalidRank)
        } else {
            Ok(Rank::Finite(k))
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(k) => write!(f, "{k}"),
            Rank::Infinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Rank {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Rank::Infinity),
            t => t
                .parse::<u64>()
                .map_err(|_| Error::InvalidModel(format!("bad rank {t:?}")))
                .and_then(Rank::finite),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    #[serde(rename = "point")]
    pub location: Point,
    pub mult: Multiplicity,
}

impl Atom {
    pub fn new(location: Point, mult: Multiplicity) -> Self {
        Self { location, mult }
    }
}

/// A piece of the support carrying infinite-dimensional range on every subset
/// of positive length (segments, arcs) or area (regions).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ContinuousPiece {
    Segment {
        a: Point,
        b: Point,
    },
    /// `center + radius·e^{iθ}` for `θ ∈ [theta0, theta1]`.
    Arc {
        center: Point,
        radius: f64,
        theta0: f64,
        theta1: f64,
    },
    #[serde(rename = "polygon")]
    Region(ConvexPolygon),
}

impl ContinuousPiece {
    /// Points whose directions from an anchor are critical for half planes
    /// through it: segment endpoints, arc endpoints and polygon vertices.
    pub fn extremities(&self) -> Vec<Point> {
        match self {
            ContinuousPiece::Segment { a, b } => vec![*a, *b],
            ContinuousPiece::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => vec![
                center + unit(*theta0) * radius,
                center + unit(*theta1) * radius,
            ],
            ContinuousPiece::Region(poly) => poly.vertices().to_vec(),
        }
    }

    /// Largest modulus over the piece.
    pub fn max_modulus(&self) -> f64 {
        match self {
            ContinuousPiece::Segment { a, b } => a.norm().max(b.norm()),
            ContinuousPiece::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => {
                if center.norm() == 0.0 || arc_covers(*theta0, *theta1, center.arg()) {
                    center.norm() + radius
                } else {
                    (center + unit(*theta0) * radius)
                        .norm()
                        .max((center + unit(*theta1) * radius).norm())
                }
            }
            ContinuousPiece::Region(poly) => {
                poly.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max)
            }
        }
    }

    fn map_affine(&self, a: Point, b: Point) -> Self {
        match self {
            ContinuousPiece::Segment { a: p, b: q } => ContinuousPiece::Segment {
                a: a * p + b,
                b: a * q + b,
            },
            ContinuousPiece::Arc {
                center,
                radius,
                theta0,
                theta1,
            } => {
                let turn = a.arg();
                ContinuousPiece::Arc {
                    center: a * center + b,
                    radius: radius * a.norm(),
                    theta0: theta0 + turn,
                    theta1: theta1 + turn,
                }
            }
            ContinuousPiece::Region(poly) => {
                let pts: Vec<Point> = poly.vertices().iter().map(|v| a * v + b).collect();
                ContinuousPiece::Region(convex_hull(&pts))
            }
        }
    }
}

/// Whether angle `phi` lies in `[theta0, theta1]` modulo `2π`.
pub(crate) fn arc_covers(theta0: f64, theta1: f64, phi: f64) -> bool {
    wrap_tau(phi - theta0) <= theta1 - theta0
}

/// Side of the approach ray on which the terms of a family lie.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ApproachSide {
    /// The side of `e^{i(φ* + π/2)}`.
    Above,
    Below,
    /// Exactly on the approach ray.
    On,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyTerm {
    pub point: Point,
    pub mult: u64,
}

/// Eigenvalues accumulating at `limit`.
///
/// The terms are `limit + r_n e^{iφ*}(1 + o(1))` with `r_n ↓ 0` and
/// `φ* = approach_angle`. The first terms are listed in `prefix`; every later
/// term lies strictly closer to the limit than the last prefix term, on the
/// declared side of the approach ray, and has multiplicity `tail_mult`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceFamily {
    pub prefix: Vec<FamilyTerm>,
    pub limit: Point,
    pub approach_angle: f64,
    pub approach_side: ApproachSide,
    pub tail_mult: u64,
}

impl SequenceFamily {
    /// Unit vector along the approach ray.
    pub fn approach(&self) -> Point {
        unit(self.approach_angle)
    }

    /// Radius of the open disk around the limit that contains the tail.
    pub fn tail_radius(&self) -> f64 {
        self.prefix
            .last()
            .map_or(f64::INFINITY, |t| (t.point - self.limit).norm())
    }

    fn map_affine(&self, a: Point, b: Point) -> Self {
        Self {
            prefix: self
                .prefix
                .iter()
                .map(|t| FamilyTerm {
                    point: a * t.point + b,
                    mult: t.mult,
                })
                .collect(),
            limit: a * self.limit + b,
            approach_angle: self.approach_angle + a.arg(),
            approach_side: self.approach_side,
            tail_mult: self.tail_mult,
        }
    }

    fn validate(&self, eps: f64) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidModel(format!("sequence family: {m}")));
        if self.tail_mult == 0 {
            return bad("tail multiplicity must be at least 1");
        }
        if !is_finite_point(self.limit) || !self.approach_angle.is_finite() {
            return bad("non-finite limit or approach angle");
        }
        if self.prefix.len() > MAX_PREFIX {
            return bad("prefix exceeds 10000 terms");
        }
        let u = self.approach();
        let mut last = f64::INFINITY;
        for t in &self.prefix {
            if t.mult == 0 || !is_finite_point(t.point) {
                return bad("prefix terms need finite points and positive multiplicity");
            }
            let rel = t.point - self.limit;
            let r = rel.norm();
            if r <= eps {
                return bad("prefix term coincides with the limit");
            }
            if r >= last {
                return bad("prefix distances to the limit must strictly decrease");
            }
            last = r;
            let offset = cross(u, rel);
            let consistent = match self.approach_side {
                ApproachSide::Above => offset > -eps,
                ApproachSide::Below => offset < eps,
                ApproachSide::On => offset.abs() <= eps,
            };
            if !consistent {
                return bad("prefix term on the wrong side of the approach ray");
            }
        }
        if let Some(t) = self.prefix.last() {
            if dot(t.point - self.limit, u) < -eps {
                return bad("last prefix term points away from the approach direction");
            }
        }
        Ok(())
    }
}

/// A compactly supported spectral measure given by finitely many parts.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralMeasureModel {
    atoms: Vec<Atom>,
    pieces: Vec<ContinuousPiece>,
    families: Vec<SequenceFamily>,
    support_radius: f64,
}

impl SpectralMeasureModel {
    /// Validate and build a model. Region pieces are normalized to their
    /// convex hull.
    pub fn new(
        atoms: Vec<Atom>,
        pieces: Vec<ContinuousPiece>,
        families: Vec<SequenceFamily>,
        support_radius: f64,
        tol: &TolerancePolicy,
    ) -> Result<Self> {
        let pieces = pieces
            .into_iter()
            .map(|p| match p {
                ContinuousPiece::Region(poly) => {
                    ContinuousPiece::Region(convex_hull(poly.vertices()))
                }
                other => other,
            })
            .collect();
        let model = Self {
            atoms,
            pieces,
            families,
            support_radius,
        };
        model.validate(tol)?;
        Ok(model)
    }

    /// A model made of atoms only, with `support_radius = max |z| + 1`.
    pub fn from_atoms(atoms: Vec<Atom>, tol: &TolerancePolicy) -> Result<Self> {
        let r = atoms.iter().map(|a| a.location.norm()).fold(0.0, f64::max) + 1.0;
        Self::new(atoms, Vec::new(), Vec::new(), r, tol)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn pieces(&self) -> &[ContinuousPiece] {
        &self.pieces
    }

    pub fn families(&self) -> &[SequenceFamily] {
        &self.families
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    /// `dim ran E(ℂ)`.
    pub fn total_dimension(&self) -> DimClass {
        if !self.pieces.is_empty() || !self.families.is_empty() {
            return DimClass::Infinite;
        }
        self.atoms
            .iter()
            .fold(DimClass::ZERO, |acc, a| acc + a.mult.into())
    }

    /// Largest modulus over the support.
    pub fn max_modulus(&self) -> f64 {
        let atoms = self.atoms.iter().map(|a| a.location.norm());
        let pieces = self.pieces.iter().map(|p| p.max_modulus());
        let families = self.families.iter().flat_map(|f| {
            f.prefix
                .iter()
                .map(|t| t.point.norm())
                .chain(std::iter::once(f.limit.norm()))
        });
        atoms.chain(pieces).chain(families).fold(0.0, f64::max)
    }

    /// Every point whose direction from an anchor is critical: atoms, piece
    /// extremities, family prefix points and limits.
    pub fn feature_points(&self) -> Vec<Point> {
        let mut pts: Vec<Point> = self.atoms.iter().map(|a| a.location).collect();
        for p in &self.pieces {
            pts.extend(p.extremities());
        }
        for f in &self.families {
            pts.extend(f.prefix.iter().map(|t| t.point));
            pts.push(f.limit);
        }
        pts
    }

    /// Image of the model under `z ↦ a·z + b`, `a ≠ 0`.
    pub fn map_affine(&self, a: Point, b: Point, tol: &TolerancePolicy) -> Result<Self> {
        if a.norm() == 0.0 || !is_finite_point(a) || !is_finite_point(b) {
            return Err(Error::InvalidModel("affine map needs a finite a ≠ 0".into()));
        }
        Self::new(
            self.atoms
                .iter()
                .map(|at| Atom::new(a * at.location + b, at.mult))
                .collect(),
            self.pieces.iter().map(|p| p.map_affine(a, b)).collect(),
            self.families.iter().map(|f| f.map_affine(a, b)).collect(),
            self.support_radius * a.norm() + b.norm(),
            tol,
        )
    }

    fn validate(&self, tol: &TolerancePolicy) -> Result<()> {
        let eps = tol.eps_geom;
        let bad = |m: String| Err(Error::InvalidModel(m));
        if !(self.support_radius.is_finite() && self.support_radius > 0.0) {
            return bad("support_radius must be positive and finite".into());
        }
        for a in &self.atoms {
            if !is_finite_point(a.location) {
                return bad("atom with non-finite location".into());
            }
            if a.mult == Multiplicity::Finite(0) {
                return bad("atom with zero multiplicity".into());
            }
        }
        for p in &self.pieces {
            match p {
                ContinuousPiece::Segment { a, b } => {
                    if !is_finite_point(*a) || !is_finite_point(*b) {
                        return bad("segment with non-finite endpoint".into());
                    }
                    if (a - b).norm() <= eps {
                        return bad("segment of zero length".into());
                    }
                }
                ContinuousPiece::Arc {
                    center,
                    radius,
                    theta0,
                    theta1,
                } => {
                    let finite = is_finite_point(*center)
                        && radius.is_finite()
                        && theta0.is_finite()
                        && theta1.is_finite();
                    if !finite {
                        return bad("arc with non-finite data".into());
                    }
                    if *radius <= eps {
                        return bad("arc radius must be positive".into());
                    }
                    let width = theta1 - theta0;
                    if !(width > 0.0 && width <= TAU + 1e-12) {
                        return bad("arc needs theta0 < theta1 ≤ theta0 + 2π".into());
                    }
                }
                ContinuousPiece::Region(poly) => {
                    if poly.vertices().iter().any(|v| !is_finite_point(*v)) {
                        return bad("region with non-finite vertex".into());
                    }
                    if poly.area() <= eps {
                        return bad("region of zero area".into());
                    }
                }
            }
        }
        for f in &self.families {
            f.validate(eps)?;
        }
        let reach = self.max_modulus();
        if reach > self.support_radius + eps {
            return bad(format!(
                "support reaches modulus {reach} beyond support_radius {}",
                self.support_radius
            ));
        }
        Ok(())
    }
}
