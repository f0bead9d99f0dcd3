//! Membership, boundary classification and region reconstruction for the
//! higher-rank numerical range `Λ_k(T)` of a normal operator.
//!
//! A point `λ` belongs to `Λ_k(T)` exactly when every half closed-half plane
//! anchored at `λ` carries spectral dimension at least `k`. For a fixed
//! anchor that dimension is piecewise constant in the direction of the
//! boundary line, with breakpoints only at directions towards atoms, piece
//! extremities, family points, arc tangents and family approach directions.
//! Testing those directions, the midpoints between them and a fixed grid
//! therefore decides membership.

use crate::error::{Error, Result};
use crate::geometry::{
    convex_hull, halfplane_intersection, unit, wrap_pi, ClosedHalfPlane, ConvexPolygon,
    HalfClosedHalfPlane, OpenHalfPlane, Point, TolerancePolicy, Verdict,
};
use crate::linalg::{check_square, commutator_residual, hermitian_eigenvalues, normal_eigen, rotated_real_part, CMatrix};
use crate::spectral::{
    lambda_k_sup, pushforward, ContinuousPiece, DimBounds, DimClass, Selector,
    SpectralMeasureModel, Upper,
};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

pub use crate::spectral::Rank;

/// Number of evenly spaced fallback directions added to every sweep.
pub const FALLBACK_DIRECTIONS: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct MembershipVerdict {
    pub verdict: Verdict,
    /// For `Out`: a half closed-half plane at `λ` with `dim ran E(H) < k`.
    pub witness: Option<HalfClosedHalfPlane>,
    /// Upper bound on `dim ran E(witness)`; exact unless the model leaves a
    /// tail unresolved.
    pub witness_dim: Option<DimClass>,
}

impl MembershipVerdict {
    fn uncertain() -> Self {
        Self {
            verdict: Verdict::Uncertain,
            witness: None,
            witness_dim: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportSample {
    pub xi: f64,
    pub h: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundarySample {
    pub point: Point,
    pub verdict: Verdict,
}

/// Closure-level reconstruction of `Λ_k`: support samples
/// `h(ξ) = λ_k(Re(e^{iξ}T))`, the polygon `⋂ {Re(e^{iξ}µ) ≤ h(ξ)}` and
/// pointwise membership of sampled boundary points.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionEstimate {
    pub k: u64,
    pub support_samples: Vec<SupportSample>,
    pub polygon: ConvexPolygon,
    pub boundary_report: Vec<BoundarySample>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryStatus {
    BoundaryIn,
    Interior,
    NotMember,
}

fn check_rank(spec: &SpectralMeasureModel, k: Rank) -> Result<()> {
    let total = spec.total_dimension();
    let fits = match k {
        Rank::Finite(0) => return Err(Error::InvalidRank),
        Rank::Finite(k) => DimClass::Finite(k) <= total,
        Rank::Infinity => total.is_infinite(),
    };
    if fits {
        Ok(())
    } else {
        Err(Error::RankExceedsDimension {
            k: k.to_string(),
            dim: total.to_string(),
        })
    }
}

/// Line directions in `[0, π)` at which `dim ran E(H)` can jump for half
/// planes anchored at `lambda`.
pub fn critical_directions(spec: &SpectralMeasureModel, lambda: Point, eps: f64) -> Vec<f64> {
    let mut dirs = Vec::new();
    for z in spec.feature_points() {
        let v = z - lambda;
        if v.norm() > eps {
            dirs.push(wrap_pi(v.arg()));
        }
    }
    for p in spec.pieces() {
        if let ContinuousPiece::Arc { center, radius, .. } = p {
            let v = center - lambda;
            let d = v.norm();
            if d > radius + eps {
                let spread = (radius / d).asin();
                dirs.push(wrap_pi(v.arg() + spread));
                dirs.push(wrap_pi(v.arg() - spread));
            } else if (d - radius).abs() <= eps && d > 0.0 {
                dirs.push(wrap_pi(v.arg() + PI / 2.0));
            }
        }
    }
    for f in spec.families() {
        dirs.push(wrap_pi(f.approach_angle));
    }
    sort_dedup(dirs)
}

fn sort_dedup(mut dirs: Vec<f64>) -> Vec<f64> {
    dirs.sort_by(f64::total_cmp);
    dirs.dedup_by(|a, b| (*a - *b).abs() <= 1e-14);
    dirs
}

/// Critical directions, the midpoints between consecutive ones (cyclically
/// modulo `π`) and a uniform fallback grid.
pub fn sweep_directions(spec: &SpectralMeasureModel, lambda: Point, eps: f64) -> Vec<f64> {
    let critical = critical_directions(spec, lambda, eps);
    let mut dirs = critical.clone();
    let n = critical.len();
    for i in 0..n {
        let a = critical[i];
        let b = if i + 1 < n { critical[i + 1] } else { critical[0] + PI };
        dirs.push(wrap_pi(0.5 * (a + b)));
    }
    dirs.extend((0..FALLBACK_DIRECTIONS).map(|j| j as f64 * PI / FALLBACK_DIRECTIONS as f64));
    sort_dedup(dirs)
}

fn sweep(
    spec: &SpectralMeasureModel,
    k: Rank,
    lambda: Point,
    tol: &TolerancePolicy,
) -> MembershipVerdict {
    let mut best: Option<(HalfClosedHalfPlane, DimBounds)> = None;
    let mut uncertain = false;
    'directions: for psi in sweep_directions(spec, lambda, tol.eps_geom) {
        for h in HalfClosedHalfPlane::variants(lambda, psi) {
            let b = Selector::from(&h).bounds(spec, tol);
            if b.certainly_below(k) {
                let better = match &best {
                    None => true,
                    Some((_, old)) => witness_key(&b) < witness_key(old),
                };
                if better {
                    let empty = b.exact() == Some(DimClass::ZERO);
                    best = Some((h, b));
                    if empty {
                        break 'directions;
                    }
                }
            } else if !b.certainly_at_least(k) {
                uncertain = true;
            }
        }
    }
    match best {
        Some((h, b)) => MembershipVerdict {
            verdict: Verdict::Out,
            witness: Some(h),
            witness_dim: b.exact().or(match b.hi {
                Upper::At(d) => Some(d),
                Upper::SomeFinite => None,
            }),
        },
        None if uncertain => MembershipVerdict::uncertain(),
        None => MembershipVerdict {
            verdict: Verdict::In,
            witness: None,
            witness_dim: None,
        },
    }
}

fn witness_key(b: &DimBounds) -> ((u8, u64), bool) {
    (b.rank_key(), b.exact().is_none())
}

/// Membership of `lambda` in `Λ_k`.
pub fn member(
    spec: &SpectralMeasureModel,
    k: Rank,
    lambda: Point,
    tol: &TolerancePolicy,
) -> Result<MembershipVerdict> {
    check_rank(spec, k)?;
    Ok(sweep(spec, k, lambda, tol))
}

/// Membership of `lambda` in `Λ_∞ = ⋂_k Λ_k`.
pub fn member_infinity(
    spec: &SpectralMeasureModel,
    lambda: Point,
    tol: &TolerancePolicy,
) -> Result<MembershipVerdict> {
    member(spec, Rank::Infinity, lambda, tol)
}

/// Reconstruct the closure of `Λ_k` from `n_angles` support samples.
pub fn region(
    spec: &SpectralMeasureModel,
    k: u64,
    n_angles: usize,
    tol: &TolerancePolicy,
) -> Result<RegionEstimate> {
    if k == 0 {
        return Err(Error::InvalidRank);
    }
    if n_angles < 8 {
        return Err(Error::InvalidModel("region needs at least 8 angles".into()));
    }
    let mut samples = Vec::with_capacity(n_angles);
    for j in 0..n_angles {
        let xi = TAU * j as f64 / n_angles as f64;
        let h = lambda_k_sup(&pushforward(spec, xi), k)?;
        samples.push(SupportSample { xi, h });
    }
    let planes: Vec<ClosedHalfPlane> = samples
        .iter()
        .map(|s| ClosedHalfPlane::support(s.xi, s.h))
        .collect();
    let polygon = halfplane_intersection(&planes, spec.support_radius(), tol);
    let mut probes: Vec<Point> = polygon.vertices().to_vec();
    probes.extend(polygon.edges().iter().map(|(a, b)| 0.5 * (a + b)));
    let rank = Rank::Finite(k);
    let boundary_report = probes
        .into_iter()
        .map(|point| BoundarySample {
            point,
            verdict: member(spec, rank, point, tol)
                .map(|v| v.verdict)
                .unwrap_or(Verdict::Uncertain),
        })
        .collect();
    Ok(RegionEstimate {
        k,
        support_samples: samples,
        polygon,
        boundary_report,
    })
}

/// `Λ_k` of a self-adjoint operator: `[a, b]` with
/// `a = inf{a : dim E(−∞, a] ≥ k}` and `b = sup{b : dim E[b, ∞) ≥ k}`, or
/// `None` when `a > b`.
pub fn selfadjoint_interval(
    spec: &SpectralMeasureModel,
    k: u64,
    tol: &TolerancePolicy,
) -> Result<Option<(f64, f64)>> {
    let eps = tol.eps_geom;
    let real = |z: Point| z.im.abs() <= eps;
    let atoms_real = spec.atoms().iter().all(|a| real(a.location));
    let pieces_real = spec.pieces().iter().all(|p| match p {
        ContinuousPiece::Segment { a, b } => real(*a) && real(*b),
        _ => false,
    });
    let families_real = spec.families().iter().all(|f| {
        real(f.limit)
            && f.prefix.iter().all(|t| real(t.point))
            && unit(f.approach_angle).im.abs() <= eps
            && f.approach_side == crate::spectral::ApproachSide::On
    });
    if !(atoms_real && pieces_real && families_real) {
        return Err(Error::NotSelfAdjoint);
    }
    let b = lambda_k_sup(&pushforward(spec, 0.0), k)?;
    let a = -lambda_k_sup(&pushforward(spec, PI), k)?;
    Ok((a <= b + eps).then_some((a.min(b), b)))
}

/// Whether a member of `Λ_k` lies on its boundary: some open half plane
/// through it has dimension below `k`.
pub fn is_boundary(
    spec: &SpectralMeasureModel,
    k: u64,
    lambda: Point,
    tol: &TolerancePolicy,
) -> Result<BoundaryStatus> {
    let rank = Rank::Finite(k);
    let m = member(spec, rank, lambda, tol)?;
    match m.verdict {
        Verdict::Out => return Ok(BoundaryStatus::NotMember),
        Verdict::Uncertain => {
            return Err(Error::UncertainGeometry(
                "membership could not be decided".into(),
            ))
        }
        Verdict::In => {}
    }
    for psi in sweep_directions(spec, lambda, tol.eps_geom) {
        for side in [psi + PI / 2.0, psi + 1.5 * PI] {
            let open = OpenHalfPlane::new(lambda, side);
            if Selector::from(&open).bounds(spec, tol).certainly_below(rank) {
                return Ok(BoundaryStatus::BoundaryIn);
            }
        }
    }
    Ok(BoundaryStatus::Interior)
}

/// For `λ ∉ Λ_k`, the witness `H` and `r = dim ran E(H) < k`, describing the
/// split `T = T1 ⊕ T2` with `dim T1 = r`.
pub fn decompose_excluding(
    spec: &SpectralMeasureModel,
    k: u64,
    lambda: Point,
    tol: &TolerancePolicy,
) -> Result<Option<(HalfClosedHalfPlane, u64)>> {
    let m = member(spec, Rank::Finite(k), lambda, tol)?;
    match (m.verdict, m.witness, m.witness_dim) {
        (Verdict::In, _, _) => Ok(None),
        (Verdict::Out, Some(h), Some(DimClass::Finite(r))) => Ok(Some((h, r))),
        _ => Err(Error::UncertainGeometry(
            "no certain decomposition at this point".into(),
        )),
    }
}

/// k-th largest eigenvalue of `Re(e^{iξ}M)`.
pub fn matrix_lambda_k(m: &CMatrix, k: usize, xi: f64) -> Result<f64> {
    let n = check_square(m)?;
    if k == 0 || k > n {
        return Err(Error::RankExceedsDimension {
            k: k.to_string(),
            dim: n.to_string(),
        });
    }
    Ok(hermitian_eigenvalues(&rotated_real_part(m, xi))?[k - 1])
}

/// Membership through the subset-hull formula
/// `Λ_k = ⋂ conv{λ_{j1}, …, λ_{j(n−k+1)}}` over all `(n−k+1)`-subsets of the
/// eigenvalues.
///
/// `In` when `λ` is inside every hull up to a margin far below `eps_geom`,
/// `Out` when it is more than `eps_geom` outside some hull, `Uncertain` in
/// between.
pub fn ckz_member(m: &CMatrix, k: usize, lambda: Point, tol: &TolerancePolicy) -> Result<Verdict> {
    let n = check_square(m)?;
    let fro = m.norm();
    let residual = commutator_residual(m);
    let threshold = tol.eps_eig * fro.powi(2).max(1.0);
    if residual.is_nan() || residual > threshold {
        return Err(Error::NotNormal {
            residual,
            threshold,
        });
    }
    if k == 0 || k > n {
        return Err(Error::RankExceedsDimension {
            k: k.to_string(),
            dim: n.to_string(),
        });
    }
    let (values, _) = normal_eigen(m)?;
    Ok(ckz_verdict(&values, k, lambda, tol))
}

/// Subset-hull membership for an explicit eigenvalue list.
pub fn ckz_verdict(values: &[Point], k: usize, lambda: Point, tol: &TolerancePolicy) -> Verdict {
    let size = values.len() + 1 - k;
    let mut worst = f64::NEG_INFINITY;
    for subset in combinations(values.len(), size) {
        let pts: Vec<Point> = subset.iter().map(|&i| values[i]).collect();
        worst = worst.max(convex_hull(&pts).signed_distance(lambda));
        if worst > tol.eps_geom {
            return Verdict::Out;
        }
    }
    if worst <= 1e-3 * tol.eps_geom {
        Verdict::In
    } else {
        Verdict::Uncertain
    }
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        out.push(idx.clone());
        let mut i = r;
        while i > 0 && idx[i - 1] == i - 1 + n - r {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
